"""Cells of the standard cube ``I^p`` and the corner-level Serre map.

A cell is a tuple over ``{FIX0, FIX1, FREE}``; its dimension is the number
of ``FREE`` letters.  Directions are numbered from 1 as usual, while tuple
positions are 0-based.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .linalg import SparseIntMatrix

FIX0, FIX1, FREE = 0, 1, 2

Cell = tuple[int, ...]

_LETTER = {FIX0: "0", FIX1: "1", FREE: "*"}


def cell_dim(c: Cell) -> int:
    return sum(1 for x in c if x == FREE)


def cell_str(c: Cell) -> str:
    return "".join(_LETTER[x] for x in c)


def parse_cell(s: str) -> Cell:
    inv = {"0": FIX0, "1": FIX1, "*": FREE, "x": FREE}
    return tuple(inv[ch] for ch in s)


@lru_cache(maxsize=None)
def cells(p: int, k: int) -> tuple[Cell, ...]:
    """All ``k``-cells of ``I^p`` in lexicographic order."""
    if not 0 <= k <= p:
        return ()
    out = []
    for free in combinations(range(p), k):
        fixed = [i for i in range(p) if i not in free]
        for bits in product((FIX0, FIX1), repeat=p - k):
            w = [FREE] * p
            for i, b in zip(fixed, bits):
                w[i] = b
            out.append(tuple(w))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def cell_index(p: int, k: int) -> dict[Cell, int]:
    return {c: i for i, c in enumerate(cells(p, k))}


def cell_faces(c: Cell) -> list[tuple[int, Cell]]:
    """Signed codimension-one faces of ``c``.

    The i-th free letter (counting from 1) set to 0 carries ``(-1)^i`` and
    set to 1 carries ``-(-1)^i``.
    """
    out = []
    i = 0
    for pos, x in enumerate(c):
        if x != FREE:
            continue
        i += 1
        s = -1 if i % 2 else 1
        out.append((s, c[:pos] + (FIX0,) + c[pos + 1:]))
        out.append((-s, c[:pos] + (FIX1,) + c[pos + 1:]))
    return out


@lru_cache(maxsize=None)
def coboundary_matrix(p: int, k: int) -> SparseIntMatrix:
    """Cellular coboundary ``C^k(I^p) -> C^{k+1}(I^p)``.

    Rows are indexed by ``cells(p, k+1)``, columns by ``cells(p, k)``.
    """
    if not 0 <= k < p:
        raise ValueError(f"need 0 <= k < p, got p={p}, k={k}")
    lo = cell_index(p, k)
    entries = {}
    for r, C in enumerate(cells(p, k + 1)):
        for s, f in cell_faces(C):
            entries[(r, lo[f])] = entries.get((r, lo[f]), 0) + s
    return SparseIntMatrix(len(cells(p, k + 1)), len(lo), entries)


def psi_vertex(corner: Sequence[int]) -> int:
    """Index of the simplex vertex hit by a cube corner: its count of leading ones."""
    k = 0
    for x in corner:
        if x != 1:
            break
        k += 1
    return k


def corners(c: Cell) -> Iterator[tuple[int, ...]]:
    free = [i for i, x in enumerate(c) if x == FREE]
    for bits in product((0, 1), repeat=len(free)):
        w = list(c)
        for i, b in zip(free, bits):
            w[i] = b
        yield tuple(w)


def cube_image_simplex(c: Cell) -> tuple[int, ...]:
    """Vertex set of the face of ``Delta_m`` spanned by the images of the corners of ``c``."""
    return tuple(sorted({psi_vertex(x) for x in corners(c)}))


def is_psi_nondegenerate(c: Cell) -> bool:
    return len(cube_image_simplex(c)) == cell_dim(c) + 1
