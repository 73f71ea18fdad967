"""The cubical Eilenberg-MacLane complex ``L(pi, n)``.

A p-cube is a cellular n-cocycle on ``I^p`` with values in ``pi``.  Faces
restrict along the face embeddings, degeneracies pull back along the
coordinate projections, and the product of a p-cube and a q-cube is the sum
of the pullbacks along the two projections of ``I^{p+q}``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .coeffs import CoeffGroup
from .cube import FIX0, FIX1, FREE, Cell, cell_index, cells, coboundary_matrix, parse_cell
from .errors import BadCell, NotACocycle, SizeLimitExceeded, UnsupportedEnumeration
from .linalg import HomologyGroup, SparseIntMatrix, homology_from_boundaries, kernel_enumeration_mod_m

DEFAULT_CAP = 10**6


class EmCube:
    """A p-cube of ``L(pi, n)``: values on the n-cells of ``I^p`` in ``cells(p, n)`` order."""

    __slots__ = ("n", "p", "modulus", "values", "_hash")

    def __init__(self, n: int, p: int, modulus: int, values: Sequence[int]):
        self.n = n
        self.p = p
        self.modulus = modulus
        self.values = tuple(int(v) for v in values)
        self._hash = hash((n, p, modulus, self.values))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmCube):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
            and self.values == other.values
        )

    def __lt__(self, other: "EmCube") -> bool:
        return (self.p, self.values) < (other.p, other.values)

    def __repr__(self) -> str:
        if not any(self.values):
            return f"EmCube(p={self.p}, 0)"
        from .cube import cell_str

        items = ", ".join(f"{cell_str(c)}:{v}" for c, v in zip(cells(self.p, self.n), self.values) if v)
        return f"EmCube(p={self.p}, {{{items}}})"

    @property
    def group(self) -> CoeffGroup:
        return CoeffGroup(self.modulus)

    @property
    def dim(self) -> int:
        return self.p

    def value(self, cell: Cell | str) -> int:
        if isinstance(cell, str):
            cell = parse_cell(cell)
        idx = cell_index(self.p, self.n).get(tuple(cell))
        if idx is None:
            raise BadCell(f"{cell} is not an {self.n}-cell of I^{self.p}")
        return self.values[idx]

    def as_dict(self) -> dict[Cell, int]:
        return {c: v for c, v in zip(cells(self.p, self.n), self.values) if v}

    def is_zero(self) -> bool:
        return not any(self.values)


def _reduce(values, modulus):
    if modulus:
        return [v % modulus for v in values]
    return [int(v) for v in values]


def zero_cube(group: CoeffGroup, n: int, p: int) -> EmCube:
    return EmCube(n, p, group.modulus, [0] * len(cells(p, n)))


def unit_cube(group: CoeffGroup, n: int) -> EmCube:
    """The unique 0-cube, the unit of the cube product."""
    return zero_cube(group, n, 0)


def generator_cube(group: CoeffGroup, n: int, g: int) -> EmCube:
    """The n-cube ``[g]``: the n-cochain on ``I^n`` with value g."""
    return EmCube(n, n, group.modulus, [group.reduce(g)])


def is_cocycle_values(n: int, p: int, modulus: int, values: Sequence[int]) -> bool:
    if n >= p:
        return True
    M = coboundary_matrix(p, n)
    for col_r in M.transpose().columns():
        s = sum(values[c] * v for c, v in col_r.items())
        if (s % modulus if modulus else s) != 0:
            return False
    return True


def make_cube(group: CoeffGroup, n: int, p: int, values: Mapping[Cell | str, int]) -> EmCube:
    """Validated cube from a ``{cell: value}`` map; omitted cells are 0."""
    idx = cell_index(p, n)
    vec = [0] * len(idx)
    for key, v in values.items():
        c = parse_cell(key) if isinstance(key, str) else tuple(key)
        if len(c) != p or c not in idx:
            raise BadCell(f"{key!r} is not an {n}-cell of I^{p}")
        vec[idx[c]] = group.reduce(v)
    if not is_cocycle_values(n, p, group.modulus, vec):
        raise NotACocycle(f"values do not form a cocycle on I^{p}")
    return EmCube(n, p, group.modulus, vec)


# ---------------------------------------------------------------------------
# index maps


@lru_cache(maxsize=None)
def _face_map(p: int, n: int, i: int, eps: int) -> tuple[int, ...]:
    src = cell_index(p, n)
    return tuple(src[c[: i - 1] + (eps,) + c[i - 1:]] for c in cells(p - 1, n))


@lru_cache(maxsize=None)
def _degeneracy_map(p: int, n: int, i: int) -> tuple[int, ...]:
    src = cell_index(p, n)
    out = []
    for c in cells(p + 1, n):
        out.append(-1 if c[i - 1] == FREE else src[c[: i - 1] + c[i:]])
    return tuple(out)


@lru_cache(maxsize=None)
def _product_map(p: int, q: int, n: int) -> tuple[tuple[int, int], ...]:
    left, right = cell_index(p, n), cell_index(q, n)
    out = []
    for c in cells(p + q, n):
        a, b = c[:p], c[p:]
        if FREE not in b:
            out.append((0, left[a]))
        elif FREE not in a:
            out.append((1, right[b]))
        else:
            out.append((2, 0))
    return tuple(out)


@lru_cache(maxsize=None)
def _constancy_map(p: int, n: int, i: int) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    """Cells free in direction i, and (x_i = 0, x_i = 1) cell pairs."""
    idx = cell_index(p, n)
    free, pairs = [], []
    for c in cells(p, n):
        x = c[i - 1]
        if x == FREE:
            free.append(idx[c])
        elif x == FIX0:
            pairs.append((idx[c], idx[c[: i - 1] + (FIX1,) + c[i:]]))
    return tuple(free), tuple(pairs)


# ---------------------------------------------------------------------------
# cubical structure


def face(tau: EmCube, i: int, eps: int) -> EmCube:
    """``d_i^eps``: restriction to the facet ``x_i = eps``."""
    if not 1 <= i <= tau.p:
        raise ValueError(f"face direction {i} outside 1..{tau.p}")
    vals = tau.values
    return EmCube(tau.n, tau.p - 1, tau.modulus, [vals[j] for j in _face_map(tau.p, tau.n, i, eps)])


def degeneracy(tau: EmCube, i: int) -> EmCube:
    """``s_i``: pullback along the projection forgetting coordinate i."""
    if not 1 <= i <= tau.p + 1:
        raise ValueError(f"degeneracy direction {i} outside 1..{tau.p + 1}")
    vals = tau.values
    return EmCube(tau.n, tau.p + 1, tau.modulus, [0 if j < 0 else vals[j] for j in _degeneracy_map(tau.p, tau.n, i)])


def is_constant_in(tau: EmCube, i: int) -> bool:
    free, pairs = _constancy_map(tau.p, tau.n, i)
    v = tau.values
    return all(v[j] == 0 for j in free) and all(v[a] == v[b] for a, b in pairs)


def is_degenerate(tau: EmCube) -> tuple[int, EmCube] | None:
    """``(i, rho)`` with ``tau == s_i(rho)``, or None for a nondegenerate cube."""
    for i in range(1, tau.p + 1):
        if is_constant_in(tau, i):
            return i, face(tau, i, 0)
    return None


def degenerate(tau: EmCube) -> bool:
    return any(is_constant_in(tau, i) for i in range(1, tau.p + 1))


def product(t1: EmCube, t2: EmCube) -> EmCube:
    """``t1 o t2 = pr_1^* t1 + pr_2^* t2`` on ``I^{p+q}``."""
    if t1.n != t2.n or t1.modulus != t2.modulus:
        raise ValueError("cubes of different L(pi, n)")
    a, b = t1.values, t2.values
    out = []
    for which, j in _product_map(t1.p, t2.p, t1.n):
        out.append(a[j] if which == 0 else b[j] if which == 1 else 0)
    return EmCube(t1.n, t1.p + t2.p, t1.modulus, out)


def cube_boundary(tau: EmCube) -> dict[EmCube, int]:
    """Normalized boundary ``sum (-1)^i (d_i^0 - d_i^1)``, degenerate faces dropped."""
    out: dict[EmCube, int] = {}
    for i in range(1, tau.p + 1):
        s = -1 if i % 2 else 1
        for eps, sign in ((0, s), (1, -s)):
            f = face(tau, i, eps)
            if not degenerate(f):
                out[f] = out.get(f, 0) + sign
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# enumeration and the normalized chain complex


def _require_finite(group: CoeffGroup) -> None:
    if not group.is_finite:
        raise UnsupportedEnumeration("enumeration of L(Z, n) is infinite; use a finite group Z/m")


def cube_array(group: CoeffGroup, n: int, p: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All p-cubes of ``L(group, n)`` as rows of an int64 array."""
    _require_finite(group)
    m = group.modulus
    ncells = len(cells(p, n))
    if p < n:
        return np.zeros((1, 0), dtype=np.int64)
    if p == n:
        if m > cap:
            raise SizeLimitExceeded(f"more than {cap} cubes in dimension {p}", p)
        return np.arange(m, dtype=np.int64).reshape(m, 1)
    try:
        out = kernel_enumeration_mod_m(coboundary_matrix(p, n), m, cap)
    except SizeLimitExceeded as exc:
        raise SizeLimitExceeded(f"more than {cap} cubes in dimension {p}", p) from exc
    assert out.shape[1] == ncells
    return out


def enumerate_cubes(group: CoeffGroup, n: int, p: int, cap: int = DEFAULT_CAP) -> list[EmCube]:
    arr = cube_array(group, n, p, cap)
    return [EmCube(n, p, group.modulus, row) for row in arr.tolist()]


def _degenerate_mask(arr: np.ndarray, n: int, p: int) -> np.ndarray:
    mask = np.zeros(arr.shape[0], dtype=bool)
    for i in range(1, p + 1):
        free, pairs = _constancy_map(p, n, i)
        ok = np.ones(arr.shape[0], dtype=bool)
        if free:
            ok &= ~arr[:, list(free)].any(axis=1)
        if pairs:
            a = [x for x, _ in pairs]
            b = [y for _, y in pairs]
            ok &= (arr[:, a] == arr[:, b]).all(axis=1)
        mask |= ok
    return mask


class EMComplex:
    """Normalized chains of ``L(pi, n)`` through a fixed top degree.

    ``basis(q)`` lists the nondegenerate q-cubes; ``boundary(q)`` is the
    matrix of ``d: C_q -> C_{q-1}`` in those bases.
    """

    def __init__(self, group: CoeffGroup, n: int, top: int, cap: int = DEFAULT_CAP):
        _require_finite(group)
        if n < 1:
            raise ValueError("n must be >= 1")
        self.group = group
        self.n = n
        self.top = top
        self.cap = cap
        self._arrays: list[np.ndarray] = []
        for q in range(top + 1):
            arr = cube_array(group, n, q, cap)
            if q > 0:
                arr = arr[~_degenerate_mask(arr, n, q)]
            self._arrays.append(np.ascontiguousarray(arr))
        self._cubes: dict[int, list[EmCube]] = {}
        self._index: dict[int, dict[EmCube, int]] = {}
        self._keys: dict[int, dict[bytes, int]] = {}
        self._boundaries: dict[int, SparseIntMatrix] = {}

    def rank(self, q: int) -> int:
        return self._arrays[q].shape[0] if 0 <= q <= self.top else 0

    def ranks(self) -> list[int]:
        return [self.rank(q) for q in range(self.top + 1)]

    def basis(self, q: int) -> list[EmCube]:
        if q not in self._cubes:
            m = self.group.modulus
            self._cubes[q] = [EmCube(self.n, q, m, row) for row in self._arrays[q].tolist()]
        return self._cubes[q]

    def index(self, q: int) -> dict[EmCube, int]:
        if q not in self._index:
            self._index[q] = {c: i for i, c in enumerate(self.basis(q))}
        return self._index[q]

    def _bytes_index(self, q: int) -> dict[bytes, int]:
        if q not in self._keys:
            arr = self._arrays[q]
            self._keys[q] = {arr[i].tobytes(): i for i in range(arr.shape[0])}
        return self._keys[q]

    def boundary(self, q: int) -> SparseIntMatrix:
        """``d_q`` with rows = basis(q-1), columns = basis(q)."""
        if q in self._boundaries:
            return self._boundaries[q]
        if q <= 0 or q > self.top:
            M = SparseIntMatrix(self.rank(q - 1) if q > 0 else 0, self.rank(q))
            self._boundaries[q] = M
            return M
        arr = self._arrays[q]
        N = arr.shape[0]
        lookup = self._bytes_index(q - 1)
        cols: list[dict[int, int]] = [dict() for _ in range(N)]
        for i in range(1, q + 1):
            s = -1 if i % 2 else 1
            for eps, sign in ((0, s), (1, -s)):
                fa = np.ascontiguousarray(arr[:, list(_face_map(q, self.n, i, eps))])
                for j in range(N):
                    r = lookup.get(fa[j].tobytes())
                    if r is not None:
                        col = cols[j]
                        v = col.get(r, 0) + sign
                        if v:
                            col[r] = v
                        else:
                            del col[r]
        M = SparseIntMatrix.from_columns(self.rank(q - 1), cols)
        self._boundaries[q] = M
        return M

    def homology(self, max_deg: int, coeff: int = 0) -> list[HomologyGroup]:
        if max_deg + 1 > self.top:
            raise ValueError(f"need chains through degree {max_deg + 1}, have {self.top}")
        return [
            homology_from_boundaries(self.boundary(q), self.boundary(q + 1), coeff, degree=q)
            for q in range(max_deg + 1)
        ]


_COMPLEX_CACHE: dict[tuple[int, int], EMComplex] = {}


def em_chain_complex(group: CoeffGroup, n: int, up_to: int, cap: int = DEFAULT_CAP) -> EMComplex:
    """Normalized chain complex of ``L(group, n)`` through degree ``up_to`` (cached)."""
    key = (group.modulus, n)
    cached = _COMPLEX_CACHE.get(key)
    if cached is not None and cached.top >= up_to and cached.cap >= cap:
        return cached
    if cached is not None and cached.top >= up_to:
        return cached
    cx = EMComplex(group, n, up_to, cap)
    _COMPLEX_CACHE[key] = cx
    return cx


def normalized_ranks(group: CoeffGroup, n: int, up_to: int, cap: int = DEFAULT_CAP) -> list[int]:
    return em_chain_complex(group, n, up_to, cap).ranks()[: up_to + 1]


def em_homology(group: CoeffGroup, n: int, max_deg: int, coeff: int = 0, cap: int = DEFAULT_CAP) -> list[HomologyGroup]:
    """``H_0 .. H_max_deg`` of the normalized chains of ``L(group, n)``."""
    return em_chain_complex(group, n, max_deg + 1, cap).homology(max_deg, coeff)
