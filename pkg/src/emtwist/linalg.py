"""Exact sparse linear algebra over the integers and prime fields.

Matrices are stored column-wise as ``{row: value}`` dictionaries; every
boundary operator in the package is built this way.  The main entry points
are :func:`smith_normal_form`, :func:`homology_from_boundaries` and
:func:`kernel_enumeration_mod_m`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CompositionNonzero, SizeLimitExceeded

__all__ = [
    "SparseIntMatrix",
    "HomologyGroup",
    "smith_normal_form",
    "smith_decomposition",
    "homology_from_boundaries",
    "kernel_enumeration_mod_m",
    "solve_mod",
    "rank_mod_p",
    "ModpEchelon",
    "FieldHomology",
    "nullspace_mod_p",
]

DEFAULT_KERNEL_CAP = 10**6


class SparseIntMatrix:
    """An ``nrows x ncols`` integer matrix with no stored zeros."""

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], int] | None = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self._cols: list[dict[int, int]] = [dict() for _ in range(self.ncols)]
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                    raise IndexError(f"entry ({r}, {c}) outside {self.nrows}x{self.ncols}")
                if v:
                    self._cols[c][r] = self._cols[c].get(r, 0) + int(v)
            for col in self._cols:
                for r in [r for r, v in col.items() if v == 0]:
                    del col[r]

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[Mapping[int, int]]) -> "SparseIntMatrix":
        m = cls(nrows, 0)
        cols = []
        for col in columns:
            clean = {}
            for r, v in col.items():
                if v:
                    if not 0 <= r < nrows:
                        raise IndexError(f"row {r} outside 0..{nrows - 1}")
                    clean[r] = int(v)
            cols.append(clean)
        m._cols = cols
        m.ncols = len(cols)
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "SparseIntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, entries)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseIntMatrix":
        return cls(nrows, ncols)

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return {(r, c): v for c, col in enumerate(self._cols) for r, v in col.items()}

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, c: int) -> dict[int, int]:
        return self._cols[c]

    def columns(self) -> list[dict[int, int]]:
        return self._cols

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def is_zero(self) -> bool:
        return all(not c for c in self._cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def to_numpy(self, dtype=np.int64) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=dtype)
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                out[r, c] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        rows: list[dict[int, int]] = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                rows[r][c] = v
        return SparseIntMatrix.from_columns(self.ncols, rows)

    def reduce_mod(self, m: int) -> "SparseIntMatrix":
        if m == 0:
            return self
        return SparseIntMatrix.from_columns(
            self.nrows, ({r: v % m for r, v in col.items() if v % m} for col in self._cols)
        )

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for col in other._cols:
            acc: dict[int, int] = {}
            for k, v in col.items():
                for r, w in self._cols[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            out.append({r: v for r, v in acc.items() if v})
        return SparseIntMatrix.from_columns(self.nrows, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __sub__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for a, b in zip(self._cols, other._cols):
            acc = dict(a)
            for r, v in b.items():
                acc[r] = acc.get(r, 0) - v
            out.append({r: v for r, v in acc.items() if v})
        return SparseIntMatrix.from_columns(self.nrows, out)

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^betti + sum Z/t`` (or ``F_p^betti`` over a field)."""

    degree: int
    betti: int
    torsion: tuple[int, ...] = field(default_factory=tuple)
    field_char: int = 0

    def __post_init__(self):
        tors = tuple(int(t) for t in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if self.betti < 0:
            raise ValueError("negative betti number")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError(f"torsion factors {tors} do not form a divisibility chain")
        if any(t < 2 for t in tors):
            raise ValueError("torsion factors must be >= 2")
        if self.field_char and tors:
            raise ValueError("homology over a field has no torsion")

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        ring = f"F_{self.field_char}" if self.field_char else "Z"
        if self.betti == 1:
            parts.append(ring)
        elif self.betti > 1:
            parts.append(f"{ring}^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        out = {"degree": self.degree, "betti": self.betti, "torsion": list(self.torsion)}
        if self.field_char:
            out["field"] = self.field_char
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "HomologyGroup":
        return cls(int(data["degree"]), int(data["betti"]), tuple(data.get("torsion", ())), int(data.get("field", 0)))


# ---------------------------------------------------------------------------
# Smith normal form


def _normalize_diagonal(diag: Iterable[int]) -> list[int]:
    """Invariant factors of a diagonal matrix with the given nonzero entries."""
    ones = 0
    rest = []
    for d in diag:
        d = abs(int(d))
        if d == 1:
            ones += 1
        elif d:
            rest.append(d)
    rest.sort()
    k = len(rest)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = rest[i], rest[j]
            if b % a:
                g = math.gcd(a, b)
                rest[i], rest[j] = g, a // g * b
    rest.sort()
    out = [1] * ones
    for d in rest:
        if d == 1:
            out.insert(0, 1)
        else:
            out.append(d)
    return out


_INT64_SAFE = 1 << 40


def _dense_diagonal(A: np.ndarray) -> list[int]:
    """Diagonalize a dense integer matrix by unimodular row/column ops.

    Returns the nonzero diagonal entries (not yet normalized into a
    divisibility chain).  Uses int64 while entries stay small and falls
    back to Python integers otherwise.
    """
    diag: list[int] = []
    if A.size == 0:
        return diag
    A = A.copy()
    while A.shape[0] and A.shape[1]:
        nz = A != 0
        if not nz.any():
            break
        # drop zero rows/cols to keep the working set small
        rows_keep = nz.any(axis=1)
        cols_keep = nz.any(axis=0)
        if not rows_keep.all() or not cols_keep.all():
            A = A[rows_keep][:, cols_keep]
            nz = A != 0
        absA = np.abs(A)
        big = absA.max() + 1
        masked = np.where(nz, absA, big)
        r, c = np.unravel_index(int(np.argmin(masked)), A.shape)
        while True:
            v = A[r, c]
            col = A[:, c].copy()
            q = col // v
            q[r] = 0
            if A.dtype != object and np.abs(q).max(initial=0) * np.abs(A[r]).max() + absA.max() > _INT64_SAFE:
                A = A.astype(object)
            if q.any():
                A -= np.outer(q, A[r])
            row = A[r, :].copy()
            q = row // v
            q[c] = 0
            if A.dtype != object and np.abs(q).max(initial=0) * np.abs(A[:, c]).max() + np.abs(A).max() > _INT64_SAFE:
                A = A.astype(object)
            if q.any():
                A -= np.outer(A[:, c], q)
            colnz = np.flatnonzero(A[:, c])
            rownz = np.flatnonzero(A[r, :])
            if len(colnz) == 1 and len(rownz) == 1:
                break
            # a remainder smaller than |v| survived: pivot on it
            cand = [(abs(A[i, c]), i, c) for i in colnz if i != r]
            cand += [(abs(A[r, j]), r, j) for j in rownz if j != c]
            _, r, c = min(cand)
            absA = np.abs(A)
        diag.append(int(A[r, c]))
        A = np.delete(np.delete(A, r, axis=0), c, axis=1)
    return diag


def _lattice_basis(columns: Iterable[Mapping[int, int]], nrows: int) -> list[dict[int, int]]:
    """Echelon basis of the Z-span of sparse integer columns.

    Uses only unimodular column operations, so the returned basis spans the
    same lattice and has the same invariant factors as the input.
    """
    pivots: dict[int, dict[int, int]] = {}
    for col in columns:
        v = {r: x for r, x in col.items() if x}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = v
                break
            a, b = v[lead], piv[lead]
            if a % b == 0:
                q = a // b
                for r, x in piv.items():
                    y = v.get(r, 0) - q * x
                    if y:
                        v[r] = y
                    else:
                        v.pop(r, None)
                continue
            g, s, t = _xgcd(b, a)
            # [piv v] -> [s*piv + t*v, (a/g)*piv - (b/g)*v], determinant -1
            new_piv: dict[int, int] = {}
            rest: dict[int, int] = {}
            ag, bg = a // g, b // g
            for r in set(piv) | set(v):
                p_r, v_r = piv.get(r, 0), v.get(r, 0)
                x = s * p_r + t * v_r
                y = ag * p_r - bg * v_r
                if x:
                    new_piv[r] = x
                if y:
                    rest[r] = y
            pivots[lead] = new_piv
            v = rest
    return list(pivots.values())


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) > 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _eliminate_unit_pivots(cols: list[dict[int, int]], nrows: int) -> tuple[list[dict[int, int]], int]:
    """Strip +-1 pivots whose row is otherwise empty after column clearing.

    Repeatedly picks a column holding a unit entry in a row of minimal
    length, clears that row from the other columns and discards both.  Each
    removed pivot contributes an invariant factor 1.  Returns the remaining
    columns (row indices unchanged) and the number of unit factors found.
    """
    cols = [dict(c) for c in cols if c]
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        for r in col:
            rows.setdefault(r, set()).add(j)
    alive = set(range(len(cols)))
    units = 0
    progress = True
    while progress:
        progress = False
        order = sorted(rows, key=lambda r: len(rows[r]))
        for r in order:
            js = rows.get(r)
            if not js:
                rows.pop(r, None)
                continue
            best = None
            for j in js:
                v = cols[j][r]
                if v == 1 or v == -1:
                    if best is None or len(cols[j]) < len(cols[best]):
                        best = j
            if best is None:
                continue
            piv = cols[best]
            pv = piv[r]
            others = [j for j in js if j != best]
            # fill estimate guards against catastrophic densification
            if len(others) * (len(piv) - 1) > 200000:
                continue
            for j in others:
                col = cols[j]
                q = col[r] * pv
                for rr, x in piv.items():
                    y = col.get(rr, 0) - q * x
                    if y:
                        if rr not in col:
                            rows.setdefault(rr, set()).add(j)
                        col[rr] = y
                    else:
                        if rr in col:
                            del col[rr]
                            rows[rr].discard(j)
                if not col:
                    alive.discard(j)
            for rr in piv:
                rows[rr].discard(best)
            alive.discard(best)
            cols[best] = {}
            rows.pop(r, None)
            units += 1
            progress = True
    return [cols[j] for j in sorted(alive) if cols[j]], units


def smith_normal_form(M: SparseIntMatrix) -> tuple[list[int], int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of ``M`` and its rank ``r``."""
    if M.ncols >= M.nrows:
        cols, nrows = [c for c in M.columns() if c], M.nrows
    else:
        T = M.transpose()
        cols, nrows = [c for c in T.columns() if c], T.nrows
    if not cols:
        return [], 0
    cols, units = _eliminate_unit_pivots(cols, nrows)
    if cols and len(cols) > len(set().union(*cols)):
        cols = _lattice_basis(cols, nrows)
    diag = [1] * units
    if cols:
        used = sorted(set().union(*cols))
        pos = {r: i for i, r in enumerate(used)}
        A = np.zeros((len(used), len(cols)), dtype=np.int64)
        for j, col in enumerate(cols):
            for r, v in col.items():
                A[pos[r], j] = v
        diag.extend(_dense_diagonal(A))
    factors = _normalize_diagonal(diag)
    return factors, len(factors)


def smith_decomposition(A: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Dense SNF with transforms: returns ``(diag, U, V)`` with ``U A V = D``.

    ``diag`` lists the nonzero diagonal entries of ``D`` in order and forms a
    divisibility chain.  Intended for the small matrices that arise in cube
    kernels and cochain solves.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        if q:
            D[dst] = [x - q * y for x, y in zip(D[dst], D[src])]
            U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        if q:
            for row in D:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // D[t][t])
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // D[t][t])
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [D[i][i] for i in range(t)]
    return diag, U, V


# ---------------------------------------------------------------------------
# kernels and solves mod m


def kernel_enumeration_mod_m(M: SparseIntMatrix, m: int, cap: int = DEFAULT_KERNEL_CAP) -> np.ndarray:
    """All vectors ``v`` in ``(Z/m)^ncols`` with ``M v = 0 mod m``, each once.

    Returned as an ``(N, ncols)`` int64 array with entries in ``0..m-1``.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    n = M.ncols
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    diag, _, V = smith_decomposition(M.to_dense()) if M.nrows else ([], None, [[int(i == j) for j in range(n)] for i in range(n)])
    gens: list[tuple[np.ndarray, int]] = []
    Vn = np.array(V, dtype=object)
    for i in range(n):
        if i < len(diag):
            g = math.gcd(diag[i], m)
            if g == 1:
                continue
            vec = Vn[:, i] * (m // g)
            order = g
        else:
            vec = Vn[:, i]
            order = m
        gens.append((np.array([int(x) % m for x in vec], dtype=np.int64), order))
    size = 1
    for _, order in gens:
        size *= order
        if size > cap:
            raise SizeLimitExceeded(f"kernel has more than {cap} elements")
    out = np.zeros((1, n), dtype=np.int64)
    for vec, order in gens:
        steps = (np.arange(order, dtype=np.int64)[:, None] * vec[None, :]) % m
        out = ((out[:, None, :] + steps[None, :, :]) % m).reshape(-1, n)
    return out


def solve_mod(M: SparseIntMatrix, y: Sequence[int], m: int) -> list[int] | None:
    """A solution of ``M x = y`` over ``Z/m`` (``m = 0`` means over ``Z``), or None."""
    nrows, n = M.shape
    y = [int(v) for v in y]
    if len(y) != nrows:
        raise ValueError("right-hand side has wrong length")
    if n == 0 or nrows == 0:
        ok = all((v % m == 0) if m else v == 0 for v in y)
        return [0] * n if ok else None
    diag, U, V = smith_decomposition(M.to_dense())
    Uy = [sum(u * v for u, v in zip(row, y)) for row in U]
    w = [0] * n
    for i in range(nrows):
        rhs = Uy[i]
        if i < len(diag):
            d = diag[i]
            if m:
                g = math.gcd(d, m)
                if rhs % g:
                    return None
                mg = m // g
                w[i] = (rhs // g) * pow(d // g, -1, mg) % mg if mg > 1 else 0
            else:
                if rhs % d:
                    return None
                w[i] = rhs // d
        else:
            if (rhs % m if m else rhs) != 0:
                return None
    x = [sum(V[r][k] * w[k] for k in range(n)) for r in range(n)]
    if m:
        x = [v % m for v in x]
    return x


# ---------------------------------------------------------------------------
# prime fields


class ModpEchelon:
    """Incremental echelon basis over ``F_p`` keyed by leading row index.

    Vectors are ``{row: value}`` dicts; for ``p = 2`` they are packed into
    Python integers internally.
    """

    def __init__(self, p: int):
        self.p = p
        self.pivots: dict[int, object] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def _pack(self, vec: Mapping[int, int]):
        if self.p == 2:
            x = 0
            for r, v in vec.items():
                if v & 1:
                    x ^= 1 << r
            return x
        return {r: v % self.p for r, v in vec.items() if v % self.p}

    def _unpack(self, x) -> dict[int, int]:
        if self.p == 2:
            out = {}
            r = 0
            while x:
                if x & 1:
                    out[r] = 1
                x >>= 1
                r += 1
            return out
        return dict(x)

    def _reduce_packed(self, x):
        p = self.p
        if p == 2:
            # leading = lowest set bit
            while x:
                lead = (x & -x).bit_length() - 1
                piv = self.pivots.get(lead)
                if piv is None:
                    return x, lead
                x ^= piv
            return 0, None
        while x:
            lead = min(x)
            piv = self.pivots.get(lead)
            if piv is None:
                return x, lead
            q = x[lead] * pow(piv[lead], -1, p) % p
            for r, v in piv.items():
                y = (x.get(r, 0) - q * v) % p
                if y:
                    x[r] = y
                else:
                    x.pop(r, None)
        return x, None

    def add(self, vec: Mapping[int, int]) -> bool:
        """Insert ``vec``; return True when it was independent."""
        x, lead = self._reduce_packed(self._pack(vec))
        if lead is None:
            return False
        self.pivots[lead] = x
        return True

    def reduce(self, vec: Mapping[int, int]) -> dict[int, int]:
        x, _ = self._reduce_packed(self._pack(vec))
        return self._unpack(x) if x else {}

    def contains(self, vec: Mapping[int, int]) -> bool:
        return not self.reduce(vec)


def rank_mod_p(M: SparseIntMatrix, p: int) -> int:
    ech = ModpEchelon(p)
    cols = M.columns()
    if M.ncols > M.nrows:
        for col in cols:
            if col:
                ech.add(col)
                if len(ech) == M.nrows:
                    break
        return len(ech)
    for col in M.transpose().columns():
        if col:
            ech.add(col)
    return len(ech)


def nullspace_mod_p(M: SparseIntMatrix, p: int) -> list[dict[int, int]]:
    """Basis of ``{v : M v = 0 mod p}`` as sparse vectors."""
    n = M.ncols
    if n == 0:
        return []
    A = M.to_numpy() % p
    A = A.astype(np.int64)
    rows, cols = A.shape
    pivcols = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivcols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivcols)]
    basis = []
    for f in free:
        v = {f: 1}
        for i, pc in enumerate(pivcols):
            x = (-int(A[i, f])) % p
            if x:
                v[pc] = x
        basis.append(v)
    return basis


class FieldHomology:
    """``H_m`` of a chain complex over ``F_p`` with coordinates on classes.

    ``d_m`` maps degree m to m-1 and ``d_mplus1`` maps m+1 to m.  Classes
    are represented by a chosen list of cycle representatives; ``coords``
    expresses any cycle in that basis.
    """

    def __init__(self, d_m: SparseIntMatrix, d_mplus1: SparseIntMatrix, p: int):
        self.p = p
        self.dim_chains = d_m.ncols
        self.cycles = nullspace_mod_p(d_m, p) if d_m.nrows else [{i: 1} for i in range(d_m.ncols)]
        self._tag0 = self.dim_chains
        self._ech = ModpEchelon(p)
        for col in d_mplus1.columns():
            if col:
                self._ech.add(col)
                if len(self._ech) == self.dim_chains:
                    break
        self.boundary_rank = len(self._ech)
        self.representatives: list[dict[int, int]] = []
        for z in self.cycles:
            rest = self._ech.reduce(z)
            if rest and min(rest) < self._tag0:
                k = len(self.representatives)
                tagged = dict(z)
                tagged[self._tag0 + k] = 1
                self._ech.add(tagged)
                self.representatives.append(z)

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coords(self, cycle: Mapping[int, int]) -> list[int]:
        res = self._ech.reduce(cycle)
        out = [0] * self.dimension
        for r, v in res.items():
            if r < self._tag0:
                raise ValueError("vector is not a cycle")
            out[r - self._tag0] = (-v) % self.p
        return out

    def is_boundary(self, chain: Mapping[int, int]) -> bool:
        return not any(self.coords(chain))


def homology_from_boundaries(
    d_m: SparseIntMatrix,
    d_mplus1: SparseIntMatrix,
    coeff: int = 0,
    degree: int = 0,
    check: bool = True,
) -> HomologyGroup:
    """Homology at the middle of ``C_{m+1} -> C_m -> C_{m-1}``.

    ``coeff`` is 0 for the integers or a prime ``p`` for ``F_p``.
    """
    if d_m.ncols != d_mplus1.nrows:
        raise ValueError(f"cannot compose {d_m.shape} with {d_mplus1.shape}")
    if check and d_m.nrows and d_mplus1.ncols:
        prod = d_m @ d_mplus1
        if coeff:
            prod = prod.reduce_mod(coeff)
        if not prod.is_zero():
            raise CompositionNonzero(f"d_{degree} o d_{degree + 1} != 0")
    n = d_m.ncols
    if coeff:
        rk_m = rank_mod_p(d_m, coeff) if d_m.nrows else 0
        rk_next = rank_mod_p(d_mplus1, coeff) if d_mplus1.ncols else 0
        return HomologyGroup(degree, n - rk_m - rk_next, (), coeff)
    rk_m = smith_normal_form(d_m)[1] if d_m.nrows else 0
    factors, rk_next = smith_normal_form(d_mplus1) if d_mplus1.ncols else ([], 0)
    return HomologyGroup(degree, n - rk_m - rk_next, tuple(f for f in factors if f > 1))
