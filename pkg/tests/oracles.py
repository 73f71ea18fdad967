"""Reference computations that share no code with the package.

Everything here works on small dense integer matrices with a textbook
Smith reduction, so it can serve as an independent check of the sparse
machinery.
"""

from __future__ import annotations

from itertools import product
from math import gcd


def naive_snf_diagonal(A: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form, by repeated min-pivot elimination."""
    A = [row[:] for row in A]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            piv = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                entries = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
                entries += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
                _, i, j = min(entries)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # make the pivot divide the rest of the block
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if A[i][j] % A[t][t]:
                        A[t] = [a + b for a, b in zip(A[t], A[i])]
                        done = False
                        break
                if not done:
                    break
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def invariant_factors(diag: list[int]) -> list[int]:
    """Invariant factors (including 1s) of a diagonal matrix, via prime-power regrouping."""
    diag = [abs(d) for d in diag if d]
    r = len(diag)
    powers: dict[int, list[int]] = {}
    for d in diag:
        p = 2
        while d > 1:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                powers.setdefault(p, []).append(e)
            p += 1
    out = [1] * r
    for p, exps in powers.items():
        exps = sorted(exps)
        for i, e in enumerate(exps):
            out[r - len(exps) + i] *= p**e
    return out


def integral_homology(dims: list[int], boundaries: dict[int, list[list[int]]], top: int) -> list[tuple[int, list[int]]]:
    """``(betti, torsion)`` for degrees ``0..top``; ``boundaries[k]`` is ``d_k`` as a dim[k-1] x dim[k] matrix."""
    ranks, tors = {}, {}
    for k in range(1, top + 2):
        M = boundaries.get(k)
        if M is None or not M or not M[0]:
            ranks[k], tors[k] = 0, []
            continue
        d = naive_snf_diagonal(M)
        ranks[k] = len(d)
        tors[k] = sorted(x for x in d if x > 1)
    out = []
    for k in range(top + 1):
        rk_in = ranks.get(k, 0) if k > 0 else 0
        out.append((dims[k] - rk_in - ranks[k + 1], tors[k + 1]))
    return out


def bar_complex(m: int, top: int) -> tuple[list[int], dict[int, list[list[int]]]]:
    """Normalized chains of the simplicial classifying model of ``Z/m``.

    Basis in degree k: words ``[g_1|...|g_k]`` of nonzero residues.
    ``d = [g_2..] + sum (-1)^i [..g_i + g_{i+1}..] + (-1)^k [..g_{k-1}]``, words
    with a zero letter dropped.
    """
    bases = [list(product(range(1, m), repeat=k)) for k in range(top + 1)]
    dims = [len(b) for b in bases]
    bds = {}
    for k in range(1, top + 1):
        idx = {w: i for i, w in enumerate(bases[k - 1])}
        M = [[0] * len(bases[k]) for _ in bases[k - 1]]
        for j, w in enumerate(bases[k]):
            terms = [(1, w[1:])]
            for i in range(1, k):
                terms.append(((-1) ** i, w[: i - 1] + ((w[i - 1] + w[i]) % m,) + w[i + 1:]))
            terms.append(((-1) ** k, w[:-1]))
            for s, t in terms:
                if 0 not in t:
                    M[idx[t]][j] += s
        bds[k] = M
    return dims, bds


def bar_homology(m: int, top: int) -> list[tuple[int, list[int]]]:
    dims, bds = bar_complex(m, top + 1)
    return integral_homology(dims, bds, top)


def primary_parts(betti: int, torsion: list[int]) -> tuple[int, list[int]]:
    """``(betti, sorted prime-power orders)`` of ``Z^betti + sum Z/t``."""
    out = []
    for t in torsion:
        p = 2
        while t > 1:
            if t % p == 0:
                q = 1
                while t % p == 0:
                    t //= p
                    q *= p
                out.append(q)
            p += 1
    return betti, sorted(out)


def kunneth(HX: list[tuple[int, list[int]]], HY: list[tuple[int, list[int]]], top: int) -> list[tuple[int, list[int]]]:
    """Integral homology of ``X x Y`` from finitely generated factors (cyclic decompositions)."""

    def cyclic(h):
        betti, tors = h
        return [0] * betti + list(tors)

    def tensor(a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        return gcd(a, b)

    out = []
    for k in range(top + 1):
        summands = []
        for i in range(k + 1):
            j = k - i
            if i < len(HX) and j < len(HY):
                summands += [tensor(a, b) for a in cyclic(HX[i]) for b in cyclic(HY[j])]
        for i in range(k):
            j = k - 1 - i
            if i < len(HX) and j < len(HY):
                summands += [gcd(a, b) for a in cyclic(HX[i]) for b in cyclic(HY[j]) if a and b]
        summands = [s for s in summands if s != 1]
        out.append((summands.count(0), sorted(s for s in summands if s)))
    return out


def serre_two_row_dims(max_deg: int, transgression: int, p: int = 2) -> list[int]:
    """Field cohomology dims for a fibration over ``S^2`` with fiber ``K(Z/2, 1)``, mod 2.

    ``E_2 = H^*(S^2) (x) F_2[x]`` has one-dimensional entries in columns 0 and
    2; ``d_2(x^k) = k x^(k-1) z`` times ``transgression``.  Two columns, so
    ``E_3 = E_inf``.
    """
    rank_d2 = [((q * transgression) % p) if q > 0 else 0 for q in range(max_deg + 2)]
    dims = []
    for k in range(max_deg + 1):
        e0 = 1 - rank_d2[k]
        e2 = (1 - rank_d2[k - 1]) if k >= 2 else 0
        dims.append(e0 + e2)
    return dims


def bar_cup_power_nonzero(k: int) -> bool:
    """Alexander-Whitney cup power of the generator of ``H^1(B Z/2; F_2)`` on ``[1|...|1]``."""
    word = (1,) * k
    value = 1
    for i in range(k):
        value *= word[i]
    return value % 2 == 1


def simplicial_boundary_matrices(simplices: list[tuple[int, ...]]) -> tuple[list[int], dict[int, list[list[int]]]]:
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in sorted(set(simplices)):
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim)
    dims = [len(by_dim.get(k, [])) for k in range(top + 2)]
    bds = {}
    for k in range(1, top + 1):
        idx = {s: i for i, s in enumerate(by_dim[k - 1])}
        M = [[0] * len(by_dim[k]) for _ in by_dim[k - 1]]
        for j, s in enumerate(by_dim[k]):
            for i in range(len(s)):
                M[idx[s[:i] + s[i + 1:]]][j] += (-1) ** i
        bds[k] = M
    return dims, bds


def int_det(A: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]
