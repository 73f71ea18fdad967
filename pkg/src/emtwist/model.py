"""The twisted model ``Y_z(K, pi, n)``: chains of the cubical complex ``K x_z L(pi, n)``.

A generator is a pair ``(sigma, tau)`` of a p-simplex of K and a
nondegenerate q-cube of ``L(pi, n)``, of dimension ``p + q``.  Its faces in
the directions ``1..p`` come from the simplex (twisted through ``kappa_z``)
and those in ``p+1..p+q`` act on ``tau``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .algebra import Algebra, AlgebraElement, kappa, twisting_cochain
from .base import BaseCochain, BaseComplex, Simplex, face_of, is_cocycle
from .coeffs import CoeffGroup
from .emspace import DEFAULT_CAP, EMComplex, EmCube, degenerate, em_chain_complex, face, product
from .errors import NotACocycle
from .linalg import FieldHomology, HomologyGroup, SparseIntMatrix, homology_from_boundaries

Pair = tuple[Simplex, EmCube]
YChain = dict[Pair, int]


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


class KappaCache:
    """Memoized ``kappa_z`` on the simplices of K (z may be None for zero)."""

    def __init__(self, z: BaseCochain | None, group: CoeffGroup, n: int):
        self.z = z
        self.group = group
        self.n = n
        self._memo: dict[Simplex, EmCube] = {}

    def __call__(self, s: Simplex) -> EmCube:
        out = self._memo.get(s)
        if out is None:
            m = len(s) - 2
            if self.z is None:
                from .cube import cells

                out = EmCube(self.n, m, self.group.modulus, [0] * len(cells(m, self.n)))
            else:
                out = kappa(self.z, s, self.n)
            self._memo[s] = out
        return out


def pair_face(x: Pair, i: int, eps: int, kap: KappaCache) -> Pair:
    """The face ``d_i^eps`` of a pair, as a single (possibly degenerate) pair."""
    s, tau = x
    p = len(s) - 1
    if i > p:
        return s, face(tau, i - p, eps)
    if not 1 <= i:
        raise ValueError(f"face direction {i} out of range")
    if eps == 1:
        return face_of(s, i - 1), tau
    if i == p:
        return face_of(s, p), tau
    return s[:i], product(kap(s[i - 1:]), tau)


def twisted_faces(x: Pair, z: BaseCochain | None, kap: KappaCache | None = None) -> list[tuple[int, Pair]]:
    """Signed faces ``(-1)^i d_i^0`` and ``-(-1)^i d_i^1`` of a pair, unnormalized."""
    s, tau = x
    if kap is None:
        kap = KappaCache(z, CoeffGroup(tau.modulus), tau.n)
    out = []
    for i in range(1, len(s) - 1 + tau.p + 1):
        e = _sgn(i)
        out.append((e, pair_face(x, i, 0, kap)))
        out.append((-e, pair_face(x, i, 1, kap)))
    return out


def _normalized(chain: Mapping[Pair, int]) -> YChain:
    out: YChain = {}
    for (s, tau), c in chain.items():
        if c and not (tau.p > 0 and degenerate(tau)):
            out[(s, tau)] = out.get((s, tau), 0) + c
    return {k: v for k, v in out.items() if v}


def twisted_boundary_of_pair(x: Pair, z: BaseCochain | None, kap: KappaCache | None = None) -> YChain:
    acc: YChain = {}
    for e, f in twisted_faces(x, z, kap):
        acc[f] = acc.get(f, 0) + e
    return _normalized(acc)


# ---------------------------------------------------------------------------
# module structure


def untwisted_boundary(y: Mapping[Pair, int]) -> YChain:
    """``d_Y (s x tau) = ds x tau + (-1)^p s x d tau``."""
    from .algebra import _cached_boundary

    out: YChain = {}
    for (s, tau), c in y.items():
        p = len(s) - 1
        if p > 0:
            for j in range(p + 1):
                key = (face_of(s, j), tau)
                out[key] = out.get(key, 0) + _sgn(j) * c
        for f, e in _cached_boundary(tau):
            key = (s, f)
            out[key] = out.get(key, 0) + _sgn(p) * e * c
    return {k: v for k, v in out.items() if v}


def act(x: AlgebraElement, y: Mapping[Pair, int]) -> YChain:
    """``x * (s x tau) = sum_j (-1)^(t_x (j+1)) s[0..j] x x(s[j..p]) o tau``."""
    out: YChain = {}
    for (s, tau), c in y.items():
        p = len(s) - 1
        for j in range(p + 1):
            back = s[j:]
            for xc, xv in x.at(back).items():
                tx = len(back) - 1 - xc.p
                key = (s[: j + 1], product(xc, tau))
                out[key] = out.get(key, 0) + _sgn(tx * (j + 1)) * xv * c
    return _normalized(out)


def twisted_boundary_via_cap(a: AlgebraElement, y: Mapping[Pair, int]) -> YChain:
    """``d_a y = d_Y y + a * y``."""
    out = untwisted_boundary(y)
    for k, v in act(a, y).items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def phi_action(g: AlgebraElement, y: Mapping[Pair, int]) -> YChain:
    """``phi_g(y) = g * y``; for ``g = 1 + u`` this is ``y + u * y``."""
    return act(g, y)


# ---------------------------------------------------------------------------
# the model complex


class TwistedModel:
    """Normalized chains of ``K x_z L(pi, n)`` through total degree ``top``.

    The degree-m basis lists pairs by base dimension p, then simplex, then
    the cube order of ``EMComplex.basis(m - p)``.
    """

    def __init__(
        self,
        K: BaseComplex,
        z: BaseCochain | None,
        group: CoeffGroup,
        n: int,
        top: int,
        cap: int = DEFAULT_CAP,
    ):
        if z is not None:
            if z.degree != n + 1:
                raise ValueError(f"z has degree {z.degree}, expected {n + 1}")
            if not is_cocycle(z):
                raise NotACocycle("z is not a cocycle")
            if z.group != group:
                raise ValueError(f"z has coefficients in {z.group}, expected {group}")
            if z.is_zero():
                z = None
        self.K = K
        self.z = z
        self.group = group
        self.n = n
        self.top = top
        self.em: EMComplex = em_chain_complex(group, n, top, cap)
        self.kappa = KappaCache(z, group, n)
        self._offsets: list[dict[Simplex, int]] = []
        self._sizes: list[int] = []
        for m in range(top + 1):
            offs, pos = {}, 0
            for p in range(min(m, K.dim) + 1):
                r = self.em.rank(m - p)
                for s in K.simplices_of_dim(p):
                    offs[s] = pos
                    pos += r
            self._offsets.append(offs)
            self._sizes.append(pos)
        self._boundaries: dict[int, SparseIntMatrix] = {}
        self._basis: dict[int, list[Pair]] = {}
        self._algebra: Algebra | None = None
        self._a: AlgebraElement | None = None
        self._cup_tables: dict[tuple[int, int], tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    @property
    def algebra(self) -> Algebra:
        if self._algebra is None:
            self._algebra = Algebra(self.K, self.group, self.n)
        return self._algebra

    @property
    def twisting_element(self) -> AlgebraElement:
        if self._a is None:
            self._a = self.algebra.zero() if self.z is None else twisting_cochain(self.z, self.algebra)
        return self._a

    def rank(self, m: int) -> int:
        return self._sizes[m] if 0 <= m <= self.top else 0

    def basis(self, m: int) -> list[Pair]:
        if m not in self._basis:
            out = []
            for s in self._offsets[m]:
                out.extend((s, tau) for tau in self.em.basis(m - len(s) + 1))
            self._basis[m] = out
        return self._basis[m]

    def index_of(self, x: Pair) -> int | None:
        s, tau = x
        m = len(s) - 1 + tau.p
        off = self._offsets[m].get(s) if 0 <= m <= self.top else None
        if off is None:
            return None
        j = self.em.index(tau.p).get(tau)
        return None if j is None else off + j

    def vector(self, y: Mapping[Pair, int]) -> dict[int, int]:
        out = {}
        for x, c in y.items():
            i = self.index_of(x)
            if i is None:
                if not (x[1].p > 0 and degenerate(x[1])):
                    raise KeyError(f"{x} is not a basis element")
                continue
            out[i] = out.get(i, 0) + c
        return {k: v for k, v in out.items() if v}

    def chain(self, m: int, vec: Mapping[int, int]) -> YChain:
        B = self.basis(m)
        return {B[i]: c for i, c in vec.items() if c}

    def boundary(self, m: int) -> SparseIntMatrix:
        """``d_m`` assembled from the face list of each pair."""
        if m in self._boundaries:
            return self._boundaries[m]
        if m <= 0 or m > self.top:
            M = SparseIntMatrix(self.rank(m - 1) if m > 0 else 0, self.rank(m))
            self._boundaries[m] = M
            return M
        lo = self._offsets[m - 1]
        cols: list[dict[int, int]] = []
        for s in self._offsets[m]:
            p = len(s) - 1
            q = m - p
            emd = self.em.boundary(q).columns() if q > 0 else None
            base_faces = [(face_of(s, j), _sgn(j)) for j in range(p + 1)] if p > 0 else []
            twist = []
            for i in range(1, p):
                kp = self.kappa(s[i - 1:])
                if kp.p == 0 or not degenerate(kp):
                    twist.append((s[:i], kp, _sgn(i)))
            for j, tau in enumerate(self.em.basis(q)):
                col: dict[int, int] = {}
                if emd is not None:
                    off = lo[s]
                    e = _sgn(p)
                    for r, v in emd[j].items():
                        col[off + r] = col.get(off + r, 0) + e * v
                for f, e in base_faces:
                    r = lo[f] + j
                    col[r] = col.get(r, 0) + e
                for front, kp, e in twist:
                    w = product(kp, tau)
                    if degenerate(w):
                        continue
                    r = self.index_of((front, w))
                    col[r] = col.get(r, 0) + e
                cols.append({r: v for r, v in col.items() if v})
        M = SparseIntMatrix.from_columns(self.rank(m - 1), cols)
        self._boundaries[m] = M
        return M

    def boundary_from_faces(self, m: int) -> SparseIntMatrix:
        """``d_m`` computed generator by generator from ``twisted_faces``."""
        cols = [self.vector(twisted_boundary_of_pair(x, self.z, self.kappa)) for x in self.basis(m)]
        return SparseIntMatrix.from_columns(self.rank(m - 1), cols)

    def boundary_via_cap(self, m: int, a: AlgebraElement | None = None) -> SparseIntMatrix:
        """``d_m`` computed as ``d_Y + a *``."""
        a = self.twisting_element if a is None else a
        cols = [self.vector(twisted_boundary_via_cap(a, {x: 1})) for x in self.basis(m)]
        return SparseIntMatrix.from_columns(self.rank(m - 1), cols)

    def homology(self, max_deg: int, coeff: int = 0) -> list[HomologyGroup]:
        if max_deg + 1 > self.top:
            raise ValueError(f"need chains through degree {max_deg + 1}, have {self.top}")
        return [
            homology_from_boundaries(self.boundary(m), self.boundary(m + 1), coeff, degree=m)
            for m in range(max_deg + 1)
        ]

    def field_homology(self, m: int, p: int) -> FieldHomology:
        return FieldHomology(self.boundary(m), self.boundary(m + 1), p)

    def chain_map_matrix(self, m: int, f) -> SparseIntMatrix:
        """Matrix in degree m of a map ``f`` on chains of pairs."""
        cols = [self.vector(f({x: 1})) for x in self.basis(m)]
        return SparseIntMatrix.from_columns(self.rank(m), cols)


def build_model(
    K: BaseComplex,
    z: BaseCochain | None,
    group: CoeffGroup,
    n: int,
    max_total_degree: int,
    cap: int = DEFAULT_CAP,
) -> TwistedModel:
    return TwistedModel(K, z, group, n, max_total_degree, cap)


def model_homology(
    K: BaseComplex,
    z: BaseCochain | None,
    group: CoeffGroup,
    n: int,
    max_deg: int,
    coeff: int = 0,
    cap: int = DEFAULT_CAP,
) -> list[HomologyGroup]:
    return TwistedModel(K, z, group, n, max_deg + 1, cap).homology(max_deg, coeff)


def induced_map(model: TwistedModel, m: int, p: int, f, H: FieldHomology | None = None) -> list[list[int]]:
    """Matrix over ``F_p`` of the map induced on ``H_m`` by a chain map ``f`` of the model.

    Column k holds the coordinates of ``f(rep_k)``.
    """
    H = H or model.field_homology(m, p)
    cols = []
    for rep in H.representatives:
        image = f(model.chain(m, rep))
        vec = {i: v % p for i, v in model.vector(image).items() if v % p}
        cols.append(H.coords(vec))
    return [list(r) for r in zip(*cols)] if cols else []


def homology_action(model: TwistedModel, c: BaseCochain, m: int, p: int, H: FieldHomology | None = None) -> list[list[int]]:
    """Action of ``[c] in H^n(K, pi)`` on ``H_m(Y_z; F_p)`` through ``phi_{1 + u(c, z)}``."""
    from .algebra import u_element

    if not is_cocycle(c):
        raise NotACocycle("c is not a cocycle")
    A = model.algebra
    z = model.z if model.z is not None else BaseCochain(model.K, model.n + 1, model.group)
    g = A.unit() + u_element(c, z, A=A)
    return induced_map(model, m, p, lambda y: phi_action(g, y), H)


# ---------------------------------------------------------------------------
# cochains and the cup product


class ModelCochain:
    """A degree-s cochain on the model with values in ``Z/modulus`` (0 for Z).

    Values are stored against the degree-s basis; the cochain vanishes on
    degenerate pairs.
    """

    __slots__ = ("model", "degree", "modulus", "values")

    def __init__(self, model: TwistedModel, degree: int, modulus: int, values: Mapping[int, int] | Sequence[int] = ()):
        self.model = model
        self.degree = degree
        self.modulus = modulus
        items = values.items() if isinstance(values, Mapping) else enumerate(values)
        vals = {}
        for i, v in items:
            v = v % modulus if modulus else v
            if v:
                vals[i] = v
        self.values = vals

    def __call__(self, x: Pair) -> int:
        s, tau = x
        if tau.p > 0 and degenerate(tau):
            return 0
        i = self.model.index_of(x)
        if i is None:
            raise KeyError(f"{x} is not a basis element of degree {self.degree}")
        return self.values.get(i, 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModelCochain)
            and self.degree == other.degree
            and self.modulus == other.modulus
            and self.values == other.values
        )

    def __add__(self, other: "ModelCochain") -> "ModelCochain":
        vals = dict(self.values)
        for i, v in other.values.items():
            vals[i] = vals.get(i, 0) + v
        return ModelCochain(self.model, self.degree, self.modulus, vals)

    def scale(self, k: int) -> "ModelCochain":
        return ModelCochain(self.model, self.degree, self.modulus, {i: k * v for i, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def evaluate(self, chain: Mapping[Pair, int]) -> int:
        t = sum(c * self(x) for x, c in chain.items())
        return t % self.modulus if self.modulus else t


def unit_cochain(model: TwistedModel, modulus: int) -> ModelCochain:
    return ModelCochain(model, 0, modulus, {i: 1 for i in range(model.rank(0))})


def cochain_coboundary(x: ModelCochain) -> ModelCochain:
    """``(dx)(c) = x(dc)``, the adjoint of the twisted boundary."""
    M = x.model.boundary(x.degree + 1)
    vals = {}
    for j, col in enumerate(M.columns()):
        v = sum(c * x.values.get(r, 0) for r, c in col.items())
        if v:
            vals[j] = v
    return ModelCochain(x.model, x.degree + 1, x.modulus, vals)


def _iterated_face(x: Pair, dirs: Sequence[int], eps: int, kap: KappaCache) -> Pair:
    for i in sorted(dirs, reverse=True):
        x = pair_face(x, i, eps, kap)
    return x


def _shuffle_sign(H: Sequence[int], Kset: Sequence[int]) -> int:
    return _sgn(sum(1 for h in H for k in Kset if h > k))


def cup_value(x: ModelCochain, y: ModelCochain, pair: Pair) -> int:
    """``sum_{(H, K)} (-1)^{a(H, K)} x(d_K^0 pair) y(d_H^1 pair)`` over splittings with |H| = deg x."""
    model = x.model
    s, tau = pair
    dim = len(s) - 1 + tau.p
    dirs = range(1, dim + 1)
    total = 0
    for H in combinations(dirs, x.degree):
        Kset = [i for i in dirs if i not in H]
        front = _iterated_face(pair, Kset, 0, model.kappa)
        fx = x(front)
        if not fx:
            continue
        back = _iterated_face(pair, H, 1, model.kappa)
        gy = y(back)
        if gy:
            total += _shuffle_sign(H, Kset) * fx * gy
    return total


def cup_table(model: TwistedModel, s: int, t: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index tables for the cup product of degrees s and t.

    Row j, column h gives the front face (degree s) and back face (degree t)
    basis indices of the j-th pair of degree ``s + t`` for the h-th splitting,
    with ``-1`` marking a degenerate face, together with the splitting signs.
    """
    key = (s, t)
    cache = model._cup_tables
    if key in cache:
        return cache[key]
    m = s + t
    splits = [(H, [i for i in range(1, m + 1) if i not in H]) for H in combinations(range(1, m + 1), s)]
    signs = np.array([_shuffle_sign(H, Kset) for H, Kset in splits], dtype=np.int64)
    basis = model.basis(m)
    front = np.full((len(basis), len(splits)), -1, dtype=np.int64)
    back = np.full((len(basis), len(splits)), -1, dtype=np.int64)
    for j, pair in enumerate(basis):
        for h, (H, Kset) in enumerate(splits):
            f = _iterated_face(pair, Kset, 0, model.kappa)
            if not (f[1].p > 0 and degenerate(f[1])):
                front[j, h] = model.index_of(f)
            b = _iterated_face(pair, H, 1, model.kappa)
            if not (b[1].p > 0 and degenerate(b[1])):
                back[j, h] = model.index_of(b)
    cache[key] = (front, back, signs)
    return cache[key]


def _dense(x: ModelCochain) -> np.ndarray:
    out = np.zeros(x.model.rank(x.degree) + 1, dtype=np.int64)
    for i, v in x.values.items():
        out[i] = v
    return out


def cup_product(x: ModelCochain, y: ModelCochain) -> ModelCochain:
    """``sum_{(H, K)} (-1)^{a(H, K)} x(d_K^0 c) y(d_H^1 c)``, a(H, K) = #{h > k}."""
    if x.model is not y.model or x.modulus != y.modulus:
        raise ValueError("cochains on different models or rings")
    front, back, signs = cup_table(x.model, x.degree, y.degree)
    xv, yv = _dense(x), _dense(y)
    w = (xv[front] * yv[back] * signs).sum(axis=1) if front.size else np.zeros(front.shape[0], dtype=np.int64)
    if x.modulus:
        w %= x.modulus
    return ModelCochain(x.model, x.degree + y.degree, x.modulus, {j: int(v) for j, v in enumerate(w) if v})


def pair_with_homology(x: ModelCochain, p: int, H: FieldHomology | None = None) -> list[int]:
    """Values of x on the chosen basis of ``H_s(Y; F_p)``; over a field the class of a cocycle x is zero iff all vanish."""
    H = H or x.model.field_homology(x.degree, p)
    return [sum(c * x.values.get(i, 0) for i, c in rep.items()) % p for rep in H.representatives]
