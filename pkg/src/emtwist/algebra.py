"""The bigraded algebra ``A = C^*(K, C_*(L(pi, n)))`` and its twisting elements.

An element is a finite integer combination of terms ``(sigma, tau)`` with
``sigma`` a simplex of K and ``tau`` a nondegenerate cube of ``L(pi, n)``;
the term has bidegree ``(dim sigma, -dim tau)`` and total degree
``t = dim sigma - dim tau``.

Sign conventions, pinned by the tests:

* product: ``(x y)(sigma) = sum_k (-1)^(k t_y) x(sigma[0..k]) o y(sigma[k..])``
* differential: ``(D x)(sigma) = d_L x(sigma) + (-1)^(t+1) sum_j (-1)^j x(sigma_j)``

With these, D is a derivation of degree +1 and ``a(z)`` below satisfies
``D a = a a``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from .base import BaseCochain, BaseComplex, Chain, Prism, Simplex, SimplicialMap, face_of, w1_chain, w2_chain
from .coeffs import CoeffGroup
from .cube import FIX0, FREE, cells, cube_image_simplex
from .emspace import EmCube, cube_boundary, degenerate, product
from .errors import MissingComponent, NotACocycle
from .base import is_cocycle

Term = tuple[Simplex, EmCube]


@lru_cache(maxsize=200_000)
def _cached_boundary(tau: EmCube) -> tuple[tuple[EmCube, int], ...]:
    return tuple(cube_boundary(tau).items())


@lru_cache(maxsize=200_000)
def _cached_degenerate(tau: EmCube) -> bool:
    return tau.p > 0 and degenerate(tau)


class Algebra:
    """Shared context for elements over a fixed base K, group pi and n."""

    def __init__(self, K: BaseComplex, group: CoeffGroup, n: int):
        self.K = K
        self.group = group
        self.n = n
        cof: dict[Simplex, list[tuple[Simplex, int]]] = {}
        for s in K.simplices:
            if len(s) > 1:
                for j in range(len(s)):
                    cof.setdefault(face_of(s, j), []).append((s, j))
        self._cofaces = cof

    def cofaces(self, s: Simplex) -> list[tuple[Simplex, int]]:
        """Pairs ``(S, j)`` with ``S_j == s``."""
        return self._cofaces.get(s, [])

    def element(self, terms: Mapping[Term, int] | Iterable[tuple[Term, int]] = ()) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def unit(self) -> "AlgebraElement":
        """The cochain sending every vertex to the 0-cube."""
        e = EmCube(self.n, 0, self.group.modulus, ())
        return AlgebraElement(self, {((v,), e): 1 for v in {s[0] for s in self.K.simplices}})

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and (self.K, self.group, self.n) == (other.K, other.group, other.n)

    def __hash__(self) -> int:
        return hash((self.K, self.group, self.n))


class AlgebraElement:
    __slots__ = ("algebra", "terms", "_by_first", "_by_simplex")

    def __init__(self, algebra: Algebra, terms: Mapping[Term, int] | Iterable[tuple[Term, int]] = ()):
        self.algebra = algebra
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Term, int] = {}
        for (s, tau), c in items:
            if c and not _cached_degenerate(tau):
                key = (tuple(s), tau)
                out[key] = out.get(key, 0) + c
        self.terms = {k: v for k, v in out.items() if v}
        self._by_first = None
        self._by_simplex = None

    # -- structure --------------------------------------------------------

    def __repr__(self) -> str:
        return f"AlgebraElement({len(self.terms)} terms, bidegrees={sorted(self.bidegrees())})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __iter__(self) -> Iterator[tuple[Term, int]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(s) - 1, -tau.p) for (s, tau) in self.terms}

    def total_degrees(self) -> set[int]:
        return {len(s) - 1 - tau.p for (s, tau) in self.terms}

    def component(self, p: int, q: int) -> "AlgebraElement":
        """The part in bidegree ``(p, -q)``."""
        return AlgebraElement(self.algebra, {k: v for k, v in self.terms.items() if len(k[0]) - 1 == p and k[1].p == q})

    def at(self, s: Simplex) -> dict[EmCube, int]:
        """The chain ``x(s)``."""
        if self._by_simplex is None:
            idx: dict[Simplex, dict[EmCube, int]] = {}
            for (t, tau), c in self.terms.items():
                idx.setdefault(t, {})[tau] = c
            self._by_simplex = idx
        return self._by_simplex.get(tuple(s), {})

    def _first_index(self) -> dict[int, list[tuple[Simplex, EmCube, int]]]:
        if self._by_first is None:
            idx: dict[int, list[tuple[Simplex, EmCube, int]]] = {}
            for (s, tau), c in self.terms.items():
                idx.setdefault(s[0], []).append((s, tau, c))
            self._by_first = idx
        return self._by_first

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return AlgebraElement(self.algebra, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "AlgebraElement":
        if not isinstance(k, int):
            return NotImplemented
        return AlgebraElement(self.algebra, {t: k * v for t, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return algebra_product(self, other)

    def d(self) -> "AlgebraElement":
        return algebra_differential(self)

    def reduce_mod(self, m: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: v % m for k, v in self.terms.items()})


def algebra_product(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    K = x.algebra.K
    yidx = y._first_index()
    out: dict[Term, int] = {}
    for (s1, t1), c1 in x.terms.items():
        k = len(s1) - 1
        for s2, t2, c2 in yidx.get(s1[-1], ()):
            s = s1 + s2[1:]
            if len(s2) > 1 and s not in K:
                continue
            ty = len(s2) - 1 - t2.p
            sign = -1 if (k * ty) % 2 else 1
            key = (s, product(t1, t2))
            out[key] = out.get(key, 0) + sign * c1 * c2
    return AlgebraElement(x.algebra, out)


def algebra_differential(x: AlgebraElement) -> AlgebraElement:
    A = x.algebra
    out: dict[Term, int] = {}
    for (s, tau), c in x.terms.items():
        for f, e in _cached_boundary(tau):
            key = (s, f)
            out[key] = out.get(key, 0) + e * c
        t = len(s) - 1 - tau.p
        base_sign = 1 if t % 2 else -1
        for S, j in A.cofaces(s):
            key = (S, tau)
            out[key] = out.get(key, 0) + base_sign * (-1 if j % 2 else 1) * c
    return AlgebraElement(A, out)


def inverse(g: AlgebraElement, max_terms: int | None = None) -> AlgebraElement:
    """Inverse of ``1 + p`` by the terminating series ``sum (-p)^k``."""
    A = g.algebra
    one = A.unit()
    p = g - one
    result = one
    power = one
    limit = A.K.dim + 2 if max_terms is None else max_terms
    for _ in range(limit):
        power = -(power * p)
        if power.is_zero():
            return result
        result = result + power
    if not power.is_zero():
        raise ValueError("element is not of the form 1 + nilpotent")
    return result


# ---------------------------------------------------------------------------
# kappa and twisting cochains


@lru_cache(maxsize=None)
def kappa_pattern(m: int, n: int) -> tuple[tuple[int, tuple[int, ...] | None], ...]:
    """For each n-cell of ``I^m``: the vertex set (in ``Delta^{m+1}``) it reads z on, or None."""
    out = []
    for c in cells(m, n):
        u = (FIX0,) + c
        free = [i for i, x in enumerate(u) if x == FREE]
        if not free or any(u[i] == FIX0 for i in range(free[0], free[-1]) if u[i] != FREE):
            out.append(None)
            continue
        z0 = max(i for i in range(free[0]) if u[i] == FIX0)
        w = (1,) * z0 + (FREE,) + u[z0 + 1:]
        out.append(cube_image_simplex(w))
    return tuple(out)


def kappa(z: BaseCochain, s: Simplex, n: int | None = None) -> EmCube:
    """``kappa_z(s)`` for an (m+1)-simplex s: an n-cocycle on ``I^m``."""
    n = z.degree - 1 if n is None else n
    if z.degree != n + 1:
        raise ValueError(f"z has degree {z.degree}, expected {n + 1}")
    m = len(s) - 1 - 1
    if m < 0:
        raise ValueError("kappa needs a simplex of dimension >= 1")
    g = z.group
    vals = []
    for v in kappa_pattern(m, n):
        vals.append(0 if v is None else g.reduce(z(tuple(s[i] for i in v))))
    return EmCube(n, m, g.modulus, vals)


def twisting_cochain(z: BaseCochain, A: Algebra | None = None, check: bool = True) -> AlgebraElement:
    """``a(z) = sum_{m >= n} (sigma^{m+1}, kappa_z(sigma^{m+1}))``."""
    n = z.degree - 1
    if n < 1:
        raise ValueError("z must have degree >= 2")
    if check and not is_cocycle(z):
        raise NotACocycle("z is not a cocycle")
    A = A or Algebra(z.complex, z.group, n)
    terms = {}
    for s in z.complex.simplices:
        if len(s) - 1 >= n + 1:
            terms[(s, kappa(z, s, n))] = 1
    return AlgebraElement(A, terms)


def beta(x: AlgebraElement, degree: int | None = None) -> BaseCochain:
    """Apply ``[g] -> g`` to the terms whose cube has dimension n."""
    A = x.algebra
    n = A.n
    vals: dict[Simplex, int] = {}
    degs = set()
    for (s, tau), c in x.terms.items():
        if tau.p == n:
            degs.add(len(s) - 1)
            vals[s] = vals.get(s, 0) + c * tau.values[0]
    if not vals and not x.is_zero() and degree is None:
        raise MissingComponent(f"no component with cubes of dimension {n}")
    if len(degs) > 1:
        raise MissingComponent(f"components of second degree -{n} sit in several base degrees {sorted(degs)}")
    d = degs.pop() if degs else (n + 1 if degree is None else degree)
    return BaseCochain(A.K, d, A.group, vals)


def gauge_transform(a: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """``g^{-1} a g - g^{-1} D g``, the twisting element with ``D g = a g - g a_bar``."""
    gi = inverse(g)
    return gi * a * g - gi * g.d()


# ---------------------------------------------------------------------------
# transport along simplicial maps and prism operators


def pullback(x: AlgebraElement, f: SimplicialMap, target: Algebra | None = None) -> AlgebraElement:
    """``(f^* x)(s) = x(f(s))``, zero where f collapses s."""
    A = x.algebra
    B = target or Algebra(f.source, A.group, A.n)
    out = {}
    for s in f.source.simplices:
        img = f(s)
        if len(set(img)) != len(img):
            continue
        for tau, c in x.at(img).items():
            out[(s, tau)] = c
    return AlgebraElement(B, out)


def w_star(x: AlgebraElement, P: Prism, chain: Callable[[Prism, Simplex], Chain], target: Algebra | None = None) -> AlgebraElement:
    """``(w^* x)(s) = x(w(s))`` for a chain operator ``w: C_*(K) -> C_{*+k}(K x Delta^k)``."""
    A = x.algebra
    B = target or Algebra(P.base, A.group, A.n)
    out: dict[Term, int] = {}
    for s in P.base.simplices:
        for T, e in chain(P, s).items():
            for tau, c in x.at(T).items():
                key = (s, tau)
                out[key] = out.get(key, 0) + e * c
    return AlgebraElement(B, out)


def w1_star(x: AlgebraElement, P: Prism, target: Algebra | None = None) -> AlgebraElement:
    return w_star(x, P, w1_chain, target)


def w2_star(x: AlgebraElement, P: Prism, target: Algebra | None = None) -> AlgebraElement:
    return w_star(x, P, w2_chain, target)


def u_from_prism_cocycle(zp: BaseCochain, P: Prism, A: Algebra | None = None) -> AlgebraElement:
    """``w_1^* a(z_{K x I})``."""
    Ap = Algebra(P.complex, zp.group, zp.degree - 1)
    return w1_star(twisting_cochain(zp, Ap), P, A)


def u_element(c: BaseCochain, z: BaseCochain, P: Prism | None = None, A: Algebra | None = None) -> AlgebraElement:
    """``u(c, z) = w_1^* a(Pr^* z + d c_bar)`` with ``c_bar`` the cochain c on ``K x 0``.

    ``D u = a_0 - a_1 + a_0 u - u a_1`` with ``a_0 = a(z + dc)``, ``a_1 = a(z)``,
    so ``1 + u`` gauges ``a(z + dc)`` to ``a(z)``.
    """
    from .base import prism, prism_cocycle

    P = P or prism(z.complex)
    return u_from_prism_cocycle(prism_cocycle(c, z, P), P, A)


def v_element(z2: BaseCochain, P2: Prism, A: Algebra | None = None) -> AlgebraElement:
    """``v = w_2^* a(z2)`` for a cocycle z2 on ``K x Delta^2``."""
    Ap = Algebra(P2.complex, z2.group, z2.degree - 1)
    return w2_star(twisting_cochain(z2, Ap), P2, A)
