"""Exact checks of the twisting, gauge and action identities.

Each check returns a ``CheckResult``; a failing check carries the first
offending generator as a readable counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import (
    Algebra,
    AlgebraElement,
    beta,
    gauge_transform,
    pullback,
    twisting_cochain,
    u_element,
    v_element,
    w1_star,
)
from .base import BaseCochain, BaseComplex, coboundary, edge_inclusions, is_cocycle, prism, prism2
from .coeffs import CoeffGroup
from .linalg import SparseIntMatrix
from .model import TwistedModel, homology_action, phi_action, twisted_boundary_via_cap


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    counterexample: str | None = None

    def to_json(self) -> dict:
        out = {"check": self.name, "passed": self.passed, "details": self.details}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out

    def __str__(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" ({self.counterexample})" if self.counterexample else ""
        return f"{tag} {self.name}{extra}"


def _first_term(x: AlgebraElement) -> str | None:
    if x.is_zero():
        return None
    (s, tau), c = min(x.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], kv[0][1]))
    return f"simplex {list(s)}, cube {tau!r}, coefficient {c}"


def random_cochain(K: BaseComplex, degree: int, group: CoeffGroup, rng: random.Random) -> BaseCochain:
    m = group.modulus or 5
    return BaseCochain(K, degree, group, {s: rng.randrange(m) for s in K.simplices_of_dim(degree)})


def check_twisting(z: BaseCochain, A: Algebra | None = None) -> CheckResult:
    """``D a(z) = a(z) a(z)`` and ``beta(a(z)) = z``."""
    A = A or Algebra(z.complex, z.group, z.degree - 1)
    a = twisting_cochain(z, A)
    residual = a.d() - a * a
    b_ok = beta(a, degree=z.degree) == z
    details = {"terms": len(a.terms), "residual_terms": len(residual.terms), "beta_matches": b_ok}
    cex = _first_term(residual)
    if cex is None and not b_ok:
        cex = "beta(a(z)) differs from z"
    return CheckResult("twisting", residual.is_zero() and b_ok, details, cex)


def check_lemma_4_2(z: BaseCochain, c: BaseCochain, A: Algebra | None = None) -> CheckResult:
    """``D u = a0 - a1 + a0 u - u a1`` for ``u = u(c, z)``, ``a0 = a(z + dc)``, ``a1 = a(z)``;
    also ``1 + u`` gauges ``a0`` to ``a1``."""
    A = A or Algebra(z.complex, z.group, z.degree - 1)
    u = u_element(c, z, A=A)
    a0 = twisting_cochain(z + coboundary(c), A)
    a1 = twisting_cochain(z, A)
    residual = u.d() - (a0 - a1 + a0 * u - u * a1)
    gauge_ok = gauge_transform(a0, A.unit() + u) == a1
    total = u.total_degrees()
    details = {
        "u_terms": len(u.terms),
        "u_total_degrees": sorted(total),
        "residual_terms": len(residual.terms),
        "gauge_matches": gauge_ok,
    }
    cex = _first_term(residual)
    if cex is None and not gauge_ok:
        cex = "gauge transform of a(z + dc) by 1 + u differs from a(z)"
    ok = residual.is_zero() and gauge_ok and total <= {0}
    return CheckResult("lemma-4-2", ok, details, cex)


def lemma_7_1_residual(z2: BaseCochain, K: BaseComplex) -> tuple[AlgebraElement, dict]:
    """``D v - (u02 - u01 - u12 - u01 u12 + a0 v + v a2)`` for ``v = w2^* a(z2)``."""
    g, n = z2.group, z2.degree - 1
    A = Algebra(K, g, n)
    P1, P2 = prism(K), prism2(K)
    A1, A2 = Algebra(P1.complex, g, n), Algebra(P2.complex, g, n)
    a2full = twisting_cochain(z2, A2)
    us = {k: w1_star(pullback(a2full, f, A1), P1, A) for k, f in edge_inclusions(P2).items()}
    aj = [twisting_cochain(P2.restrict(z2, j), A) for j in range(3)]
    v = v_element(z2, P2, A)
    u01, u12, u02 = us["01"], us["12"], us["02"]
    rhs = u02 - u01 - u12 - u01 * u12 + aj[0] * v + v * aj[2]
    residual = v.d() - rhs
    details = {
        "v_terms": len(v.terms),
        "v_total_degrees": sorted(v.total_degrees()),
        "v_bidegrees": sorted(v.bidegrees()),
    }
    return residual, details


def check_lemma_7_1(z: BaseCochain, c2: BaseCochain | None = None, seed: int = 0) -> CheckResult:
    """The v identity on ``z2 = Pr^* z + d c2`` over ``K x Delta^2`` (c2 random when omitted)."""
    K = z.complex
    P2 = prism2(K)
    if c2 is None:
        c2 = random_cochain(P2.complex, z.degree - 1, z.group, random.Random(seed))
    z2 = P2.pr_star(z) + coboundary(c2)
    residual, details = lemma_7_1_residual(z2, K)
    details["residual_terms"] = len(residual.terms)
    ok = residual.is_zero() and set(details["v_total_degrees"]) <= {-1}
    return CheckResult("lemma-7-1", ok, details, _first_term(residual))


def _matrix_diff(A: SparseIntMatrix, B: SparseIntMatrix) -> tuple[int, int] | None:
    for j in range(A.ncols):
        a, b = A.column(j), B.column(j)
        if a != b:
            rows = sorted(set(a) | set(b))
            for r in rows:
                if a.get(r, 0) != b.get(r, 0):
                    return r, j
    return None


def check_route_equality(model: TwistedModel, max_deg: int, corrupt: bool = False) -> CheckResult:
    """Face-list boundary equals ``d_Y + a *`` through ``max_deg``.

    ``corrupt`` flips the sign of the twisting element in the second route,
    a negative control that must fail.
    """
    a = model.twisting_element
    if corrupt:
        a = -a
    checked = []
    for m in range(1, max_deg + 1):
        B1 = model.boundary_from_faces(m)
        B2 = model.boundary_via_cap(m, a)
        B0 = model.boundary(m)
        for X, Y in ((B1, B2), (B1, B0)):
            diff = _matrix_diff(X, Y)
            if diff is not None:
                r, j = diff
                x = model.basis(m)[j]
                cex = f"degree {m}: generator ({list(x[0])}, {x[1]!r}) row {r}"
                return CheckResult("route-equality", False, {"degrees_checked": checked, "failed_degree": m}, cex)
        checked.append(m)
    return CheckResult("route-equality", True, {"degrees_checked": checked})


def check_phi_chain_map(model_src: TwistedModel, model_dst: TwistedModel, g: AlgebraElement, max_deg: int) -> CheckResult:
    """``d_dst phi_g = phi_g d_src`` on every generator through ``max_deg``."""
    a_src, a_dst = model_src.twisting_element, model_dst.twisting_element
    for m in range(1, max_deg + 1):
        for x in model_src.basis(m):
            lhs = twisted_boundary_via_cap(a_dst, phi_action(g, {x: 1}))
            rhs = phi_action(g, twisted_boundary_via_cap(a_src, {x: 1}))
            for k in set(lhs) | set(rhs):
                if lhs.get(k, 0) != rhs.get(k, 0):
                    cex = f"degree {m}: generator ({list(x[0])}, {x[1]!r})"
                    return CheckResult("phi-chain-map", False, {"failed_degree": m}, cex)
    return CheckResult("phi-chain-map", True, {"degrees_checked": list(range(1, max_deg + 1))})


def _identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _matmul_mod(X: list[list[int]], Y: list[list[int]], p: int) -> list[list[int]]:
    if not X:
        return []
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) % p for j in range(len(Y[0]))] for i in range(len(X))]


def check_action_laws(
    model: TwistedModel,
    max_deg: int,
    p: int,
    cocycles: list[BaseCochain] | None = None,
    seed: int = 0,
) -> CheckResult:
    """Action of ``H^n(K, pi)`` on ``H_{<= max_deg}(Y_z; F_p)``.

    Checks that ``phi_{1+u(c, z)}`` is a chain map for each c (and for a
    random non-closed c, as a map ``Y_z -> Y_{z + dc}``), that c = 0 and
    c = db act trivially, and that the action is additive in c.
    """
    rng = random.Random(seed)
    K, g, n = model.K, model.group, model.n
    z = model.z if model.z is not None else BaseCochain(K, n + 1, g)
    A = model.algebra
    details: dict = {}

    c_any = random_cochain(K, n, g, rng)
    other = TwistedModel(K, z + coboundary(c_any), g, n, model.top, model.em.cap)
    gu = A.unit() + u_element(c_any, z, A=A)
    res = check_phi_chain_map(model, other, gu, min(max_deg, model.top))
    if not res.passed:
        return CheckResult("action-laws", False, {"step": "phi chain map"}, res.counterexample)

    zero = BaseCochain(K, n, g)
    exact = coboundary(random_cochain(K, n - 1, g, rng))
    cocycles = [c for c in (cocycles or []) if is_cocycle(c)]
    Hs = {m: model.field_homology(m, p) for m in range(max_deg + 1)}
    for m in range(max_deg + 1):
        k = Hs[m].dimension
        for label, c in (("zero", zero), ("exact", exact)):
            if homology_action(model, c, m, p, Hs[m]) != (_identity(k) if k else []):
                return CheckResult("action-laws", False, {"step": label}, f"H_{m}: class of {label} cocycle acts nontrivially")
        for i, c1 in enumerate(cocycles):
            for c2 in cocycles[i:]:
                M1 = homology_action(model, c1, m, p, Hs[m])
                M2 = homology_action(model, c2, m, p, Hs[m])
                M12 = homology_action(model, c1 + c2, m, p, Hs[m])
                if k and _matmul_mod(M2, M1, p) != M12:
                    return CheckResult("action-laws", False, {"step": "additivity"}, f"H_{m}: action of c1 + c2 differs")
        details[f"H_{m}"] = k
    details["cocycles"] = len(cocycles)
    return CheckResult("action-laws", True, details)
