"""Acceptance criteria 1-9, each compared against an independent oracle or an exact identity.

Run with ``pytest tests/test_acceptance.py -s`` to see one line per criterion
as it finishes; the same lines are repeated in the terminal summary.
"""

import itertools
import random

from emtwist.algebra import beta, inverse, kappa, twisting_cochain, u_element
from emtwist.base import (
    BaseCochain,
    chain_add,
    chain_boundary,
    coboundary,
    edge_inclusions,
    point,
    prism,
    prism2,
    simplex_boundary,
    standard_simplex,
    w1_chain,
    w2_chain,
)
from emtwist.coeffs import CoeffGroup
from emtwist.emspace import degeneracy, em_homology, enumerate_cubes, face, generator_cube, product
from emtwist.model import (
    ModelCochain,
    TwistedModel,
    act,
    cochain_coboundary,
    cup_product,
    pair_with_homology,
    unit_cochain,
)
from emtwist.verify import (
    check_action_laws,
    check_lemma_4_2,
    check_lemma_7_1,
    check_phi_chain_map,
    check_route_equality,
)

from oracles import (
    bar_cup_power_nonzero,
    bar_homology,
    integral_homology,
    kunneth,
    serre_two_row_dims,
    simplicial_boundary_matrices,
)

Z2, Z3, Z5 = CoeffGroup(2), CoeffGroup(3), CoeffGroup(5)
S2 = simplex_boundary(3)


def as_pairs(groups):
    return [(h.betti, list(h.torsion)) for h in groups]


def all_cochains(K, k, group):
    simplices = K.simplices_of_dim(k)
    for vals in itertools.product(range(group.modulus), repeat=len(simplices)):
        yield BaseCochain(K, k, group, dict(zip(simplices, vals)))


def random_cochain(rng, K, k, group):
    return BaseCochain(K, k, group, {s: rng.randrange(group.modulus or 7) for s in K.simplices_of_dim(k)})


def test_criterion_1_em_homology_z2(criterion):
    with criterion(1, limit=120) as c:
        got = as_pairs(em_homology(Z2, 1, 3))
        want = bar_homology(2, 3)
        c.check(got == want, f"H_0..H_3 = {got}, bar-complex oracle {want}")


def test_criterion_2_em_homology_z3(criterion):
    with criterion(2, limit=60) as c:
        got = as_pairs(em_homology(Z3, 1, 2))
        want = bar_homology(3, 2)
        c.check(got == want, f"H_0..H_2 = {got}, bar-complex oracle {want}")


def test_criterion_3_untwisted_model(criterion):
    with criterion(3, limit=300) as c:
        dims, bds = simplicial_boundary_matrices(S2.simplices)
        h_sphere = integral_homology(dims, bds, 2)
        want = kunneth(h_sphere, bar_homology(2, 3), 3)
        got = as_pairs(TwistedModel(S2, None, Z2, 1, 4).homology(3))
        c.check(got == want, f"H_0..H_3 = {got}, Kunneth oracle {want}")


def test_criterion_4_twisted_model(criterion):
    with criterion(4, limit=300) as c:
        z = BaseCochain(S2, 2, Z2, {(0, 1, 2): 1})
        got = [h.betti for h in TwistedModel(S2, z, Z2, 1, 4).homology(3, coeff=2)]
        want = serre_two_row_dims(3, transgression=1)
        c.check(got == want, f"F_2 dims {got}, spectral-sequence oracle {want}")


def _cocycle_family():
    rng = random.Random(5)
    fam = []
    for g in (Z2, Z3):
        fam += list(all_cochains(S2, 2, g))  # every 2-cochain on the sphere is a cocycle
    for P in (prism(S2), prism2(S2)):
        for g in (Z2, Z3):
            for _ in range(4):
                z = random_cochain(rng, S2, 2, g)
                fam.append(P.pr_star(z) + coboundary(random_cochain(rng, P.complex, 1, g)))
    return fam


def test_criterion_5_twisting_identity(criterion):
    with criterion(5, limit=60) as c:
        fam = _cocycle_family()
        bad_twist = bad_beta = 0
        for z in fam:
            a = twisting_cochain(z)
            bad_twist += not (a.d() == a * a)
            bad_beta += not (beta(a, degree=2) == z)
        c.check(bad_twist == 0, f"D a = a a on {len(fam) - bad_twist}/{len(fam)} cocycles")
        c.check(bad_beta == 0, f"beta(a(z)) = z on {len(fam) - bad_beta}/{len(fam)}")


def test_criterion_6_route_equality(criterion):
    with criterion(6) as c:
        z = BaseCochain(S2, 2, Z2, {(0, 1, 2): 1})
        model = TwistedModel(S2, z, Z2, 1, 4)
        res = check_route_equality(model, 4)
        c.check(res.passed, f"three boundary routes agree through degree 4 ({model.rank(4)} generators in degree 4)")
        neg = check_route_equality(model, 2, corrupt=True)
        c.check(not neg.passed, "corrupted sign is detected")


def test_criterion_7_gauge_and_action(criterion):
    with criterion(7, limit=300) as c:
        rng = random.Random(7)
        gauge_ok = v_ok = 0
        for g in (Z2, Z3):
            for _ in range(4):
                z = random_cochain(rng, S2, 2, g)
                cc = random_cochain(rng, S2, 1, g)
                gauge_ok += check_lemma_4_2(z, cc).passed
                v_ok += check_lemma_7_1(z, seed=rng.randrange(10**6)).passed
        c.check(gauge_ok == 8, f"gauge identity for u exact on {gauge_ok}/8 instances")
        c.check(v_ok == 8, f"homotopy identity for v exact on {v_ok}/8 instances")

        z = BaseCochain(S2, 2, Z2, {(0, 1, 2): 1})
        model = TwistedModel(S2, z, Z2, 1, 4)
        A = model.algebra
        cc = random_cochain(rng, S2, 1, Z2)
        target = TwistedModel(S2, z + coboundary(cc), Z2, 1, 4)
        gu = A.unit() + u_element(cc, z, A=A)
        gi = inverse(gu)
        chain_ok = check_phi_chain_map(model, target, gu, 3).passed
        inv_ok = all(act(gi, act(gu, {x: 1})) == {x: 1} for m in range(4) for x in model.basis(m))
        c.check(chain_ok and inv_ok, "phi_(1+u) is a chain map with inverse phi_(1+u)^-1 through degree 3")

        sphere_cocycles = [BaseCochain(S2, 1, Z2, {(0, 1): 1, (1, 2): 1, (0, 2): 1}), BaseCochain(S2, 1, Z2)]
        res = check_action_laws(model, 3, 2, cocycles=sphere_cocycles, seed=1)
        c.check(res.passed, f"zero, exact and additive action on H_<=3 over the sphere ({res.counterexample or 'ok'})")

        K = simplex_boundary(2)
        circle = TwistedModel(K, None, Z2, 1, 4)
        cocycles = [BaseCochain(K, 1, Z2, {e: 1}) for e in K.simplices_of_dim(1)]
        res = check_action_laws(circle, 3, 2, cocycles=cocycles, seed=2)
        c.check(res.passed, f"same laws over the circle, where the action is nontrivial ({res.counterexample or 'ok'})")


def test_criterion_8_cup_product(criterion):
    with criterion(8, limit=120) as c:
        rng = random.Random(8)
        z = BaseCochain(S2, 2, Z3, {(0, 1, 2): 1, (0, 1, 3): 2})
        model = TwistedModel(S2, z, Z3, 1, 3)
        one = unit_cochain(model, 3)

        def rnd(d):
            return ModelCochain(model, d, 3, {i: rng.randrange(3) for i in range(model.rank(d))})

        trials = fails = 0
        while trials < 1000:
            s = rng.randint(0, 2)
            t = rng.randint(0, 2 - s)
            r = rng.randint(0, 3 - s - t)
            x, y, w = rnd(s), rnd(t), rnd(r)
            ok = cup_product(one, x) == x and cup_product(x, one) == x
            ok &= cup_product(cup_product(x, y), w) == cup_product(x, cup_product(y, w))
            sign = -1 if s % 2 else 1
            lhs = cochain_coboundary(cup_product(x, y))
            ok &= lhs == cup_product(cochain_coboundary(x), y) + cup_product(x, cochain_coboundary(y)).scale(sign)
            fails += not ok
            trials += 1
        c.check(fails == 0, f"unit, associativity, Leibniz over Z/3 on {trials - fails}/{trials} trials")

        pt = TwistedModel(point(), None, Z2, 1, 4)
        x = ModelCochain(pt, 1, 2, {pt.index_of(((0,), generator_cube(Z2, 1, 1))): 1})
        x2 = cup_product(x, x)
        x3 = cup_product(x2, x)
        got = (any(pair_with_homology(x2, 2)), any(pair_with_homology(x3, 2)))
        want = (bar_cup_power_nonzero(2), bar_cup_power_nonzero(3))
        c.check(got == want and all(got), f"x^2, x^3 nonzero in H^2, H^3 at a point (oracle {want})")


def _chain_apply(op, ch):
    return chain_add(*[{t: c * v for t, v in op(s).items()} for s, c in ch.items()])


def test_criterion_9_structural_axioms(criterion):
    with criterion(9) as c:
        rng = random.Random(9)
        cases = fails = 0
        pools = [(Z2, 1, p) for p in range(1, 5)] + [(Z3, 1, p) for p in range(1, 4)] + [(Z2, 2, p) for p in range(2, 5)]
        pools = [enumerate_cubes(g, n, p) for g, n, p in pools]
        while cases < 10_000:
            t = rng.choice(rng.choice(pools))
            p = t.p
            i = rng.randint(1, p)
            j = rng.randint(1, p)
            e1, e2 = rng.randint(0, 1), rng.randint(0, 1)
            ok = face(degeneracy(t, i), i, e1) == t
            if i < j:
                ok &= face(face(t, j, e2), i, e1) == face(face(t, i, e1), j - 1, e2)
            if i <= j:
                ok &= degeneracy(degeneracy(t, j), i) == degeneracy(degeneracy(t, i), j + 1)
            fails += not ok
            cases += 1
        c.check(fails == 0, f"cubical identities on {cases - fails}/{cases} random cases")

        K6 = standard_simplex(6)
        kcases = kfails = 0
        while kcases < 10_000:
            g = rng.choice([Z2, Z3, Z5, CoeffGroup(0)])
            n = rng.choice([1, 2])
            z = coboundary(random_cochain(rng, K6, n, g))
            s = tuple(sorted(rng.sample(range(7), rng.randint(3, 7))))
            m = len(s) - 2
            k = kappa(z, s, n)
            for i in range(1, m + 1):
                ok = face(k, i, 1) == kappa(z, s[:i] + s[i + 1:], n)
                ok &= face(k, i, 0) == product(kappa(z, s[: i + 1], n), kappa(z, s[i:], n))
                kfails += not ok
                kcases += 1
        c.check(kfails == 0, f"kappa face properties on {kcases - kfails}/{kcases} random cases")

        bases = [point(), standard_simplex(2), simplex_boundary(2), standard_simplex(3), S2, simplex_boundary(4)]
        checked = bad = 0
        for K in bases:
            P1, P2 = prism(K), prism2(K)
            inc = edge_inclusions(P2)
            for s in K.simplices:
                w1 = w1_chain(P1, s)
                d_s = chain_boundary({s: 1})
                lhs = chain_add(chain_boundary(w1), _chain_apply(lambda f: w1_chain(P1, f), d_s))
                t0 = tuple(P1.vertex(v, 0) for v in s)
                t1 = tuple(P1.vertex(v, 1) for v in s)
                bad += lhs != chain_add({t1: 1}, {t0: -1})
                lhs2 = chain_add(chain_boundary(w2_chain(P2, s)), _chain_apply(lambda f: w2_chain(P2, f), d_s), signs=[1, -1])
                rhs2 = chain_add(*(inc[k].push_chain(w1) for k in ("01", "12", "02")), signs=[1, 1, -1])
                bad += lhs2 != rhs2
                checked += 1
        c.check(bad == 0, f"prism identities for w1 and w2 on all {checked} simplices of {len(bases)} bases")
