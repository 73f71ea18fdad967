import itertools
import random

import pytest

from emtwist.coeffs import CoeffGroup
from emtwist.cube import FIX0, FIX1, FREE, cells, coboundary_matrix
from emtwist.emspace import (
    cube_boundary,
    degeneracy,
    degenerate,
    em_chain_complex,
    em_homology,
    enumerate_cubes,
    face,
    generator_cube,
    is_degenerate,
    make_cube,
    normalized_ranks,
    product,
    unit_cube,
    zero_cube,
)
from emtwist.errors import BadCell, NotACocycle, SizeLimitExceeded, UnsupportedEnumeration

from oracles import bar_homology

Z2, Z3 = CoeffGroup(2), CoeffGroup(3)


def brute_cocycles(m, n, p):
    """All n-cocycles on I^p by direct search over value assignments."""
    nc = len(cells(p, n))
    if n >= p:
        return [tuple(v) for v in itertools.product(range(m), repeat=nc)]
    D = coboundary_matrix(p, n).to_dense()
    return [
        v for v in itertools.product(range(m), repeat=nc)
        if all(sum(a * x for a, x in zip(row, v)) % m == 0 for row in D)
    ]


def random_cube(rng, group, n, p):
    return rng.choice(enumerate_cubes(group, n, p))


# -- construction -----------------------------------------------------------


def test_make_cube_examples():
    make_cube(Z2, 1, 1, {"*": 1})
    make_cube(Z2, 1, 2, {"0*": 1, "1*": 1, "*0": 1, "*1": 1})
    with pytest.raises(NotACocycle):
        make_cube(Z2, 1, 2, {"0*": 1})
    with pytest.raises(BadCell):
        make_cube(Z2, 1, 2, {"**": 1})
    with pytest.raises(BadCell):
        make_cube(Z2, 1, 2, {"*": 1})


def test_value_lookup():
    t = make_cube(Z3, 1, 2, {"0*": 1, "*1": 2, "1*": 1, "*0": 2})
    assert t.value("*1") == 2
    assert t.value((FREE, FIX0)) == 2


# -- faces and degeneracies -------------------------------------------------


def test_face_examples():
    t = make_cube(Z2, 1, 2, {"0*": 1, "*1": 1})
    assert face(t, 1, 0) == generator_cube(Z2, 1, 1)
    assert face(t, 1, 1) == zero_cube(Z2, 1, 1)
    z = zero_cube(Z2, 1, 3)
    assert all(face(z, i, e).is_zero() for i in (1, 2, 3) for e in (0, 1))


def test_degeneracy_examples():
    assert degeneracy(unit_cube(Z2, 1), 1) == zero_cube(Z2, 1, 1)
    g = generator_cube(Z3, 1, 2)
    s = degeneracy(g, 1)
    assert s.as_dict() == {(FIX0, FREE): 2, (FIX1, FREE): 2}


def test_cubical_identities_random():
    rng = random.Random(0)
    for group, n, top in ((Z2, 1, 4), (Z3, 1, 3), (Z2, 2, 4)):
        for p in range(1, top + 1):
            pool = enumerate_cubes(group, n, p)
            for _ in range(60):
                t = rng.choice(pool)
                for i in range(1, p + 1):
                    assert face(degeneracy(t, i), i, 0) == t
                    assert face(degeneracy(t, i), i, 1) == t
                for i in range(1, p + 1):
                    for j in range(i + 1, p + 1):
                        for e1 in (0, 1):
                            for e2 in (0, 1):
                                assert face(face(t, j, e2), i, e1) == face(face(t, i, e1), j - 1, e2)
                for i in range(1, p + 2):
                    for j in range(i, p + 2):
                        assert degeneracy(degeneracy(t, j), i) == degeneracy(degeneracy(t, i), j + 1)


def test_degenerate_count_small():
    cubes = enumerate_cubes(Z2, 1, 2)
    assert len(cubes) == 8
    assert sum(1 for c in cubes if is_degenerate(c)) == 3


def test_degeneracy_detection_matches_images():
    for group, n, p in ((Z2, 1, 3), (Z3, 1, 2), (Z2, 2, 3)):
        lower = enumerate_cubes(group, n, p - 1)
        images = {degeneracy(r, i) for r in lower for i in range(1, p + 1)}
        for c in enumerate_cubes(group, n, p):
            hit = is_degenerate(c)
            assert (c in images) == (hit is not None)
            if hit:
                i, rho = hit
                assert degeneracy(rho, i) == c


def test_is_degenerate_simple():
    assert is_degenerate(zero_cube(Z2, 1, 2)) is not None
    assert is_degenerate(generator_cube(Z2, 1, 1)) is None
    assert is_degenerate(unit_cube(Z2, 1)) is None


# -- product ----------------------------------------------------------------


def test_product_of_generators():
    g, h = generator_cube(Z3, 1, 1), generator_cube(Z3, 1, 2)
    t = product(g, h)
    assert t.as_dict() == {(FREE, FIX0): 1, (FREE, FIX1): 1, (FIX0, FREE): 2, (FIX1, FREE): 2}
    assert product(g, unit_cube(Z3, 1)) == g
    assert product(unit_cube(Z3, 1), g) == g


def test_product_associative_and_cocycle():
    rng = random.Random(1)
    for _ in range(100):
        a = random_cube(rng, Z3, 1, rng.randint(0, 2))
        b = random_cube(rng, Z3, 1, rng.randint(0, 2))
        c = random_cube(rng, Z3, 1, rng.randint(0, 2))
        ab_c = product(product(a, b), c)
        assert ab_c == product(a, product(b, c))
        make_cube(Z3, 1, ab_c.p, ab_c.as_dict())


def test_boundary_is_derivation():
    rng = random.Random(2)
    for _ in range(150):
        a = random_cube(rng, Z3, 1, rng.randint(0, 3))
        b = random_cube(rng, Z3, 1, rng.randint(0, 3))
        if degenerate(a) and a.p or degenerate(b) and b.p:
            continue
        lhs = cube_boundary(product(a, b)) if not (product(a, b).p and degenerate(product(a, b))) else {}
        rhs = {}
        for f, v in cube_boundary(a).items():
            w = product(f, b)
            if not degenerate(w):
                rhs[w] = rhs.get(w, 0) + v
        sign = -1 if a.p % 2 else 1
        for f, v in cube_boundary(b).items():
            w = product(a, f)
            if not degenerate(w):
                rhs[w] = rhs.get(w, 0) + sign * v
        assert lhs == {k: v for k, v in rhs.items() if v}


# -- enumeration and ranks --------------------------------------------------


def test_enumeration_examples():
    assert len(enumerate_cubes(Z2, 1, 1)) == 2
    assert len(enumerate_cubes(Z2, 1, 2)) == 8
    assert len(enumerate_cubes(Z2, 1, 0)) == 1
    assert enumerate_cubes(Z2, 3, 2) == [zero_cube(Z2, 3, 2)]


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_enumeration_matches_brute_force(m, p):
    g = CoeffGroup(m)
    got = sorted(c.values for c in enumerate_cubes(g, 1, p))
    assert got == sorted(brute_cocycles(m, 1, p))
    assert len(got) == m ** (2**p - 1)


def test_enumeration_count_formula_p4():
    assert len(enumerate_cubes(Z2, 1, 4)) == 2 ** 15


def test_enumeration_rejects_integers():
    with pytest.raises(UnsupportedEnumeration):
        enumerate_cubes(CoeffGroup(0), 1, 2)


def test_enumeration_cap():
    with pytest.raises(SizeLimitExceeded) as exc:
        enumerate_cubes(Z3, 1, 4, cap=1000)
    assert exc.value.dimension == 4


def test_normalized_ranks_z2():
    assert normalized_ranks(Z2, 1, 4) == [1, 1, 5, 109, 32297]


def test_normalized_ranks_cross_check():
    # degenerate cubes are exactly the images of the degeneracies
    for p, total in ((3, 128), (4, 32768)):
        lower = enumerate_cubes(Z2, 1, p - 1)
        images = {degeneracy(r, i) for r in lower for i in range(1, p + 1)}
        assert total - len(images) == normalized_ranks(Z2, 1, p)[p]


def test_normalized_ranks_n2():
    r = normalized_ranks(Z2, 2, 3)
    assert r[:3] == [1, 0, 1] and r[3] >= 1
    assert len(enumerate_cubes(Z2, 2, 3)) == 32


def test_dd_zero_and_boundary_entries():
    cx = em_chain_complex(Z2, 1, 4)
    for q in range(1, 4):
        assert (cx.boundary(q) @ cx.boundary(q + 1)).is_zero()
    assert cx.boundary(1).is_zero()
    cx3 = em_chain_complex(Z3, 1, 3)
    assert all(0 < abs(v) <= 4 for v in cx3.boundary(2).entries.values())


def test_boundary_matrix_matches_cube_boundary():
    cx = em_chain_complex(Z3, 1, 3)
    for q in (2, 3):
        idx = cx.index(q - 1)
        B = cx.boundary(q)
        for j, c in enumerate(cx.basis(q)):
            assert {idx[f]: v for f, v in cube_boundary(c).items()} == B.column(j)


def test_em_homology_z2():
    got = [(h.betti, list(h.torsion)) for h in em_homology(Z2, 1, 3)]
    assert got == bar_homology(2, 3)
    assert [str(h) for h in em_homology(Z2, 1, 3)] == ["Z", "Z/2", "0", "Z/2"]


def test_em_homology_z3():
    got = [(h.betti, list(h.torsion)) for h in em_homology(Z3, 1, 2)]
    assert got == bar_homology(3, 2)


def test_em_homology_mod_p():
    assert [h.betti for h in em_homology(Z2, 1, 3, coeff=2)] == [1, 1, 1, 1]


def test_integer_cube_arithmetic():
    Z = CoeffGroup(0)
    g = generator_cube(Z, 1, -5)
    t = product(g, generator_cube(Z, 1, 7))
    assert face(t, 2, 0) == g
    assert not degenerate(t)
    with pytest.raises(NotACocycle):
        make_cube(Z, 1, 2, {"0*": 3, "1*": 3, "*0": 1, "*1": 2})


def test_coinciding_faces_add():
    # d_1^0 and d_2^1 both give [2] with sign -1
    t = make_cube(Z3, 1, 2, {"0*": 2, "*0": 1, "*1": 2})
    assert cube_boundary(t) == {generator_cube(Z3, 1, 2): -2, generator_cube(Z3, 1, 1): 1}
