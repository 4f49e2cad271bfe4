import random
from fractions import Fraction

import pytest

from nilhom.sigma import (Cone, ConeUnion, CyclicModuleSpec, LaurentPoly,
                          ValuationVector, finite_dimensional_is_fully_tame,
                          full_sphere, m_tame, newton_polytope,
                          sigma_complement, sigma_complement_principal,
                          sigma_witness_search, tame_requirement,
                          tensor_power_fg_check)
from nilhom.linalg import RatMatrix


def poly(nvars, terms):
    return LaurentPoly(nvars, terms)


T_MINUS_2 = poly(1, {(1,): 1, (0,): -2})
TRIANGLE = poly(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1})


def test_laurent_arithmetic():
    f = T_MINUS_2
    assert (f * f).coeff((2,)) == 1
    assert (f * f).coeff((1,)) == -4
    assert (f - f).is_zero()
    u = LaurentPoly.monomial(1, (5,), Fraction(1, 3))
    assert (u * f).support == ((5,), (6,))


def test_newton_polytope():
    assert newton_polytope(LaurentPoly.monomial(2, (3, -1))) == [(3, -1)]
    assert sorted(newton_polytope(TRIANGLE)) == [(0, 0), (0, 1), (1, 0)]
    segment = poly(1, {(0,): 1, (1,): 1, (2,): 1})
    assert sorted(newton_polytope(segment)) == [(0,), (2,)]
    with pytest.raises(ValueError):
        newton_polytope(LaurentPoly(1, {}))


def test_sigma_complement_t_minus_2_empty():
    assert sigma_complement_principal(T_MINUS_2).is_empty_set()


def test_sigma_complement_triangle_rays():
    sc = sigma_complement_principal(TRIANGLE)
    assert len(sc.cones) == 3
    rays = [(0, 1), (1, 0), (-1, -1)]
    for ray in rays:
        assert sc.contains(ValuationVector(ray)), ray
    for off in [(1, 1), (-1, 0), (0, -1), (2, 1)]:
        assert not sc.contains(ValuationVector(off)), off


def test_sigma_complement_min_attained_twice_grid_oracle():
    # brute force over a grid of rational directions: membership must agree
    # with the minimum of v over the support being attained at >= 2 points
    for f in (T_MINUS_2, TRIANGLE, poly(2, {(2, 0): 1, (0, 2): -3, (1, 1): 5})):
        n = f.nvars
        grid = range(-3, 4)
        pts = f.support
        import itertools
        for v in itertools.product(grid, repeat=n):
            if all(x == 0 for x in v):
                continue
            vals = [sum(a * b for a, b in zip(v, p)) for p in pts]
            lo = min(vals)
            expected = vals.count(lo) >= 2
            got = sigma_complement_principal(f).contains(ValuationVector(v))
            assert got == expected, (f, v)


def test_sigma_unit_invariance():
    rng = random.Random(13)
    for f in (T_MINUS_2, TRIANGLE):
        sc = sigma_complement_principal(f).canonical()
        for _ in range(5):
            shift = tuple(rng.randint(-4, 4) for _ in range(f.nvars))
            scale = Fraction(rng.randint(1, 5), rng.randint(1, 5))
            unit = LaurentPoly.monomial(f.nvars, shift, scale)
            assert sigma_complement_principal(unit * f).canonical() == sc


def test_witness_search_agrees_with_complement():
    spec = CyclicModuleSpec(1, (T_MINUS_2,))
    for v in (1, -1, 2):
        w = sigma_witness_search(spec, ValuationVector((v,)), 3)
        assert w is not None
        vals = [sum(a * b for a, b in zip((v,), e)) for e in w.poly.support]
        assert vals.count(min(vals)) == 1
    tri_spec = CyclicModuleSpec(2, (TRIANGLE,))
    w = sigma_witness_search(tri_spec, ValuationVector((1, 2)), 2)
    assert w is not None and w.minimal_exponent is not None
    # inside the complement no witness can exist at any bound
    assert sigma_witness_search(tri_spec, ValuationVector((0, 1)), 3) is None


def test_witness_grid_agreement_with_complement():
    # on a grid of directions: a witness exists iff the direction is
    # outside the complement (the minimum is attained once)
    import itertools
    for f in (T_MINUS_2, TRIANGLE):
        sc = sigma_complement_principal(f)
        spec = CyclicModuleSpec(f.nvars, (f,))
        for v in itertools.product(range(-2, 3), repeat=f.nvars):
            if all(x == 0 for x in v):
                continue
            vv = ValuationVector(v)
            witness = sigma_witness_search(spec, vv, 2)
            assert (witness is None) == sc.contains(vv), (f, v)


def test_witness_search_free_module_unknown():
    spec = CyclicModuleSpec(1, ())
    for v in (1, -1):
        assert sigma_witness_search(spec, ValuationVector((v,)), 6) is None


def test_witness_combination_reassembles():
    spec = CyclicModuleSpec(2, (TRIANGLE,))
    w = sigma_witness_search(spec, ValuationVector((1, 2)), 2)
    rebuilt = LaurentPoly(2, {})
    for (gi, shift), coeff in w.combination:
        rebuilt = rebuilt + LaurentPoly.monomial(2, shift, coeff) * spec.ideal[gi]
    assert rebuilt == w.poly


def test_m_tame_empty_union():
    empty = ConeUnion(2, ())
    for m in range(2, 7):
        assert m_tame(empty, m)


def test_m_tame_lamplighter():
    # full sphere in one variable, and the same set as two explicit rays
    assert not m_tame(full_sphere(1), 2)
    rays = ConeUnion(1, (Cone(1, [[1]]), Cone(1, [[-1]])))
    assert not m_tame(rays, 2)


def test_m_tame_triangle():
    sc = sigma_complement_principal(TRIANGLE)
    assert m_tame(sc, 2)
    assert not m_tame(sc, 3)
    # explicit zero-sum triple witnessing the failure
    triple = [(0, 1), (1, 0), (-1, -1)]
    assert all(sc.contains(ValuationVector(t)) for t in triple)
    assert tuple(sum(c) for c in zip(*triple)) == (0, 0)


def test_m_tame_monotone_randomized():
    rng = random.Random(29)
    for _ in range(20):
        n = rng.choice([2, 3])
        cones = []
        for _ in range(rng.randint(1, 3)):
            ineqs = [[Fraction(rng.randint(-2, 2)) for _ in range(n)]
                     for _ in range(rng.randint(1, 2))]
            cones.append(Cone(n, ineqs))
        sc = ConeUnion(n, cones)
        verdicts = {m: m_tame(sc, m) for m in range(2, 6)}
        for m in range(3, 6):
            if verdicts[m]:
                assert verdicts[m - 1], (cones, m)


def test_two_tame_iff_no_antipodal_pair():
    # oracle: the antipodal pairs of (C_i, C_j) form the cone C_i meet -C_j,
    # so an antipodal pair exists iff that cone has a nonzero point
    rng = random.Random(31)
    for _ in range(25):
        n = 2
        cones = []
        for _ in range(rng.randint(1, 3)):
            ineqs = [[Fraction(rng.randint(-2, 2)) for _ in range(n)]
                     for _ in range(rng.randint(1, 2))]
            cones.append(Cone(n, ineqs).canonical())
        sc = ConeUnion(n, cones)
        antipodal = any(
            Cone(n, ci.ineqs + tuple(tuple(-x for x in r) for r in cj.ineqs),
                 ci.eqs + cj.eqs).has_nonzero_point()
            for ci in cones for cj in cones)
        assert m_tame(sc, 2) == (not antipodal)


def test_tame_requirement_values():
    assert tame_requirement(1, 1) == 2
    assert tame_requirement(2, 2) == 6
    assert tame_requirement(3, 1) == 2


def test_tensor_power_fg_fixtures():
    spec_t2 = CyclicModuleSpec(1, (T_MINUS_2,))
    assert tensor_power_fg_check(spec_t2, 2, 4) == "yes"
    lamplighter = CyclicModuleSpec(1, ())
    assert tensor_power_fg_check(lamplighter, 2, 2) == "no_witness"
    tri = CyclicModuleSpec(2, (TRIANGLE,))
    assert tensor_power_fg_check(tri, 3, 1) == "no_witness"


def test_tensor_power_fg_finite_dimensional_yes():
    golden = CyclicModuleSpec(1, (poly(1, {(2,): 1, (1,): -1, (0,): -1}),))
    assert tensor_power_fg_check(golden, 2, 3) == "yes"


def test_tensor_power_fg_unknown_is_honest():
    # 2-tame but the bounded closure box is too small to certify
    tri = CyclicModuleSpec(2, (TRIANGLE,))
    assert tensor_power_fg_check(tri, 2, 0) == "unknown"


def test_finite_dimensional_certificates():
    assert finite_dimensional_is_fully_tame(1, [RatMatrix([[2]])]).is_empty_set()
    assert finite_dimensional_is_fully_tame(2, [RatMatrix.identity(2)]).is_empty_set()
    # diagonal prime-power action
    sc = finite_dimensional_is_fully_tame(
        2, [RatMatrix([[3, 0], [0, 9]]), RatMatrix([[1, 0], [0, 3]])])
    assert sc.is_empty_set()
    for m in range(2, 13):
        assert m_tame(sc, m)
    with pytest.raises(ValueError):
        finite_dimensional_is_fully_tame(2, [RatMatrix([[1, 0], [0, 0]])])
    with pytest.raises(ValueError):
        finite_dimensional_is_fully_tame(
            2, [RatMatrix([[1, 1], [0, 1]]), RatMatrix([[1, 0], [1, 1]])])


def test_sigma_complement_spec_level():
    assert sigma_complement(CyclicModuleSpec(1, ())) == full_sphere(1)
    assert sigma_complement(CyclicModuleSpec(1, (T_MINUS_2,))).is_empty_set()
    two_gen = CyclicModuleSpec(1, (T_MINUS_2, poly(1, {(1,): 1, (0,): -3})))
    with pytest.raises(ValueError):
        sigma_complement(two_gen)


def test_cyclic_module_validation():
    with pytest.raises(ValueError):
        CyclicModuleSpec(1, (LaurentPoly(1, {}),))
    with pytest.raises(ValueError):
        CyclicModuleSpec(2, (T_MINUS_2,))
