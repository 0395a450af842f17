from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import elements
from tregular.algebra import AlgebraError, builtin
from tregular.checks import octonion_polynomial, random_t_polynomial
from tregular.polymap import PolyMap, multi_indices
from tregular.stem import (
    RepresentativeError,
    StemTable,
    bracket_left,
    bracket_right,
    gamma_coefficients,
    gamma_identity_violations,
    induce,
    jk_product,
    mirror_subalgebra,
    norm_bound_check,
    parity_violations,
    parse_subset,
    recover_stem,
    representation_residual,
    sample_orbits,
    sigma,
    subset_label,
    subsets,
)
from tregular.subspace import HypercomplexBasis, make_fan, rational_torus_point, slice_point, torus_point
from tregular.tregular import t_poly

F = Fraction
H = builtin("quaternion")
O = builtin("octonion")
OCT_FAN = make_fan(HypercomplexBasis.standard(O), "0,7")


def test_subset_helpers():
    assert subsets(2) == [0, 1, 2, 3]
    assert subset_label(3) == "{1,2}"
    assert parse_subset("{1,2}") == 3
    assert parse_subset("{}") == 0
    assert sigma(0b11, 1) == 0 and sigma(0b11, 2) == 1


def test_jk_products():
    fan = make_fan(HypercomplexBasis.standard(H), "1,2,3")
    J = torus_point(fan, [[1], [1]])
    assert jk_product(J, 0) == H.one()
    assert jk_product(J, 3) == H["i"]
    fan024 = make_fan(HypercomplexBasis.paravectors(builtin("cl04")), "0,2,4")
    J = rational_torus_point(fan024, 3)
    for K in subsets(2):
        prod = jk_product(J, K)
        direct = fan024.algebra.one()
        for h in (1, 2):
            if K >> (h - 1) & 1:
                direct = direct * J.J[h - 1]
        assert prod == direct
    with pytest.raises(AlgebraError):
        jk_product(rational_torus_point(OCT_FAN, 0), 1)


@given(elements(O))
def test_bracket_round_trip(a):
    J = rational_torus_point(OCT_FAN, 5)
    assert bracket_left(J, a, 0) == a == bracket_right(J, a, 0)
    for K in subsets(1):
        assert bracket_right(J, bracket_left(J, a, K), K) == a


@given(elements(H))
def test_brackets_collapse_when_associative(a):
    fan = make_fan(HypercomplexBasis.standard(H), "1,2,3")
    J = torus_point(fan, [[-1], [1]])
    for K in subsets(2):
        assert bracket_left(J, a, K) == jk_product(J, K) * a


def test_recover_constant_and_linear(fan03):
    I = rational_torus_point(fan03, 2)
    c = H["j"] - H.one()
    table = recover_stem(PolyMap.constant(H, 4, c), fan03, I)
    assert table.component(0) == PolyMap.constant(H, 2, c, table.component(0).names)
    assert table.component(1).is_zero()
    table = recover_stem(t_poly(fan03, (1,)).poly, fan03, I)
    assert table.component(0) == PolyMap.variable(H, 2, 0, names=table.component(0).names)
    assert table.component(1) == PolyMap.variable(H, 2, 1, names=table.component(1).names)


def test_parity_detects_bad_tables(fan03):
    names = ("x0", "b1")
    bad = StemTable(fan03, {0: PolyMap.variable(H, 2, 1, names=names)})
    assert parity_violations(bad)


def test_stems_are_mirror_valued(fan13, fan024):
    for fan in (fan13, fan024):
        A = mirror_subalgebra(fan)
        I = rational_torus_point(fan, 9)
        for k in multi_indices(fan.t0 + fan.tau, 3):
            table = recover_stem(t_poly(fan, k).poly, fan, I)
            assert parity_violations(table) == []
            assert all(A.contains_poly(table.component(K)) for K in subsets(fan.tau))


def test_induce_round_trip(fan024):
    p = random_t_polynomial(fan024, 2, seed=3)
    table = recover_stem(p, fan024, rational_torus_point(fan024, 1))
    for i, (alpha, beta) in enumerate(sample_orbits(fan024, 50, seed=4)):
        x = slice_point(fan024, alpha, beta, rational_torus_point(fan024, 50 + i))
        assert induce(table, x) == p.evaluate(fan024.basis.coordinates(x))
    mirror_point = slice_point(fan024, (F(2, 3),), (0, 0), rational_torus_point(fan024, 0))
    assert induce(table, mirror_point) == table.component(0).evaluate([F(2, 3), 0, 0])


def test_induce_rejects_non_stems(fan03):
    names = ("x0", "b1")
    bad = StemTable(fan03, {0: PolyMap.variable(H, 2, 1, names=names)})
    x = slice_point(fan03, (F(1),), (F(2),), rational_torus_point(fan03, 1))
    with pytest.raises(RepresentativeError):
        induce(bad, x)


def test_octonion_representation_and_induce():
    fan, p = octonion_polynomial(seed=1)
    I = rational_torus_point(fan, 3)
    table = recover_stem(p, fan, I)
    for i in range(5):
        J = rational_torus_point(fan, 20 + i)
        x = slice_point(fan, (F(1, 3),), (F(i + 1, 2),), J)
        assert induce(table, x) == p.evaluate(fan.basis.coordinates(x))
        assert representation_residual(p, fan, (F(1, 3),), (F(i + 1, 2),), I, J).is_zero()


def test_gamma_coefficients(fan13, fan024):
    I = rational_torus_point(fan024, 6)
    gam = gamma_coefficients(I, I)
    assert gam[0] == fan024.algebra.one()
    assert all(gam[H_].is_zero() for H_ in subsets(2)[1:])
    J = rational_torus_point(fan024, 7)
    total = fan024.algebra.zero()
    for g in gamma_coefficients(I, J).values():
        total = total + g
    assert total == fan024.algebra.one()
    assert gamma_identity_violations(fan024, I, J) == []
    I1, J1 = rational_torus_point(fan13, 1), rational_torus_point(fan13, 2)
    q = J1.J[0] * I1.J[0].inverse()
    gam = gamma_coefficients(I1, J1)
    assert gam[0] == (H.one() + q) / 2
    assert gam[1] == (H.one() - q) / 2


def test_norm_bound(fan13):
    I = rational_torus_point(fan13, 0)
    const = PolyMap.constant(H, 4, H["k"])
    report = norm_bound_check(const, fan13, I, 1.0, sample_orbits(fan13, 10))
    assert report.max_ratio == pytest.approx(1.0)
    report = norm_bound_check(t_poly(fan13, (0, 1)).poly, fan13, I, 1.0, sample_orbits(fan13, 20))
    assert report.ok and report.bound == 2
    fan, p = octonion_polynomial(seed=2)
    report = norm_bound_check(p, fan, rational_torus_point(fan, 1), 1.0, sample_orbits(fan, 200, seed=5))
    assert report.ok
