from __future__ import annotations

from fractions import Fraction

import pytest

from tregular.algebra import builtin
from tregular.fueter import fueter_poly
from tregular.polymap import PolyMap, multi_indices, right_mul, slice_restrict, substitute_linear
from tregular.subspace import HypercomplexBasis, make_fan, rational_torus_point, slice_basis, torus_point
from tregular.tregular import (
    DeltaDisagreementError,
    check_slice_identity,
    classes_equal,
    cullen_variable,
    delta,
    delta_at_origin,
    delta_on_slice,
    is_t_regular,
    mirror_laplacian_form,
    phi_change_of_basis,
    quaternion_fan,
    t_expand,
    t_expand_at,
    t_poly,
    t_reconstruct,
    variable_regular_under,
)

F = Fraction
H = builtin("quaternion")


def test_first_order_t_polynomials(fan13, fan024):
    v = fan13.basis
    assert t_poly(fan13, (1, 0)).poly == PolyMap.linear(H, [-v[1], H.one(), H.zero(), H.zero()])
    assert t_poly(fan13, (0, 1)).poly == PolyMap.linear(H, [H.one(), H.zero(), v[2], v[3]])
    alg = fan024.algebra
    x = fan024.basis
    assert t_poly(fan024, (1, 0)).poly == PolyMap.linear(alg, [x[0], x[1], x[2], alg.zero(), alg.zero()])
    assert t_poly(fan024, (0, 1)).poly == PolyMap.linear(alg, [x[0], alg.zero(), alg.zero(), x[3], x[4]])


def test_second_order_mixed_formula(fan024):
    # T_{e_s + e_u} = 1/2 (-(x_0 + x^u)(x_0 - x^s) + (x_0 + x^s)(x_0 - x^u)) for s <= u
    plus = [cullen_variable(fan024, h) for h in (1, 2)]
    x0 = PolyMap.variable(fan024.algebra, 5, 0)
    minus = [x0.scale(2) - c for c in plus]
    want = (-right_mul(plus[1], minus[0]) + right_mul(plus[0], minus[1])).scale(F(1, 2))
    assert t_poly(fan024, (1, 1)).poly == want


def test_slice_identity(fan03, fan024):
    full = quaternion_fan("3")
    J0 = rational_torus_point(full, 0)
    for k in multi_indices(3, 2):
        assert check_slice_identity(full, k, J0).is_zero()
    J = torus_point(fan03, [[F(1, 3), F(2, 3), F(2, 3)]])
    assert check_slice_identity(fan03, (2,), J).is_zero()
    for seed in range(3):
        J = rational_torus_point(fan024, seed)
        for k in multi_indices(2, 2):
            assert check_slice_identity(fan024, k, J).is_zero()


def test_t_polynomials_are_t_regular(fan13, fan024):
    for fan in (fan13, fan024):
        for k in multi_indices(fan.t0 + fan.tau, 3):
            assert is_t_regular(t_poly(fan, k).poly, fan)


def test_delta_order_zero(fan13):
    p = t_poly(fan13, (1, 1)).poly
    J = rational_torus_point(fan13, 4)
    assert delta_on_slice(fan13, p, (0, 0, 0), J) == slice_restrict(p, J, fan13)


def test_tau_one_lemma(fan13):
    p = t_poly(fan13, (0, 2)).poly
    J = torus_point(fan13, [[F(3, 5), F(4, 5)]])
    pj = slice_restrict(p, J, fan13)
    for h in [(0, 0), (1, 0), (0, 1)]:
        for order in range(4):
            assert delta_on_slice(fan13, p, h + (order,), J) == mirror_laplacian_form(fan13, pj, h, order)


def test_delta_not_based_on_mirror(fan024):
    J = rational_torus_point(fan024, 1)
    one, zero = fan024.algebra.one(), fan024.algebra.zero()
    t1, t2 = t_poly(fan024, (1, 0)).poly, t_poly(fan024, (0, 1)).poly
    assert delta_at_origin(fan024, t1, (0, 1, 0), J) == one
    assert delta_at_origin(fan024, t2, (0, 1, 0), J) == zero
    assert delta_at_origin(fan024, t2, (0, 0, 1), J) == one
    # both polynomials agree on the mirror although their deltas differ
    mirror = [{0: 1}, {}, {}, {}, {}]
    assert substitute_linear(t1, mirror, 5) == substitute_linear(t2, mirror, 5)


def test_delta_disagreement_raises(fan13):
    with pytest.raises(DeltaDisagreementError):
        delta(fan13, PolyMap.variable(H, 4, 2), (0, 0, 1))


def test_t_expand(fan13):
    for k in multi_indices(2, 2):
        assert t_expand(fan13, t_poly(fan13, k).poly) == {k: H.one()}
    assert t_expand(fan13, PolyMap.zero(H, 4)) == {}


def test_t_expand_round_trip_clifford():
    fan = make_fan(HypercomplexBasis.paravectors(builtin("cl03")), "1,3")
    alg = fan.algebra
    coeffs = {k: alg.element([F(i + j, 3) for j in range(alg.dim)]) for i, k in enumerate(multi_indices(2, 2))}
    p = t_reconstruct(fan, coeffs)
    assert t_expand(fan, p) == coeffs


def test_series_expansion_at_mirror_point(fan13):
    p = t_poly(fan13, (2, 1)).poly + t_poly(fan13, (0, 1)).poly.right_mul_element(H["k"])
    center = [F(1, 2), F(-2, 3)]
    coeffs = t_expand_at(fan13, p, center)
    assert max(sum(k) for k in coeffs) == 3
    assert t_reconstruct(fan13, coeffs, center) == p


def test_variable_regularity_examples():
    assert not variable_regular_under((0, 3), (3,), "cullen", 1)
    assert variable_regular_under((3,), (2, 3), "fueter", 3)
    assert variable_regular_under((0, 1, 3), (1, 3), "cullen", 1)
    fan = quaternion_fan("0,3")
    x = cullen_variable(fan, 1)
    assert is_t_regular(right_mul(x, x), fan)
    assert not is_t_regular(right_mul(x, x), quaternion_fan("3"))


def test_classes_equal_examples():
    group = [(3,), (2, 3), (1, 2, 3), (0, 1, 2, 3)]
    assert all(classes_equal(a, b) for a in group for b in group)
    assert classes_equal((1, 3), (0, 1, 3))
    assert not classes_equal((0, 3), (3,))


def test_phi_maps_023_to_013():
    src, dst = quaternion_fan("0,2,3"), quaternion_fan("0,1,3")
    moved_any = False
    for d in range(1, 4):
        for k in multi_indices(2, d):
            p = t_poly(src, k).poly
            assert is_t_regular(phi_change_of_basis(p), dst)
            moved_any = moved_any or not is_t_regular(p, dst)
    assert moved_any
