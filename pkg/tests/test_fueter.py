from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from tregular.algebra import builtin
from tregular.fueter import (
    CROperator,
    NotMonogenicError,
    apply_cr,
    component_oracle,
    dbar,
    fueter_poly,
    fueter_variable,
    is_monogenic,
    monogenic_expand,
    oracle_poly,
    reconstruct,
)
from tregular.polymap import PolyMap, multi_indices, right_mul
from tregular.subspace import HypercomplexBasis, extend_by_product

H = builtin("quaternion")


def bases():
    cl4 = builtin("cl04")
    return [
        HypercomplexBasis.paravectors(builtin("cl03")),
        HypercomplexBasis.standard(H),
        extend_by_product(HypercomplexBasis.paravectors(cl4, 2)),
    ]


def test_fueter_variable(quat_basis):
    z1 = fueter_variable(quat_basis, 1)
    assert z1 == PolyMap.linear(H, [-H["i"], H.one(), H.zero(), H.zero()])
    for s in range(1, 4):
        assert dbar(quat_basis, fueter_variable(quat_basis, s)).is_zero()


def test_small_fueter_polynomials(quat_basis):
    assert fueter_poly(quat_basis, (0, 0, 0)) == PolyMap.constant(H, 4, 1)
    z1, z2 = fueter_variable(quat_basis, 1), fueter_variable(quat_basis, 2)
    want = (right_mul(z2, z1) + right_mul(z1, z2)).scale(Fraction(1, 2))
    assert fueter_poly(quat_basis, (1, 1, 0)) == want
    assert fueter_poly(quat_basis, (1, -1, 0)).is_zero()


@pytest.mark.parametrize("basis", bases(), ids=["cl03", "quaternion", "w2"])
def test_fueter_system(basis):
    for d in range(5):
        for k in multi_indices(basis.m, d):
            p = fueter_poly(basis, k)
            assert is_monogenic(basis, p)
            assert oracle_poly(basis, k) == p
            for s in range(1, basis.m + 1):
                lower = list(k)
                lower[s - 1] -= 1
                assert p.partial(s) == fueter_poly(basis, lower).scale(k[s - 1])
            lap = PolyMap.zero(basis.algebra, basis.m + 1)
            for s in range(basis.m + 1):
                lap = lap + p.partial(s).partial(s)
            assert lap.is_zero()


def test_degree_five_monogenic(cl3_basis):
    for k in multi_indices(3, 5):
        assert dbar(cl3_basis, fueter_poly(cl3_basis, k)).is_zero()


def test_oracle_symmetry():
    assert component_oracle((0, 0, 0)) == ({(0, 0, 0, 0): 1}, {}, {}, {})
    for d in range(1, 5):
        for k in multi_indices(3, d):
            comps = component_oracle(k)
            for s in range(1, 4):
                if not k[s - 1]:
                    continue
                for u in range(1, 4):
                    if u == s:
                        continue
                    moved = list(k)
                    moved[u - 1] += 1
                    moved[s - 1] -= 1
                    other = component_oracle(moved)[u]
                    lhs = {e: (k[u - 1] + 1) * c for e, c in comps[s].items()}
                    rhs = {e: k[s - 1] * c for e, c in other.items()}
                    assert lhs == rhs


def test_cauchy_riemann_operator(quat_basis):
    assert dbar(quat_basis, PolyMap.constant(H, 4, H["j"])).is_zero()
    for s in range(4):
        assert dbar(quat_basis, PolyMap.variable(H, 4, s)) == PolyMap.constant(H, 4, quat_basis[s])
    op = CROperator(quat_basis, "dbar", "left")
    assert apply_cr(op, fueter_poly(quat_basis, (2, 1, 0))).is_zero()


def test_expand_examples(quat_basis):
    k0 = (1, 2, 0)
    assert monogenic_expand(quat_basis, fueter_poly(quat_basis, k0)) == {k0: H.one()}
    q = H["j"] - 2 * H["k"]
    p = fueter_variable(quat_basis, 1).right_mul_element(q) + fueter_variable(quat_basis, 2)
    assert monogenic_expand(quat_basis, p) == {(1, 0, 0): q, (0, 1, 0): H.one()}
    with pytest.raises(NotMonogenicError):
        monogenic_expand(quat_basis, PolyMap.variable(H, 4, 1))


@given(st.lists(elements(H), min_size=10, max_size=10))
def test_expand_round_trip(coeffs):
    basis = HypercomplexBasis.standard(H)
    ks = multi_indices(3, 3)
    want = {k: a for k, a in zip(ks, coeffs) if not a.is_zero()}
    p = reconstruct(basis, want)
    assert monogenic_expand(basis, p) == want
