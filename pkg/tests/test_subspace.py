from __future__ import annotations

from fractions import Fraction

import pytest

from tregular.algebra import builtin
from tregular.subspace import (
    BasisError,
    HypercomplexBasis,
    StepList,
    all_step_lists,
    decompose,
    extend_by_product,
    in_symmetric_completion,
    make_fan,
    mirror,
    rational_sphere_point,
    rational_torus_point,
    slice_basis,
    slice_point,
    torus_point,
    validate_hypercomplex_basis,
)

F = Fraction
H = builtin("quaternion")
DH = builtin("dualquat")


def test_validate_hypercomplex_basis():
    cl3 = builtin("cl03")
    assert validate_hypercomplex_basis([cl3.one(), cl3["e1"], cl3["e2"], cl3["e3"]])
    assert validate_hypercomplex_basis([H.one(), H["i"], H["j"], H["k"]])
    assert not validate_hypercomplex_basis([cl3.one(), cl3["e1"], cl3["e1"]])
    with pytest.raises(BasisError):
        HypercomplexBasis((cl3.one(), cl3["e1"], cl3["e1"]))


def test_extend_by_product():
    ext = extend_by_product(HypercomplexBasis((H.one(), H["i"], H["j"])))
    assert ext[3] == H["k"]
    cl3 = builtin("cl03")
    with pytest.raises(BasisError):
        extend_by_product(HypercomplexBasis((cl3.one(), cl3["e1"])))


@pytest.mark.parametrize("alpha,beta", [(F(1, 2), F(2, 3)), (F(-1), F(1, 5)), (F(0), F(0))])
def test_extend_by_product_dual_quaternions(alpha, beta):
    i, j, k, eps = DH["i"], DH["j"], DH["k"], DH["ε"]
    v1 = i + eps * (alpha * j + beta * k)
    v2 = j + eps * (-alpha * i + beta * k)
    ext = extend_by_product(HypercomplexBasis((DH.one(), v1, v2)))
    assert ext[3] == k - beta * eps * (i + j)


def test_step_lists():
    assert str(StepList.parse("1,3")) == "(1,3)"
    lists = all_step_lists(3)
    assert len(lists) == 8
    with pytest.raises(ValueError):
        StepList.parse("3,1")


def test_fans(quat_basis, fan024):
    fan = make_fan(quat_basis, "1,3")
    assert fan.t0 == 1 and fan.tau == 1
    assert mirror(fan) == [H.one(), H["i"]]
    full = make_fan(quat_basis, "3")
    assert full.tau == 0
    assert len(mirror(fan024)) == 1


def test_rational_points():
    assert rational_sphere_point([F(1, 2)]) == [F(3, 5), F(4, 5)]
    for params in ([F(1, 3), F(-2)], [F(5, 7)]):
        p = rational_sphere_point(params)
        assert sum(x * x for x in p) == 1


def test_torus_points(fan13, fan024):
    J = torus_point(fan13, [[F(3, 5), F(4, 5)]])
    assert J.J[0] == F(3, 5) * H["j"] + F(4, 5) * H["k"]
    assert J.rational
    for seed in range(5):
        K = rational_torus_point(fan024, seed)
        assert all(u.norm_n() == fan024.algebra.one() for u in K.J)
    deg = make_fan(HypercomplexBasis.paravectors(builtin("cl03")), "0,1,2,3")
    K = rational_torus_point(deg, 3)
    assert all(u in (deg.basis[s], -deg.basis[s]) for s, u in zip(range(1, 4), K.J))
    full = make_fan(HypercomplexBasis.standard(H), "3")
    assert rational_torus_point(full, 0).J == ()
    assert slice_basis(full, rational_torus_point(full, 0)).vectors == full.basis.vectors


def test_decompose(fan13):
    x = 2 * H.one() + H["i"] + 3 * H["j"] + 4 * H["k"]
    d = decompose(x, fan13)
    assert d.x0 == 2 * H.one() + H["i"]
    assert d.beta == (5,)
    assert d.J[0] == (3 * H["j"] + 4 * H["k"]) / 5
    J = torus_point(fan13, [[F(3, 5), F(4, 5)]])
    negJ = torus_point(fan13, [[F(-3, 5), F(-4, 5)]])
    assert slice_point(fan13, (2, 1), (5,), J) == slice_point(fan13, (2, 1), (-5,), negJ) == x
    mir = decompose(2 * H.one() + H["i"], fan13)
    assert mir.beta == (0,) and mir.ambiguous == (True,)


def test_symmetric_completion(fan03):
    a, b, c = H.one() + 2 * H["i"], H.one() - 2 * H["i"], H.one() + 3 * H["i"]
    assert in_symmetric_completion(a, a, fan03)
    assert in_symmetric_completion(a, b, fan03)
    assert in_symmetric_completion(a, H.one() + 2 * H["k"], fan03)
    assert not in_symmetric_completion(a, c, fan03)
