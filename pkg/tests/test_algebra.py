from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import elements
from tregular.algebra import (
    Algebra,
    AlgebraError,
    builtin,
    bilinear_form,
    change_basis,
    classify_basis,
    find_fitted_completion,
    from_float,
    in_quadratic_cone,
    is_imaginary_unit,
    is_zero_divisor,
    load_algebra,
    make_cayley_dickson,
    make_clifford,
    mult_matrix,
    omega,
)
from tregular import _linalg

H = builtin("quaternion")
O = builtin("octonion")
DH = builtin("dualquat")
CL3 = builtin("cl03")
CL4 = builtin("cl04")


@pytest.mark.parametrize("name", ["complex", "quaternion", "octonion", "cl01", "cl02", "cl03", "cl04", "dualquat"])
def test_builtin_axioms(name):
    alg = builtin(name)
    assert alg.validate() == []
    assert alg.is_associative == (name != "octonion")


def test_clifford_relations():
    cl2 = make_clifford(0, 2)
    assert cl2["e1"] * cl2["e2"] == cl2["e12"]
    assert cl2["e12"] * cl2["e12"] == -cl2.one()
    assert CL3["e123"].conj() == CL3["e123"]
    assert (CL4.one() + CL4["e123"]) * (CL4.one() + CL4["e1234"]) == CL4.one() + CL4["e4"] + CL4["e123"] + CL4["e1234"]


def test_cayley_dickson_tables():
    assert H["i"] * H["j"] == H["k"]
    assert H["j"] * H["i"] == -H["k"]
    assert not O.is_associative
    i, j, l = O["i"], O["j"], O["l"]
    assert i * (j * l) != (i * j) * l
    assert O.associator_witness() is not None
    with pytest.raises(AlgebraError):
        make_cayley_dickson(4)


@given(elements(H), elements(H))
def test_quaternion_norm_is_multiplicative(a, b):
    assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()


@given(elements(O), elements(O))
def test_octonions_alternative_and_conjugation(a, b):
    assert a * (a * b) == (a * a) * b
    assert (b * a) * a == b * (a * a)
    assert (a * b).conj() == b.conj() * a.conj()
    assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()


@given(elements(H), elements(H))
def test_dual_quaternion_norm(p, q):
    eps = DH["ε"]
    emb = lambda x: DH.element(list(x.coeffs) + [0] * 4)
    x = emb(p) + eps * emb(q)
    # n(p + eps q) = n(p) + eps t(p q^c)
    assert x.norm_n() == emb(p.norm_n()) + eps * emb((p * q.conj()).trace())


def test_dual_quaternion_zero_divisor():
    eps = DH["ε"]
    assert (eps * eps).is_zero()
    assert _linalg.rank(mult_matrix(eps)) == 4
    assert is_zero_divisor(eps, "left") and is_zero_divisor(eps, "right")


def test_trace_norm_examples():
    a = CL3.one() + CL3["e123"]
    assert a.trace() == 2 * a
    assert a.norm_n() == 2 * a
    assert H.one().trace() == 2 * H.one()
    assert H.one().norm_n() == H.one()
    half = Fraction(1, 2)
    assert ((CL3.one() + CL3["e123"]) * half * ((CL3.one() - CL3["e123"]) * half)).is_zero()
    assert _linalg.rank(mult_matrix((CL3.one() + CL3["e123"]) * half)) == 4


def test_imaginary_units_and_cone():
    assert is_imaginary_unit(CL3["e1"])
    assert is_imaginary_unit(CL3["e12"])
    assert is_imaginary_unit(DH["i"] + DH["εj"])
    assert not is_imaginary_unit(DH["i"] + DH["εi"])
    assert in_quadratic_cone(CL3.scalar(Fraction(7, 3)))
    assert not in_quadratic_cone(CL3.one() + CL3["e123"])
    assert in_quadratic_cone(CL3.one() + CL3["e1"])


def test_nonzero_quaternions_are_not_zero_divisors():
    assert not is_zero_divisor(H.one() + H["i"] - 2 * H["k"])


def test_basis_classification():
    for m in (2, 3, 4):
        alg = make_clifford(0, m)
        cls = classify_basis(alg.basis_elements())
        assert cls.distinguished and cls.signature == (2**m, 0, 0)
    cls = classify_basis(DH.basis_elements())
    assert cls.adapted and not cls.distinguished and cls.signature == (4, 0, 4)
    mu = Fraction(1, 2)
    basis = CL3.basis_elements()
    modified = [mu * v if lab == "e12" else v for v, lab in zip(basis, CL3.labels)]
    cls = classify_basis(modified)
    assert cls.fitted and not cls.adapted


def test_fitted_completion():
    out = find_fitted_completion([H["i"]], H)
    assert len(out) == 4 and all(v.conj() in (v, -v) for v in out)
    out = find_fitted_completion([CL3["e1"], CL3["e2"]], CL3)
    assert len(out) == 8 and all(v.conj() in (v, -v) for v in out)
    assert _linalg.rank([list(v.coeffs) for v in out]) == 8


def test_omega():
    para = [CL3.one(), CL3["e1"], CL3["e2"], CL3["e3"]]
    assert omega(para).exact == 1
    mu = Fraction(1, 2)
    ambient = [mu * v if lab == "e12" else v for v, lab in zip(CL3.basis_elements(), CL3.labels)]
    res = omega(para, ambient)
    assert res.lower_bound >= 1 / mu - 1e-9
    quat_in_dh = [DH.one(), DH["i"], DH["j"], DH["k"]]
    assert omega(quat_in_dh).value == pytest.approx(1.0)


def test_dual_quaternion_norm_constant():
    x = np.zeros(8)
    x[0], x[DH.labels.index("εi")] = math.sqrt(2 / 3), math.sqrt(1 / 3)
    a = from_float(DH, x)
    assert abs((a * a).norm() - 2 / math.sqrt(3) * a.norm() ** 2) <= 1e-12


def test_json_round_trip(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(json.dumps(H.to_json()))
    alg = load_algebra(path)
    assert alg.validate() == []
    assert alg.element(H["i"].coeffs) * alg.element(H["j"].coeffs) == alg.element(H["k"].coeffs)


def test_change_basis_keeps_products():
    alg = change_basis(H, [H.one(), H["j"], H["k"], H["i"]], ("1", "a", "b", "c"))
    assert alg["a"] * alg["b"] == alg["c"]


def test_bilinear_form_requires_unit_first():
    with pytest.raises(AlgebraError):
        bilinear_form([H["i"], H.one(), H["j"], H["k"]])
