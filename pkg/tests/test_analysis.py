from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tregular.algebra import builtin
from tregular.analysis import (
    KernelEval,
    QuadratureSpec,
    cauchy_kernel,
    gegenbauer,
    gegenbauer_at_one,
    kernel_monogenicity_residual,
    kernel_series,
    monte_carlo,
    sigma_m,
    sphere_integrate,
    sphere_points,
    verify_borel_pompeiu,
    verify_cauchy,
    verify_derivative_estimate,
    verify_gauss,
    verify_max_modulus,
    verify_mean_value,
    verify_sphere_measure,
)
from tregular.fueter import NotMonogenicError, fueter_poly
from tregular.polymap import PolyMap
from tregular.subspace import HypercomplexBasis

F = Fraction
CL02 = HypercomplexBasis.paravectors(builtin("cl02"), 2)


def test_sigma_closed_forms():
    assert sigma_m(0) == pytest.approx(2)
    assert sigma_m(1) == pytest.approx(2 * math.pi)
    assert sigma_m(2) == pytest.approx(4 * math.pi)
    assert sigma_m(3) == pytest.approx(2 * math.pi**2)
    assert sigma_m(4) == pytest.approx(8 * math.pi**2 / 3)
    with pytest.raises(ValueError):
        sigma_m(-1)


@given(st.floats(0.1, 10), st.lists(st.floats(-3, 3), min_size=4, max_size=4).filter(lambda v: np.linalg.norm(v) > 0.1))
def test_kernel_homogeneity(lam, x):
    ker = KernelEval(HypercomplexBasis.standard(builtin("quaternion")))
    x = np.array(x)
    assert np.allclose(ker.coords(lam * x), lam ** (-3) * ker.coords(x), rtol=1e-9)


def test_kernel_m1_is_scaled_inverse():
    C = HypercomplexBasis.standard(builtin("complex"))
    z = C.algebra.element([F(3), F(4)])
    val = cauchy_kernel(z, C).to_float()
    inv = (1 / complex(3, 4)) / (2 * math.pi)
    assert val == pytest.approx([inv.real, inv.imag])
    with pytest.raises(ZeroDivisionError):
        KernelEval(C).coords(np.zeros((1, 2)))


def test_kernel_is_two_sided_monogenic(quat_basis, cl3_basis):
    rng = np.random.default_rng(0)
    for basis in (quat_basis, cl3_basis, CL02):
        pts = rng.normal(size=(50, basis.m + 1)) + 2
        left, right = kernel_monogenicity_residual(basis, np.zeros(basis.m + 1), pts)
        assert left < 1e-6 and right < 1e-6


def test_gegenbauer_low_degrees():
    mu, t = F(3, 2), F(1, 3)
    assert gegenbauer(0, mu, t) == 1
    assert gegenbauer(1, mu, t) == 2 * mu * t
    assert gegenbauer(2, mu, t) == 2 * mu * (1 + mu) * t**2 - mu
    assert gegenbauer_at_one(4, mu) == gegenbauer(4, mu, F(1))
    assert gegenbauer_at_one(3, F(1)) == 4
    with pytest.raises(ValueError):
        gegenbauer(-1, mu, t)
    with pytest.raises(ValueError):
        gegenbauer(2, F(-1), t)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_kernel_series(m):
    rng = np.random.default_rng(m)
    y = rng.normal(size=m + 1)
    ks = kernel_series(m, np.zeros(m + 1), y, 1)
    assert ks.error < 1e-12
    x = 0.4 * np.linalg.norm(y) * sphere_points(rng, 1, m + 1)[0]
    for n in (5, 15, 30):
        ks = kernel_series(m, x, y, n)
        assert ks.error <= ks.tail_bound + 1e-12
    with pytest.raises(ValueError):
        kernel_series(m, y, y, 3)


def test_sphere_integrals():
    rep = verify_sphere_measure(2, 50000, seed=1, sigmas=3)
    assert rep.passed
    est = sphere_integrate(lambda w: w[:, :1], 3, 50000, seed=2)
    assert abs(est.estimate[0]) <= 3 * est.stderr[0]


def test_monte_carlo_thread_independent():
    def sampler(rng, n):
        return rng.normal(size=(n, 2))

    a = monte_carlo(sampler, 100_000, seed=7, workers=1)
    b = monte_carlo(sampler, 100_000, seed=7, workers=4)
    assert np.array_equal(a.estimate, b.estimate) and np.array_equal(a.stderr, b.stderr)
    assert a.samples == 100_000


def test_cauchy_constant_at_center(quat_basis):
    one = PolyMap.constant(quat_basis.algebra, 4, quat_basis.algebra.one())
    spec = QuadratureSpec((0.0,) * 4, 1.0, samples=20000, seed=3)
    rep = verify_cauchy(quat_basis, one, spec, (0.0,) * 4)
    assert rep.passed
    assert rep.target == (1.0, 0.0, 0.0, 0.0)


def test_cauchy_inside_and_outside(quat_basis):
    phi = fueter_poly(quat_basis, (1, 1, 0))
    spec = QuadratureSpec((0.1, 0.0, 0.2, 0.0), 1.0, samples=40000, seed=4)
    assert verify_cauchy(quat_basis, phi, spec, (0.2, 0.3, 0.1, 0.0)).passed
    out = verify_cauchy(quat_basis, phi, spec, (1.5, 1.0, 0.0, 0.0))
    assert out.passed and all(t == 0 for t in out.target)


def test_cauchy_rejects_non_monogenic(quat_basis):
    x1 = PolyMap.variable(quat_basis.algebra, 4, 1)
    spec = QuadratureSpec((0.0,) * 4, 1.0, samples=1000)
    with pytest.raises(NotMonogenicError):
        verify_cauchy(quat_basis, x1, spec, (0.0,) * 4)
    with pytest.raises(NotMonogenicError):
        verify_mean_value(quat_basis, x1, spec)


def test_borel_pompeiu_non_monogenic(quat_basis):
    x1 = PolyMap.variable(quat_basis.algebra, 4, 1)
    phi = x1 * x1
    spec = QuadratureSpec((0.0,) * 4, 1.0, samples=60000, seed=5)
    assert verify_borel_pompeiu(quat_basis, phi, spec, (0.2, 0.1, 0.0, 0.3)).passed


def test_mean_value_and_gauss():
    phi = fueter_poly(CL02, (2, 1))
    spec = QuadratureSpec((0.3, -0.2, 0.1), 1.5, samples=40000, seed=6)
    assert verify_mean_value(CL02, phi, spec).passed
    x1 = PolyMap.variable(CL02.algebra, 3, 1)
    psi = x1 * x1 + PolyMap.variable(CL02.algebra, 3, 0)
    assert verify_gauss(CL02, psi, x1, spec).passed


def test_derivative_estimate(quat_basis):
    phi = fueter_poly(quat_basis, (1, 0, 1))
    rep = verify_derivative_estimate(quat_basis, phi, (0.0,) * 4, 1.0, (0, 1, 0, 0), points=2000)
    assert rep.passed


def test_max_modulus(quat_basis):
    c = quat_basis.algebra["j"]
    const = PolyMap.constant(quat_basis.algebra, 4, c)
    rep = verify_max_modulus(quat_basis, const, (0.0,) * 4, 1.0, points=500)
    assert rep.passed and rep.estimate[0] == pytest.approx(rep.target[0])
    phi = fueter_poly(quat_basis, (2, 0, 1))
    assert verify_max_modulus(quat_basis, phi, (0.1, 0, 0, 0), 2.0, points=2000).passed


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec((0.0,), 1.0, samples=0)
    with pytest.raises(ValueError):
        QuadratureSpec((0.0,), -1.0)
    with pytest.raises(ValueError):
        QuadratureSpec((0.0,), 1.0, region="cube")
