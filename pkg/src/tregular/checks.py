"""Verification blocks shared by the command line and the acceptance tests.

Each ``criterion_*`` function runs one block of checks and returns a list of
:class:`Case` records.  Exact blocks compare rational objects for equality;
statistical blocks use the Monte-Carlo harness in :mod:`tregular.analysis`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import analysis as an
from .algebra import bilinear_form, builtin, from_float, omega
from .fueter import dbar, fueter_poly, monogenic_expand, oracle_poly, reconstruct
from .polymap import PolyMap, factorial, multi_indices, right_mul, slice_restrict
from .stem import (
    bracket_left,
    bracket_right,
    gamma_identity_violations,
    induce,
    mirror_subalgebra,
    norm_bound_check,
    parity_violations,
    recover_stem,
    representation_residual,
    representation_via_gamma,
    sample_orbits,
    sample_torus_pair,
    subsets,
)
from .subspace import (
    Fan,
    HypercomplexBasis,
    all_step_lists,
    extend_by_product,
    make_fan,
    rational_torus_point,
    slice_basis,
    slice_point,
)
from .tregular import (
    check_slice_identity,
    delta_at_origin,
    delta_two_slice,
    equivalence_classes,
    is_t_regular,
    t_expand_at,
    t_poly,
    t_reconstruct,
    variable_regular_under,
    variables_of,
)


@dataclass(frozen=True)
class Case:
    name: str
    status: str
    detail: str = ""
    numeric: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "numeric": self.numeric}


@dataclass(frozen=True)
class CheckConfig:
    seed: int = 42
    samples: int = 200_000
    sigmas: float = 4.0
    workers: int = 1

    def to_json(self) -> dict:
        return {"seed": self.seed, "samples": self.samples, "tolerance_sigma": self.sigmas}


def _case(name: str, failures: list[str], ok_detail: str = "") -> Case:
    if failures:
        shown = "; ".join(failures[:5])
        more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
        return Case(name, "fail", shown + more)
    return Case(name, "pass", ok_detail)


def _from_report(r: an.CheckReport) -> Case:
    numeric = r.to_json().get("numeric")
    return Case(r.name, "pass" if r.passed else "fail", r.detail, numeric)


# ---------------------------------------------------------------------------
# Shared fixtures
# ---------------------------------------------------------------------------


def quaternion_basis() -> HypercomplexBasis:
    return HypercomplexBasis.standard(builtin("quaternion"))


def paravector_basis(name: str, m: int | None = None) -> HypercomplexBasis:
    return HypercomplexBasis.paravectors(builtin(name), m)


def w2_basis() -> HypercomplexBasis:
    """``(1, e1, e2, e12)`` inside ``Cl(0,4)``."""
    return extend_by_product(paravector_basis("cl04", 2))


def standard_fans() -> list[Fan]:
    return [
        make_fan(quaternion_basis(), "1,3"),
        make_fan(paravector_basis("cl03"), "0,3"),
        make_fan(paravector_basis("cl04"), "0,2,4"),
    ]


def fan_label(fan: Fan) -> str:
    return f"{fan.algebra.name}/{fan.steps}"


def octonion_polynomial(seed: int = 0) -> tuple[Fan, PolyMap]:
    """``sum_{n <= 3} x^n a_n`` on the octonions with the fan ``(0,7)``."""
    O = builtin("octonion")
    fan = make_fan(HypercomplexBasis.standard(O), "0,7")
    x = PolyMap.linear(O, [O.basis(i) for i in range(8)])
    rng = np.random.default_rng(seed)
    coeffs = [O.element([Fraction(int(v), 3) for v in rng.integers(-3, 4, 8)]) for _ in range(4)]
    p = PolyMap.constant(O, 8, coeffs[0])
    power = PolyMap.constant(O, 8, O.one())
    for n in range(1, 4):
        power = right_mul(power, x)
        p = p + power.right_mul_element(coeffs[n])
    return fan, p


def random_t_polynomial(fan: Fan, degree: int = 3, seed: int = 0) -> PolyMap:
    """``sum_{|k| <= degree} T_k a_k`` with small rational coefficients."""
    rng = np.random.default_rng(seed)
    alg = fan.algebra
    out = PolyMap.zero(alg, fan.n + 1)
    for d in range(degree + 1):
        for k in multi_indices(fan.t0 + fan.tau, d):
            a = alg.element([Fraction(int(v), 2) for v in rng.integers(-2, 3, alg.dim)])
            out = out + t_poly(fan, k).poly.right_mul_element(a)
    return out


# ---------------------------------------------------------------------------
# 1. algebra axioms
# ---------------------------------------------------------------------------

AXIOM_ALGEBRAS = ("complex", "quaternion", "octonion", "cl01", "cl02", "cl03", "cl04", "dualquat")


def criterion_algebra_axioms(config: CheckConfig) -> list[Case]:
    cases = []
    for name in AXIOM_ALGEBRAS:
        alg = builtin(name)
        failures = []
        if not alg.check_unit():
            failures.append("unit")
        if not alg.check_conjugation():
            failures.append("conjugation is not an involutive anti-automorphism")
        if not alg.check_alternative():
            failures.append("not alternative")
        if alg.is_associative != (name != "octonion"):
            failures.append(f"associativity flag {alg.is_associative}")
        cases.append(_case(f"axioms[{name}]", failures, f"associative={alg.is_associative}"))
    return cases


# ---------------------------------------------------------------------------
# 2. constants
# ---------------------------------------------------------------------------


def criterion_constants(config: CheckConfig) -> list[Case]:
    cases = []
    cl3 = builtin("cl03")
    half = Fraction(1, 2)
    a = (cl3.one() + cl3["e123"]) * half
    b = (cl3.one() - cl3["e123"]) * half
    cases.append(_case("cl03 zero divisors", [] if (a * b).is_zero() and not a.is_zero() else [f"ab = {a * b}"]))

    cl4 = builtin("cl04")
    a = (cl4.one() + cl4["e123"]) * half
    b = (cl4.one() + cl4["e1234"]) * half
    want_ab = cl4.one() + cl4["e4"] + cl4["e123"] + cl4["e1234"]
    want_aba = cl4.one() + cl4["e123"]
    fails = []
    if 4 * (a * b) != want_ab:
        fails.append(f"4ab = {4 * (a * b)}")
    if 4 * (a * b * a) != want_aba:
        fails.append(f"4aba = {4 * (a * b * a)}")
    cases.append(_case("cl04 products", fails))

    dq = builtin("dualquat")
    sig = bilinear_form(dq.basis_elements()).signature
    cases.append(_case("dualquat signature", [] if sig == (4, 0, 4) else [f"signature {sig}"], str(sig)))

    x = np.zeros(dq.dim)
    x[0] = math.sqrt(2 / 3)
    x[dq.labels.index("εi")] = math.sqrt(1 / 3)
    el = from_float(dq, x)
    lhs = (el * el).norm()
    rhs = 2 / math.sqrt(3) * el.norm() ** 2
    ok = abs(lhs - rhs) <= 1e-12
    cases.append(Case("dualquat non-multiplicative norm", "pass" if ok else "fail", f"|a^2| = {lhs:.15f}, (2/sqrt3)|a|^2 = {rhs:.15f}"))
    return cases


# ---------------------------------------------------------------------------
# 3. Fueter polynomials
# ---------------------------------------------------------------------------


def fueter_bases() -> list[tuple[str, HypercomplexBasis]]:
    return [("cl03 paravectors", paravector_basis("cl03")), ("quaternion", quaternion_basis()), ("W2 in cl04", w2_basis())]


def criterion_fueter(config: CheckConfig, max_degree: int = 4) -> list[Case]:
    cases = []
    for label, basis in fueter_bases():
        alg, m = basis.algebra, basis.m
        fails: dict[str, list[str]] = {key: [] for key in ("dbar", "derivative", "oracle", "laplacian", "expansion")}
        combo = PolyMap.zero(alg, m + 1)
        combo_coeffs = {}
        rng = np.random.default_rng(config.seed)
        for d in range(max_degree + 1):
            for k in multi_indices(m, d):
                p = fueter_poly(basis, k)
                if not dbar(basis, p).is_zero():
                    fails["dbar"].append(str(k))
                for s in range(1, m + 1):
                    want = PolyMap.zero(alg, m + 1)
                    if k[s - 1]:
                        lower = k[: s - 1] + (k[s - 1] - 1,) + k[s:]
                        want = fueter_poly(basis, lower).scale(k[s - 1])
                    if p.partial(s) != want:
                        fails["derivative"].append(f"{k}, s={s}")
                if oracle_poly(basis, k) != p:
                    fails["oracle"].append(str(k))
                lap = PolyMap.zero(alg, m + 1)
                for s in range(m + 1):
                    lap = lap + p.partial(s).partial(s)
                if not lap.is_zero():
                    fails["laplacian"].append(str(k))
                if monogenic_expand(basis, p) != {k: alg.one()}:
                    fails["expansion"].append(str(k))
                a = alg.element([Fraction(int(v), 3) for v in rng.integers(-3, 4, alg.dim)])
                if not a.is_zero():
                    combo_coeffs[k] = a
                    combo = combo + p.right_mul_element(a)
        if monogenic_expand(basis, combo) != combo_coeffs or reconstruct(basis, combo_coeffs) != combo:
            fails["expansion"].append("random combination")
        for key, f in fails.items():
            cases.append(_case(f"fueter {key}[{label}]", f))
    return cases


# ---------------------------------------------------------------------------
# 4. T_k polynomials
# ---------------------------------------------------------------------------


def criterion_t_system(config: CheckConfig, max_degree: int = 3) -> list[Case]:
    cases = []
    for fan in standard_fans():
        label = fan_label(fan)
        alg = fan.algebra
        Js = [rational_torus_point(fan, config.seed + i) for i in range(3)]
        ks = [k for d in range(max_degree + 1) for k in multi_indices(fan.t0 + fan.tau, d)]
        hs = [h for d in range(max_degree + 1) for h in multi_indices(fan.slice_nvars, d)]
        slice_fails, kron_fails, delta_fails = [], [], []
        for k in ks:
            p = t_poly(fan, k).poly
            for J in Js:
                if not check_slice_identity(fan, k, J).is_zero():
                    slice_fails.append(f"{k} at J={J}")
            for k2 in ks:
                # normalised as in the expansion coefficients c_k = (1/k!) delta^(0,k) P(0)
                value = delta_at_origin(fan, t_poly(fan, k2).poly, (0,) * (fan.slice_nvars - len(k)) + k, Js[0]) / factorial(k)
                if value != (alg.one() if k == k2 else alg.zero()):
                    kron_fails.append(f"(1/k!) delta^(0,{k}) T_{k2}(0) = {value}")
            for h in hs:
                if not delta_two_slice(fan, p, h, Js[1], Js[2]).agree:
                    delta_fails.append(f"T_{k}, h={h}")
        cases.append(_case(f"slice identity[{label}]", slice_fails, f"{len(ks)} polynomials x {len(Js)} torus points"))
        cases.append(_case(f"kronecker delta[{label}]", kron_fails))
        cases.append(_case(f"two-slice delta agreement[{label}]", delta_fails, f"{len(hs)} multi-indices h"))

    fan = standard_fans()[2]
    J = rational_torus_point(fan, config.seed)
    got = [[delta_at_origin(fan, t_poly(fan, k).poly, h, J) for k in [(1, 0), (0, 1)]] for h in [(0, 1, 0), (0, 0, 1)]]
    alg = fan.algebra
    want = [[alg.one(), alg.zero()], [alg.zero(), alg.one()]]
    cases.append(_case("delta matrix[Cl(0,4)/(0,2,4)]", [] if got == want else [str(got)], "identity matrix"))

    # the finite series expansion about a mirror point reproduces T-regular polynomials
    fails = []
    for fan in standard_fans():
        p = random_t_polynomial(fan, 2, config.seed)
        center = [Fraction(1, 2)] + [Fraction(-1, 3)] * fan.t0
        if t_reconstruct(fan, t_expand_at(fan, p, center), center) != p:
            fails.append(fan_label(fan))
    cases.append(_case("series expansion at mirror point", fails))
    return cases


# ---------------------------------------------------------------------------
# 5. classification
# ---------------------------------------------------------------------------

QUATERNION_CLASSES = [[(3,), (2, 3), (1, 2, 3), (0, 1, 2, 3)], [(0, 3)], [(1, 3), (0, 1, 3)], [(0, 2, 3)]]


def _class_set(classes) -> set:
    return {frozenset(tuple(t) for t in c) for c in classes}


def criterion_classification(config: CheckConfig, n: int = 3) -> list[Case]:
    cases = []
    got = equivalence_classes(n)
    ok = _class_set(got) == _class_set(QUATERNION_CLASSES)
    cases.append(Case("equivalence classes n=3", "pass" if ok else "fail", json_classes(got)))

    basis = quaternion_basis()
    lists = all_step_lists(basis.m)
    fails, total = [], 0
    for T in lists:
        fan = make_fan(basis, T)
        for which, index, p in variables_of(fan):
            for T2 in lists:
                total += 1
                symbolic = is_t_regular(p, make_fan(basis, T2), 3, config.seed)
                if symbolic != variable_regular_under(T, T2, which, index):
                    fails.append(f"{which}_{index} of {T} under {T2}")
    cases.append(_case("variable predicate vs symbolic dbar", fails, f"{total} comparisons"))
    return cases


def json_classes(classes) -> str:
    return " | ".join("{" + ", ".join("(" + ",".join(map(str, t)) + ")" for t in c) + "}" for c in classes)


# ---------------------------------------------------------------------------
# 6. stems and the representation formula
# ---------------------------------------------------------------------------


def criterion_stems(config: CheckConfig, tuples: int = 20) -> list[Case]:
    cases = []
    for fan in standard_fans():
        label = fan_label(fan)
        A = mirror_subalgebra(fan)
        I = rational_torus_point(fan, config.seed + 5)
        parity, mirror_valued = [], []
        for d in range(4):
            for k in multi_indices(fan.t0 + fan.tau, d):
                table = recover_stem(t_poly(fan, k).poly, fan, I, check=False)
                parity += [f"T_{k}: {v}" for v in parity_violations(table)]
                if not all(A.contains_poly(table.component(K)) for K in subsets(fan.tau)):
                    mirror_valued.append(str(k))
        cases.append(_case(f"stem parity[{label}]", parity))
        cases.append(_case(f"mirror-valued stems[{label}]", mirror_valued, f"mirror subalgebra dim {A.dim}"))

        p = random_t_polynomial(fan, 3, config.seed)
        table = recover_stem(p, fan, I)
        fails = []
        for i, (alpha, beta) in enumerate(sample_orbits(fan, tuples, config.seed)):
            I2, J = sample_torus_pair(fan, config.seed + i)
            x = slice_point(fan, alpha, beta, J)
            value = p.evaluate(fan.basis.coordinates(x))
            if not representation_residual(p, fan, alpha, beta, I2, J).is_zero():
                fails.append(f"residual at tuple {i}")
            if representation_via_gamma(p, fan, alpha, beta, I2, J) != value:
                fails.append(f"gamma form at tuple {i}")
            if induce(table, x) != value:
                fails.append(f"induce at tuple {i}")
        cases.append(_case(f"representation formula[{label}]", fails, f"{tuples} tuples"))

        fails = []
        for i in range(5):
            I2, J = sample_torus_pair(fan, config.seed + i)
            fails += gamma_identity_violations(fan, I2, J)
        cases.append(_case(f"gamma identities[{label}]", fails))

    fan, p = octonion_polynomial(config.seed)
    rng = np.random.default_rng(config.seed)
    fails = []
    for i in range(tuples):
        I = rational_torus_point(fan, [[Fraction(int(v), 2) for v in rng.integers(-3, 4, 6)]])
        J = rational_torus_point(fan, [[Fraction(int(v), 3) for v in rng.integers(-3, 4, 6)]])
        alpha = (Fraction(int(rng.integers(-4, 5)), 3),)
        beta = (Fraction(int(rng.integers(-4, 5)), 2),)
        if not representation_residual(p, fan, alpha, beta, I, J).is_zero():
            fails.append(f"tuple {i}")
    I = rational_torus_point(fan, config.seed)
    table = recover_stem(p, fan, I)
    for i in range(5):
        J = rational_torus_point(fan, config.seed + 100 + i)
        x = slice_point(fan, (Fraction(1, 2),), (Fraction(i + 1, 3),), J)
        if induce(table, x) != p.evaluate(fan.basis.coordinates(x)):
            fails.append(f"induce {i}")
    cases.append(_case("representation formula[octonion/(0,7)]", fails, f"{tuples} tuples"))

    O = fan.algebra
    J = rational_torus_point(fan, config.seed + 1)
    fails = []
    for i in range(100):
        a = O.element([Fraction(int(v), 5) for v in rng.integers(-9, 10, 8)])
        for K in subsets(fan.tau):
            if bracket_right(J, bracket_left(J, a, K), K) != a:
                fails.append(f"element {i}, K={K}")
    cases.append(_case("bracket round trip[octonion]", fails, "100 elements"))
    return cases


# ---------------------------------------------------------------------------
# 7. norm bound
# ---------------------------------------------------------------------------


def criterion_norm_bound(config: CheckConfig, orbits: int = 200) -> list[Case]:
    cases = []
    for fan in standard_fans():
        om = omega(fan.basis).value
        p = random_t_polynomial(fan, 3, config.seed)
        I = rational_torus_point(fan, config.seed + 7)
        report = norm_bound_check(p, fan, I, om, sample_orbits(fan, orbits, config.seed), seed=config.seed)
        detail = f"max ratio {report.max_ratio:.6f} <= {report.bound:g} over {report.orbits} orbits"
        cases.append(Case(f"norm bound[{fan_label(fan)}]", "pass" if report.ok else "fail", detail))
    return cases


# ---------------------------------------------------------------------------
# 8. kernel and Gegenbauer
# ---------------------------------------------------------------------------

MUS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2))


def criterion_kernel(config: CheckConfig) -> list[Case]:
    cases = []
    fails = []
    grid = [Fraction(i, 20) for i in range(-20, 21)]
    for mu in MUS:
        for h in range(11):
            at_one = an.gegenbauer_at_one(h, mu)
            # every mu here has 2 mu integral, so the binomial is an ordinary one
            if an.gegenbauer(h, mu, Fraction(1)) != at_one or at_one != math.comb(h + int(2 * mu) - 1, h):
                fails.append(f"C_{h}^{mu}(1)")
            if max(abs(an.gegenbauer(h, mu, t)) for t in grid) > at_one:
                fails.append(f"max |C_{h}^{mu}|")
        t = Fraction(1, 3)
        if an.gegenbauer(2, mu, t) != 2 * mu * (mu + 1) * t * t - mu:
            fails.append(f"C_2^{mu} closed form")
    cases.append(_case("gegenbauer endpoints", fails, "h <= 10"))

    rng = np.random.default_rng(config.seed)
    worst = 0.0
    for basis in (paravector_basis("cl02"), quaternion_basis(), paravector_basis("cl04")):
        pole = rng.normal(size=basis.m + 1) * 0.3
        pts = pole + rng.normal(size=(20, basis.m + 1))
        worst = max(worst, *an.kernel_monogenicity_residual(basis, pole, pts, 1e-5))
    cases.append(Case("kernel monogenicity (finite differences)", "pass" if worst < 1e-6 else "fail", f"max residual {worst:.3g}"))

    fails, worst_ratio = [], 0.0
    for m in (2, 3):
        for i in range(50):
            y = rng.normal(size=m + 1)
            x = rng.normal(size=m + 1)
            x *= rng.uniform(0.05, 0.5) * np.linalg.norm(y) / np.linalg.norm(x)
            for terms in (2, 6, 12):
                ks = an.kernel_series(m, x, y, terms)
                if ks.error > ks.tail_bound + 1e-12:
                    fails.append(f"m={m}, pair {i}, terms {terms}")
                worst_ratio = max(worst_ratio, ks.error / ks.tail_bound)
            for k in range(9):
                if np.linalg.norm(an.d_a(k, x, y, m)) > an.d_a_bound(k, x, m) * (1 + 1e-12):
                    fails.append(f"A-bound m={m}, k={k}")
    cases.append(_case("kernel series tail bound", fails, f"100 pairs, max error/bound {worst_ratio:.3g}"))
    return cases


# ---------------------------------------------------------------------------
# 9. quadrature theorems
# ---------------------------------------------------------------------------


def _spec(center, radius, config: CheckConfig, tag: int) -> an.QuadratureSpec:
    return an.QuadratureSpec(tuple(float(c) for c in center), radius, config.samples, config.seed * 1000 + tag, workers=config.workers)


def cauchy_fixtures() -> list[tuple[str, HypercomplexBasis, PolyMap]]:
    b2, bh, b3 = paravector_basis("cl02"), quaternion_basis(), paravector_basis("cl03")
    return [
        ("P_(1,1) cl02", b2, fueter_poly(b2, (1, 1))),
        ("P_(1,1,1) quaternion", bh, fueter_poly(bh, (1, 1, 1))),
        ("P_(2,0,1) cl03", b3, fueter_poly(b3, (2, 0, 1)) + fueter_poly(b3, (0, 1, 0))),
    ]


def t_slice_fixture(config: CheckConfig) -> tuple[HypercomplexBasis, PolyMap]:
    """A T-regular polynomial on ``H/(1,3)`` restricted to one slice."""
    fan = standard_fans()[0]
    J = rational_torus_point(fan, config.seed)
    f = t_poly(fan, (1, 2)).poly + t_poly(fan, (0, 1)).poly
    return slice_basis(fan, J), slice_restrict(f, J, fan)


def criterion_quadrature(config: CheckConfig) -> list[Case]:
    reports: list[an.CheckReport] = []
    s = config.sigmas
    for m in range(1, 5):
        reports.append(an.verify_sphere_measure(m, config.samples, config.seed, sigmas=s))
    for i, (label, basis, phi) in enumerate(cauchy_fixtures()):
        n = basis.m + 1
        center = [0.1] + [0.0] * (n - 1)
        inside = [0.3, -0.2] + [0.15] * (n - 2)
        outside = [1.6, 0.2] + [-0.1] * (n - 2)
        reports.append(an.verify_cauchy(basis, phi, _spec(center, 1.0, config, 10 + i), inside, f"cauchy interior[{label}]", s))
        reports.append(an.verify_cauchy(basis, phi, _spec(center, 1.0, config, 20 + i), outside, f"cauchy exterior[{label}]", s))
    bh = quaternion_basis()
    phi = _x1_squared(bh)
    reports.append(an.verify_borel_pompeiu(bh, phi, _spec([0, 0, 0, 0], 1.0, config, 30), [0.2, 0.3, -0.1, 0.25], "borel-pompeiu interior[x1^2 quaternion]", s))
    reports.append(an.verify_borel_pompeiu(bh, phi, _spec([0, 0, 0, 0], 1.0, config, 31), [1.4, 0.3, -0.1, 0.25], "borel-pompeiu exterior[x1^2 quaternion]", s))
    reports.append(an.verify_mean_value(bh, fueter_poly(bh, (1, 1, 1)), _spec([0.2, 0.1, -0.1, 0.3], 0.8, config, 40), "mean value[quaternion]", s))
    sb, fJ = t_slice_fixture(config)
    reports.append(an.verify_mean_value(sb, fJ, _spec([0.3, -0.2, 0.0], 0.9, config, 41), "mean value[T-slice quaternion/(1,3)]", s))
    b2 = paravector_basis("cl02")
    for i in range(5):
        psi = an.random_polynomial(b2, 2, config.seed + 2 * i)
        phi = an.random_polynomial(b2, 2, config.seed + 2 * i + 1)
        reports.append(an.verify_gauss(b2, psi, phi, _spec([0.1, -0.1, 0.2], 1.0, config, 50 + i), f"gauss[pair {i}]", s))
    p = fueter_poly(bh, (1, 1, 1)) + fueter_poly(bh, (2, 0, 0))
    for h in [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (2, 0, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1)]:
        reports.append(an.verify_derivative_estimate(bh, p, (0.1, 0.0, 0.2, 0.0), 0.9, h, seed=config.seed, name=f"derivative estimate[h={h}]"))
    return [_from_report(r) for r in reports]


def _x1_squared(basis: HypercomplexBasis) -> PolyMap:
    n = basis.m + 1
    e = tuple(2 if i == 1 else 0 for i in range(n))
    return PolyMap(basis.algebra, n, {e: basis.algebra.one()})


# ---------------------------------------------------------------------------
# 10. maximum modulus
# ---------------------------------------------------------------------------


def criterion_max_modulus(config: CheckConfig) -> list[Case]:
    reports = []
    for label, basis, phi in cauchy_fixtures():
        center = [0.1] + [0.0] * basis.m
        reports.append(an.verify_max_modulus(basis, phi, center, 1.0, 10_000, config.seed, name=f"max modulus[{label}]"))
    sb, fJ = t_slice_fixture(config)
    reports.append(an.verify_max_modulus(sb, fJ, [0.3, -0.2, 0.0], 0.9, 10_000, config.seed, name="max modulus[T-slice quaternion/(1,3)]"))
    return [_from_report(r) for r in reports]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

CRITERIA: dict[int, tuple[str, Callable[[CheckConfig], list[Case]]]] = {
    1: ("algebra axioms", criterion_algebra_axioms),
    2: ("constants", criterion_constants),
    3: ("fueter system", criterion_fueter),
    4: ("T_k system", criterion_t_system),
    5: ("classification", criterion_classification),
    6: ("stems and representation", criterion_stems),
    7: ("norm bound", criterion_norm_bound),
    8: ("kernel and gegenbauer", criterion_kernel),
    9: ("quadrature theorems", criterion_quadrature),
    10: ("maximum modulus", criterion_max_modulus),
}

SUITES: dict[str, tuple[int, ...]] = {
    "symbolic": (1, 2, 3, 4, 8),
    "classify": (5,),
    "stems": (6, 7),
    "quadrature": (9, 10),
}
SUITES["all"] = SUITES["symbolic"] + SUITES["classify"] + SUITES["stems"] + SUITES["quadrature"]


def run_criterion(number: int, config: CheckConfig) -> list[Case]:
    label, fn = CRITERIA[number]
    try:
        cases = fn(config)
    except Exception as exc:  # a crash is reported as a failing case
        cases = [Case(label, "fail", f"{type(exc).__name__}: {exc}")]
    return [Case(f"{number}. {c.name}", c.status, c.detail, c.numeric) for c in cases]
