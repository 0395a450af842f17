"""Cauchy kernel, Gegenbauer polynomials, kernel series and Monte-Carlo checks.

Points of the hypercomplex subspace ``M`` are handled through their
coordinates in the hypercomplex basis ``B = (v_0, ..., v_m)``; norms on ``M``
are Euclidean in these coordinates and norms of algebra values are Euclidean
in the algebra's coordinates.  ``x^c`` has coordinates ``(x_0, -x_1, ..., -x_m)``.

Monte-Carlo integrals split the sample budget into fixed chunks.  Chunk ``i``
draws from its own Philox stream spawned from ``SeedSequence(seed)``, and the
per-chunk means and squared deviations are merged in chunk order, so results
are reproducible bit for bit whatever the number of worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .algebra import Element, from_float, omega as omega_constant
from .fueter import NotMonogenicError, dbar
from .polymap import Exponent, PolyMap, multi_indices, unit_index
from .subspace import HypercomplexBasis

CHUNK = 1 << 15


# ---------------------------------------------------------------------------
# Sphere measure and the Cauchy kernel
# ---------------------------------------------------------------------------


def sigma_m(m: int) -> float:
    """Surface measure of the unit ``m``-sphere in ``R^{m+1}``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return 2 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


@dataclass(frozen=True)
class KernelEval:
    """``E_m(x) = x^c / (sigma_m |x|^{m+1})`` on the span of ``basis``."""

    basis: HypercomplexBasis

    @property
    def m(self) -> int:
        return self.basis.m

    @property
    def sigma(self) -> float:
        return sigma_m(self.m)

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Basis coordinates of ``E_m`` at points given by basis coordinates ``(N, m+1)``."""
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1, keepdims=True)
        if np.any(r == 0):
            raise ZeroDivisionError("the Cauchy kernel is singular at 0")
        xc = x.copy()
        xc[..., 1:] *= -1
        return xc / (self.sigma * r ** (self.m + 1))

    def algebra_values(self, x: np.ndarray) -> np.ndarray:
        return self.coords(x) @ self.basis.matrix_float()

    def __call__(self, x: Element) -> Element:
        c = _float_coordinates(self.basis, x)
        return from_float(self.basis.algebra, self.algebra_values(c[None, :])[0])


def _float_coordinates(basis: HypercomplexBasis, x: Element) -> np.ndarray:
    mat = basis.matrix_float()
    return np.linalg.lstsq(mat.T, x.to_float(), rcond=None)[0]


def cauchy_kernel(x: Element, basis: HypercomplexBasis) -> Element:
    """``E_m(x)`` for ``x != 0`` in the span of ``basis``."""
    return KernelEval(basis)(x)


def to_algebra(basis: HypercomplexBasis, coords: np.ndarray) -> np.ndarray:
    return np.asarray(coords, dtype=float) @ basis.matrix_float()


def kernel_monogenicity_residual(
    basis: HypercomplexBasis, pole: Sequence[float], points: np.ndarray, step: float = 1e-5
) -> tuple[float, float]:
    """Central-difference ``dbar`` of ``y -> E_m(y - pole)`` from the left and from the right.

    Returns the largest left and right residual norms over ``points``.
    """
    ker = KernelEval(basis)
    alg = basis.algebra
    units = basis.matrix_float()
    pole = np.asarray(pole, dtype=float)
    pts = np.asarray(points, dtype=float) - pole
    left = np.zeros((len(pts), alg.dim))
    right = np.zeros_like(left)
    for s in range(basis.m + 1):
        e = np.zeros(basis.m + 1)
        e[s] = step
        d = (ker.algebra_values(pts + e) - ker.algebra_values(pts - e)) / (2 * step)
        left += alg.mul_array(units[s], d)
        right += alg.mul_array(d, units[s])
    return float(np.max(np.linalg.norm(left, axis=1))), float(np.max(np.linalg.norm(right, axis=1)))


# ---------------------------------------------------------------------------
# Gegenbauer polynomials
# ---------------------------------------------------------------------------


def _check_gegenbauer(h: int, mu, t=None) -> None:
    if h < 0:
        raise ValueError("degree must be nonnegative")
    if not mu > 0:
        raise ValueError("Gegenbauer parameter mu must be positive")
    if t is not None and not -1 <= t <= 1:
        raise ValueError("Gegenbauer argument must lie in [-1, 1]")


def gegenbauer(h: int, mu, t):
    """``C_h^mu(t)`` by the three-term recurrence; exact for rational ``mu`` and ``t``."""
    _check_gegenbauer(h, mu, t)
    prev, cur = 1, 2 * mu * t
    if h == 0:
        return prev + 0 * t
    for n in range(2, h + 1):
        prev, cur = cur, (2 * (n + mu - 1) * t * cur - (n + 2 * mu - 2) * prev) / n
    return cur


def gegenbauer_at_one(h: int, mu):
    """``C_h^mu(1) = binom(h + 2 mu - 1, h)`` from the product formula."""
    _check_gegenbauer(h, mu)
    out = Fraction(1) if not isinstance(mu, float) else 1.0
    for i in range(1, h + 1):
        out = out * (2 * mu - 1 + i) / i
    return out


# ---------------------------------------------------------------------------
# Kernel series
# ---------------------------------------------------------------------------


def _unit(v: np.ndarray) -> np.ndarray:
    r = np.linalg.norm(v)
    if r == 0:
        out = np.zeros_like(v)
        out[0] = 1.0
        return out
    return v / r


def _conj(v: np.ndarray) -> np.ndarray:
    out = np.array(v, dtype=float)
    out[1:] *= -1
    return out


def d_a(k: int, x: np.ndarray, y: np.ndarray, m: int) -> np.ndarray:
    """Basis coordinates of ``d^x_B A_{k+1}(x, y)`` (requires ``m >= 2``)."""
    if m < 2:
        raise ValueError("the A_h route needs m >= 2")
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    ux, uy = _unit(x), _unit(y)
    t1 = float(np.clip(ux @ uy, -1.0, 1.0))
    nx = float(np.linalg.norm(x))
    if k >= 1 and nx == 0:
        return np.zeros_like(x)
    vec = (m - 1) * gegenbauer(k, (m + 1) / 2, t1) * (uy - ux * t1) + (k + 1) * gegenbauer(k + 1, (m - 1) / 2, t1) * ux
    return _conj(vec) * nx**k


def d_a_bound(k: int, x: np.ndarray, m: int) -> float:
    """``sqrt(2) (m - 1) binom(k + m, m) |x|^k``."""
    return math.sqrt(2) * (m - 1) * math.comb(k + m, m) * float(np.linalg.norm(x)) ** k


def kernel_series_term(k: int, x: np.ndarray, y: np.ndarray, m: int) -> np.ndarray:
    """``P_k(x, y)``, so that ``E_m(y - x) = sigma_m^{-1} sum_k P_k(x, y)``."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if m == 1:
        zx, zy = complex(x[0], x[1]), complex(y[0], y[1])
        z = zx**k * zy ** (-k - 1)
        return np.array([z.real, z.imag])
    return d_a(k, x, y, m) * float(np.linalg.norm(y)) ** (-m - k) / (m - 1)


def series_tail_bound(terms: int, q: float, ny: float, m: int) -> float:
    """Bound on ``sigma_m^{-1} sum_{k >= terms} sqrt(2) binom(k+m, m) q^k |y|^{-m}``.

    Terms are summed until the ratio of consecutive majorant terms,
    ``(k + 1 + m) q / (k + 1)``, drops below one; from there on the ratios
    decrease, so the remainder is bounded by a geometric series.
    """
    if not 0 <= q < 1:
        raise ValueError("need |x| < |y|")
    scale = math.sqrt(2) * ny ** (-m) / sigma_m(m)
    if q == 0:
        return scale if terms == 0 else 0.0
    total, k = 0.0, terms
    term = math.comb(k + m, m) * q**k
    while True:
        ratio = (k + 1 + m) * q / (k + 1)
        if ratio < 1:
            return scale * (total + term / (1 - ratio))
        total += term
        term *= ratio
        k += 1


@dataclass(frozen=True)
class KernelSeries:
    partial: np.ndarray
    tail_bound: float
    exact: np.ndarray

    @property
    def error(self) -> float:
        return float(np.linalg.norm(self.partial - self.exact))


def kernel_series(basis: HypercomplexBasis | int, x: Sequence[float], y: Sequence[float], terms: int) -> KernelSeries:
    """Partial sum of the expansion of ``E_m(y - x)`` with its tail bound.

    ``x`` and ``y`` are basis coordinates with ``|x| < |y|``; the result is in
    basis coordinates as well.
    """
    m = basis if isinstance(basis, int) else basis.m
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    nx, ny = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if not nx < ny:
        raise ValueError("kernel series needs |x| < |y|")
    partial = np.zeros(m + 1)
    for k in range(terms):
        partial += kernel_series_term(k, x, y, m)
    partial /= sigma_m(m)
    d = y - x
    exact = _conj(d) / (sigma_m(m) * np.linalg.norm(d) ** (m + 1))
    return KernelSeries(partial, series_tail_bound(terms, nx / ny, ny, m), exact)


# ---------------------------------------------------------------------------
# Monte-Carlo integration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    """Ball ``B(center, radius)`` in basis coordinates with a sampling budget."""

    center: tuple[float, ...]
    radius: float
    samples: int = 200_000
    seed: int = 0
    region: str = "sphere"
    workers: int = 1

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.region not in ("sphere", "ball"):
            raise ValueError("region must be 'sphere' or 'ball'")

    @property
    def m(self) -> int:
        return len(self.center) - 1


@dataclass(frozen=True)
class MCEstimate:
    estimate: np.ndarray
    stderr: np.ndarray
    samples: int

    def __add__(self, other: "MCEstimate") -> "MCEstimate":
        return MCEstimate(self.estimate + other.estimate, np.hypot(self.stderr, other.stderr), self.samples + other.samples)

    def __sub__(self, other: "MCEstimate") -> "MCEstimate":
        return MCEstimate(self.estimate - other.estimate, np.hypot(self.stderr, other.stderr), self.samples + other.samples)

    def scaled(self, c: float) -> "MCEstimate":
        return MCEstimate(self.estimate * c, self.stderr * abs(c), self.samples)


Sampler = Callable[[np.random.Generator, int], np.ndarray]


def _chunk_stats(sampler: Sampler, seq: np.random.SeedSequence, n: int) -> tuple[int, np.ndarray, np.ndarray]:
    rng = np.random.Generator(np.random.Philox(seq))
    vals = np.asarray(sampler(rng, n), dtype=float)
    mean = vals.mean(axis=0)
    m2 = ((vals - mean) ** 2).sum(axis=0)
    return n, mean, m2


def monte_carlo(sampler: Sampler, samples: int, seed, workers: int = 1) -> MCEstimate:
    """Mean of ``sampler`` values with componentwise standard error.

    ``seed`` is an integer, a sequence of integers or a ``SeedSequence``.
    """
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    seqs = _seed_sequence(seed).spawn(len(sizes))
    jobs = list(zip(seqs, sizes))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(lambda job: _chunk_stats(sampler, *job), jobs))
    else:
        stats = [_chunk_stats(sampler, s, n) for s, n in jobs]
    n, mean, m2 = stats[0]
    for nb, mb, m2b in stats[1:]:
        tot = n + nb
        delta = mb - mean
        mean = mean + delta * nb / tot
        m2 = m2 + m2b + delta**2 * n * nb / tot
        n = tot
    var = m2 / (n - 1) if n > 1 else np.zeros_like(m2)
    return MCEstimate(mean, np.sqrt(var / n), n)


def sphere_points(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """Uniform points of the unit sphere in ``R^dim`` (normalised Gaussians)."""
    g = rng.standard_normal((n, dim))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return g / norms


def ball_points(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    w = sphere_points(rng, n, dim)
    r = rng.random(n) ** (1.0 / dim)
    return w * r[:, None]


def sphere_integrate(g: Callable[[np.ndarray], np.ndarray], m: int, samples: int, seed: int = 0, workers: int = 1) -> MCEstimate:
    """``int_{S^m} g(w) |do_w|`` for ``g`` mapping ``(N, m+1)`` points to ``(N, d)`` values."""
    sig = sigma_m(m)

    def sampler(rng, n):
        w = sphere_points(rng, n, m + 1)
        return sig * np.asarray(g(w), dtype=float).reshape(n, -1)

    return monte_carlo(sampler, samples, seed, workers)


def ball_integrate(g: Callable[[np.ndarray], np.ndarray], center: Sequence[float], radius: float, samples: int, seed: int = 0, workers: int = 1) -> MCEstimate:
    """``int_{B(center, radius)} g(y) dsigma_y`` with uniform sampling."""
    c = np.asarray(center, dtype=float)
    m = len(c) - 1
    vol = sigma_m(m) * radius ** (m + 1) / (m + 1)

    def sampler(rng, n):
        y = c + radius * ball_points(rng, n, m + 1)
        return vol * np.asarray(g(y), dtype=float).reshape(n, -1)

    return monte_carlo(sampler, samples, seed, workers)


def polar_ball_integrate(
    g_polar: Callable[[np.ndarray, np.ndarray], np.ndarray],
    center: Sequence[float],
    radius: float,
    pole: Sequence[float],
    samples: int,
    seed: int = 0,
    workers: int = 1,
) -> MCEstimate:
    """``int_{B(center, radius)} g(y) dsigma_y`` in polar coordinates about an interior ``pole``.

    ``g_polar(w, r)`` must return ``r^m g(pole + r w)``; the caller cancels any
    ``|y - pole|^{-m}`` singularity analytically.  Directions are uniform and
    ``r`` is uniform on ``[0, rho(w)]`` where ``rho(w)`` is the distance to
    the boundary along ``w``.
    """
    c, p = np.asarray(center, dtype=float), np.asarray(pole, dtype=float)
    m = len(c) - 1
    d = p - c
    if np.linalg.norm(d) >= radius:
        raise ValueError("the pole must lie inside the ball")
    sig = sigma_m(m)

    def sampler(rng, n):
        w = sphere_points(rng, n, m + 1)
        b = w @ d
        rho = -b + np.sqrt(b * b - (d @ d - radius * radius))
        r = rho * rng.random(n)
        vals = np.asarray(g_polar(w, r), dtype=float).reshape(n, -1)
        return sig * rho[:, None] * vals

    return monte_carlo(sampler, samples, seed, workers)


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


def _round(values) -> list[float]:
    return [float(f"{float(v):.12g}") for v in np.atleast_1d(values)]


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    estimate: tuple[float, ...] = ()
    target: tuple[float, ...] = ()
    stderr: tuple[float, ...] = ()
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed, "detail": self.detail}
        if self.estimate:
            out["numeric"] = {"estimate": _round(self.estimate), "target": _round(self.target), "stderr": _round(self.stderr)}
        return out


def statistical_report(name: str, est: MCEstimate, target, sigmas: float = 4.0, atol: float = 1e-9, detail: str = "") -> CheckReport:
    target = np.broadcast_to(np.asarray(target, dtype=float), est.estimate.shape)
    dev = np.abs(est.estimate - target)
    tol = sigmas * est.stderr + atol * (1 + np.abs(target))
    ok = bool(np.all(dev <= tol))
    z = float(np.max(dev / np.maximum(est.stderr, 1e-300))) if np.any(est.stderr > 0) else 0.0
    info = detail or f"max deviation {float(np.max(dev)):.3g}, max z {z:.2f}"
    return CheckReport(name, ok, tuple(est.estimate), tuple(target), tuple(est.stderr), info)


def _require_monogenic(basis: HypercomplexBasis, phi: PolyMap) -> None:
    residual = dbar(basis, phi)
    if not residual.is_zero():
        raise NotMonogenicError("phi is not left monogenic", residual)


def _phi_values(phi: PolyMap, y: np.ndarray) -> np.ndarray:
    return phi.evaluate_array(y)


def _cauchy_surface(basis: HypercomplexBasis, phi: PolyMap, center: np.ndarray, radius: float, x: np.ndarray, samples: int, seed, workers: int) -> MCEstimate:
    ker = KernelEval(basis)
    alg = basis.algebra
    mat = basis.matrix_float()
    m = basis.m

    def g(w):
        y = center + radius * w
        kern = ker.algebra_values(y - x)
        dy = (radius**m) * (w @ mat)
        return alg.mul_array(alg.mul_array(kern, dy), _phi_values(phi, y))

    return sphere_integrate(g, m, samples, seed, workers)


def _volume_term(basis: HypercomplexBasis, dphi: PolyMap, center: np.ndarray, radius: float, x: np.ndarray, samples: int, seed, workers: int) -> MCEstimate:
    """``int_B E_m(y - x) dphi(y) dsigma_y``."""
    alg = basis.algebra
    mat = basis.matrix_float()
    m = basis.m
    sig = sigma_m(m)
    if np.linalg.norm(x - center) < radius:
        # r^m E_m(r w) = w^c / sigma_m
        def gp(w, r):
            wc = w.copy()
            wc[:, 1:] *= -1
            y = x + r[:, None] * w
            return alg.mul_array((wc @ mat) / sig, _phi_values(dphi, y))

        return polar_ball_integrate(gp, center, radius, x, samples, seed, workers)
    ker = KernelEval(basis)

    def g(y):
        return alg.mul_array(ker.algebra_values(y - x), _phi_values(dphi, y))

    return ball_integrate(g, center, radius, samples, seed, workers)


def _seed(seed: int, *tags: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, *tags])


def _seed_sequence(seed) -> np.random.SeedSequence:
    return seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)


def _inside(spec: QuadratureSpec, x: np.ndarray) -> bool:
    d = float(np.linalg.norm(x - np.asarray(spec.center)))
    if abs(d - spec.radius) < 1e-12:
        raise ValueError("x must not lie on the boundary sphere")
    return d < spec.radius


def verify_cauchy(basis: HypercomplexBasis, phi: PolyMap, spec: QuadratureSpec, x: Sequence[float], name: str = "cauchy", sigmas: float = 4.0) -> CheckReport:
    """``int_{dB} E_m(y - x) dy* phi(y)`` against ``phi(x)`` (inside) or ``0`` (outside)."""
    _require_monogenic(basis, phi)
    x = np.asarray(x, dtype=float)
    c = np.asarray(spec.center, dtype=float)
    est = _cauchy_surface(basis, phi, c, spec.radius, x, spec.samples, _seed(spec.seed, 1), spec.workers)
    target = _phi_values(phi, x[None, :])[0] if _inside(spec, x) else np.zeros(basis.algebra.dim)
    return statistical_report(name, est, target, sigmas)


def verify_borel_pompeiu(basis: HypercomplexBasis, phi: PolyMap, spec: QuadratureSpec, x: Sequence[float], name: str = "borel-pompeiu", sigmas: float = 4.0) -> CheckReport:
    """Surface term minus volume term against ``phi(x)`` or ``0``."""
    x = np.asarray(x, dtype=float)
    c = np.asarray(spec.center, dtype=float)
    dphi = dbar(basis, phi)
    surf = _cauchy_surface(basis, phi, c, spec.radius, x, spec.samples, _seed(spec.seed, 2), spec.workers)
    vol = _volume_term(basis, dphi, c, spec.radius, x, spec.samples, _seed(spec.seed, 3), spec.workers)
    target = _phi_values(phi, x[None, :])[0] if _inside(spec, x) else np.zeros(basis.algebra.dim)
    return statistical_report(name, surf - vol, target, sigmas)


def verify_mean_value(basis: HypercomplexBasis, phi: PolyMap, spec: QuadratureSpec, name: str = "mean-value", sigmas: float = 4.0) -> CheckReport:
    """``phi(x) = sigma_m^{-1} int phi(x + R w) |do_w|`` with ``x = spec.center``."""
    _require_monogenic(basis, phi)
    c = np.asarray(spec.center, dtype=float)
    est = sphere_integrate(lambda w: _phi_values(phi, c + spec.radius * w), basis.m, spec.samples, _seed(spec.seed, 4), spec.workers)
    return statistical_report(name, est.scaled(1 / sigma_m(basis.m)), _phi_values(phi, c[None, :])[0], sigmas)


def right_dbar(basis: HypercomplexBasis, psi: PolyMap) -> PolyMap:
    """``psi dbar = sum_s (d_s psi) v_s``."""
    return dbar(basis, psi, side="right")


def verify_gauss(basis: HypercomplexBasis, psi: PolyMap, phi: PolyMap, spec: QuadratureSpec, name: str = "gauss", sigmas: float = 4.0) -> CheckReport:
    """``int_{dB} psi dx* phi = int_B ((psi dbar) phi + psi (dbar phi)) dsigma``."""
    alg = basis.algebra
    mat = basis.matrix_float()
    c = np.asarray(spec.center, dtype=float)
    R, m = spec.radius, basis.m
    psi_d, d_phi = right_dbar(basis, psi), dbar(basis, phi)

    def surface(w):
        y = c + R * w
        return alg.mul_array(alg.mul_array(_phi_values(psi, y), (R**m) * (w @ mat)), _phi_values(phi, y))

    def volume(y):
        return alg.mul_array(_phi_values(psi_d, y), _phi_values(phi, y)) + alg.mul_array(_phi_values(psi, y), _phi_values(d_phi, y))

    s = sphere_integrate(surface, m, spec.samples, _seed(spec.seed, 5), spec.workers)
    v = ball_integrate(volume, c, R, spec.samples, _seed(spec.seed, 6), spec.workers)
    return statistical_report(name, s - v, np.zeros(alg.dim), sigmas)


def verify_sphere_measure(m: int, samples: int, seed: int = 0, name: str | None = None, sigmas: float = 4.0) -> CheckReport:
    est = sphere_integrate(lambda w: np.ones((len(w), 1)), m, samples, _seed(seed, 7))
    return statistical_report(name or f"sphere-measure-m{m}", est, [sigma_m(m)], sigmas)


# ---------------------------------------------------------------------------
# Derivatives of the kernel and the derivative estimate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialExpression:
    """``sum_a p_a(x) rho^a`` with ``rho = |x|^2`` and rational exponents ``a``."""

    parts: dict

    @property
    def nvars(self) -> int:
        return next(iter(self.parts.values())).nvars

    def partial(self, s: int) -> "RadialExpression":
        out: dict[Fraction, PolyMap] = {}

        def add(a, p):
            if p.is_zero():
                return
            out[a] = out[a] + p if a in out else p

        for a, p in self.parts.items():
            add(a, p.partial(s))
            xs = PolyMap(p.algebra, p.nvars, {unit_index(p.nvars, s): p.algebra.scalar(2 * a)})
            add(a - 1, _real_times(p, xs))
        return RadialExpression({a: p for a, p in out.items() if not p.is_zero()})

    def nabla(self, h: Sequence[int]) -> "RadialExpression":
        out = self
        for s, k in enumerate(h):
            for _ in range(k):
                out = out.partial(s)
        return out

    def evaluate_array(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        rho = np.sum(x * x, axis=1)
        out = None
        for a, p in self.parts.items():
            term = p.evaluate_array(x) * (rho ** float(a))[:, None]
            out = term if out is None else out + term
        if out is None:
            return np.zeros((len(x), 1))
        return out


def _real_times(p: PolyMap, q: PolyMap) -> PolyMap:
    """Product with a polynomial whose coefficients are real (they commute with everything)."""
    out: dict[Exponent, Element] = {}
    for e, c in p.terms.items():
        for f, d in q.terms.items():
            ne = tuple(i + j for i, j in zip(e, f))
            term = c * d.coeffs[0]
            out[ne] = out[ne] + term if ne in out else term
    return PolyMap(p.algebra, p.nvars, out, p.names)


def kernel_expression(basis: HypercomplexBasis) -> RadialExpression:
    """``E_m`` as ``(x^c / sigma_m) rho^{-(m+1)/2}``; the float constant is applied on evaluation."""
    n = basis.m + 1
    alg = basis.algebra
    xc = PolyMap(alg, n, {unit_index(n, s): basis[s].conj() for s in range(n)})
    return RadialExpression({Fraction(-(basis.m + 1), 2): xc})


def kernel_derivative_max(basis: HypercomplexBasis, h: Sequence[int], points: int = 20000, seed: int = 0) -> float:
    """Grid maximum of ``|nabla^h E_m|`` on the unit sphere."""
    expr = kernel_expression(basis).nabla(h)
    rng = np.random.Generator(np.random.Philox(_seed(seed, 8)))
    w = sphere_points(rng, points, basis.m + 1)
    w = np.vstack([w, np.eye(basis.m + 1), -np.eye(basis.m + 1)])
    vals = expr.evaluate_array(w) / sigma_m(basis.m)
    return float(np.max(np.linalg.norm(vals, axis=1)))


def sphere_grid(center: Sequence[float], radius: float, points: int, seed: int = 0) -> np.ndarray:
    c = np.asarray(center, dtype=float)
    rng = np.random.Generator(np.random.Philox(_seed(seed, 9)))
    dim = len(c)
    w = np.vstack([sphere_points(rng, points, dim), np.eye(dim), -np.eye(dim)])
    return c + radius * w


def verify_derivative_estimate(
    basis: HypercomplexBasis,
    phi: PolyMap,
    center: Sequence[float],
    radius: float,
    h: Sequence[int],
    omega: float | None = None,
    points: int = 20000,
    seed: int = 0,
    name: str = "derivative-estimate",
) -> CheckReport:
    """``|nabla^h phi(p)| <= C_m R^{-|h|} max_{dB} |phi|`` with ``C_m = sigma_m omega^2 max |nabla^h E_m|``."""
    _require_monogenic(basis, phi)
    if omega is None:
        omega = omega_constant(list(basis.vectors)).value
    c = np.asarray(center, dtype=float)
    lhs = float(np.linalg.norm(phi.nabla(tuple(h)).evaluate_array(c[None, :])[0]))
    cm = sigma_m(basis.m) * omega**2 * kernel_derivative_max(basis, h, points, seed)
    bmax = float(np.max(np.linalg.norm(phi.evaluate_array(sphere_grid(c, radius, points, seed)), axis=1)))
    rhs = cm / radius ** sum(h) * bmax
    ok = lhs <= rhs * (1 + 1e-9)
    return CheckReport(name, ok, (lhs,), (rhs,), (0.0,), f"h={tuple(h)}: {lhs:.6g} <= {rhs:.6g}")


# ---------------------------------------------------------------------------
# Maximum modulus
# ---------------------------------------------------------------------------


def verify_max_modulus(
    basis: HypercomplexBasis,
    phi: PolyMap,
    center: Sequence[float],
    radius: float,
    points: int = 10000,
    seed: int = 0,
    interior_fraction: float = 0.9,
    slack: float = 1e-9,
    name: str = "max-modulus",
) -> CheckReport:
    """Interior grid maximum of ``|phi|`` (radius ``<= 0.9 R``) against the boundary grid maximum."""
    _require_monogenic(basis, phi)
    c = np.asarray(center, dtype=float)
    rng = np.random.Generator(np.random.Philox(_seed(seed, 10)))
    interior = c + interior_fraction * radius * ball_points(rng, points, basis.m + 1)
    inner_vals = np.linalg.norm(phi.evaluate_array(interior), axis=1)
    boundary = sphere_grid(c, radius, points, seed)
    # add the radial projections of the largest interior values
    top = interior[np.argsort(inner_vals)[-20:]] - c
    norms = np.linalg.norm(top, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    boundary = np.vstack([boundary, c + radius * top / norms])
    outer = float(np.max(np.linalg.norm(phi.evaluate_array(boundary), axis=1)))
    inner = float(np.max(inner_vals))
    ok = inner <= outer + slack
    return CheckReport(name, ok, (inner,), (outer,), (0.0,), f"interior max {inner:.6g}, boundary max {outer:.6g}")


# ---------------------------------------------------------------------------
# Random test polynomials
# ---------------------------------------------------------------------------


def random_polynomial(basis: HypercomplexBasis, degree: int, seed: int = 0, scale: int = 3) -> PolyMap:
    """Seeded polynomial with small rational algebra coefficients, up to ``degree``."""
    rng = np.random.default_rng(seed)
    alg = basis.algebra
    n = basis.m + 1
    terms = {}
    for d in range(degree + 1):
        for e in multi_indices(n, d):
            coeffs = [Fraction(int(v), scale) for v in rng.integers(-scale, scale + 1, alg.dim)]
            terms[e] = alg.element(coeffs)
    return PolyMap(alg, n, terms)
