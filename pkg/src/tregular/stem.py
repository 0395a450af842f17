"""T-stem functions, ``J_K`` products, brackets and the Representation Formula.

A subset ``K`` of ``{1, ..., tau}`` is stored as a bitmask (bit ``h - 1`` set
iff ``h`` is in ``K``).  A T-stem function ``F = sum_K E_K F_K`` induces

    f(alpha + beta J) = sum_K [J, F_K(alpha, beta)]_K ,

and is recovered from the values of ``f`` on a single slice ``I`` by

    F_K(alpha, beta) = 2^{-tau} sum_H (-1)^{|K cap H|} ]I, f(alpha + beta^H I)[_K .

Both formulas only use brackets, so they apply to alternative algebras such
as the octonions; in associative algebras ``[J, a]_K = J_K a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import _linalg
from .algebra import AlgebraError, Element, from_float
from .polymap import PolyMap, reflect, slice_restrict, slice_variable_names
from .subspace import Fan, TorusPoint, decompose, rational_torus_point, slice_point


class ParityError(ValueError):
    """A recovered stem violates ``F_K(alpha, beta^h) = +-F_K(alpha, beta)``."""


class RepresentativeError(ValueError):
    """An induced value depends on the chosen ``(beta, J)`` representative."""


# ---------------------------------------------------------------------------
# Subsets of {1, ..., tau}
# ---------------------------------------------------------------------------


def subsets(tau: int) -> list[int]:
    """All subsets as bitmasks, ordered by size and then lexicographically."""
    return sorted(range(1 << tau), key=lambda K: (bin(K).count("1"), members(K)))


def members(K: int) -> tuple[int, ...]:
    """Elements of ``K`` in increasing order (1-based)."""
    return tuple(h + 1 for h in range(K.bit_length()) if K >> h & 1)


def from_members(elements: Iterable[int]) -> int:
    K = 0
    for h in elements:
        if h < 1:
            raise ValueError("subset elements are 1-based")
        K |= 1 << (h - 1)
    return K


def size(K: int) -> int:
    return bin(K).count("1")


def subset_label(K: int) -> str:
    return "{" + ",".join(str(h) for h in members(K)) + "}"


def parse_subset(text: str) -> int:
    body = text.strip().strip("{}").strip()
    return from_members(int(t) for t in body.split(",")) if body else 0


def parity_sign(K: int, H: int) -> int:
    """``(-1)^{|K cap H|}``."""
    return -1 if size(K & H) % 2 else 1


def sigma(K: int, u: int) -> int:
    """Parity of the number of elements of ``K`` greater than or equal to ``u``."""
    return sum(1 for h in members(K) if h >= u) % 2


# ---------------------------------------------------------------------------
# Products and brackets
# ---------------------------------------------------------------------------


def _units(J: TorusPoint | Sequence[Element]) -> tuple[Element, ...]:
    return tuple(J.J) if isinstance(J, TorusPoint) else tuple(J)


def jk_product(J: TorusPoint | Sequence[Element], K: int) -> Element:
    """``J_K = J_{k_1} J_{k_2} ... J_{k_p}``; ``J_{emptyset} = 1``."""
    units = _units(J)
    if not units:
        if K:
            raise ValueError("nonempty subset for tau = 0")
        raise ValueError("J_emptyset needs an algebra; pass at least one unit")
    alg = units[0].algebra
    if not alg.is_associative:
        raise AlgebraError("J_K is only defined in associative algebras; use brackets")
    out = alg.one()
    for h in members(K):
        out = out * units[h - 1]
    return out


def bracket_left(J: TorusPoint | Sequence[Element], a: Element, K: int) -> Element:
    """``[J, a]_K = J_{k_1}(J_{k_2}( ... (J_{k_p} a)))``."""
    units = _units(J)
    for h in reversed(members(K)):
        a = units[h - 1] * a
    return a


def bracket_right(J: TorusPoint | Sequence[Element], a: Element, K: int) -> Element:
    """``]J, a[_K = J_{k_p}^{-1}( ... (J_{k_1}^{-1} a))``, using ``J_h^{-1} = -J_h``."""
    units = _units(J)
    for h in members(K):
        a = -(units[h - 1] * a)
    return a


def reflect_beta(beta: Sequence, H: int) -> tuple:
    """``beta^H``: flip the sign of ``beta_h`` for every ``h`` in ``H``."""
    return tuple(-b if H >> h & 1 else b for h, b in enumerate(beta))


def reflect_units(J: TorusPoint, H: int) -> TorusPoint:
    return TorusPoint(tuple(-j if H >> h & 1 else j for h, j in enumerate(J.J)), J.rational)


# ---------------------------------------------------------------------------
# Stem tables
# ---------------------------------------------------------------------------


SliceFunction = Callable[[Element], Element]


@dataclass(frozen=True)
class StemTable:
    """Components ``F_K`` of a T-stem function.

    In the symbolic tier ``components[K]`` is a polynomial in the slice
    variables ``(x_0, ..., x_{t_0}, b_1, ..., b_tau)`` standing for
    ``(alpha, beta)``.  In the sampled tier ``sampler`` evaluates ``f`` and the
    components are computed on demand from the slice ``I``.
    """

    fan: Fan
    components: Mapping[int, PolyMap] | None = None
    sampler: SliceFunction | None = None
    I: TorusPoint | None = None
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def tau(self) -> int:
        return self.fan.tau

    @property
    def symbolic(self) -> bool:
        return self.components is not None

    def component(self, K: int) -> PolyMap:
        if self.components is None:
            raise ValueError("sampled stems have no symbolic components")
        comp = self.components.get(K)
        return comp if comp is not None else PolyMap.zero(self.fan.algebra, self.fan.slice_nvars, slice_variable_names(self.fan))

    def evaluate(self, alpha: Sequence, beta: Sequence) -> dict[int, Element]:
        alpha, beta = tuple(alpha), tuple(beta)
        if len(alpha) != self.fan.t0 + 1 or len(beta) != self.tau:
            raise ValueError("point does not match the fan")
        if self.components is not None:
            point = list(alpha) + list(beta)
            return {K: self.component(K).evaluate(point) for K in subsets(self.tau)}
        key = (alpha, beta)
        if key not in self.cache:
            self.cache[key] = _stem_values(self.sampler, self.fan, self.I, alpha, beta)
        return self.cache[key]

    def to_json(self) -> dict:
        out = {"steps": list(self.fan.steps.steps), "algebra": self.fan.algebra.name}
        if self.components is not None:
            out["variables"] = list(slice_variable_names(self.fan))
            out["components"] = {subset_label(K): self.component(K).to_json() for K in subsets(self.tau)}
            out["display"] = {subset_label(K): str(self.component(K)) for K in subsets(self.tau)}
        return out


def _stem_values(f: SliceFunction, fan: Fan, I: TorusPoint, alpha: tuple, beta: tuple) -> dict[int, Element]:
    tau = fan.tau
    values = {H: f(slice_point(fan, alpha, reflect_beta(beta, H), I)) for H in range(1 << tau)}
    scale = Fraction(1, 1 << tau)
    out = {}
    for K in subsets(tau):
        acc = fan.algebra.zero()
        for H, val in values.items():
            term = bracket_right(I, val, K)
            acc = acc + term if parity_sign(K, H) > 0 else acc - term
        out[K] = acc * scale
    return out


def recover_stem(f: PolyMap | SliceFunction, fan: Fan, I: TorusPoint, check: bool = True) -> StemTable:
    """Recover the stem inducing ``f`` from its values on the slice through ``I``.

    A polynomial ``f`` on the fan's subspace gives an exact symbolic table and
    the parity symmetry is asserted for every ``h``.  A callable gives a
    sampled table; use :func:`check_parity_at` on the points of interest.
    """
    if len(I.J) != fan.tau:
        raise ValueError("torus point does not match the fan")
    if not isinstance(f, PolyMap):
        return StemTable(fan, sampler=f, I=I)
    fI = slice_restrict(f, I, fan)
    tau, t0 = fan.tau, fan.t0
    reflected = {H: reflect(fI, [t0 + h for h in members(H)]) for H in range(1 << tau)}
    scale = Fraction(1, 1 << tau)
    comps: dict[int, PolyMap] = {}
    for K in subsets(tau):
        acc = PolyMap.zero(fan.algebra, fan.slice_nvars, fI.names)
        for H, p in reflected.items():
            term = p.map_coefficients(lambda c, K=K: bracket_right(I, c, K))
            acc = acc + term if parity_sign(K, H) > 0 else acc - term
        comps[K] = acc.scale(scale)
    table = StemTable(fan, components=comps, I=I)
    if check:
        problems = parity_violations(table)
        if problems:
            raise ParityError("recovered stem violates the parity symmetry: " + "; ".join(problems))
    return table


def parity_violations(table: StemTable) -> list[str]:
    """Exact parity check of a symbolic stem table."""
    fan = table.fan
    out = []
    for K in subsets(fan.tau):
        comp = table.component(K)
        for h in range(1, fan.tau + 1):
            flipped = reflect(comp, [fan.t0 + h])
            expected = -comp if h in members(K) else comp
            if flipped != expected:
                out.append(f"F_{subset_label(K)} under reflection of beta_{h}")
    return out


def check_parity_at(table: StemTable, alpha: Sequence, beta: Sequence) -> bool:
    base = table.evaluate(alpha, beta)
    for h in range(1, table.tau + 1):
        other = table.evaluate(alpha, reflect_beta(beta, 1 << (h - 1)))
        for K, val in base.items():
            expected = -val if h in members(K) else val
            if other[K] != expected:
                return False
    return True


# ---------------------------------------------------------------------------
# Induced functions
# ---------------------------------------------------------------------------


def induce_at(table: StemTable, alpha: Sequence, beta: Sequence, J: TorusPoint) -> Element:
    """``sum_K [J, F_K(alpha, beta)]_K``."""
    values = table.evaluate(alpha, beta)
    out = table.fan.algebra.zero()
    for K, val in values.items():
        out = out + bracket_left(J, val, K)
    return out


def induce(table: StemTable, x: Element, check: bool = True) -> Element:
    """Value at ``x`` of the T-function induced by ``table``.

    ``x`` is decomposed as ``alpha + beta J`` with ``beta_h >= 0``; blocks with
    ``beta_h = 0`` use the first block vector as ``J_h``.  With ``check`` the
    value is recomputed on all ``2^tau`` sign-flipped representatives
    ``(beta^H, J^H)`` and must agree exactly.
    """
    fan = table.fan
    dec = decompose(x, fan)
    if any(isinstance(b, float) for b in dec.beta):
        raise ValueError("exact induction needs rational block norms beta_h")
    units = tuple(j if j is not None else fan.block(h)[0] for h, j in enumerate(dec.J, start=1))
    J = TorusPoint(units, True)
    value = induce_at(table, dec.alpha, dec.beta, J)
    if check:
        for H in range(1, 1 << fan.tau):
            other = induce_at(table, dec.alpha, reflect_beta(dec.beta, H), reflect_units(J, H))
            if other != value:
                raise RepresentativeError(f"value changes under the representative flip {subset_label(H)}")
    return value


# ---------------------------------------------------------------------------
# Representation Formula
# ---------------------------------------------------------------------------


def _as_function(f: PolyMap | SliceFunction, fan: Fan) -> SliceFunction:
    if isinstance(f, PolyMap):
        return lambda x: f.evaluate(fan.basis.coordinates(x))
    return f


def representation_rhs(f: PolyMap | SliceFunction, fan: Fan, alpha: Sequence, beta: Sequence, I: TorusPoint, J: TorusPoint) -> Element:
    """``2^{-tau} sum_{K,H} (-1)^{|K cap H|} [J, ]I, f(alpha + beta^H I)[_K]_K``."""
    g = _as_function(f, fan)
    tau = fan.tau
    values = {H: g(slice_point(fan, alpha, reflect_beta(beta, H), I)) for H in range(1 << tau)}
    out = fan.algebra.zero()
    for K in subsets(tau):
        for H, val in values.items():
            term = bracket_left(J, bracket_right(I, val, K), K)
            out = out + term if parity_sign(K, H) > 0 else out - term
    return out * Fraction(1, 1 << tau)


def representation_residual(f: PolyMap | SliceFunction, fan: Fan, alpha: Sequence, beta: Sequence, I: TorusPoint, J: TorusPoint) -> Element:
    g = _as_function(f, fan)
    return g(slice_point(fan, alpha, beta, J)) - representation_rhs(f, fan, alpha, beta, I, J)


def gamma_coefficients(I: TorusPoint, J: TorusPoint) -> dict[int, Element]:
    """``gamma_H = 2^{-tau} sum_K (-1)^{|K cap H|} J_K I_K^{-1}`` (associative algebras)."""
    tau = len(I.J)
    if len(J.J) != tau:
        raise ValueError("torus points of different length")
    if tau == 0:
        raise ValueError("gamma coefficients need tau >= 1")
    ratios = {K: jk_product(J, K) * jk_product(I, K).inverse() for K in subsets(tau)}
    out = {}
    for H in subsets(tau):
        acc = I.J[0].algebra.zero()
        for K, r in ratios.items():
            acc = acc + r if parity_sign(K, H) > 0 else acc - r
        out[H] = acc * Fraction(1, 1 << tau)
    return out


def gamma_identity_violations(fan: Fan, I: TorusPoint, J: TorusPoint) -> list[str]:
    """Check ``v_s gamma_H = gamma_H v_s`` and ``J_u gamma_H = +-gamma_H I_u`` exactly."""
    gammas = gamma_coefficients(I, J)
    out = []
    for H, g in gammas.items():
        for s in range(1, fan.t0 + 1):
            v = fan.basis[s]
            if v * g != g * v:
                out.append(f"v_{s} does not commute with gamma_{subset_label(H)}")
        for u in range(1, fan.tau + 1):
            rhs = g * I.J[u - 1]
            if u in members(H):
                rhs = -rhs
            if J.J[u - 1] * g != rhs:
                out.append(f"J_{u} gamma_{subset_label(H)} sign rule fails")
    return out


def representation_via_gamma(f: PolyMap | SliceFunction, fan: Fan, alpha: Sequence, beta: Sequence, I: TorusPoint, J: TorusPoint) -> Element:
    """``sum_H gamma_H f(alpha + beta^H I)``."""
    g = _as_function(f, fan)
    out = fan.algebra.zero()
    for H, gamma in gamma_coefficients(I, J).items():
        out = out + gamma * g(slice_point(fan, alpha, reflect_beta(beta, H), I))
    return out


# ---------------------------------------------------------------------------
# Mirror subalgebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subalgebra:
    """Real subalgebra given by an echelon basis of coordinate vectors."""

    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, x: Element) -> bool:
        return _linalg.in_span([list(r) for r in self.rows], list(x.coeffs))

    def contains_poly(self, p: PolyMap) -> bool:
        return all(self.contains(c) for c in p.terms.values())


def mirror_subalgebra(fan: Fan) -> Subalgebra:
    """Subalgebra generated by ``1`` and the mirror ``R_{0,t_0}``, closed under products."""
    gens = fan.mirror()
    span: list[list[Fraction]] = []

    def add(vec: list[Fraction]) -> bool:
        if span and _linalg.in_span(span, vec):
            return False
        if not any(vec):
            return False
        span.append(vec)
        return True

    elems: list[Element] = []
    for g in [fan.algebra.one()] + gens:
        if add(list(g.coeffs)):
            elems.append(g)
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for b in list(elems):
                p = a * b
                if add(list(p.coeffs)):
                    elems.append(p)
                    changed = True
    reduced, pivots = _linalg.rref(span)
    return Subalgebra(tuple(tuple(reduced[i]) for i in range(len(pivots))))


# ---------------------------------------------------------------------------
# Norm bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormBoundReport:
    bound: float
    max_ratio: float
    orbits: int
    ok: bool

    def to_json(self) -> dict:
        return {"bound": self.bound, "max_ratio": self.max_ratio, "orbits": self.orbits, "ok": self.ok}


def _orbit_coordinates(fan: Fan, alpha: Sequence, beta: Sequence, rng: np.random.Generator, count: int) -> np.ndarray:
    """Basis coordinates of ``count`` random points ``alpha + beta J`` of one torus orbit."""
    out = np.zeros((count, fan.n + 1))
    out[:, : fan.t0 + 1] = [float(a) for a in alpha]
    for h, b in enumerate(beta, start=1):
        idx = list(fan.steps.block(h))
        w = rng.standard_normal((count, len(idx)))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        out[:, idx] = float(b) * w
    return out


def norm_bound_check(
    f: PolyMap | SliceFunction,
    fan: Fan,
    I: TorusPoint,
    omega: float,
    orbits: Sequence[tuple[Sequence, Sequence]],
    samples_per_orbit: int = 16,
    seed: int = 0,
) -> NormBoundReport:
    """Check ``sup_orbit |f| <= (1 + omega^2)^tau max_H |f(alpha + beta^H I)|``.

    ``orbits`` lists ``(alpha, beta)`` pairs; each orbit is sampled at random
    torus points (floats) besides ``I`` and its reflections.  Norms are
    Euclidean in the algebra's coordinates.
    """
    g = _as_function(f, fan)
    rng = np.random.default_rng(seed)
    bound = (1 + omega * omega) ** fan.tau
    to_alg = fan.basis.matrix_float()
    worst = 0.0
    for alpha, beta in orbits:
        on_slice = max(g(slice_point(fan, alpha, reflect_beta(beta, H), I)).norm() for H in range(1 << fan.tau))
        coords = _orbit_coordinates(fan, alpha, beta, rng, samples_per_orbit)
        if isinstance(f, PolyMap):
            vals = f.evaluate_array(coords)
        else:
            vals = np.array([f(from_float(fan.algebra, c @ to_alg)).to_float() for c in coords])
        top = max(on_slice, float(np.max(np.linalg.norm(vals, axis=1))) if len(vals) else 0.0)
        if on_slice == 0:
            ratio = 0.0 if top <= 1e-300 else math.inf
        else:
            ratio = top / on_slice
        worst = max(worst, ratio)
    return NormBoundReport(bound, worst, len(orbits), worst <= bound * (1 + 1e-9))


def sample_orbits(fan: Fan, count: int, seed: int = 0, scale: int = 3) -> list[tuple[tuple, tuple]]:
    """Seeded rational ``(alpha, beta)`` pairs."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        alpha = tuple(Fraction(int(rng.integers(-2 * scale, 2 * scale + 1)), int(rng.integers(1, scale + 1))) for _ in range(fan.t0 + 1))
        beta = tuple(Fraction(int(rng.integers(-2 * scale, 2 * scale + 1)), int(rng.integers(1, scale + 1))) for _ in range(fan.tau))
        out.append((alpha, beta))
    return out


def sample_torus_pair(fan: Fan, seed: int) -> tuple[TorusPoint, TorusPoint]:
    return rational_torus_point(fan, 2 * seed + 101), rational_torus_point(fan, 2 * seed + 202)
