"""Hypercomplex subspaces, step lists, fans, tori and slices.

A hypercomplex basis ``(1, v_1, ..., v_m)`` consists of pairwise
anticommuting imaginary units.  A step list ``T = (t_0 < ... < t_tau = m)``
splits the units into the mirror ``span(v_0..v_{t_0})`` and ``tau`` blocks;
the unit spheres of the blocks form the torus, and a torus point ``J``
yields the slice basis ``B_J = (v_0, ..., v_{t_0}, J_1, ..., J_tau)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _linalg
from .algebra import Algebra, AlgebraError, Element, is_imaginary_unit


class BasisError(ValueError):
    """Raised when vectors fail to form a hypercomplex basis."""

    def __init__(self, message: str, diagnostics: Sequence[str] = ()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


@dataclass(frozen=True)
class Validation:
    ok: bool
    diagnostics: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class HypercomplexBasis:
    """The vectors ``(v_0 = 1, v_1, ..., v_m)``; validated on construction."""

    vectors: tuple[Element, ...]

    def __post_init__(self) -> None:
        report = validate_hypercomplex_basis(self.vectors, samples=0)
        if not report:
            raise BasisError("not a hypercomplex basis", report.diagnostics)

    @property
    def algebra(self) -> Algebra:
        return self.vectors[0].algebra

    @property
    def m(self) -> int:
        return len(self.vectors) - 1

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, s: int) -> Element:
        return self.vectors[s]

    def point(self, coords: Sequence) -> Element:
        """The element ``sum x_s v_s`` for real coordinates ``x``."""
        if len(coords) != len(self.vectors):
            raise ValueError("coordinate vector has the wrong length")
        alg = self.algebra
        out = [0] * alg.dim
        for x, v in zip(coords, self.vectors):
            if x:
                for i, c in enumerate(v.coeffs):
                    if c:
                        out[i] += x * c
        return Element(tuple(o if isinstance(o, (Fraction, float)) else Fraction(o) for o in out), alg)

    def coordinates(self, x: Element) -> list[Fraction]:
        """Exact coordinates of ``x`` in the basis; raises if ``x`` is outside."""
        sol = _linalg.solve(_linalg.transpose([list(v.coeffs) for v in self.vectors]), list(x.coeffs))
        if sol is None:
            raise AlgebraError("element does not lie in the hypercomplex subspace")
        return sol

    def matrix_float(self) -> np.ndarray:
        """``(m+1, dim)`` array whose rows are the basis vectors."""
        return np.array([v.to_float() for v in self.vectors])

    @classmethod
    def paravectors(cls, alg: Algebra, m: int | None = None) -> "HypercomplexBasis":
        """``(1, e_1, ..., e_m)`` in a Clifford algebra ``Cl(0, n)``."""
        n = m if m is not None else sum(1 for lab in alg.labels if len(lab) == 2 and lab[0] == "e")
        return cls(tuple([alg.one()] + [alg[f"e{k}"] for k in range(1, n + 1)]))

    @classmethod
    def standard(cls, alg: Algebra) -> "HypercomplexBasis":
        """The whole standard basis, e.g. ``(1, i, j, k)`` in the quaternions."""
        return cls(tuple(alg.basis_elements()))


def _random_rational_vector(rng: np.random.Generator, n: int, scale: int = 5) -> list[Fraction]:
    return [Fraction(int(rng.integers(-scale * 4, scale * 4 + 1)), int(rng.integers(1, 5))) for _ in range(n)]


def validate_hypercomplex_basis(vectors: Sequence[Element], samples: int = 20, seed: int = 0) -> Validation:
    """Exact check of the hypercomplex basis conditions, with diagnostics.

    On success, the identities ``t(x y^c) = t(y x^c) = 2<x, y>`` and
    ``n(x) = n(x^c) = |x|^2`` are also verified on ``samples`` seeded rational
    points of the span (the inner product is the one of the basis coordinates).
    """
    vectors = list(vectors)
    diag: list[str] = []
    if not vectors:
        return Validation(False, ("empty basis",))
    alg = vectors[0].algebra
    if any(v.algebra is not alg for v in vectors):
        return Validation(False, ("vectors belong to different algebras",))
    if vectors[0] != alg.one():
        diag.append("v_0 is not 1")
    for s, v in enumerate(vectors[1:], start=1):
        if not is_imaginary_unit(v):
            diag.append(f"v_{s} is not an imaginary unit")
    for s in range(1, len(vectors)):
        for u in range(s + 1, len(vectors)):
            if not (vectors[s] * vectors[u].conj()).trace().is_zero():
                diag.append(f"t(v_{s} v_{u}^c) != 0")
    if _linalg.rank([list(v.coeffs) for v in vectors]) < len(vectors):
        diag.append("vectors are linearly dependent")
    if diag or samples <= 0:
        return Validation(not diag, tuple(diag))
    rng = np.random.default_rng(seed)
    one = alg.one()
    for _ in range(samples):
        xs = _random_rational_vector(rng, len(vectors))
        ys = _random_rational_vector(rng, len(vectors))
        x = sum((v * c for v, c in zip(vectors, xs)), alg.zero())
        y = sum((v * c for v, c in zip(vectors, ys)), alg.zero())
        inner = sum((a * b for a, b in zip(xs, ys)), Fraction(0))
        nx = sum((a * a for a in xs), Fraction(0))
        if (x * y.conj()).trace() != one * (2 * inner) or (y * x.conj()).trace() != one * (2 * inner):
            diag.append("trace identity t(xy^c) = 2<x,y> fails")
            break
        if x.norm_n() != one * nx or x.conj().norm_n() != one * nx:
            diag.append("norm identity n(x) = |x|^2 fails")
            break
    return Validation(not diag, tuple(diag))


def extend_by_product(basis: HypercomplexBasis) -> HypercomplexBasis:
    """Append ``v_1 v_2 ... v_m``; fails (by validation) unless ``m = 2 mod 4``."""
    if not basis.algebra.is_associative:
        raise AlgebraError("extend_by_product needs an associative algebra")
    prod = basis.algebra.one()
    for v in basis.vectors[1:]:
        prod = prod * v
    candidate = list(basis.vectors) + [prod]
    report = validate_hypercomplex_basis(candidate, samples=0)
    if not report:
        raise BasisError("the product does not extend the basis", report.diagnostics)
    return HypercomplexBasis(tuple(candidate))


# ---------------------------------------------------------------------------
# Step lists and fans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepList:
    """``T = (t_0, ..., t_tau)`` with ``0 <= t_0 < ... < t_tau = n``."""

    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        s = tuple(int(v) for v in self.steps)
        object.__setattr__(self, "steps", s)
        if not s:
            raise ValueError("a step list needs at least one entry")
        if s[0] < 0 or any(b <= a for a, b in zip(s, s[1:])):
            raise ValueError(f"steps must be nonnegative and strictly increasing: {s}")

    @classmethod
    def parse(cls, text: str) -> "StepList":
        try:
            return cls(tuple(int(p) for p in text.replace(" ", "").split(",") if p != ""))
        except ValueError as exc:
            raise ValueError(f"invalid step list {text!r}: {exc}") from None

    @property
    def tau(self) -> int:
        return len(self.steps) - 1

    @property
    def t0(self) -> int:
        return self.steps[0]

    @property
    def n(self) -> int:
        return self.steps[-1]

    def block(self, h: int) -> range:
        """Indices of the ``h``-th block, ``1 <= h <= tau``."""
        if not 1 <= h <= self.tau:
            raise IndexError(h)
        return range(self.steps[h - 1] + 1, self.steps[h] + 1)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.steps)) + ")"


def all_step_lists(n: int) -> list[StepList]:
    """All step lists ending at ``n``, ordered by length then lexicographically."""
    out = []
    for mask in range(1 << n):
        prefix = [k for k in range(n) if mask >> k & 1]
        out.append(StepList(tuple(prefix + [n])))
    return sorted(out, key=lambda t: (len(t.steps), t.steps))


@dataclass(frozen=True)
class Fan:
    basis: HypercomplexBasis
    steps: StepList

    def __post_init__(self) -> None:
        if self.steps.n != self.basis.m:
            raise ValueError(f"step list {self.steps} does not end at m = {self.basis.m}")

    @property
    def tau(self) -> int:
        return self.steps.tau

    @property
    def t0(self) -> int:
        return self.steps.t0

    @property
    def n(self) -> int:
        return self.steps.n

    @property
    def algebra(self) -> Algebra:
        return self.basis.algebra

    @property
    def torus_dimension(self) -> int:
        return self.n - self.t0 - self.tau

    def block(self, h: int) -> list[Element]:
        return [self.basis[s] for s in self.steps.block(h)]

    def mirror(self) -> list[Element]:
        return list(self.basis.vectors[: self.t0 + 1])

    def spaces(self) -> list[list[Element]]:
        """The nested spans ``R_{0,t_0} < R_{0,t_1} < ... < V``."""
        return [list(self.basis.vectors[: t + 1]) for t in self.steps.steps]

    @property
    def slice_nvars(self) -> int:
        return self.t0 + self.tau + 1


def make_fan(basis: HypercomplexBasis, steps: StepList | str | Sequence[int]) -> Fan:
    if isinstance(steps, str):
        steps = StepList.parse(steps)
    elif not isinstance(steps, StepList):
        steps = StepList(tuple(steps))
    return Fan(basis, steps)


def mirror(fan: Fan) -> list[Element]:
    return fan.mirror()


# ---------------------------------------------------------------------------
# Torus points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusPoint:
    J: tuple[Element, ...]
    rational: bool

    @property
    def tau(self) -> int:
        return len(self.J)


def rational_sphere_point(params: Sequence[Fraction]) -> list[Fraction]:
    """Inverse stereographic projection: a rational point of the unit sphere.

    ``params`` has length ``k``; the result lies on ``S^k`` in ``R^{k+1}``.
    For ``k = 1`` and parameter ``1/2`` this gives ``(3/5, 4/5)``.
    """
    params = [Fraction(p) for p in params]
    s = sum((p * p for p in params), Fraction(0))
    return [(1 - s) / (1 + s)] + [2 * p / (1 + s) for p in params]


def torus_point(fan: Fan, coords: Sequence[Sequence]) -> TorusPoint:
    """Torus point from coordinates of each ``J_h`` on its block vectors."""
    if len(coords) != fan.tau:
        raise ValueError(f"expected {fan.tau} block coordinate vectors")
    js = []
    rational = True
    for h, c in enumerate(coords, start=1):
        blk = fan.block(h)
        if len(c) != len(blk):
            raise ValueError(f"block {h} has {len(blk)} vectors, got {len(c)} coordinates")
        rational = rational and all(isinstance(v, (int, Fraction)) for v in c)
        nsq = sum((v * v for v in c), Fraction(0) if rational else 0.0)
        if (rational and nsq != 1) or (not rational and abs(nsq - 1) > 1e-12):
            raise ValueError(f"J_{h} is not a unit vector")
        js.append(sum((v * x for v, x in zip(blk, c)), fan.algebra.zero()))
    return TorusPoint(tuple(js), rational)


def rational_torus_point(fan: Fan, seeds: int | np.random.Generator | Sequence[Sequence] = 0, scale: int = 3) -> TorusPoint:
    """Rational torus point built by inverse stereographic projection.

    ``seeds`` is either an explicit list (one parameter vector per block, of
    length ``block size - 1``) or an integer seed / numpy generator for random
    small rational parameters.  A one-element block gives ``J_h = +-v_s``.
    """
    if isinstance(seeds, (int, np.integer, np.random.Generator)):
        rng = np.random.default_rng(seeds) if not isinstance(seeds, np.random.Generator) else seeds
        params = []
        for h in range(1, fan.tau + 1):
            size = len(fan.steps.block(h))
            params.append([Fraction(int(rng.integers(-2 * scale, 2 * scale + 1)), int(rng.integers(1, scale + 1))) for _ in range(size - 1)])
            if size == 1:
                params[-1] = [] if rng.integers(2) else None
    else:
        params = list(seeds)
    coords = []
    for h, p in enumerate(params, start=1):
        if p is None:  # zero-dimensional sphere, negative representative
            coords.append([Fraction(-1)])
        else:
            coords.append(rational_sphere_point(p))
    return torus_point(fan, coords)


def slice_basis(fan: Fan, J: TorusPoint) -> HypercomplexBasis:
    """``B_J = (v_0, ..., v_{t_0}, J_1, ..., J_tau)``."""
    return HypercomplexBasis(tuple(fan.mirror()) + tuple(J.J))


def slice_point(fan: Fan, alpha: Sequence, beta: Sequence, J: TorusPoint) -> Element:
    """The element ``alpha + beta J = sum alpha_s v_s + sum beta_h J_h``."""
    vecs = fan.mirror() + list(J.J)
    out = fan.algebra.zero()
    for c, v in zip(list(alpha) + list(beta), vecs):
        out = out + v * c
    return out


# ---------------------------------------------------------------------------
# Decomposition along a fan
# ---------------------------------------------------------------------------


def exact_sqrt(q) -> Fraction | float:
    """Square root, exact when ``q`` is the square of a rational."""
    if isinstance(q, float):
        return math.sqrt(q)
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative square")
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return math.sqrt(q)


@dataclass(frozen=True)
class Decomposition:
    """``x = x^0 + beta_1 J_1 + ... + beta_tau J_tau`` with ``beta_h >= 0``.

    ``J[h]`` is ``None`` (and ``ambiguous[h]`` true) when ``x^h = 0``: then any
    unit of the block is admissible.  The pair ``(-beta_h, -J_h)`` describes
    the same point; this representative is never chosen silently.
    """

    alpha: tuple
    parts: tuple[Element, ...]
    beta: tuple
    J: tuple[Element | None, ...]
    ambiguous: tuple[bool, ...]

    @property
    def x0(self) -> Element:
        return self.parts[0]


def decompose(x: Element, fan: Fan) -> Decomposition:
    coords = fan.basis.coordinates(x)
    basis = fan.basis
    alpha = tuple(coords[: fan.t0 + 1])
    parts = [basis.point(list(alpha) + [0] * (fan.n - fan.t0))]
    betas, js, amb = [], [], []
    for h in range(1, fan.tau + 1):
        idx = list(fan.steps.block(h))
        full = [0] * (fan.n + 1)
        for s in idx:
            full[s] = coords[s]
        part = basis.point(full)
        parts.append(part)
        nsq = sum((coords[s] * coords[s] for s in idx), Fraction(0))
        beta = exact_sqrt(nsq)
        betas.append(beta)
        if nsq == 0:
            js.append(None)
            amb.append(True)
        else:
            js.append(part / beta)
            amb.append(False)
    return Decomposition(alpha, tuple(parts), tuple(betas), tuple(js), tuple(amb))


def in_symmetric_completion(x: Element, y: Element, fan: Fan) -> bool:
    """True iff ``y`` lies on the torus through ``x``: same mirror part, same ``|beta_h|``."""
    cx, cy = fan.basis.coordinates(x), fan.basis.coordinates(y)
    if cx[: fan.t0 + 1] != cy[: fan.t0 + 1]:
        return False
    for h in range(1, fan.tau + 1):
        idx = fan.steps.block(h)
        if sum((cx[s] ** 2 for s in idx), Fraction(0)) != sum((cy[s] ** 2 for s in idx), Fraction(0)):
            return False
    return True


def same_slice(fan: Fan, J: TorusPoint, K: TorusPoint) -> bool:
    """Whether the slices through ``J`` and ``K`` are the same subspace."""
    a = [list(v.coeffs) for v in fan.mirror() + list(J.J)]
    b = [list(v.coeffs) for v in fan.mirror() + list(K.J)]
    r = _linalg.rank(a)
    return _linalg.rank(a + b) == r and _linalg.rank(b) == r
