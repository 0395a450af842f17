"""Polynomial maps from real variables into an algebra.

A :class:`PolyMap` is a finite sum ``sum_k x^k c_k`` of real monomials times
algebra coefficients.  The real variables are central; coefficients are
always multiplied in the written order, and a coefficient sits to the right
of its monomial.  Negative multi-indices denote the zero polynomial.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import Algebra, AlgebraError, Element, _fmt_rational, _parse_rational

Exponent = tuple[int, ...]


class NonAssociativeProductError(AlgebraError):
    """Raised when a product would need an unspecified bracketing."""


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def multi_indices(nvars: int, degree: int) -> list[Exponent]:
    """All ``k`` in ``N^nvars`` with ``|k| = degree``, in decreasing lex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in multi_indices(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def factorial(k: Sequence[int]) -> int:
    return math.prod(math.factorial(v) for v in k)


def unit_index(n: int, s: int) -> Exponent:
    """``epsilon_s`` as a tuple of length ``n`` (``s`` is 0-based here)."""
    return tuple(int(i == s) for i in range(n))


@dataclass(frozen=True)
class PolyMap:
    """``terms`` maps exponent tuples to nonzero algebra coefficients."""

    algebra: Algebra
    nvars: int
    terms: Mapping[Exponent, Element] = field(default_factory=dict)
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != self.nvars:
                raise ValueError("exponent length does not match the number of variables")
            if c.algebra is not self.algebra:
                raise AlgebraError("coefficient from a different algebra")
            if min(e, default=0) < 0 or c.is_zero():
                continue
            clean[e] = c
        object.__setattr__(self, "terms", clean)

    # ------------------------------------------------------------ builders
    @classmethod
    def zero(cls, alg: Algebra, nvars: int, names=None) -> "PolyMap":
        return cls(alg, nvars, {}, names)

    @classmethod
    def constant(cls, alg: Algebra, nvars: int, c: Element | Fraction | int, names=None) -> "PolyMap":
        if not isinstance(c, Element):
            c = alg.scalar(c)
        return cls(alg, nvars, {(0,) * nvars: c}, names)

    @classmethod
    def variable(cls, alg: Algebra, nvars: int, i: int, coeff: Element | None = None, names=None) -> "PolyMap":
        return cls(alg, nvars, {unit_index(nvars, i): coeff if coeff is not None else alg.one()}, names)

    @classmethod
    def linear(cls, alg: Algebra, coeffs: Sequence[Element], names=None) -> "PolyMap":
        """``sum_s x_s coeffs[s]``."""
        n = len(coeffs)
        return cls(alg, n, {unit_index(n, s): c for s, c in enumerate(coeffs)}, names)

    def _like(self, terms: Mapping[Exponent, Element]) -> "PolyMap":
        return PolyMap(self.algebra, self.nvars, terms, self.names)

    # --------------------------------------------------------- properties
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "PolyMap":
        return self._like({e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, e: Exponent) -> Element:
        return self.terms.get(tuple(e), self.algebra.zero())

    def sorted_terms(self) -> list[tuple[Exponent, Element]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.algebra is other.algebra and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.nvars, frozenset(self.terms.items())))

    # --------------------------------------------------------- arithmetic
    def _check(self, other: "PolyMap") -> None:
        if self.algebra is not other.algebra or self.nvars != other.nvars:
            raise AlgebraError("polynomials live in different rings")

    def __add__(self, other: "PolyMap") -> "PolyMap":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out)

    def __neg__(self) -> "PolyMap":
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "PolyMap") -> "PolyMap":
        return self + (-other)

    def scale(self, r) -> "PolyMap":
        """Multiplication by a real scalar."""
        return self._like({e: c * r for e, c in self.terms.items()})

    def right_mul_element(self, a: Element) -> "PolyMap":
        """``x -> P(x) a``."""
        return self._like({e: c * a for e, c in self.terms.items()})

    def left_mul_element(self, a: Element) -> "PolyMap":
        """``x -> a P(x)``."""
        return self._like({e: a * c for e, c in self.terms.items()})

    def map_coefficients(self, fn) -> "PolyMap":
        """Apply a real-linear map to every coefficient."""
        return self._like({e: fn(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return self.scale(other)
        if isinstance(other, Element):
            return self.right_mul_element(other)
        return right_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return self.scale(other)
        if isinstance(other, Element):
            return self.left_mul_element(other)
        return NotImplemented

    # ---------------------------------------------------------- calculus
    def partial(self, var: int) -> "PolyMap":
        if not 0 <= var < self.nvars:
            raise IndexError(f"unknown variable index {var}")
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = e[:var] + (e[var] - 1,) + e[var + 1 :]
                out[ne] = c * e[var]
        return self._like(out)

    def nabla(self, h: Sequence[int]) -> "PolyMap":
        """``d_0^{h_0} d_1^{h_1} ... d_n^{h_n} P``."""
        if len(h) != self.nvars:
            raise ValueError("multi-index length does not match the number of variables")
        out = {}
        for e, c in self.terms.items():
            if all(a >= b for a, b in zip(e, h)):
                mult = math.prod(math.factorial(a) // math.factorial(a - b) for a, b in zip(e, h))
                out[tuple(a - b for a, b in zip(e, h))] = c * mult
        return self._like(out)

    # --------------------------------------------------------- evaluation
    def evaluate(self, point: Sequence) -> Element:
        """Exact on rational points: ``sum x^e c_e``."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        alg = self.algebra
        acc = [0] * alg.dim
        for e, c in self.terms.items():
            mono = 1
            for x, k in zip(point, e):
                if k:
                    mono *= x**k
            if mono:
                for i, ci in enumerate(c.coeffs):
                    if ci:
                        acc[i] += mono * ci
        return Element(tuple(v if isinstance(v, (Fraction, float)) else Fraction(v) for v in acc), alg)

    __call__ = evaluate

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Vectorised float evaluation: ``points`` is ``(N, nvars)``, result ``(N, dim)``."""
        pts = np.asarray(points, dtype=float)
        out = np.zeros(pts.shape[:-1] + (self.algebra.dim,))
        for e, c in self.terms.items():
            mono = np.ones(pts.shape[:-1])
            for i, k in enumerate(e):
                if k:
                    mono = mono * pts[..., i] ** k
            out += mono[..., None] * c.to_float()
        return out

    def coefficients_matrix(self) -> tuple[list[Exponent], np.ndarray]:
        exps = list(self.terms)
        return exps, np.array([self.terms[e].to_float() for e in exps])

    # --------------------------------------------------------- rendering
    def _monomial_str(self, e: Exponent) -> str:
        names = self.names or tuple(f"x{i}" for i in range(self.nvars))
        parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
        return " ".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._monomial_str(e)
            out.append(f"({c})" + (f" * {mono}" if mono else ""))
        return " + ".join(out)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "names": list(self.names) if self.names else None,
            "terms": [[list(e), [_fmt_rational(v) for v in c.coeffs]] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, alg: Algebra, data: dict | str) -> "PolyMap":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {tuple(e): alg.element(_parse_rational(v) for v in cs) for e, cs in data["terms"]}
        names = tuple(data["names"]) if data.get("names") else None
        return cls(alg, int(data["nvars"]), terms, names)


# ---------------------------------------------------------------------------
# Products and substitutions
# ---------------------------------------------------------------------------


def add(p: PolyMap, q: PolyMap) -> PolyMap:
    return p + q


def scalar_mul(p: PolyMap, r) -> PolyMap:
    return p.scale(r)


def right_mul(p: PolyMap, q: PolyMap) -> PolyMap:
    """Pointwise product ``x -> P(x) Q(x)``; coefficients combine as ``c_P c_Q``.

    In a nonassociative algebra the product is only accepted when one factor
    has degree at most one, which is all the recursions ever need.
    """
    p._check(q)
    if not p.algebra.is_associative and min(p.degree, q.degree) >= 2:
        raise NonAssociativeProductError("both factors have degree >= 2 in a nonassociative algebra")
    out: dict[Exponent, Element] = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 * c2
            out[e] = out[e] + c if e in out else c
    return p._like(out)


def partial(p: PolyMap, var: int) -> PolyMap:
    return p.partial(var)


def nabla(p: PolyMap, h: Sequence[int]) -> PolyMap:
    return p.nabla(h)


def evaluate(p: PolyMap, point: Sequence) -> Element:
    return p.evaluate(point)


RealPoly = dict[Exponent, Fraction]


def _real_mul(a: RealPoly, b: RealPoly) -> RealPoly:
    out: RealPoly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def substitute_linear(p: PolyMap, forms: Sequence[Mapping[int, object]], new_nvars: int, names=None) -> PolyMap:
    """Substitute each old variable by a real linear form in new variables.

    ``forms[i]`` maps new-variable indices to real coefficients and expresses
    old variable ``x_i``.  Coefficients of ``p`` are untouched.
    """
    if len(forms) != p.nvars:
        raise ValueError("one linear form per old variable is required")
    lin: list[RealPoly] = []
    for f in forms:
        lin.append({unit_index(new_nvars, j): c for j, c in f.items() if c != 0})
    cache: dict[tuple[int, int], RealPoly] = {}

    def power(i: int, k: int) -> RealPoly:
        if k == 0:
            return {(0,) * new_nvars: Fraction(1)}
        if (i, k) not in cache:
            cache[(i, k)] = _real_mul(power(i, k - 1), lin[i])
        return cache[(i, k)]

    out: dict[Exponent, Element] = {}
    for e, c in p.terms.items():
        poly: RealPoly = {(0,) * new_nvars: Fraction(1)}
        for i, k in enumerate(e):
            if k:
                poly = _real_mul(poly, power(i, k))
        for ne, r in poly.items():
            term = c * r
            out[ne] = out[ne] + term if ne in out else term
    return PolyMap(p.algebra, new_nvars, out, names)


def translate(p: PolyMap, shift: Sequence) -> PolyMap:
    """The polynomial ``x -> p(x + shift)`` (exact for rational shifts)."""
    if len(shift) != p.nvars:
        raise ValueError("shift length does not match the number of variables")
    shift = [Fraction(c) if not isinstance(c, float) else c for c in shift]
    out: dict[Exponent, Element] = {}
    for e, c in p.terms.items():
        factors = []
        for i, k in enumerate(e):
            factors.append([(j, math.comb(k, j) * shift[i] ** (k - j)) for j in range(k + 1)])
        for choice in iproduct(*factors):
            r = 1
            for _, w in choice:
                r = r * w
            if r == 0:
                continue
            ne = tuple(j for j, _ in choice)
            term = c * r
            out[ne] = out[ne] + term if ne in out else term
    return p._like(out)


def reflect(p: PolyMap, variables: Iterable[int]) -> PolyMap:
    """Flip the sign of the given variables."""
    flip = set(variables)
    out = {}
    for e, c in p.terms.items():
        sign = -1 if sum(e[i] for i in flip) % 2 else 1
        out[e] = c if sign == 1 else -c
    return p._like(out)


def slice_variable_names(fan) -> tuple[str, ...]:
    return tuple(f"x{s}" for s in range(fan.t0 + 1)) + tuple(f"b{h}" for h in range(1, fan.tau + 1))


def slice_restrict(p: PolyMap, J, fan) -> PolyMap:
    """Restriction to the slice through ``J``: ``x = sum_{s<=t0} x_s v_s + sum_h beta_h J_h``.

    The result is a polynomial in ``(x_0, ..., x_{t_0}, beta_1, ..., beta_tau)``.
    """
    if p.nvars != fan.n + 1:
        raise ValueError("polynomial is not defined on the fan's subspace")
    if len(J.J) != fan.tau:
        raise ValueError("torus point does not match the fan")
    forms: list[dict[int, object]] = [dict() for _ in range(fan.n + 1)]
    for s in range(fan.t0 + 1):
        forms[s] = {s: Fraction(1)}
    for h in range(1, fan.tau + 1):
        idx = list(fan.steps.block(h))
        coords = fan.basis.coordinates(J.J[h - 1])
        if any(coords[s] != 0 for s in range(fan.n + 1) if s not in idx):
            raise ValueError(f"J_{h} does not lie in block {h}")
        for s in idx:
            forms[s] = {fan.t0 + h: coords[s]}
    return substitute_linear(p, forms, fan.slice_nvars, slice_variable_names(fan))
