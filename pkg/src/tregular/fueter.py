"""Fueter variables, hypercomplex Fueter polynomials and Cauchy-Riemann operators.

For a hypercomplex basis ``B = (1, v_1, ..., v_m)`` the Fueter variables are
``zeta_s = x_s - x_0 v_s`` and the polynomials ``P_k`` are defined by
``P_0 = 1`` and ``|k| P_k = sum_s k_s P_{k - eps_s} zeta_s``.  The family
``{P_k : |k| = d}`` is a right-module basis of the ``d``-homogeneous
monogenic polynomials, see :func:`monogenic_expand`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polymap import (
    Exponent,
    PolyMap,
    RealPoly,
    factorial,
    multi_indices,
    right_mul,
    unit_index,
)
from .subspace import HypercomplexBasis


class NotMonogenicError(ValueError):
    """Raised when a polynomial expected to be monogenic is not."""

    def __init__(self, message: str, residual: PolyMap | None = None):
        super().__init__(message)
        self.residual = residual


def fueter_variable(basis: HypercomplexBasis, s: int) -> PolyMap:
    """``zeta_s = x_s - x_0 v_s`` for ``1 <= s <= m``."""
    if not 1 <= s <= basis.m:
        raise IndexError(f"s must lie in 1..{basis.m}")
    alg, n = basis.algebra, basis.m + 1
    return PolyMap(alg, n, {unit_index(n, s): alg.one(), unit_index(n, 0): -basis[s]})


_CACHE: dict[tuple[HypercomplexBasis, Exponent], PolyMap] = {}
_LOCK = threading.Lock()


def _remember(key, value):
    with _LOCK:
        _CACHE.setdefault(key, value)
    return _CACHE[key]


def fueter_poly(basis: HypercomplexBasis, k: Sequence[int]) -> PolyMap:
    """The Fueter polynomial ``P_k``; zero for negative entries of ``k``."""
    k = tuple(int(v) for v in k)
    if len(k) != basis.m:
        raise ValueError(f"multi-index must have length m = {basis.m}")
    alg, n = basis.algebra, basis.m + 1
    if min(k, default=0) < 0:
        return PolyMap.zero(alg, n)
    if sum(k) == 0:
        return PolyMap.constant(alg, n, 1)
    key = (basis, k)
    if key in _CACHE:
        return _CACHE[key]
    total = PolyMap.zero(alg, n)
    for s in range(1, basis.m + 1):
        if k[s - 1]:
            prev = fueter_poly(basis, k[: s - 1] + (k[s - 1] - 1,) + k[s:])
            total = total + right_mul(prev, fueter_variable(basis, s)).scale(k[s - 1])
    return _remember(key, total.scale(Fraction(1, sum(k))))


# ---------------------------------------------------------------------------
# The basis-independent component recursion
# ---------------------------------------------------------------------------


def _rp_add(a: RealPoly, b: RealPoly, scale=1) -> RealPoly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: c for e, c in out.items() if c != 0}


def _rp_times_var(a: RealPoly, i: int) -> RealPoly:
    return {e[:i] + (e[i] + 1,) + e[i + 1 :]: c for e, c in a.items()}


_ORACLE: dict[Exponent, tuple[RealPoly, ...]] = {}


def component_oracle(k: Sequence[int]) -> tuple[RealPoly, ...]:
    """Real polynomials ``(p^0, ..., p^m)`` with ``P_k = sum_u v_u p_k^u``.

    ``p_0 = (1, 0, ..., 0)`` and, for ``w, u >= 1``,
    ``|k| p^0 = sum_w k_w (p^0_{k-e_w} x_w + p^w_{k-e_w} x_0)`` and
    ``|k| p^u = -k_u p^0_{k-e_u} x_0 + sum_w k_w p^u_{k-e_w} x_w``.
    The recursion never refers to a basis, so it is an independent oracle.
    """
    k = tuple(int(v) for v in k)
    m = len(k)
    n = m + 1
    if min(k, default=0) < 0:
        return tuple({} for _ in range(n))
    if sum(k) == 0:
        return tuple([{(0,) * n: Fraction(1)}] + [{} for _ in range(m)])
    if k in _ORACLE:
        return _ORACLE[k]
    prev = {w: component_oracle(k[: w - 1] + (k[w - 1] - 1,) + k[w:]) for w in range(1, m + 1) if k[w - 1]}
    comps: list[RealPoly] = []
    p0: RealPoly = {}
    for w, pw in prev.items():
        p0 = _rp_add(p0, _rp_times_var(pw[0], w), k[w - 1])
        p0 = _rp_add(p0, _rp_times_var(pw[w], 0), k[w - 1])
    comps.append(p0)
    for u in range(1, m + 1):
        pu: RealPoly = {}
        if u in prev:
            pu = _rp_add(pu, _rp_times_var(prev[u][0], 0), -k[u - 1])
        for w, pw in prev.items():
            pu = _rp_add(pu, _rp_times_var(pw[u], w), k[w - 1])
        comps.append(pu)
    total = sum(k)
    result = tuple({e: c / total for e, c in comp.items()} for comp in comps)
    _ORACLE[k] = result
    return result


def oracle_poly(basis: HypercomplexBasis, k: Sequence[int]) -> PolyMap:
    """``sum_u v_u p_k^u`` assembled in the given basis."""
    comps = component_oracle(k)
    alg, n = basis.algebra, basis.m + 1
    out = PolyMap.zero(alg, n)
    for u, comp in enumerate(comps):
        out = out + PolyMap(alg, n, {e: basis[u] * c for e, c in comp.items()})
    return out


# ---------------------------------------------------------------------------
# Cauchy-Riemann operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CROperator:
    """``mode`` is ``dbar``, ``d`` or ``laplacian``; ``side`` is ``left`` or ``right``."""

    basis: HypercomplexBasis
    mode: str = "dbar"
    side: str = "left"

    def __post_init__(self) -> None:
        if self.mode not in ("dbar", "d", "laplacian"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.side not in ("left", "right"):
            raise ValueError(f"unknown side {self.side!r}")

    def __call__(self, p: PolyMap) -> PolyMap:
        return apply_cr(self, p)


def apply_cr(op: CROperator, p: PolyMap) -> PolyMap:
    """Apply ``dbar_B = sum v_s d_s``, ``d_B = d_0 - sum_{s>=1} v_s d_s`` or ``Delta``.

    With ``side='right'`` the units multiply the derivatives from the right,
    e.g. ``P dbar = sum (d_s P) v_s``.
    """
    basis = op.basis
    if p.nvars != basis.m + 1 or p.algebra is not basis.algebra:
        raise ValueError("polynomial variables do not match the basis")
    out = PolyMap.zero(p.algebra, p.nvars, p.names)
    if op.mode == "laplacian":
        for s in range(p.nvars):
            out = out + p.partial(s).partial(s)
        return out
    for s in range(p.nvars):
        ds = p.partial(s)
        if ds.is_zero():
            continue
        v = basis[s] if (s == 0 or op.mode == "dbar") else -basis[s]
        out = out + (ds.left_mul_element(v) if op.side == "left" else ds.right_mul_element(v))
    return out


def dbar(basis: HypercomplexBasis, p: PolyMap, side: str = "left") -> PolyMap:
    return apply_cr(CROperator(basis, "dbar", side), p)


def is_monogenic(basis: HypercomplexBasis, p: PolyMap) -> bool:
    return dbar(basis, p).is_zero()


# ---------------------------------------------------------------------------
# Basis expansion
# ---------------------------------------------------------------------------


def monogenic_expand(basis: HypercomplexBasis, p: PolyMap) -> dict[Exponent, "object"]:
    """Coefficients ``a_k = (1/k!) nabla^{(0,k)} P(0)`` with ``P = sum P_k a_k``.

    Non-homogeneous inputs are split into homogeneous parts (each of which is
    monogenic on its own).  The reconstruction is checked exactly.
    """
    residual = dbar(basis, p)
    if not residual.is_zero():
        raise NotMonogenicError("polynomial is not left monogenic", residual)
    coeffs = {}
    recon = PolyMap.zero(p.algebra, p.nvars)
    origin = [0] * p.nvars
    for d in range(p.degree + 1):
        for k in multi_indices(basis.m, d):
            a = p.nabla((0,) + k).evaluate(origin) / factorial(k)
            if not a.is_zero():
                coeffs[k] = a
                recon = recon + fueter_poly(basis, k).right_mul_element(a)
    if recon != p:
        raise NotMonogenicError("expansion did not reconstruct the polynomial", recon - p)
    return coeffs


def reconstruct(basis: HypercomplexBasis, coeffs: dict) -> PolyMap:
    out = PolyMap.zero(basis.algebra, basis.m + 1)
    for k, a in coeffs.items():
        out = out + fueter_poly(basis, k).right_mul_element(a)
    return out
