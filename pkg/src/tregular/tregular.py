"""T-regular polynomials, adapted derivatives and the classification of step lists.

For a fan with steps ``T = (t_0, ..., t_tau)`` the polynomials ``T_k``
(``k`` of length ``t_0 + tau``) are built by the recursion

    |k| T_k = sum_{s<=t_0} k_s T_{k-e_s} (x_s - (-1)^a x_0 v_s)
            + sum_{s>t_0} (-1)^{b_s} k_s T_{k-e_s} (x_0 + (-1)^{a_s} x^{s-t_0})

with ``a = sum_{u>t_0} k_u``, ``a_s = a - k_s`` and ``b_s = sum_{u>s} k_u``,
all read from the current ``k``.  Every slice restriction of ``T_k`` is a
Fueter polynomial of the slice basis times a product of the ``J_h``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import AlgebraError, Element
from .fueter import dbar, fueter_poly
from .polymap import (
    Exponent,
    PolyMap,
    factorial,
    multi_indices,
    right_mul,
    slice_restrict,
    substitute_linear,
    translate,
    unit_index,
)
from .subspace import (
    Fan,
    HypercomplexBasis,
    StepList,
    TorusPoint,
    make_fan,
    rational_torus_point,
    slice_basis,
)


class NotTRegularError(ValueError):
    """Raised when a polynomial fails the slice monogenicity test."""


@dataclass(frozen=True)
class TPolynomial:
    k: Exponent
    poly: PolyMap
    fan: Fan


def _require_associative(fan: Fan) -> None:
    if not fan.algebra.is_associative:
        raise AlgebraError("T_k polynomials are only defined over associative algebras")


def block_variable(fan: Fan, h: int) -> PolyMap:
    """``x^h = sum_{s in block h} x_s v_s`` as a degree-one polynomial."""
    n = fan.n + 1
    return PolyMap(fan.algebra, n, {unit_index(n, s): fan.basis[s] for s in fan.steps.block(h)})


def cullen_variable(fan: Fan, h: int) -> PolyMap:
    """``x_0 + x^h``."""
    n = fan.n + 1
    return PolyMap.variable(fan.algebra, n, 0) + block_variable(fan, h)


def fueter_variable_of_fan(fan: Fan, s: int) -> PolyMap:
    """``x_s - x_0 v_s`` for ``1 <= s <= t_0``."""
    n = fan.n + 1
    return PolyMap(fan.algebra, n, {unit_index(n, s): fan.algebra.one(), unit_index(n, 0): -fan.basis[s]})


_CACHE: dict[tuple, PolyMap] = {}
_LOCK = threading.Lock()


def _t_poly(fan: Fan, k: Exponent) -> PolyMap:
    alg, n = fan.algebra, fan.n + 1
    if min(k, default=0) < 0:
        return PolyMap.zero(alg, n)
    if sum(k) == 0:
        return PolyMap.constant(alg, n, 1)
    key = (fan.basis, fan.steps, k)
    if key in _CACHE:
        return _CACHE[key]
    t0, tau = fan.t0, fan.tau
    a = sum(k[t0:])
    x0 = PolyMap.variable(alg, n, 0)
    total = PolyMap.zero(alg, n)
    for s in range(1, t0 + tau + 1):
        ks = k[s - 1]
        if not ks:
            continue
        prev = _t_poly(fan, k[: s - 1] + (ks - 1,) + k[s:])
        if s <= t0:
            xs = PolyMap.variable(alg, n, s)
            factor = xs - x0.right_mul_element(fan.basis[s]).scale((-1) ** a)
            total = total + right_mul(prev, factor).scale(ks)
        else:
            a_s = a - ks
            b_s = sum(k[s:])
            factor = x0 + block_variable(fan, s - t0).scale((-1) ** a_s)
            total = total + right_mul(prev, factor).scale(ks * (-1) ** b_s)
    result = total.scale(Fraction(1, sum(k)))
    with _LOCK:
        _CACHE.setdefault(key, result)
    return _CACHE[key]


def t_poly(fan: Fan, k: Sequence[int]) -> TPolynomial:
    """The T-regular polynomial ``T_k`` of the fan (zero for negative ``k``)."""
    _require_associative(fan)
    k = tuple(int(v) for v in k)
    if len(k) != fan.t0 + fan.tau:
        raise ValueError(f"multi-index must have length t_0 + tau = {fan.t0 + fan.tau}")
    return TPolynomial(k, _t_poly(fan, k), fan)


def j_power_product(J: TorusPoint, k_tail: Sequence[int]) -> Element:
    """``J_tau^{k_tau} ... J_1^{k_1}`` (the highest block on the left)."""
    alg = J.J[0].algebra if J.J else None
    out = None
    for h in range(len(J.J), 0, -1):
        for _ in range(k_tail[h - 1]):
            out = J.J[h - 1] if out is None else out * J.J[h - 1]
    return out if out is not None else (alg.one() if alg else None)


def check_slice_identity(fan: Fan, k: Sequence[int], J: TorusPoint) -> PolyMap:
    """Residual ``(T_k)_J - P_k^{B_J} J_tau^{k_{t0+tau}} ... J_1^{k_{t0+1}}``."""
    tk = t_poly(fan, k)
    restricted = slice_restrict(tk.poly, J, fan)
    bj = slice_basis(fan, J)
    jp = j_power_product(J, tk.k[fan.t0 :]) if fan.tau else fan.algebra.one()
    expected = fueter_poly(bj, tk.k).right_mul_element(jp)
    return restricted - PolyMap(expected.algebra, expected.nvars, expected.terms, restricted.names)


# ---------------------------------------------------------------------------
# Slice monogenicity and adapted derivatives
# ---------------------------------------------------------------------------


def is_slice_monogenic(p: PolyMap, fan: Fan, J: TorusPoint) -> bool:
    bj = slice_basis(fan, J)
    return dbar(bj, slice_restrict(p, J, fan)).is_zero()


def sample_torus_points(fan: Fan, count: int = 3, seed: int = 0) -> list[TorusPoint]:
    return [rational_torus_point(fan, seed * 1000 + i) for i in range(count)]


def is_t_regular(p: PolyMap, fan: Fan, samples: int = 3, seed: int = 0) -> bool:
    """Exact slice-monogenicity test on seeded rational torus points."""
    return all(is_slice_monogenic(p, fan, J) for J in sample_torus_points(fan, samples, seed))


def delta_on_slice(fan: Fan, p: PolyMap, h: Sequence[int], J: TorusPoint) -> PolyMap:
    """``delta_J^h p_J = (J_tau^{h..} ... J_1^{h..})^{-1} nabla_{B_J}^h p_J``."""
    if len(h) != fan.slice_nvars:
        raise ValueError(f"h must have length t_0 + tau + 1 = {fan.slice_nvars}")
    restricted = slice_restrict(p, J, fan)
    deriv = restricted.nabla(h)
    inv = fan.algebra.one()
    # inverse of J_tau^{a_tau} ... J_1^{a_1} is J_1^{-a_1} ... J_tau^{-a_tau}, with J^{-1} = -J
    for hh in range(1, fan.tau + 1):
        for _ in range(h[fan.t0 + hh]):
            inv = inv * (-J.J[hh - 1])
    return deriv.left_mul_element(inv)


def _overlap_restriction(fan: Fan, p: PolyMap, J: TorusPoint, K: TorusPoint, flip_for_K: bool) -> PolyMap:
    """Restrict a slice polynomial to the common part of the slices through J and K."""
    forms: list[dict[int, object]] = [{s: Fraction(1)} for s in range(fan.slice_nvars)]
    for hh in range(1, fan.tau + 1):
        j, kk = J.J[hh - 1], K.J[hh - 1]
        idx = fan.t0 + hh
        if kk == j:
            continue
        if kk == -j:
            if flip_for_K:
                forms[idx] = {idx: Fraction(-1)}
            continue
        forms[idx] = {}
    return substitute_linear(p, forms, fan.slice_nvars, p.names)


@dataclass(frozen=True)
class DeltaResult:
    value: PolyMap
    other: PolyMap
    agree: bool


class DeltaDisagreementError(ArithmeticError):
    """The two slice computations of ``delta^h`` differ on their overlap."""


def delta_two_slice(fan: Fan, p: PolyMap, h: Sequence[int], J: TorusPoint, J2: TorusPoint) -> DeltaResult:
    """Compute ``delta^h p`` on the slices through ``J`` and ``J2`` and compare.

    Both computations are restricted to the intersection of the two slices
    (mirror variables, plus ``beta_h`` for blocks where ``J2_h = +-J_h``).
    """
    _require_associative(fan)
    a = delta_on_slice(fan, p, h, J)
    b = delta_on_slice(fan, p, h, J2)
    ra = _overlap_restriction(fan, a, J, J2, False)
    rb = _overlap_restriction(fan, b, J, J2, True)
    return DeltaResult(a, b, ra == rb)


def delta(fan: Fan, p: PolyMap, h: Sequence[int], J: TorusPoint | None = None, J2: TorusPoint | None = None) -> PolyMap:
    """Adapted derivative ``delta^h p`` as a slice polynomial through ``J``.

    The value is also computed on a second slice; disagreement on the overlap
    raises :class:`DeltaDisagreementError`.
    """
    J = J or rational_torus_point(fan, 11)
    J2 = J2 or rational_torus_point(fan, 23)
    res = delta_two_slice(fan, p, h, J, J2)
    if not res.agree:
        raise DeltaDisagreementError(f"delta^{tuple(h)} differs between the two slices")
    return res.value


def delta_at_origin(fan: Fan, p: PolyMap, h: Sequence[int], J: TorusPoint) -> Element:
    return delta_on_slice(fan, p, h, J).evaluate([0] * fan.slice_nvars)


def mirror_laplacian_form(fan: Fan, phi: PolyMap, h_mirror: Sequence[int], order: int) -> PolyMap:
    """Right-hand side of the ``tau = 1`` formula for ``delta_J^{(h, order)}``.

    ``order = 2m`` gives ``d^h (sum_{s<=t0} d_s^2)^m phi``; ``order = 2m+1``
    appends ``(d_0 + sum v_s d_s)``.  ``phi`` is a slice polynomial.
    """
    if fan.tau != 1:
        raise ValueError("the mirror formula needs tau = 1")
    mm, odd = divmod(order, 2)
    out = phi
    if odd:
        acc = out.partial(0)
        for s in range(1, fan.t0 + 1):
            acc = acc + out.partial(s).left_mul_element(fan.basis[s])
        out = acc
    for _ in range(mm):
        acc = PolyMap.zero(out.algebra, out.nvars, out.names)
        for s in range(fan.t0 + 1):
            acc = acc + out.partial(s).partial(s)
        out = acc
    return out.nabla(tuple(h_mirror) + (0,))


def t_expand(fan: Fan, p: PolyMap, J: TorusPoint | None = None, J2: TorusPoint | None = None) -> dict[Exponent, Element]:
    """Coefficients ``c_k = (1/k!) delta^{(0,k)} P(0)`` with ``P = sum T_k c_k``.

    The input must be T-regular; this is checked exactly on the two slices
    used.  The reconstruction is asserted to reproduce ``P``.
    """
    _require_associative(fan)
    J = J or rational_torus_point(fan, 11)
    J2 = J2 or rational_torus_point(fan, 23)
    for K in (J, J2):
        if not is_slice_monogenic(p, fan, K):
            raise NotTRegularError("polynomial is not slice monogenic")
    coeffs: dict[Exponent, Element] = {}
    recon = PolyMap.zero(fan.algebra, fan.n + 1)
    for d in range(max(p.degree, 0) + 1):
        for k in multi_indices(fan.t0 + fan.tau, d):
            c = delta_at_origin(fan, p, (0,) + k, J) / factorial(k)
            if not c.is_zero():
                coeffs[k] = c
                recon = recon + t_poly(fan, k).poly.right_mul_element(c)
    if recon != p:
        raise NotTRegularError("expansion does not reproduce the polynomial")
    return coeffs


def t_expand_at(fan: Fan, p: PolyMap, center: Sequence) -> dict[Exponent, Element]:
    """Coefficients ``c_k = (1/k!) delta^{(0,k)} P(c)`` about a mirror point ``c``.

    ``center`` holds the mirror coordinates ``(c_0, ..., c_{t_0})``; then
    ``P(x) = sum_k T_k(x - c) c_k`` with finitely many terms.
    """
    if len(center) != fan.t0 + 1:
        raise ValueError("the expansion point must lie in the mirror")
    shift = list(center) + [0] * (fan.n - fan.t0)
    return t_expand(fan, translate(p, shift))


def t_reconstruct(fan: Fan, coeffs: Mapping[Exponent, Element], center: Sequence | None = None) -> PolyMap:
    """``sum_k T_k(x - c) c_k``."""
    out = PolyMap.zero(fan.algebra, fan.n + 1)
    for k, c in coeffs.items():
        out = out + t_poly(fan, k).poly.right_mul_element(c)
    if center is not None:
        out = translate(out, [-Fraction(v) for v in center] + [0] * (fan.n - fan.t0))
    return out


# ---------------------------------------------------------------------------
# Classification of step lists
# ---------------------------------------------------------------------------


def _as_steps(t) -> tuple[int, ...]:
    if isinstance(t, StepList):
        return t.steps
    if isinstance(t, Fan):
        return t.steps.steps
    if isinstance(t, str):
        return StepList.parse(t).steps
    return tuple(t)


def fueter_variable_regular(T, T2, s: int) -> bool:
    """Whether the ``T``-Fueter variable ``x_s - x_0 v_s`` is ``T2``-regular."""
    t, t2 = _as_steps(T), _as_steps(T2)
    if not 1 <= s <= t[0]:
        raise IndexError(f"Fueter variable index must lie in 1..{t[0]}")
    if s <= t2[0]:
        return True
    return any(t2[u - 1] + 1 == s == t2[u] for u in range(1, len(t2)))


def cullen_variable_regular(T, T2, s: int) -> bool:
    """Whether the ``T``-Cullen variable ``x_0 + x^s`` is ``T2``-regular."""
    t, t2 = _as_steps(T), _as_steps(T2)
    if not 1 <= s < len(t):
        raise IndexError(f"Cullen variable index must lie in 1..{len(t) - 1}")
    lo, hi = t[s - 1], t[s]
    if lo + 1 == hi <= t2[0]:
        return True
    return any((t2[u - 1], t2[u]) == (lo, hi) for u in range(1, len(t2)))


def variable_regular_under(T, T2, which: str, index: int) -> bool:
    if which == "fueter":
        return fueter_variable_regular(T, T2, index)
    if which == "cullen":
        return cullen_variable_regular(T, T2, index)
    raise ValueError("which must be 'fueter' or 'cullen'")


def variables_of(fan: Fan) -> list[tuple[str, int, PolyMap]]:
    """All T-Fueter and T-Cullen variables of a fan, as polynomials."""
    out = [("fueter", s, fueter_variable_of_fan(fan, s)) for s in range(1, fan.t0 + 1)]
    out += [("cullen", h, cullen_variable(fan, h)) for h in range(1, fan.tau + 1)]
    return out


def classes_equal(T, T2) -> bool:
    """Whether ``Reg_T = Reg_T2``: one list is the other preceded by steps ``(m, m+1)``."""
    a, b = _as_steps(T), _as_steps(T2)
    if a[-1] != b[-1]:
        raise ValueError("step lists end at different n")
    longer, shorter = (a, b) if len(a) >= len(b) else (b, a)
    extra = len(longer) - len(shorter)
    if longer[extra:] != shorter:
        return False
    head = longer[: extra + 1]
    return all(y == x + 1 for x, y in zip(head, head[1:]))


def equivalence_classes(n: int) -> list[list[tuple[int, ...]]]:
    from .subspace import all_step_lists

    classes: list[list[tuple[int, ...]]] = []
    for t in all_step_lists(n):
        for cls in classes:
            if classes_equal(cls[0], t.steps):
                cls.append(t.steps)
                break
        else:
            classes.append([t.steps])
    return classes


def phi_change_of_basis(p: PolyMap) -> PolyMap:
    """``g -> Phi^{-1} o g o Phi`` for ``Phi: (1, i, j, k) -> (1, k, -j, i)`` on the quaternions.

    This is the single hard-coded bijection from ``(0,2,3)``-regular to
    ``(0,1,3)``-regular functions; no general classification up to
    bijections is attempted.
    """
    alg = p.algebra
    if alg.labels != ("1", "i", "j", "k") or p.nvars != 4:
        raise ValueError("Phi is defined on quaternion-valued functions of four variables")
    # Phi(y) has coordinates (y0, y3, -y2, y1); so x_i = coordinate i of Phi(y)
    forms = [{0: Fraction(1)}, {3: Fraction(1)}, {2: Fraction(-1)}, {1: Fraction(1)}]
    composed = substitute_linear(p, forms, 4, p.names)

    def phi_inv(c: Element) -> Element:
        a, b, cc, d = c.coeffs
        # Phi^{-1} maps i -> k, j -> -j, k -> i
        return alg.element((a, d, -cc, b))

    return composed.map_coefficients(phi_inv)


def quaternion_fan(steps) -> Fan:
    from .algebra import builtin

    return make_fan(HypercomplexBasis.standard(builtin("quaternion")), steps)
