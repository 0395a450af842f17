"""Finite-dimensional real *-algebras given by structure constants.

An :class:`Algebra` stores, for every ordered pair of basis elements, the
sparse expansion of their product, together with the conjugation as a full
matrix.  Coefficients are exact rationals; the float tier is provided by
vectorised numpy routines that act on arrays of coefficient vectors.

Constructors are provided for Clifford algebras ``Cl(p, q)``, the first three
Cayley-Dickson doublings of the reals (complex numbers, quaternions,
octonions) and the dual quaternions.  Basis diagnostics (fitted, adapted,
distinguished), zero divisors and the norm constant ``omega`` live here too.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _linalg

Scalar = Fraction | int | float
SparseProduct = tuple[tuple[int, Fraction], ...]

MAX_CLIFFORD_GENERATORS = 12


class AlgebraError(ValueError):
    """Raised for invalid algebra data or mismatched operands."""


def _fmt_rational(c: Scalar) -> str:
    if isinstance(c, float):
        return repr(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_rational(s) -> Fraction:
    return Fraction(s) if not isinstance(s, float) else Fraction(s).limit_denominator()


@dataclass(frozen=True, eq=False)
class Algebra:
    """A real algebra with a distinguished unit (basis index 0) and a conjugation.

    ``table[i][j]`` lists the pairs ``(k, c)`` with ``e_i e_j = sum c e_k``.
    ``conj_rows[i]`` is the coordinate vector of ``e_i^c``.
    """

    name: str
    labels: tuple[str, ...]
    table: tuple[tuple[SparseProduct, ...], ...]
    conj_rows: tuple[tuple[Fraction, ...], ...]
    unit_index: int = 0

    def __post_init__(self) -> None:
        d = len(self.labels)
        if len(self.table) != d or any(len(row) != d for row in self.table):
            raise AlgebraError("structure table has the wrong shape")
        if len(self.conj_rows) != d or any(len(r) != d for r in self.conj_rows):
            raise AlgebraError("conjugation matrix has the wrong shape")

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim})"

    # ------------------------------------------------------------------ basics
    @property
    def dim(self) -> int:
        return len(self.labels)

    def element(self, coeffs: Iterable[Scalar]) -> "Element":
        vals = tuple(c if isinstance(c, float) else Fraction(c) for c in coeffs)
        if len(vals) != self.dim:
            raise AlgebraError(f"expected {self.dim} coefficients, got {len(vals)}")
        return Element(vals, self)

    def zero(self) -> "Element":
        return Element((Fraction(0),) * self.dim, self)

    def one(self) -> "Element":
        return self.basis(self.unit_index)

    def scalar(self, c: Scalar) -> "Element":
        vals = [Fraction(0)] * self.dim
        vals[self.unit_index] = c if isinstance(c, float) else Fraction(c)
        return Element(tuple(vals), self)

    def basis(self, i: int | str) -> "Element":
        if isinstance(i, str):
            i = self.labels.index(i)
        vals = [Fraction(0)] * self.dim
        vals[i] = Fraction(1)
        return Element(tuple(vals), self)

    def basis_elements(self) -> list["Element"]:
        return [self.basis(i) for i in range(self.dim)]

    def __getitem__(self, label: str) -> "Element":
        return self.basis(label)

    # ------------------------------------------------------------- arithmetic
    def _mul_coeffs(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple:
        out: list = [0] * self.dim
        nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.table[i]
            for j, bj in nz_b:
                p = ai * bj
                for k, c in row[j]:
                    out[k] += c * p
        return tuple(v if isinstance(v, (Fraction, float)) else Fraction(v) for v in out)

    def _conj_coeffs(self, a: Sequence[Scalar]) -> tuple:
        out: list = [0] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for k, c in enumerate(self.conj_rows[i]):
                if c:
                    out[k] += c * ai
        return tuple(v if isinstance(v, (Fraction, float)) else Fraction(v) for v in out)

    # ------------------------------------------------------------ float tier
    @cached_property
    def _product_terms(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        ii, jj, kk, cc = [], [], [], []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in self.table[i][j]:
                    ii.append(i)
                    jj.append(j)
                    kk.append(k)
                    cc.append(float(c))
        return np.array(ii), np.array(jj), np.array(kk), np.array(cc)

    @cached_property
    def conj_matrix_float(self) -> np.ndarray:
        """Matrix ``C`` with ``coords(a^c) = C @ coords(a)``."""
        return np.array([[float(self.conj_rows[j][i]) for j in range(self.dim)] for i in range(self.dim)])

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise product of coefficient arrays of shape ``(..., dim)``."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        shape = np.broadcast_shapes(a.shape, b.shape)
        out = np.zeros(shape)
        ii, jj, kk, cc = self._product_terms
        for i, j, k, c in zip(ii, jj, kk, cc):
            out[..., k] += c * a[..., i] * b[..., j]
        return out

    def conj_array(self, a: np.ndarray) -> np.ndarray:
        return np.asarray(a, dtype=float) @ self.conj_matrix_float.T

    # ----------------------------------------------------------- invariants
    def conjugation_matrix(self) -> list[list[Fraction]]:
        """Exact matrix ``C`` (columns are coordinates of ``e_j^c``)."""
        return [[self.conj_rows[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def check_unit(self) -> bool:
        one = self.one()
        return all(one * e == e and e * one == e for e in self.basis_elements())

    def check_conjugation(self) -> bool:
        """Involution and anti-automorphism on all basis pairs."""
        es = self.basis_elements()
        if any(e.conj().conj() != e for e in es):
            return False
        return all((a * b).conj() == b.conj() * a.conj() for a in es for b in es)

    def check_alternative(self) -> bool:
        """``x(xy) = x^2 y`` and ``(xy)y = x y^2`` for all basis pairs."""
        es = self.basis_elements()
        for x in es:
            xx = x * x
            for y in es:
                if x * (x * y) != xx * y or (y * x) * x != y * xx:
                    return False
        return True

    @cached_property
    def is_associative(self) -> bool:
        es = self.basis_elements()
        prods = [[a * b for b in es] for a in es]
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            if prods[i][j] * es[k] != es[i] * prods[j][k]:
                return False
        return True

    def associator_witness(self) -> tuple[int, int, int] | None:
        es = self.basis_elements()
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            if (es[i] * es[j]) * es[k] != es[i] * (es[j] * es[k]):
                return (i, j, k)
        return None

    def validate(self) -> list[str]:
        problems = []
        if not self.check_unit():
            problems.append("basis element 0 is not a two-sided unit")
        if not self.check_conjugation():
            problems.append("conjugation is not an involutive anti-automorphism")
        if not self.check_alternative():
            problems.append("algebra is not alternative")
        return problems

    # ------------------------------------------------------------------ JSON
    def to_json(self) -> dict:
        mul = []
        for i in range(self.dim):
            for j in range(self.dim):
                mul.append([[_fmt_rational(c), k] for k, c in self.table[i][j]])
        return {
            "name": self.name,
            "dim": self.dim,
            "labels": list(self.labels),
            "mul": mul,
            "conj": [[_fmt_rational(c) for c in row] for row in self.conj_rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Algebra":
        """Build and validate an algebra from the JSON spec format.

        ``mul`` is either the row-major flat list of ``dim**2`` sparse products
        or a nested ``dim x dim`` list; each product is a list of
        ``[coeff, index]`` pairs.  ``conj[i]`` holds the coordinates of ``e_i^c``.
        """
        d = int(data["dim"])
        labels = tuple(data.get("labels") or [f"e{i}" for i in range(d)])
        mul = data["mul"]
        if len(mul) == d * d:
            flat = mul
        elif len(mul) == d and all(len(row) == d for row in mul):
            flat = [mul[i][j] for i in range(d) for j in range(d)]
        else:
            raise AlgebraError("mul must hold dim*dim products")
        table = tuple(
            tuple(_normalise_sparse((int(k), _parse_rational(c)) for c, k in flat[i * d + j]) for j in range(d))
            for i in range(d)
        )
        conj = tuple(tuple(_parse_rational(c) for c in row) for row in data["conj"])
        alg = cls(str(data.get("name", "custom")), labels, table, conj)
        problems = alg.validate()
        if problems:
            raise AlgebraError("; ".join(problems))
        return alg


def _normalise_sparse(pairs: Iterable[tuple[int, Fraction]]) -> SparseProduct:
    acc: dict[int, Fraction] = {}
    for k, c in pairs:
        acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
    return tuple((k, c) for k, c in sorted(acc.items()) if c != 0)


def load_algebra(path: str | Path) -> Algebra:
    return Algebra.from_json(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Element:
    """A point of an algebra: coefficients with respect to its standard basis."""

    coeffs: tuple
    algebra: Algebra = field(compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, id(self.algebra)))

    def _check(self, other: "Element") -> None:
        if self.algebra is not other.algebra:
            raise AlgebraError("operands belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = self.algebra.scalar(other)
        self._check(other)
        return Element(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.algebra)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(tuple(-a for a in self.coeffs), self.algebra)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return Element(tuple(a * other for a in self.coeffs), self.algebra)
        self._check(other)
        return Element(self.algebra._mul_coeffs(self.coeffs, other.coeffs), self.algebra)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return Element(tuple(other * a for a in self.coeffs), self.algebra)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Element(tuple(a / other for a in self.coeffs), self.algebra)
        if isinstance(other, float):
            return Element(tuple(a / other for a in self.coeffs), self.algebra)
        return NotImplemented

    def __pow__(self, n: int) -> "Element":
        """Left-to-right power ``x(x(...x))``; well defined in alternative algebras."""
        if n < 0:
            return self.inverse() ** (-n)
        out = self.algebra.one()
        for _ in range(n):
            out = self * out
        return out

    def conj(self) -> "Element":
        return Element(self.algebra._conj_coeffs(self.coeffs), self.algebra)

    def trace(self) -> "Element":
        return self + self.conj()

    def norm_n(self) -> "Element":
        return self * self.conj()

    @property
    def real(self) -> Scalar:
        return self.coeffs[self.algebra.unit_index]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_real(self) -> bool:
        u = self.algebra.unit_index
        return all(c == 0 for i, c in enumerate(self.coeffs) if i != u)

    def is_rational(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)

    def norm_sq(self) -> Scalar:
        """Squared Euclidean norm of the coefficient vector (exact if rational)."""
        return sum((c * c for c in self.coeffs), Fraction(0))

    def norm(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    def inverse(self) -> "Element":
        """Two-sided inverse via the left multiplication matrix."""
        m = mult_matrix(self, "left")
        target = [Fraction(0)] * self.algebra.dim
        target[self.algebra.unit_index] = Fraction(1)
        if self.is_rational():
            sol = _linalg.solve(m, target)
            if sol is None or _linalg.rank(m) < self.algebra.dim:
                raise ZeroDivisionError("element is a zero divisor")
            return Element(tuple(sol), self.algebra)
        sol = np.linalg.solve(np.array(m, dtype=float), np.array(target, dtype=float))
        return Element(tuple(float(v) for v in sol), self.algebra)

    def to_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])

    def __str__(self) -> str:
        parts = []
        for c, lab in zip(self.coeffs, self.algebra.labels):
            if c == 0:
                continue
            s = _fmt_rational(c)
            parts.append(s if lab == "1" else f"{s}*{lab}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self) -> str:
        return f"Element({self})"


def from_float(alg: Algebra, arr: Sequence[float]) -> Element:
    return Element(tuple(float(v) for v in arr), alg)


# ---------------------------------------------------------------------------
# Named operations
# ---------------------------------------------------------------------------


def mul(a: Element, b: Element) -> Element:
    return a * b


def conj(a: Element) -> Element:
    return a.conj()


def trace_t(a: Element) -> Element:
    return a.trace()


def norm_n(a: Element) -> Element:
    return a.norm_n()


def is_imaginary_unit(a: Element) -> bool:
    """Membership in ``S_A = {t(x) = 0, n(x) = 1}``."""
    return a.trace().is_zero() and a.norm_n() == a.algebra.one()


def in_quadratic_cone(a: Element) -> bool:
    """Membership in the quadratic cone: reals, or real t and n with 4n > t^2."""
    if a.is_real():
        return True
    t, n = a.trace(), a.norm_n()
    if not (t.is_real() and n.is_real()):
        return False
    return 4 * n.real > t.real * t.real


def mult_matrix(a: Element, side: str = "left") -> list[list[Scalar]]:
    """Matrix of ``x -> a x`` (left) or ``x -> x a`` (right) in the standard basis."""
    if side not in ("left", "right"):
        raise AlgebraError("side must be 'left' or 'right'")
    alg = a.algebra
    cols = [(a * e if side == "left" else e * a).coeffs for e in alg.basis_elements()]
    return [[cols[j][i] for j in range(alg.dim)] for i in range(alg.dim)]


def is_zero_divisor(a: Element, side: str = "left") -> bool:
    """True iff the multiplication matrix on the given side is rank deficient."""
    return _linalg.rank(mult_matrix(a, side)) < a.algebra.dim


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _blade_label(mask: int, n: int) -> str:
    idx = [k + 1 for k in range(n) if mask >> k & 1]
    if not idx:
        return "1"
    sep = "" if n < 10 else "."
    return "e" + sep.join(str(k) for k in idx)


def _reorder_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenated generator word ``e_A e_B``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def make_clifford(p: int, q: int) -> Algebra:
    """Clifford algebra ``Cl(p, q)`` on the blade basis ``e_K``.

    Generators ``e_1..e_p`` square to +1 and ``e_{p+1}..e_{p+q}`` to -1.
    Blades are ordered by size, then lexicographically.  The conjugation is
    the Clifford conjugation: ``e_K^c = e_K`` when ``|K| = 0, 3 (mod 4)``.
    """
    if p < 0 or q < 0:
        raise AlgebraError("p and q must be nonnegative")
    n = p + q
    if n > MAX_CLIFFORD_GENERATORS:
        raise AlgebraError(f"Cl({p},{q}) exceeds the {MAX_CLIFFORD_GENERATORS}-generator guard")
    masks = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), [k for k in range(n) if m >> k & 1]))
    index = {m: i for i, m in enumerate(masks)}
    squares = [1] * p + [-1] * q
    table = []
    for a in masks:
        row = []
        for b in masks:
            sign = _reorder_sign(a, b)
            common = a & b
            for k in range(n):
                if common >> k & 1:
                    sign *= squares[k]
            row.append(((index[a ^ b], Fraction(sign)),))
        table.append(tuple(row))
    conj = []
    for i, m in enumerate(masks):
        r = [Fraction(0)] * len(masks)
        r[i] = Fraction(1 if bin(m).count("1") % 4 in (0, 3) else -1)
        conj.append(tuple(r))
    labels = tuple(_blade_label(m, n) for m in masks)
    return Algebra(f"Cl({p},{q})", labels, tuple(table), tuple(conj))


def _reals() -> Algebra:
    return Algebra("R", ("1",), (((( 0, Fraction(1)),),),), ((Fraction(1),),))


def _build_from_elements(name: str, labels: Sequence[str], basis_coords: Sequence[Sequence[Fraction]], product, conjugate) -> Algebra:
    """Structure constants from callables acting on coordinate tuples."""
    d = len(labels)
    table = tuple(
        tuple(_normalise_sparse((k, c) for k, c in enumerate(product(basis_coords[i], basis_coords[j])) if c) for j in range(d))
        for i in range(d)
    )
    conj_rows = tuple(tuple(Fraction(c) for c in conjugate(basis_coords[i])) for i in range(d))
    return Algebra(name, tuple(labels), table, conj_rows)


def _double(base: Algebra, name: str, labels: Sequence[str]) -> Algebra:
    """One Cayley-Dickson doubling: ``(a + l b)(c + l d) = ac - d b^c + l(a^c d + c b)``."""
    h = base.dim

    def split(v):
        return base.element(v[:h]), base.element(v[h:])

    def product(x, y):
        a, b = split(x)
        c, d = split(y)
        first = a * c - d * b.conj()
        second = a.conj() * d + c * b
        return first.coeffs + second.coeffs

    def conjugate(x):
        a, b = split(x)
        return a.conj().coeffs + (-b).coeffs

    basis = [tuple(Fraction(int(i == j)) for j in range(2 * h)) for i in range(2 * h)]
    return _build_from_elements(name, labels, basis, product, conjugate)


def change_basis(alg: Algebra, new_basis: Sequence[Element], labels: Sequence[str], name: str | None = None) -> Algebra:
    """Re-express ``alg`` in a new basis (whose first vector must be 1)."""
    cols = [list(v.coeffs) for v in new_basis]
    mat = _linalg.transpose(cols)
    inv = _linalg.inverse(mat)

    def coords(x: Element):
        return tuple(sum((inv[i][j] * x.coeffs[j] for j in range(alg.dim)), Fraction(0)) for i in range(alg.dim))

    d = alg.dim
    table = tuple(
        tuple(_normalise_sparse((k, c) for k, c in enumerate(coords(new_basis[i] * new_basis[j])) if c) for j in range(d))
        for i in range(d)
    )
    conj_rows = tuple(coords(v.conj()) for v in new_basis)
    return Algebra(name or alg.name, tuple(labels), table, conj_rows)


def make_cayley_dickson(level: int) -> Algebra:
    """Complex numbers (1), quaternions (2) or octonions (3) by doubling.

    Quaternion labels are ``1, i, j, k`` with ``ij = k``; the octonions double
    these with a new unit ``l`` and carry labels ``1, i, j, k, l, li, lj, lk``.
    """
    if level not in (1, 2, 3):
        raise AlgebraError("Cayley-Dickson level must be 1, 2 or 3")
    alg = _double(_reals(), "C", ("1", "i"))
    if level == 1:
        return alg
    raw = _double(alg, "H", ("1", "i", "l", "li"))
    alg = change_basis(raw, [raw.one(), raw["i"], raw["l"], -raw["li"]], ("1", "i", "j", "k"), "H")
    if level == 2:
        return alg
    return _double(alg, "O", ("1", "i", "j", "k", "l", "li", "lj", "lk"))


def make_dual_quaternions() -> Algebra:
    """``H + eps H`` with ``(a + eps b)(c + eps d) = ac + eps(ad + bc)``."""
    quat = make_cayley_dickson(2)

    def split(v):
        return quat.element(v[:4]), quat.element(v[4:])

    def product(x, y):
        a, b = split(x)
        c, d = split(y)
        return (a * c).coeffs + (a * d + b * c).coeffs

    def conjugate(x):
        a, b = split(x)
        return a.conj().coeffs + b.conj().coeffs

    basis = [tuple(Fraction(int(i == j)) for j in range(8)) for i in range(8)]
    labels = ("1", "i", "j", "k", "ε", "εi", "εj", "εk")
    return _build_from_elements("DH", labels, basis, product, conjugate)


BUILTINS = {
    "complex": lambda: make_cayley_dickson(1),
    "quaternion": lambda: make_cayley_dickson(2),
    "octonion": lambda: make_cayley_dickson(3),
    "dualquat": make_dual_quaternions,
    **{f"cl0{m}": (lambda m=m: make_clifford(0, m)) for m in range(1, 7)},
}

_BUILTIN_CACHE: dict[str, Algebra] = {}


def builtin(name: str) -> Algebra:
    """Builtin algebra by name (cached so repeated lookups share identity)."""
    key = name.lower()
    if key not in BUILTINS:
        raise AlgebraError(f"unknown builtin algebra {name!r}; choose from {sorted(BUILTINS)}")
    if key not in _BUILTIN_CACHE:
        _BUILTIN_CACHE[key] = BUILTINS[key]()
    return _BUILTIN_CACHE[key]


# ---------------------------------------------------------------------------
# Bilinear form and basis diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BilinearForm:
    gram: tuple[tuple[Fraction, ...], ...]
    signature: tuple[int, int, int]


@dataclass(frozen=True)
class BasisClass:
    fitted: bool
    adapted: bool
    distinguished: bool
    signature: tuple[int, int, int]


def coordinates(x: Element, basis: Sequence[Element]) -> list[Fraction]:
    """Coordinates of ``x`` in a basis of the algebra (exact)."""
    cols = [list(v.coeffs) for v in basis]
    sol = _linalg.solve(_linalg.transpose(cols), list(x.coeffs))
    if sol is None:
        raise AlgebraError("element is not in the span of the basis")
    return sol


def _bracket(a: Element, b: Element, basis: Sequence[Element]) -> Fraction:
    """``[[a, b]] = 1/2 <t(a b^c), 1>`` with ``<., 1>`` read in ``basis``."""
    t = (a * b.conj()).trace()
    return coordinates(t, basis)[0] / 2


def signature(gram: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    """Inertia ``(p, nu, zeta)`` of a symmetric rational matrix by congruence."""
    a = _linalg.to_fraction_matrix(gram)
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j: row/column operation keeps congruence
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / d
            if f:
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[piv][i] = a[i][piv] = Fraction(0)
    return pos, neg, n - pos - neg


def bilinear_form(basis: Sequence[Element]) -> BilinearForm:
    """Gram matrix of ``[[., .]]`` on ``basis`` together with its signature."""
    basis = list(basis)
    if basis[0] != basis[0].algebra.one():
        raise AlgebraError("basis[0] must be 1")
    gram = tuple(tuple(_bracket(a, b, basis) for b in basis) for a in basis)
    return BilinearForm(gram, signature(gram))


def is_fitted(basis: Sequence[Element]) -> bool:
    return all(v.conj() == v or v.conj() == -v for v in basis)


def classify_basis(basis: Sequence[Element]) -> BasisClass:
    """Fitted / adapted / distinguished flags, reported independently."""
    form = bilinear_form(basis)
    p, nu, zeta = form.signature
    expected = [1] * p + [-1] * nu + [0] * zeta
    n = len(expected)
    adapted = all(form.gram[i][j] == (expected[i] if i == j else 0) for i in range(n) for j in range(n))
    return BasisClass(
        fitted=is_fitted(basis),
        adapted=adapted,
        distinguished=adapted and form.signature == (n, 0, 0),
        signature=form.signature,
    )


def find_fitted_completion(units: Sequence[Element], algebra: Algebra | None = None) -> list[Element]:
    """Complete ``(1, units...)`` to a basis of conjugation eigenvectors.

    The result lists 1, the given units, further ``+1`` eigenvectors and then
    further ``-1`` eigenvectors of the conjugation matrix.
    """
    units = list(units)
    alg = algebra or (units[0].algebra if units else None)
    if alg is None:
        raise AlgebraError("an algebra is required when no units are given")
    for u in units:
        if not is_imaginary_unit(u):
            raise AlgebraError(f"{u} is not an imaginary unit")
    vecs = [list(alg.one().coeffs)] + [list(u.coeffs) for u in units]
    if _linalg.rank(vecs) < len(vecs):
        raise AlgebraError("units are linearly dependent")
    c = alg.conjugation_matrix()
    ident = [[Fraction(int(i == j)) for j in range(alg.dim)] for i in range(alg.dim)]
    plus = _linalg.nullspace([[c[i][j] - ident[i][j] for j in range(alg.dim)] for i in range(alg.dim)])
    minus = _linalg.nullspace([[c[i][j] + ident[i][j] for j in range(alg.dim)] for i in range(alg.dim)])
    kept = _linalg.extend_to_basis(vecs, plus)
    kept = _linalg.extend_to_basis(kept, minus)
    if len(kept) != alg.dim:
        raise AlgebraError("conjugation is not diagonalisable with eigenvalues +-1")
    return [alg.element(v) for v in kept]


# ---------------------------------------------------------------------------
# The norm constant omega
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaResult:
    """``exact`` is set when omega is certified; otherwise only bounds are known."""

    exact: Fraction | None
    lower_bound: float
    best: float
    method: str
    certified_sq: Fraction | None = None

    @property
    def value(self) -> float:
        return float(self.exact) if self.exact is not None else self.best


def _vectors(basis) -> list[Element]:
    return list(getattr(basis, "vectors", basis))


def omega(m_basis, ambient_basis=None, *, starts: int = 32, steps: int = 200, seed: int = 0) -> OmegaResult:
    """Smallest ``omega`` with ``|x a| <= omega |x| |a|`` for ``x`` in span(m_basis).

    Norms are Euclidean in the coordinates of ``ambient_basis`` (default: the
    standard basis).  Exact value 1 is returned when the ambient basis is
    fitted and distinguished in an associative algebra, or when the left
    multiplications by the subspace are exactly isometric up to scale.
    Otherwise a multi-start projected ascent of ``u -> |L_u|_2`` over the unit
    sphere of the subspace yields a certified lower bound.
    """
    mvecs = _vectors(m_basis)
    alg = mvecs[0].algebra
    amb = _vectors(ambient_basis) if ambient_basis is not None else alg.basis_elements()
    cls = classify_basis(amb)
    if cls.fitted and cls.distinguished and alg.is_associative:
        return OmegaResult(Fraction(1), 1.0, 1.0, "fitted-distinguished-associative")

    pmat = _linalg.transpose([list(v.coeffs) for v in amb])
    pinv = _linalg.inverse(pmat)

    def to_amb(x: Element) -> list[Fraction]:
        return [sum((pinv[i][j] * x.coeffs[j] for j in range(alg.dim)), Fraction(0)) for i in range(alg.dim)]

    # matrices of left multiplication by v_s in ambient coordinates
    mats = []
    for v in mvecs:
        cols = [to_amb(v * a) for a in amb]
        mats.append(_linalg.transpose(cols))
    coords = [to_amb(v) for v in mvecs]
    gram = [[sum((a * b for a, b in zip(ci, cj)), Fraction(0)) for cj in coords] for ci in coords]
    d = alg.dim

    def isometric() -> bool:
        for s in range(len(mats)):
            for u in range(s, len(mats)):
                for i in range(d):
                    for j in range(d):
                        acc = sum((mats[s][k][i] * mats[u][k][j] + mats[u][k][i] * mats[s][k][j] for k in range(d)), Fraction(0))
                        if acc != (2 * gram[s][u] if i == j else 0):
                            return False
        return True

    if isometric():
        return OmegaResult(Fraction(1), 1.0, 1.0, "isometry")

    # float ascent over an orthonormal basis of the subspace (ambient coordinates)
    cmat = np.array([[float(c) for c in v] for v in coords]).T
    q, _ = np.linalg.qr(cmat)
    mf = np.array([[[float(c) for c in row] for row in m] for m in mats])
    # express L for each orthonormal direction: L(Q e_i) = sum_s w_{s,i} M_s
    w = np.linalg.lstsq(cmat, q, rcond=None)[0]
    ops = np.einsum("si,skl->ikl", w, mf)

    def value(c: np.ndarray) -> tuple[float, np.ndarray]:
        mat = np.einsum("i,ikl->kl", c, ops)
        u, s, vt = np.linalg.svd(mat)
        grad = np.einsum("k,ikl,l->i", u[:, 0], ops, vt[0])
        return float(s[0]), grad

    def certify(c: np.ndarray) -> Fraction:
        """Exact ``|x a|^2 / (|x|^2 |a|^2)`` at a rationalised witness pair."""
        x_amb = q @ c
        mat = np.einsum("i,ikl->kl", c, ops)
        a_amb = np.linalg.svd(mat)[2][0]
        xr = [Fraction(float(v)).limit_denominator(10**6) for v in x_amb]
        ar = [Fraction(float(v)).limit_denominator(10**6) for v in a_amb]
        # the rationalised x must stay inside the subspace: project via exact solve
        sol = _linalg.solve(_linalg.transpose(coords), xr)
        if sol is None:
            sol = [Fraction(float(v)).limit_denominator(10**6) for v in np.linalg.lstsq(cmat, x_amb, rcond=None)[0]]
        x_el = sum((v * s_ for v, s_ in zip(mvecs, sol)), alg.zero())
        a_el = sum((b * s_ for b, s_ in zip(amb, ar)), alg.zero())
        num = sum((v * v for v in to_amb(x_el * a_el)), Fraction(0))
        den = sum((v * v for v in to_amb(x_el)), Fraction(0)) * sum((v * v for v in ar), Fraction(0))
        return num / den if den else Fraction(0)

    rng = np.random.default_rng(seed)
    best = 0.0
    best_c = None
    for _ in range(starts):
        c = rng.standard_normal(q.shape[1])
        c /= np.linalg.norm(c)
        f, g = value(c)
        eta = 1.0
        for _ in range(steps):
            trial = c + eta * g
            trial /= np.linalg.norm(trial)
            ft, gt = value(trial)
            if ft > f:
                c, f, g = trial, ft, gt
            else:
                eta *= 0.5
                if eta < 1e-12:
                    break
        if f > best:
            best, best_c = f, c
    cert = certify(best_c)
    return OmegaResult(None, math.sqrt(cert), best, "projected-ascent", cert)
