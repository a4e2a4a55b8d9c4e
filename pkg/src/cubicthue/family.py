"""Unit-indexed families of binary cubic forms.

A family is built from a cubic field K, an integral generator alpha whose
norm form is the base form, and a unit epsilon > 1.  The n-th member is the
norm form of X - epsilon^n * alpha * Y; its coefficients are obtained from
exact traces and norms (symmetric functions of the conjugates), never from
floating root products, so index-shift identities hold exactly.

The D-parametrized example family has generator alpha = epsilon where
epsilon is the inverse of the real root of X^3 + 3D X^2 + 3D^2 X - 1.  Its
coefficient slots satisfy

    F_n = X^3 - a_n X^2 Y - b_n X Y^2 - Y^3,
    a_n = trace(epsilon^(n+1)),   b_n = -a_(-n-2),
    a_(n+3) = 3D^2 a_(n+2) + 3D a_(n+1) + a_n.

Note the recurrence multipliers: the order (3D^2, 3D) is forced by the
minimal polynomial X^3 - 3D^2 X^2 - 3D X - 1 of epsilon and by the initial
values a_0 = 3D^2, a_(-1) = 3, a_(-2) = -3D; the frequently quoted reversed
order (3D, 3D^2) is inconsistent with trace(epsilon^2) already at D = 2.
`coefficient_sequence` records this discrepancy in its metadata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cubicfield import (
    CubicField,
    FieldElement,
    cubic_discriminant,
    has_rational_root,
    make_field,
)
from .errors import InvalidParameter, NotAUnit, ReducibleForm
from .intervals import RI


@dataclass(frozen=True, slots=True)
class BinaryCubicForm:
    """a0 X^3 + a1 X^2 Y + a2 X Y^2 + a3 Y^3 with integer coefficients."""

    a0: int
    a1: int
    a2: int
    a3: int

    @property
    def coefficients(self) -> tuple[int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3)

    def evaluate(self, x: int, y: int) -> int:
        return (self.a0 * x**3 + self.a1 * x * x * y
                + self.a2 * x * y * y + self.a3 * y**3)

    def discriminant(self) -> int:
        return cubic_discriminant(*self.coefficients)

    def is_irreducible(self) -> bool:
        """Reducibility of a cubic over Q reduces to having a rational root."""
        if self.a0 == 0:
            return False
        return not has_rational_root(self.coefficients)

    def swapped(self) -> "BinaryCubicForm":
        """G(X, Y) = F(Y, X): coefficient reversal."""
        return BinaryCubicForm(self.a3, self.a2, self.a1, self.a0)

    def __neg__(self) -> "BinaryCubicForm":
        return BinaryCubicForm(-self.a0, -self.a1, -self.a2, -self.a3)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coefficients)


def negative_n_swap(form: BinaryCubicForm) -> BinaryCubicForm:
    """Swap the variables; used to reduce negative indices to positive ones."""
    return form.swapped()


@dataclass(frozen=True, slots=True)
class ScalingRecord:
    """Substitution bookkeeping for the monic normalization.

    a0^2 F(x, y) = F~(a0 x, y), so x-coordinates scale by a0 and a bound k
    on |F| becomes a0^2 k on |F~|."""

    original_a0: int

    @property
    def x_scale(self) -> int:
        return self.original_a0

    def bound_scale(self, k: int) -> int:
        return self.original_a0 ** 2 * k


@dataclass(frozen=True, slots=True)
class NormalizedBase:
    """Monic integral base data produced by `normalize`."""

    field: CubicField
    alpha: FieldElement
    form: BinaryCubicForm


def normalize(form: BinaryCubicForm) -> tuple[NormalizedBase, ScalingRecord]:
    """Monic integral model: T^3 + a1 T^2 Y + a0 a2 T Y^2 + a0^2 a3 Y^3."""
    if not form.is_irreducible():
        raise ReducibleForm(f"form {form.coefficients} is reducible")
    a0, a1, a2, a3 = form.coefficients
    monic = BinaryCubicForm(1, a1, a0 * a2, a0 * a0 * a3)
    field = make_field(monic.coefficients)
    return NormalizedBase(field, field.gen(), monic), ScalingRecord(a0)


@dataclass(frozen=True, slots=True)
class FormFamily:
    """Family data: field, integral generator alpha, unit epsilon > 1."""

    field: CubicField
    alpha: FieldElement
    epsilon: FieldElement
    provenance: ScalingRecord | None = None
    D: int | None = None

    def beta(self, n: int) -> FieldElement:
        """epsilon^n * alpha, the real root of the n-th form."""
        return (self.epsilon ** n) * self.alpha

    def is_degenerate_index(self, n: int) -> bool:
        """True when epsilon^n * alpha is rational and the form degenerates."""
        return self.beta(n).is_rational()

    def regulator_interval(self, precision) -> RI:
        from .heights import regulator

        return regulator(self, precision)


def make_family(field: CubicField, alpha: FieldElement, epsilon: FieldElement,
                provenance: ScalingRecord | None = None,
                D: int | None = None) -> FormFamily:
    """Validated family constructor."""
    if not alpha.is_integral():
        raise InvalidParameter("alpha must be an algebraic integer")
    if abs(epsilon.norm()) != 1 or not epsilon.is_integral():
        raise NotAUnit(f"epsilon has norm {epsilon.norm()}")
    bits = 32
    while True:
        real = epsilon.real_embedding(Fraction(1, 1 << bits))
        if real.lo > 1:
            break
        if real.hi <= 1:
            raise NotAUnit("epsilon is not > 1 in the real embedding")
        bits *= 2
    return FormFamily(field, alpha, epsilon, provenance, D)


def form_at(fam: FormFamily, n: int) -> BinaryCubicForm:
    """n-th family member from exact symmetric functions of epsilon^n*alpha."""
    beta = fam.beta(n)
    t1 = beta.trace()
    e3 = beta.norm()
    e2 = e3 * beta.inverse().trace()
    coeffs = (Fraction(1), -t1, e2, -e3)
    if any(c.denominator != 1 for c in coeffs):
        raise InvalidParameter(f"non-integral coefficients at index {n}")
    return BinaryCubicForm(*(int(c) for c in coeffs))


def example_family(D: int) -> FormFamily:
    """The D-parametrized family with alpha = epsilon.

    epsilon is the inverse of the real root of X^3 + 3D X^2 + 3D^2 X - 1,
    i.e. epsilon = (cbrt(D^3 + 1) - D)^(-1)."""
    if D == -1:
        raise InvalidParameter("D = -1: the defining value D^3 + 1 vanishes")
    if D == 0:
        raise InvalidParameter("D = 0: epsilon = 1 is not a unit > 1")
    field = make_field((1, 3 * D, 3 * D * D, -1))
    g = field.gen()
    epsilon = g * g + 3 * D * g + 3 * D * D  # exact inverse of g
    assert (epsilon * g).is_rational() and (epsilon * g).c0 == 1
    return make_family(field, alpha=epsilon, epsilon=epsilon, D=D)


@dataclass(frozen=True, slots=True)
class CoefficientSequence:
    """Exact a_n slots plus recurrence metadata for the example family."""

    D: int
    n_lo: int
    n_hi: int
    values: dict[int, int]
    recurrence: tuple[int, int, int]  # multipliers of a_{n+2}, a_{n+1}, a_n
    printed_order_mismatch: dict

    def b(self, n: int) -> int:
        """Companion slot b_n = -a_(-n-2) (requires -n-2 in range)."""
        return -self.values[-n - 2]


def coefficient_sequence(D: int, n_lo: int, n_hi: int) -> CoefficientSequence:
    """a_n = trace(epsilon^(n+1)) on [n_lo, n_hi], checked vs the recurrence."""
    if D in (-1, 0):
        raise InvalidParameter(f"D = {D} outside the family domain")
    fam = example_family(D)
    values = {n: int(fam.epsilon.__pow__(n + 1).trace()) for n in range(n_lo, n_hi + 1)}
    rec = (3 * D * D, 3 * D, 1)
    for n in range(n_lo, n_hi - 2):
        expected = rec[0] * values[n + 2] + rec[1] * values[n + 1] + rec[2] * values[n]
        if expected != values[n + 3]:
            raise AssertionError(f"trace sequence violates its recurrence at n={n}")
    # The reversed multiplier order (3D, 3D^2) circulates in the literature;
    # it already fails against trace(epsilon^2) when D != 0, +-1.
    a0, am1, am2 = (int(fam.epsilon.__pow__(m + 1).trace()) for m in (0, -1, -2))
    reversed_pred = 3 * D * a0 + 3 * D * D * am1 + am2
    true_a1 = int((fam.epsilon ** 2).trace())
    mismatch = {
        "reversed_order": (3 * D, 3 * D * D, 1),
        "reversed_order_predicts_a1": reversed_pred,
        "trace_a1": true_a1,
        "orders_agree": reversed_pred == true_a1,
    }
    return CoefficientSequence(D, n_lo, n_hi, values, rec, mismatch)


def swap_identity_check(fam: FormFamily, n: int) -> tuple[bool, dict]:
    """Verify F_(-n)(X, Y) = -F_(n-2)(Y, X) coefficient-by-coefficient."""
    lhs = form_at(fam, -n)
    rhs = -form_at(fam, n - 2).swapped()
    ok = lhs.coefficients == rhs.coefficients
    witness = {"n": n, "lhs": lhs.coefficients, "rhs": rhs.coefficients}
    return ok, witness


# -- serialization ---------------------------------------------------------------


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coords_json(el: FieldElement) -> list[str]:
    return [_frac_str(c) for c in el.coords]


def family_to_json(fam: FormFamily) -> str:
    record = {
        "schema": 1,
        "min_poly": list(fam.field.min_poly),
        "alpha": _coords_json(fam.alpha),
        "epsilon": _coords_json(fam.epsilon),
    }
    if fam.D is not None:
        record["D"] = fam.D
    if fam.provenance is not None:
        record["original_a0"] = fam.provenance.original_a0
    return json.dumps(record)


def family_from_json(text: str) -> FormFamily:
    record = json.loads(text)
    field = make_field(tuple(record["min_poly"]))

    def parse(coords: Sequence[str]) -> FieldElement:
        return field.element(*(Fraction(c) for c in coords))

    provenance = None
    if record.get("original_a0") is not None:
        provenance = ScalingRecord(int(record["original_a0"]))
    return make_family(field, parse(record["alpha"]), parse(record["epsilon"]),
                       provenance=provenance, D=record.get("D"))
