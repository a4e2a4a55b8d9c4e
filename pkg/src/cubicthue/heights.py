"""Mahler measures, logarithmic heights, regulator, fundamentality test.

The Mahler measure of an integer polynomial is |a0| times the product of
max(1, |root|) over all roots; the absolute logarithmic height of an
algebraic number is (1/deg) log M of its primitive integer minimal
polynomial.  Root moduli are taken from certified isolating rectangles
(exact rational bounds, refined until the output enclosure meets the
requested width), so every returned interval encloses the true value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .cubicfield import DEFAULT_PRECISION, FieldElement
from .errors import NotAUnit, ZeroElement, ZeroPolynomial
from .family import FormFamily
from .intervals import CBox, RI, bits_for_width, ri_log, ri_root, ri_sqrt

_X = sympy.Symbol("x")


@dataclass(frozen=True, slots=True)
class HeightReport:
    mahler: RI
    height: RI
    degree_used: int


def _to_int_primitive(coeffs: Sequence[Fraction]) -> list[int]:
    """Primitive integer polynomial proportional to the given one."""
    fracs = [Fraction(c) for c in coeffs]
    lcm = 1
    for c in fracs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fracs]
    content = 0
    for c in ints:
        content = math.gcd(content, abs(c))
    return [c // content for c in ints]


def _isolated_root_moduli(int_coeffs: list[int], eps: Fraction,
                          bits: int) -> list[tuple[RI, int]]:
    """(|root| enclosure, multiplicity) pairs for an integer polynomial."""
    poly = sympy.Poly(int_coeffs, _X)
    out: list[tuple[RI, int]] = []
    for factor, mult in poly.sqf_list()[1]:
        if factor.degree() == 0:
            continue
        reals, cplxs = factor.intervals(all=True,
                                        eps=sympy.Rational(eps.numerator,
                                                           eps.denominator))
        for (lo, hi), _m in reals:
            enclosure = abs(RI.of(Fraction(lo.p, lo.q), Fraction(hi.p, hi.q)))
            out.append((enclosure, mult))
        for (corner_lo, corner_hi), _m in cplxs:
            re_lo, im_lo = corner_lo.as_real_imag()
            re_hi, im_hi = corner_hi.as_real_imag()
            box = CBox(RI.of(Fraction(re_lo.p, re_lo.q), Fraction(re_hi.p, re_hi.q)),
                       RI.of(Fraction(im_lo.p, im_lo.q), Fraction(im_hi.p, im_hi.q)))
            out.append((box.abs(bits), mult))
    return out


def mahler_measure(coeffs: Sequence, precision=DEFAULT_PRECISION) -> RI:
    """Certified enclosure of |lead| * prod max(1, |root|).

    Coefficients are in descending degree order; exact rationals allowed."""
    fracs = [Fraction(c) for c in coeffs]
    while fracs and fracs[0] == 0:
        fracs = fracs[1:]
    if not fracs:
        raise ZeroPolynomial("Mahler measure of the zero polynomial")
    lead = abs(fracs[0])
    # roots at zero contribute max(1, 0) = 1
    while fracs[-1] == 0:
        fracs = fracs[:-1]
    if len(fracs) == 1:
        return RI.point(lead)
    target = Fraction(precision)
    bits = bits_for_width(target)
    int_coeffs = _to_int_primitive(fracs)
    eps = Fraction(1, 1 << bits)
    while True:
        result = RI.point(lead)
        for modulus, mult in _isolated_root_moduli(int_coeffs, eps, bits):
            result = result * modulus.max_with(1).pow_int(mult)
        if result.width <= target:
            return result
        eps /= 1 << 32
        bits += 32


def height_from_minpoly(monic_coeffs: Sequence[Fraction],
                        precision=DEFAULT_PRECISION) -> HeightReport:
    """Height report from a monic rational minimal polynomial."""
    degree = len(monic_coeffs) - 1
    int_coeffs = _to_int_primitive(monic_coeffs)
    target = Fraction(precision)
    bits = bits_for_width(target)
    while True:
        mahler = mahler_measure(int_coeffs, Fraction(1, 1 << bits))
        height = ri_log(mahler, bits) / degree
        if height.width <= target and mahler.width <= target:
            return HeightReport(mahler, height, degree)
        bits *= 2


def height_from_conjugates(lead: int, conjugates: Sequence[CBox], degree: int,
                           precision=DEFAULT_PRECISION) -> HeightReport:
    """Height from certified conjugate enclosures.

    `conjugates` lists every embedding of the ambient field, so each root of
    the degree-`degree` minimal polynomial appears len/degree times; the
    repetition is divided out through a root extraction."""
    target = Fraction(precision)
    bits = bits_for_width(target)
    mult = len(conjugates) // degree
    prod = RI.point(abs(lead)) if mult == 1 else RI.point(1)
    for box in conjugates:
        prod = prod * box.abs(bits).max_with(1)
    if mult > 1:
        prod = RI.point(abs(lead)) * ri_root(prod, mult, bits)
    height = ri_log(prod, bits) / degree
    return HeightReport(prod, height, degree)


def abs_log_height(x: FieldElement, precision=DEFAULT_PRECISION) -> HeightReport:
    """Absolute logarithmic height of a cubic-field element."""
    if x.is_zero():
        raise ZeroElement("height of zero")
    if x.is_rational():
        if x.c0 in (1, -1):
            return HeightReport(RI.point(1), RI.point(0), 1)
        m = Fraction(max(abs(x.c0.numerator), x.c0.denominator))
        bits = bits_for_width(Fraction(precision))
        return HeightReport(RI.point(m), ri_log(RI.point(m), bits), 1)
    return height_from_minpoly(x.minimal_polynomial(), precision)


def regulator(fam: FormFamily, precision=DEFAULT_PRECISION) -> RI:
    """Enclosure of log(epsilon) for the family unit epsilon > 1."""
    eps = fam.epsilon
    if abs(eps.norm()) != 1 or not eps.is_integral():
        raise NotAUnit(f"norm {eps.norm()}")
    target = Fraction(precision)
    bits = bits_for_width(target)
    while True:
        real = eps.real_embedding(Fraction(1, 1 << bits))
        if real.lo <= 1:
            if real.hi <= 1:
                raise NotAUnit("epsilon not > 1")
            bits *= 2
            continue
        result = ri_log(real, bits)
        if result.width <= target:
            return result
        bits *= 2


@dataclass(frozen=True, slots=True)
class FundamentalityResult:
    status: str  # "proved_fundamental" | "unknown"
    margin: RI
    threshold: RI
    disc_abs: int

    @property
    def proved(self) -> bool:
        return self.status == "proved_fundamental"


def check_fundamental(fam: FormFamily,
                      precision=DEFAULT_PRECISION) -> FundamentalityResult:
    """Sufficient fundamentality certificate for the unit epsilon > 1.

    In a cubic field with one real embedding, the fundamental unit e0 > 1
    satisfies |disc| < 4*e0^3 + 24.  If epsilon were a proper power, its
    generator would be at most sqrt(epsilon), forcing
    |disc| < 4*epsilon^(3/2) + 24; so |disc| >= 4*epsilon^(3/2) + 24 proves
    epsilon fundamental.  The discriminant used is that of the defining
    polynomial (it equals the field discriminant times the square of an
    index, so a proof here certifies fundamentality in the order Z[g])."""
    eps = fam.epsilon
    if abs(eps.norm()) != 1 or not eps.is_integral():
        raise NotAUnit(f"norm {eps.norm()}")
    bits = bits_for_width(Fraction(precision))
    real = eps.real_embedding(Fraction(1, 1 << bits))
    threshold = 4 * real * ri_sqrt(real, bits) + 24
    disc_abs = abs(fam.field.disc)
    margin = RI.point(disc_abs) - threshold
    status = "proved_fundamental" if margin.lo >= 0 else "unknown"
    return FundamentalityResult(status, margin, threshold, disc_abs)
