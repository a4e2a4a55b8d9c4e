"""Unit reduction: factor out the power of epsilon that balances an element.

For nonzero gamma in K with m = |N(gamma)|, the rank-1 unit group lets us
write gamma = epsilon^ell * xi with all three |conjugates of xi| within a
factor exp(R/2) of m^(1/3), where R = log(epsilon): choosing ell as the
nearest integer to (log|gamma| - (1/3) log m) / R gives
|log(|xi| / m^(1/3))| <= R/2, and the two complex conjugates then sit at
half that log-distance on the other side, since their modulus squared times
|xi| equals m.  Reconstruction epsilon^ell * xi = gamma is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cubicfield import DEFAULT_PRECISION, FieldElement
from .errors import (
    DegenerateN,
    PrecisionExhausted,
    TrivialXY,
    ZeroElement,
    ZeroValue,
)
from .family import FormFamily, form_at
from .intervals import RI, bits_for_width, ri_log

BALANCE_TOL = Fraction(1, 10**9)

_HALF = Fraction(1, 2)


@dataclass(frozen=True, slots=True)
class Decomposition:
    """gamma = epsilon^ell * xi with log-balanced conjugates of xi."""

    ell: int
    xi: FieldElement
    norm_abs: Fraction
    balance: RI


def _is_exact_tie(gamma: FieldElement, eps: FieldElement, m: Fraction,
                  h: int) -> bool:
    """Exact test for |gamma| = m^(1/3) * eps^(h + 1/2).

    Sixth powers clear both the cube root and the absolute value, turning
    the condition into an equality of field elements."""
    return gamma ** 6 == (eps ** (6 * h + 3)) * (m * m)


def _choose_ell(fam: FormFamily, gamma: FieldElement, m: Fraction) -> int:
    eps = fam.epsilon
    bits = 64
    while bits <= 1 << 16:
        width = Fraction(1, 1 << bits)
        reg = ri_log(eps.real_embedding(width), bits)
        gr = abs(gamma.real_embedding(width))
        if not gr.is_positive():
            bits *= 2
            continue
        t = (ri_log(gr, bits) - ri_log(RI.point(m), bits) / 3) / reg
        # candidate integers whose nearness window meets the enclosure of t
        lo = math.ceil(t.lo - _HALF)
        hi = math.floor(t.hi + _HALF)
        if lo == hi:
            return lo
        if hi == lo + 1 and _is_exact_tie(gamma, eps, m, lo):
            return lo  # exact halfway point: take the smaller index
        bits *= 2
    raise PrecisionExhausted("balancing exponent undecidable")


def unit_reduce(fam: FormFamily, gamma: FieldElement,
                precision=DEFAULT_PRECISION) -> Decomposition:
    """Decompose gamma exactly as epsilon^ell * xi with balanced xi."""
    if gamma.is_zero():
        raise ZeroElement("cannot reduce zero")
    m = abs(gamma.norm())
    ell = _choose_ell(fam, gamma, m)
    xi = (fam.epsilon ** (-ell)) * gamma
    assert (fam.epsilon ** ell) * xi == gamma
    balance = _balance(fam, xi, m, precision)
    return Decomposition(ell, xi, m, balance)


def _balance(fam: FormFamily, xi: FieldElement, m: Fraction, precision) -> RI:
    """max over the three embeddings of |log(|embedding| / m^(1/3))|."""
    target = Fraction(precision)
    bits = bits_for_width(target)
    while True:
        width = Fraction(1, 1 << bits)
        real, cplx = xi.embed(width)
        log_m3 = ri_log(RI.point(m), bits) / 3
        log_real = ri_log(abs(real), bits) if abs(real).is_positive() else None
        cabs2 = cplx.abs2()
        if log_real is None or not cabs2.is_positive():
            bits *= 2
            continue
        log_cplx = ri_log(cabs2, bits) / 2
        result = abs(log_real - log_m3).max_with(abs(log_cplx - log_m3))
        if result.width <= target:
            return result
        bits *= 2


@dataclass(frozen=True, slots=True)
class HouseBoundReport:
    """Empirical exponent for the house bound on the balanced part.

    kappa9_emp is log(max{house(xi), 1/|xi|, 1/|xi'|}) / log k; bounded
    uniformly over a sweep when the reduction is doing its job."""

    house_xi: RI
    inv_real: RI
    inv_cplx: RI
    kappa9_emp: RI | None


def decompose_solution(fam: FormFamily, n: int, x: int, y: int,
                       k: int | None = None,
                       precision=DEFAULT_PRECISION) -> tuple[Decomposition,
                                                             HouseBoundReport]:
    """Decomposition of gamma = x - epsilon^n * alpha * y for a solution."""
    if x == 0 or y == 0:
        raise TrivialXY(f"(x, y) = ({x}, {y})")
    if fam.is_degenerate_index(n):
        raise DegenerateN(f"epsilon^{n} * alpha is rational")
    value = form_at(fam, n).evaluate(x, y)
    if value == 0:
        raise ZeroValue(f"F_{n}({x}, {y}) = 0")
    beta = fam.beta(n)
    gamma = (-y) * beta + x
    m = abs(gamma.norm())
    assert m == abs(Fraction(value)), "norm and form value disagree"
    dec = unit_reduce(fam, gamma, precision)
    target = Fraction(precision)
    bits = bits_for_width(target)
    real, cplx = dec.xi.embed(Fraction(1, 1 << bits))
    house_xi = abs(real).max_with(cplx.abs(bits))
    inv_real = abs(real).recip()
    inv_cplx = cplx.abs(bits).recip()
    kappa9 = None
    if k is not None and k >= 2:
        top = house_xi.max_with(inv_real).max_with(inv_cplx)
        kappa9 = ri_log(top, bits) / ri_log(RI.point(k), bits)
    return dec, HouseBoundReport(house_xi, inv_real, inv_cplx, kappa9)
