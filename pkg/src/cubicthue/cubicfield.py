"""Exact arithmetic in a non-totally-real cubic field K = Q(g).

The field is defined by a monic irreducible integer cubic with exactly one
real root g.  Elements are exact rational vectors in the power basis
(1, g, g^2); all ring operations, norms, traces and minimal polynomials are
computed by exact linear algebra on the multiplication action, never from
floating approximations of the roots.

Numerical embeddings are certified: the real root is isolated by exact
sign-change bisection (signs of an integer polynomial at dyadic rationals are
exact), and the complex root with positive imaginary part is enclosed by
transporting the real enclosure through the exact identities

    Re g' = (-a1 - g) / 2,        |g'|^2 = -a3 / g,

which follow from the symmetric functions of the roots.  Both enclosures are
refinable on demand and shrink monotonically.

A minimal exact model of the degree-6 splitting field (`SplittingAlgebra`)
supports heights and rationality tests for quantities that mix two distinct
embeddings, such as products of conjugates from different complex places.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import (
    DivisionByZero,
    NonMonic,
    PrecisionExhausted,
    ReduciblePolynomial,
    TotallyReal,
    ZeroElement,
)
from .intervals import CBox, RI, bits_for_width, ri_sqrt

DEFAULT_PRECISION = Fraction(1, 10**30)

# Hard ceiling on the binary precision of any refinement loop.  Reaching it
# means a quantity that is mathematically nonzero could not be separated
# from zero, which indicates a bug rather than a hard instance at desk scale.
MAX_REFINE_BITS = 1 << 20


def cubic_discriminant(a0: int, a1: int, a2: int, a3: int) -> int:
    return (18 * a0 * a1 * a2 * a3 - 4 * a1**3 * a3 + a1**2 * a2**2
            - 4 * a0 * a2**3 - 27 * a0**2 * a3**2)


def has_rational_root(coeffs: Sequence[int]) -> bool:
    """Exhaustive divisor test for a rational root of an integer cubic."""
    a0, a1, a2, a3 = (int(c) for c in coeffs)
    if a3 == 0:
        return True
    for p in sympy.divisors(abs(a3)):
        for q in sympy.divisors(abs(a0)):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if ((a0 * r + a1) * r + a2) * r + a3 == 0:
                    return True
    return False


class CubicField:
    """Q(g) for g the unique real root of a monic integer cubic."""

    def __init__(self, min_poly: tuple[int, int, int, int], disc: int,
                 _token: object = None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use make_field() to construct a CubicField")
        self.min_poly = min_poly
        self.disc = disc
        a1, a2, a3 = min_poly[1], min_poly[2], min_poly[3]
        bound = 1 + max(abs(a1), abs(a2), abs(a3))
        # bisection bracket [lo, hi] with f(lo) < 0 < f(hi)
        self._real = RI(Fraction(-bound), Fraction(bound))
        self._cbox: CBox | None = None

    # -- root enclosures ----------------------------------------------------

    def _poly_at(self, t: Fraction) -> Fraction:
        _, a1, a2, a3 = self.min_poly
        return ((t + a1) * t + a2) * t + a3

    def real_root(self, bits: int) -> RI:
        """Enclosure of the real root with width <= 2^-bits."""
        target = Fraction(1, 1 << bits)
        cur = self._real
        while cur.width > target:
            mid = cur.mid
            v = self._poly_at(mid)
            if v == 0:  # impossible for an irreducible cubic
                raise ReduciblePolynomial(f"rational root {mid}")
            cur = RI(mid, cur.hi) if v < 0 else RI(cur.lo, mid)
        self._real = cur
        return cur

    def complex_root(self, bits: int) -> CBox:
        """Enclosure of the complex root with positive imaginary part."""
        _, a1, _, a3 = self.min_poly
        b = max(bits + 4, 32)
        for _ in range(64):
            r = self.real_root(b)
            if not r.sign_definite():
                b *= 2
                continue
            re = (RI.point(-a1) - r) / 2
            mod2 = RI.point(-a3) / r
            im2 = mod2 - re.sqr()
            if im2.lo <= 0:
                b *= 2
                continue
            box = CBox(re, ri_sqrt(im2, b))
            if self._cbox is not None:
                box = box.intersect(self._cbox)
            self._cbox = box
            if box.width <= Fraction(1, 1 << bits):
                return box
            b *= 2
        raise PrecisionExhausted("complex root refinement did not converge")

    # -- elements -------------------------------------------------------------

    def element(self, c0, c1=0, c2=0) -> "FieldElement":
        return FieldElement(self, Fraction(c0), Fraction(c1), Fraction(c2))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def gen(self) -> "FieldElement":
        return self.element(0, 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicField) and self.min_poly == other.min_poly

    def __hash__(self) -> int:
        return hash(self.min_poly)

    def __repr__(self) -> str:
        return f"CubicField{self.min_poly}"


_FIELD_TOKEN = object()


def make_field(coeffs: Sequence[int]) -> CubicField:
    """Validated field constructor from (1, a1, a2, a3)."""
    if len(coeffs) != 4:
        raise ValueError("expected four coefficients")
    a0, a1, a2, a3 = (int(c) for c in coeffs)
    if (a0, a1, a2, a3) != tuple(coeffs):
        raise ValueError("coefficients must be integers")
    if a0 != 1:
        raise NonMonic(f"leading coefficient {a0} != 1")
    if has_rational_root((a0, a1, a2, a3)):
        raise ReduciblePolynomial(f"X^3 + {a1}X^2 + {a2}X + {a3} has a rational root")
    disc = cubic_discriminant(a0, a1, a2, a3)
    if disc > 0:
        raise TotallyReal(f"discriminant {disc} > 0: three real roots")
    # disc == 0 implies a repeated (hence rational) root, caught above
    return CubicField((a0, a1, a2, a3), disc, _token=_FIELD_TOKEN)


@dataclass(frozen=True, slots=True)
class FieldElement:
    """c0 + c1*g + c2*g^2 with exact rational coordinates."""

    field: CubicField
    c0: Fraction
    c1: Fraction
    c2: Fraction

    # -- structure ------------------------------------------------------------

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0

    def is_rational(self) -> bool:
        return self.c1 == 0 and self.c2 == 0

    def is_integral(self) -> bool:
        """True when the monic minimal polynomial has integer coefficients."""
        return all(c.denominator == 1 for c in self.charpoly())

    def __repr__(self) -> str:
        return f"FieldElement({self.c0}, {self.c1}, {self.c2})"

    # -- ring operations --------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field.element(Fraction(other))

    def __add__(self, other) -> "FieldElement":
        o = self._coerce(other)
        return FieldElement(self.field, self.c0 + o.c0, self.c1 + o.c1,
                            self.c2 + o.c2)

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, -self.c0, -self.c1, -self.c2)

    def __sub__(self, other) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return FieldElement(self.field, self.c0 * f, self.c1 * f, self.c2 * f)
        o = self._coerce(other)
        _, a1, a2, a3 = self.field.min_poly
        c0, c1, c2 = self.coords
        d0, d1, d2 = o.coords
        p0 = c0 * d0
        p1 = c0 * d1 + c1 * d0
        p2 = c0 * d2 + c1 * d1 + c2 * d0
        p3 = c1 * d2 + c2 * d1
        p4 = c2 * d2
        # reduce g^3 = -a1 g^2 - a2 g - a3 and g^4 accordingly
        e0 = p0 - a3 * p3 + a1 * a3 * p4
        e1 = p1 - a2 * p3 + (a1 * a2 - a3) * p4
        e2 = p2 - a1 * p3 + (a1 * a1 - a2) * p4
        return FieldElement(self.field, e0, e1, e2)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.field.element(1 / self.c0)
        s1, s2, s3 = self._charpoly_sym()
        # x^3 - s1 x^2 + s2 x - s3 = 0  =>  x^-1 = (x^2 - s1 x + s2) / s3
        sq = self * self
        return (sq - self * s1 + s2) * (1 / s3)

    def __truediv__(self, other) -> "FieldElement":
        o = self._coerce(other)
        if o.is_zero():
            raise DivisionByZero("division by zero element")
        return self * o.inverse()

    def __rtruediv__(self, other) -> "FieldElement":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c0 == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    # -- invariants of the multiplication action ---------------------------------

    def _mult_matrix(self) -> list[list[Fraction]]:
        _, a1, a2, a3 = self.field.min_poly
        c0, c1, c2 = self.coords
        return [
            [c0, -a3 * c2, -a3 * c1 + a1 * a3 * c2],
            [c1, c0 - a2 * c2, -a2 * c1 + (a1 * a2 - a3) * c2],
            [c2, c1 - a1 * c2, c0 - a1 * c1 + (a1 * a1 - a2) * c2],
        ]

    def trace(self) -> Fraction:
        _, a1, a2, _ = self.field.min_poly
        return 3 * self.c0 - a1 * self.c1 + (a1 * a1 - 2 * a2) * self.c2

    def norm(self) -> Fraction:
        m = self._mult_matrix()
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def _charpoly_sym(self) -> tuple[Fraction, Fraction, Fraction]:
        """(s1, s2, s3): trace, second symmetric function, norm."""
        m = self._mult_matrix()
        s1 = m[0][0] + m[1][1] + m[2][2]
        s2 = (m[0][0] * m[1][1] - m[0][1] * m[1][0]
              + m[0][0] * m[2][2] - m[0][2] * m[2][0]
              + m[1][1] * m[2][2] - m[1][2] * m[2][1])
        return s1, s2, self.norm()

    def charpoly(self) -> tuple[Fraction, Fraction, Fraction]:
        """(p, q, r) with X^3 + pX^2 + qX + r killing the element."""
        s1, s2, s3 = self._charpoly_sym()
        return (-s1, s2, -s3)

    def minimal_polynomial(self) -> tuple[Fraction, ...]:
        """Monic minimal polynomial coefficients, degree 1 or 3."""
        if self.is_rational():
            return (Fraction(1), -self.c0)
        p, q, r = self.charpoly()
        return (Fraction(1), p, q, r)

    # -- certified embeddings ------------------------------------------------------

    def embed(self, precision=DEFAULT_PRECISION) -> tuple[RI, CBox]:
        """Enclosures of the real and the positive-imaginary complex image."""
        target = Fraction(precision)
        bits = bits_for_width(target)
        while True:
            r = self.field.real_root(bits)
            b = self.field.complex_root(bits)
            real = (RI.point(self.c2) * r + self.c1) * r + self.c0
            cplx = (CBox.point(self.c2) * b + self.c1) * b + self.c0
            if real.width <= target and cplx.width <= target:
                return real, cplx
            bits *= 2
            if bits > MAX_REFINE_BITS:
                raise PrecisionExhausted("embedding refinement stalled")

    def real_embedding(self, precision=DEFAULT_PRECISION) -> RI:
        return self.embed(precision)[0]

    def signed_real(self) -> int:
        """Exact sign of the real embedding of a nonzero element."""
        if self.is_zero():
            raise ZeroElement("sign of zero")
        if self.is_rational():
            return 1 if self.c0 > 0 else -1
        bits = 32
        while True:
            real, _ = self.embed(Fraction(1, 1 << bits))
            if real.sign_definite():
                return 1 if real.is_positive() else -1
            bits *= 2
            if bits > MAX_REFINE_BITS:
                raise PrecisionExhausted("sign determination stalled")


def arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Named arithmetic entry point: op in {'add','sub','mul','div'}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def norm(x: FieldElement) -> Fraction:
    return x.norm()


def trace(x: FieldElement) -> Fraction:
    return x.trace()


def embed(x: FieldElement, precision=DEFAULT_PRECISION) -> tuple[RI, CBox]:
    return x.embed(precision)


def house(x: FieldElement, precision=DEFAULT_PRECISION) -> RI:
    """Enclosure of the maximum absolute value of the three conjugates."""
    if x.is_zero():
        raise ZeroElement("house of zero")
    target = Fraction(precision)
    bits = bits_for_width(target)
    while True:
        real, cplx = x.embed(Fraction(1, 1 << bits))
        result = abs(real).max_with(cplx.abs(bits))
        if result.width <= target:
            return result
        bits *= 2
        if bits > MAX_REFINE_BITS:
            raise PrecisionExhausted("house refinement stalled")


# -- splitting field -----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SplitElement:
    """u + v*y where y is a second root of the defining cubic, u, v in K."""

    alg: "SplittingAlgebra"
    u: FieldElement
    v: FieldElement

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def __add__(self, other: "SplitElement") -> "SplitElement":
        return SplitElement(self.alg, self.u + other.u, self.v + other.v)

    def __neg__(self) -> "SplitElement":
        return SplitElement(self.alg, -self.u, -self.v)

    def __sub__(self, other: "SplitElement") -> "SplitElement":
        return self + (-other)

    def __mul__(self, other: "SplitElement") -> "SplitElement":
        s1, s2 = self.alg.s1, self.alg.s2
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        cross = v1 * v2
        return SplitElement(self.alg,
                            u1 * u2 - cross * s2,
                            u1 * v2 + u2 * v1 - cross * s1)

    def __pow__(self, n: int) -> "SplitElement":
        if n < 0:
            return self.alg.inverse(self) ** (-n)
        result = self.alg.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, SplitElement) and self.u == other.u
                and self.v == other.v)

    def __hash__(self) -> int:
        return hash((self.u, self.v))

    def coords6(self) -> tuple[Fraction, ...]:
        return self.u.coords + self.v.coords


class SplittingAlgebra:
    """Degree-6 splitting field of the defining cubic, as K[y]/(q).

    With f(X) = (X - g) * (X^2 + s1 X + s2) over K, the quotient by
    q(y) = y^2 + s1 y + s2 is the Galois closure; y plays the role of the
    complex root g' and -a1 - g - y the role of its conjugate.
    """

    def __init__(self, field: CubicField):
        self.field = field
        _, a1, a2, _ = field.min_poly
        g = field.gen()
        self.s1 = g + a1
        self.s2 = g * g + g * a1 + a2

    def one(self) -> SplitElement:
        return SplitElement(self, self.field.one(), self.field.zero())

    def from_k(self, x: FieldElement) -> SplitElement:
        return SplitElement(self, x, self.field.zero())

    def second_root(self) -> SplitElement:
        return SplitElement(self, self.field.zero(), self.field.one())

    def third_root(self) -> SplitElement:
        _, a1, _, _ = self.field.min_poly
        return SplitElement(self, -self.field.gen() - a1, -self.field.one())

    def sigma(self, x: FieldElement) -> SplitElement:
        """Image of x in K under g -> g' (exact, inside the closure)."""
        c0, c1, c2 = x.coords
        # c2*y^2 reduces via y^2 = -s1 y - s2
        u = self.field.element(c0) - self.s2 * c2
        v = self.field.element(c1) - self.s1 * c2
        return SplitElement(self, u, v)

    def tau(self, z: SplitElement) -> SplitElement:
        """Automorphism swapping the two complex roots (complex conjugation)."""
        _, a1, _, _ = self.field.min_poly
        # y -> -a1 - g - y
        u = z.u + z.v * (-self.field.gen() - a1)
        return SplitElement(self, u, -z.v)

    def sigma_bar(self, x: FieldElement) -> SplitElement:
        return self.tau(self.sigma(x))

    def is_real_value(self, z: SplitElement) -> bool:
        """Exact test: is the complex value of z under (g, g') real?"""
        return z == self.tau(z)

    def min_poly(self, z: SplitElement) -> tuple[Fraction, ...]:
        """Monic minimal polynomial of z over Q (degree dividing 6)."""
        powers = [self.one().coords6()]
        cur = self.one()
        for _ in range(6):
            cur = cur * z
            powers.append(cur.coords6())
        for d in range(1, 7):
            sol = _solve_exact([list(p) for p in powers[:d]], list(powers[d]))
            if sol is not None:
                return (Fraction(1),) + tuple(-sol[i] for i in reversed(range(d)))
        raise RuntimeError("element of degree > 6 in a degree-6 algebra")

    def inverse(self, z: SplitElement) -> SplitElement:
        if z.is_zero():
            raise DivisionByZero("inverse of zero")
        mp = self.min_poly(z)
        d = len(mp) - 1
        c_last = mp[-1]
        # z * (z^{d-1} + c1 z^{d-2} + ... + c_{d-1}) = -c_d
        acc = self.from_k(self.field.zero())
        for c in mp[:-1]:
            acc = acc * z + self.from_k(self.field.element(c))
        return acc * self.from_k(self.field.element(-1 / c_last))

    def embeddings(self, z: SplitElement, bits: int) -> list[CBox]:
        """The six complex values of z, as certified boxes."""
        r = self.field.real_root(bits)
        c = self.field.complex_root(bits)
        _, a1, _, _ = self.field.min_poly
        g1 = CBox.from_real(r)
        g2, g3 = c, c.conj()
        out = []
        for gi, gj in ((g1, g2), (g1, g3), (g2, g1), (g2, g3), (g3, g1), (g3, g2)):
            def val(el: FieldElement) -> CBox:
                return (CBox.point(el.c2) * gi + el.c1) * gi + el.c0
            out.append(val(z.u) + val(z.v) * gj)
        return out


def _solve_exact(cols: list[list[Fraction]], rhs: list[Fraction]):
    """Solve sum_i x_i * cols[i] = rhs exactly; None if inconsistent."""
    n = len(rhs)
    k = len(cols)
    aug = [[cols[j][i] for j in range(k)] + [rhs[i]] for i in range(n)]
    piv_rows = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [a * inv for a in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        piv_rows.append(col)
        row += 1
    # consistency: zero rows must have zero rhs
    for r in range(row, n):
        if aug[r][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for r, col in enumerate(piv_rows):
        sol[col] = aug[r][k]
    return sol
