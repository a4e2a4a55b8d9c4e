"""Cubic field arithmetic: validation, exactness, certified embeddings."""

import random
from fractions import Fraction

import mpmath
import pytest

from cubicthue.cubicfield import (
    FieldElement,
    SplittingAlgebra,
    arith,
    embed,
    house,
    make_field,
    norm,
    trace,
)
from cubicthue.errors import (
    DivisionByZero,
    NonMonic,
    ReduciblePolynomial,
    TotallyReal,
    ZeroElement,
)

P12 = Fraction(1, 10**12)
P30 = Fraction(1, 10**30)


def bisection_oracle(coeffs, lo, hi, steps=80):
    """Independent sign-change bisection on exact rationals."""
    def f(t):
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * t + c
        return acc

    lo, hi = Fraction(lo), Fraction(hi)
    assert f(lo) < 0 < f(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


# -- make_field ---------------------------------------------------------------


def test_make_field_example_parameter():
    field = make_field([1, 3, 3, -1])
    root = field.real_root(40)
    assert root.contains(Fraction(2599, 10000)) or abs(
        float(root.mid) - 0.2599) < 1e-3


def test_make_field_cbrt2_root_isolation():
    field = make_field([1, 0, 0, -2])
    lo, hi = bisection_oracle([1, 0, 0, -2], 1, 2)
    root = field.real_root(120)
    assert lo <= root.hi and root.lo <= hi
    assert Fraction(125, 100) < root.mid < Fraction(126, 100)


def test_make_field_rejects_totally_real():
    with pytest.raises(TotallyReal):
        make_field([1, 0, -3, 1])


def test_make_field_rejects_rational_root():
    with pytest.raises(ReduciblePolynomial):
        make_field([1, 0, 0, -8])  # X^3 - 8 = (X-2)(...)


def test_make_field_rejects_nonmonic():
    with pytest.raises(NonMonic):
        make_field([2, 0, 0, -3])


# -- arithmetic -----------------------------------------------------------------


def test_mul_inverse_is_one():
    field = make_field([1, 0, 0, -2])
    x = field.element(Fraction(3, 4), 2, Fraction(-1, 5))
    assert arith(x, x.inverse(), "mul") == field.one()


def test_defining_relation():
    field = make_field([1, 0, 0, -2])
    g = field.gen()
    assert g * (g * g) == field.element(2)


def test_ring_identity():
    field = make_field([1, 3, 3, -1])
    g = field.gen()
    lhs = (1 + g) * (1 - g)
    assert lhs == 1 - g * g


def test_division_by_zero():
    field = make_field([1, 0, 0, -2])
    with pytest.raises(DivisionByZero):
        arith(field.one(), field.zero(), "div")


def test_exactness_add_sub_roundtrip():
    field = make_field([1, 3, 3, -1])
    rng = random.Random(11)
    for _ in range(200):
        x = field.element(*(Fraction(rng.randint(-999, 999), rng.randint(1, 99))
                            for _ in range(3)))
        y = field.element(*(Fraction(rng.randint(-999, 999), rng.randint(1, 99))
                            for _ in range(3)))
        assert (x + y) - y == x
        if not y.is_zero():
            assert (x * y) / y == x


# -- norm / trace ----------------------------------------------------------------


def test_unit_norm_is_one(fam1):
    assert norm(fam1.epsilon) == 1


def test_trace_epsilon_d2(fam2):
    # oracle: e1 of X^3 - 3 D^2 X^2 - 3 D X - 1 is 3 D^2 = 12
    assert trace(fam2.epsilon) == 12


def test_trace_of_rational():
    field = make_field([1, 0, 0, -2])
    assert trace(field.one()) == 3
    assert norm(field.element(5)) == 125


def test_norm_trace_match_embeddings():
    rng = random.Random(5)
    fields = [make_field([1, 3, 3, -1]), make_field([1, 0, 0, -2]),
              make_field([1, -12, -6, -1])]
    for _ in range(1000):
        field = fields[rng.randrange(3)]
        x = field.element(*(rng.randint(-100, 100) for _ in range(3)))
        if x.is_zero():
            continue
        real, cplx = embed(x, P30)
        prod = real * cplx.abs2()
        total = real + 2 * cplx.re
        assert prod.contains(norm(x))
        assert total.contains(trace(x))


# -- embeddings -------------------------------------------------------------------


def test_embed_epsilon_d1(fam1):
    # oracle: 50-digit root of X^3 - 3X^2 - 3X - 1 via mpmath
    with mpmath.workdps(50):
        target = mpmath.polyroots([1, -3, -3, -1])[0]
        real, _ = embed(fam1.epsilon, P12)
        assert float(real.lo) <= float(target) <= float(real.hi)
    assert real.width <= P12
    assert str(float(real.mid)).startswith("3.8473221018630")


def test_embed_conjugate_modulus_relation(fam1):
    real, cplx = embed(fam1.epsilon, P30)
    from cubicthue.intervals import ri_sqrt

    lhs = cplx.abs(140)
    rhs = ri_sqrt(real, 140).recip()
    assert lhs.overlaps(rhs)
    assert lhs.width + rhs.width < Fraction(1, 10**25)


def test_embed_rational_is_exact():
    field = make_field([1, 3, 3, -1])
    real, cplx = embed(field.one(), Fraction(1, 10))
    assert real == __import__("cubicthue").intervals.RI.point(1)
    assert cplx.re.width == 0 and cplx.im.width == 0


def test_embed_monotone_refinement(fam1):
    x = fam1.epsilon * fam1.epsilon - 3
    coarse_r, coarse_c = embed(x, Fraction(1, 10**10))
    fine_r, fine_c = embed(x, Fraction(1, 10**20))
    assert coarse_r.lo <= fine_r.lo and fine_r.hi <= coarse_r.hi
    assert coarse_c.re.lo <= fine_c.re.lo and fine_c.re.hi <= coarse_c.re.hi
    assert coarse_c.im.lo <= fine_c.im.lo and fine_c.im.hi <= coarse_c.im.hi


# -- house -------------------------------------------------------------------------


def test_house_epsilon_d1(fam1):
    h = house(fam1.epsilon, P12)
    assert str(float(h.mid)).startswith("3.84732210")


def test_house_one(fam1):
    h = house(fam1.field.one(), Fraction(1, 10**6))
    assert h.lo == 1 and h.hi == 1


def test_house_cbrt2():
    field = make_field([1, 0, 0, -2])
    h = house(field.gen(), P12)
    cube = h.pow_int(3)
    assert cube.contains(2)


def test_house_zero_rejected():
    field = make_field([1, 0, 0, -2])
    with pytest.raises(ZeroElement):
        house(field.zero(), P12)


# -- minimal polynomial / integrality ------------------------------------------------


def test_minimal_polynomial_of_generator():
    field = make_field([1, -12, -6, -1])
    assert field.gen().minimal_polynomial() == (1, -12, -6, -1)


def test_minimal_polynomial_rational():
    field = make_field([1, 0, 0, -2])
    assert field.element(Fraction(7, 3)).minimal_polynomial() == (1, Fraction(-7, 3))


def test_integrality():
    field = make_field([1, 0, 0, -2])
    assert field.gen().is_integral()
    assert not field.element(Fraction(1, 2)).is_integral()


# -- splitting algebra -----------------------------------------------------------


def test_splitting_sigma_preserves_minpoly(fam1):
    alg = SplittingAlgebra(fam1.field)
    z = alg.sigma(fam1.epsilon)
    assert alg.min_poly(z) == (1, -3, -3, -1)


def test_splitting_inverse(fam1):
    alg = SplittingAlgebra(fam1.field)
    z = alg.sigma(fam1.epsilon) + alg.from_k(fam1.field.element(2))
    assert z * alg.inverse(z) == alg.one()


def test_splitting_embeddings_consistent(fam1):
    # the six embedding values must multiply to the minimal polynomial norm
    alg = SplittingAlgebra(fam1.field)
    z = alg.sigma(fam1.epsilon) - alg.from_k(fam1.field.element(1))
    mp_coeffs = alg.min_poly(z)
    prod = None
    for box in alg.embeddings(z, 120):
        prod = box if prod is None else prod * box
    # product over all 6 values = (constant term) ^ (6/deg) up to sign
    deg = len(mp_coeffs) - 1
    expected = (Fraction(mp_coeffs[-1]) ** (6 // deg)) * (-1) ** 6
    assert prod.re.contains(expected)
    assert prod.im.contains_zero()


def test_splitting_real_value_detection(fam1):
    alg = SplittingAlgebra(fam1.field)
    g = fam1.field.gen()
    # g' + g'' ( = trace - g ) is a real value; g' alone is not
    real_combo = alg.sigma(g) + alg.tau(alg.sigma(g))
    assert alg.is_real_value(real_combo)
    assert not alg.is_real_value(alg.sigma(g))
