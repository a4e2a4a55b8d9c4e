"""Numerical replay of the unit-equation argument for a concrete solution.

Eliminating x and y from the three conjugate linear forms of a solution
produces a vanishing sum T1 + T2 + T3 = 0 of three purely imaginary
quantities.  Each term is evaluated twice, independently: once as a product
of conjugate enclosures and once in polar form through certified angles and
sines.  The trace records which two terms dominate, the chain of elementary
inequalities with the constant each row would need to be tight, and, in the
case where T2 and T3 dominate, the associated linear form in logarithms
together with its integer period count h.

All case decisions run on certified intervals with automatic precision
escalation; a decision that cannot be made at the configured cap raises
instead of guessing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cubicfield import (
    DEFAULT_PRECISION,
    FieldElement,
    SplitElement,
    SplittingAlgebra,
)
from .errors import (
    AmbiguousOrdering,
    InvalidParameter,
    NotThirdCase,
    PrecisionExhausted,
)
from .family import FormFamily, form_at
from .heights import HeightReport, _to_int_primitive, height_from_conjugates
from .reduction import Decomposition, decompose_solution
from .intervals import (
    CBox,
    RI,
    bits_for_width,
    ri_exp,
    ri_log,
    ri_pi,
    ri_sin,
    ri_sqrt,
)
from .reporting import cbox_json, frac_str, ri_json

CASE_T1T2 = "T1T2_dominant"
CASE_T1T3 = "T1T3_dominant"
CASE_T2T3 = "T2T3_dominant"

_MAX_BITS = 1 << 14


@dataclass(frozen=True, slots=True)
class TraceCheck:
    check_id: str
    holds: bool
    margin: RI | None = None
    note: str = ""


@dataclass(frozen=True, slots=True)
class LedgerRow:
    """One inequality of the elementary-estimates chain, as a report.

    `empirical_constant` is the value that would make the row tight; the
    chain's constants are existence-only, so rows report rather than assert
    unless `holds` is a genuine two-sided comparison."""

    row_id: str
    description: str
    lhs: RI | None
    rhs_structure: str
    holds: bool | None
    margin: RI | None = None
    empirical_constant: RI | None = None
    note: str = ""


@dataclass(frozen=True, slots=True)
class SiegelTrace:
    n: int
    ell: int
    t1: CBox
    t2: CBox
    t3: CBox
    sine_ims: tuple[RI, RI, RI]
    abs_terms: tuple[RI, RI, RI]
    theta: RI
    delta: RI
    v: RI
    case: str
    ledger: tuple[TraceCheck, ...]
    degenerate_sines: tuple[str, ...]
    precision_bits: int

    @property
    def terms(self) -> tuple[CBox, CBox, CBox]:
        return (self.t1, self.t2, self.t3)


@dataclass(frozen=True, slots=True)
class LambdaData:
    rho_n: CBox
    mu_n: CBox
    lambda1: CBox
    lambda2: CBox
    Lambda: CBox
    h: int
    nu: RI
    theta_n: RI
    mu_height: HeightReport
    checks: tuple[TraceCheck, ...]
    rows: tuple[LedgerRow, ...]


# -- angle helpers -----------------------------------------------------------------


def _angle_mod_2pi(box: CBox, bits: int) -> RI | None:
    """Enclosure of the argument with representative in [0, 2pi).

    None when the box straddles the negative real axis (caller refines)."""
    if box.im.is_positive():
        return box.arg(bits)
    if box.im.is_negative():
        return box.arg(bits) + 2 * ri_pi(bits)
    if box.re.is_positive():
        # angle near 0: a slightly negative lower endpoint may remain
        return box.arg(bits)
    return None


def _angle_of_element_image(x: FieldElement, box: CBox, bits: int) -> RI | None:
    """Angle of the complex image of x, exact for rational x."""
    if x.is_rational():
        return RI.point(0) if x.c0 > 0 else ri_pi(bits)
    return _angle_mod_2pi(box, bits)


def family_angles(fam: FormFamily,
                  precision=DEFAULT_PRECISION) -> tuple[RI, RI]:
    """(delta, theta): angles of the complex images of alpha and epsilon."""
    target = Fraction(precision)
    bits = bits_for_width(target)
    while True:
        width = Fraction(1, 1 << bits)
        _, abox = fam.alpha.embed(width)
        _, ebox = fam.epsilon.embed(width)
        delta = _angle_of_element_image(fam.alpha, abox, bits)
        theta = _angle_of_element_image(fam.epsilon, ebox, bits)
        if (delta is not None and theta is not None
                and delta.width <= target and theta.width <= target):
            return delta, theta
        bits *= 2
        if bits > _MAX_BITS:
            raise PrecisionExhausted("family angles did not certify")


# -- ordering ---------------------------------------------------------------------


def order_terms(a1: RI, a2: RI, a3: RI) -> tuple[str, RI] | None:
    """Classify which pair of |T| values dominates.

    Returns (case, domination margin 2|b| - |a|) or None when the smallest
    term cannot be strictly separated at the current enclosure width."""
    mags = (a1, a2, a3)
    smallest = None
    for i in range(3):
        if all(mags[i].certainly_lt(mags[j]) for j in range(3) if j != i):
            smallest = i
            break
    if smallest is None:
        return None
    case = (CASE_T2T3, CASE_T1T3, CASE_T1T2)[smallest]
    dom = [mags[j] for j in range(3) if j != smallest]
    margin = 2 * dom[0].min_with(dom[1]) - dom[0].max_with(dom[1])
    return case, margin


def classify_case(trace: SiegelTrace) -> tuple[str, TraceCheck]:
    """Re-derive the dominant pair from the stored term enclosures."""
    result = order_terms(*trace.abs_terms)
    if result is None:
        raise AmbiguousOrdering("stored term enclosures overlap")
    case, margin = result
    check = TraceCheck("domination", margin.hi >= 0, margin,
                       "2|b| - |a| for the two dominant terms")
    return case, check


# -- the trace proper -----------------------------------------------------------


def _term_boxes(fam: FormFamily, n: int, dec: Decomposition,
                bits: int) -> dict:
    """All interval quantities of the trace at one working precision."""
    width = Fraction(1, 1 << bits)
    eps_r, eps_c = fam.epsilon.embed(width)
    alpha_r, alpha_c = fam.alpha.embed(width)
    xi_r, xi_c = dec.xi.embed(width)
    ell = dec.ell

    z_beta = alpha_c * eps_c.pow_int(n)          # complex image of the form root
    gamma_r = eps_r.pow_int(ell) * xi_r          # real image of epsilon^ell xi
    w2 = eps_c.pow_int(ell) * xi_c               # complex image of the same
    t1 = CBox.from_real(gamma_r) * (z_beta - z_beta.conj())
    t2 = CBox.from_real(alpha_r * eps_r.pow_int(n)) * (w2.conj() - w2)
    w3 = w2 * z_beta.conj()
    t3 = w3 - w3.conj()

    sqeps = ri_sqrt(eps_r, bits)

    def half_power(two_j: int) -> RI:
        return sqeps.pow_int(two_j)

    theta = _angle_mod_2pi(eps_c, bits)
    delta = _angle_of_element_image(fam.alpha, alpha_c, bits)
    v = _angle_of_element_image(dec.xi, xi_c, bits)
    if theta is None or delta is None or v is None:
        return {"retry": True}
    abs_ac = alpha_c.abs(bits)
    abs_xc = xi_c.abs(bits)
    s1 = ri_sin(delta + n * theta, bits)
    s2 = ri_sin(v + ell * theta, bits)
    s3 = ri_sin(v - delta + (ell - n) * theta, bits)
    sine1 = 2 * xi_r * abs_ac * half_power(2 * ell - n) * s1
    sine2 = -2 * abs_xc * alpha_r * half_power(2 * n - ell) * s2
    sine3 = 2 * abs_xc * abs_ac * half_power(-(n + ell)) * s3
    return {
        "retry": False,
        "t": (t1, t2, t3),
        "sines": (sine1, sine2, sine3),
        "angles": (theta, delta, v),
        "eps_r": eps_r, "eps_c": eps_c,
        "alpha_r": alpha_r, "alpha_c": alpha_c,
        "xi_r": xi_r, "xi_c": xi_c,
    }


def _exact_zero_terms(fam: FormFamily, n: int,
                      dec: Decomposition) -> tuple[str, ...]:
    """Exact detection of identically-vanishing terms (degenerate sines)."""
    flags = []
    beta = fam.beta(n)
    gamma = (fam.epsilon ** dec.ell) * dec.xi
    if beta.is_rational():
        flags.append("T1")  # sin(delta + n*theta) in Z*pi
    if gamma.is_rational():
        flags.append("T2")  # sin(v + ell*theta) in Z*pi
    alg = SplittingAlgebra(fam.field)
    w3 = alg.sigma(gamma) * alg.sigma_bar(beta)
    if alg.is_real_value(w3):
        flags.append("T3")  # sin(v - delta + (ell-n)*theta) in Z*pi
    return tuple(flags)


def siegel_terms(fam: FormFamily, n: int, dec: Decomposition,
                 precision=DEFAULT_PRECISION) -> SiegelTrace:
    """Certified trace of the vanishing three-term identity for a solution."""
    target = Fraction(precision)
    degenerate = _exact_zero_terms(fam, n, dec)
    bits = bits_for_width(target)
    ordering = None
    while True:
        data = _term_boxes(fam, n, dec, bits)
        if not data["retry"]:
            terms = list(data["t"])
            for i, name in enumerate(("T1", "T2", "T3")):
                if name in degenerate:
                    terms[i] = CBox.point(0)
            re_ok = all(t.re.contains_zero() and t.re.width <= target
                        for t in terms)
            abs_terms = tuple(t.abs(bits) for t in terms)
            ordering = order_terms(*abs_terms)
            if re_ok and ordering is not None:
                break
        bits *= 2
        if bits > _MAX_BITS:
            if not data["retry"] and ordering is None:
                raise AmbiguousOrdering(
                    "term magnitudes overlap at maximum precision")
            raise PrecisionExhausted("trace could not be certified")
    t1, t2, t3 = terms
    sines = data["sines"]
    theta, delta, v = data["angles"]
    case, dom_margin = ordering

    checks = []
    for name, t in zip(("T1", "T2", "T3"), terms):
        checks.append(TraceCheck(
            f"re_zero_{name}", t.re.contains_zero() and t.re.width <= target,
            RI.point(t.re.width), "real part encloses 0 within tolerance"))
    total = t1 + t2 + t3
    checks.append(TraceCheck("sum_zero", total.contains_zero(),
                             RI.point(total.width),
                             "T1 + T2 + T3 encloses 0"))
    for name, t, s in zip(("T1", "T2", "T3"), terms, sines):
        overlap = t.im.overlaps(s) and t.re.contains_zero()
        gap = max(Fraction(0), t.im.lo - s.hi, s.lo - t.im.hi)
        checks.append(TraceCheck(
            f"dual_form_{name}", overlap, RI.point(gap),
            "product-form and sine-form enclosures agree"))
    checks.append(TraceCheck("domination", dom_margin.hi >= 0, dom_margin,
                             "largest term at most twice the second"))
    return SiegelTrace(n, dec.ell, t1, t2, t3, tuple(sines), abs_terms,
                       theta, delta, v, case, tuple(checks), degenerate, bits)


# -- elementary-estimates ledger ---------------------------------------------------


def inequality_ledger(fam: FormFamily, n: int, x: int, y: int, k: int,
                      dec: Decomposition, trace: SiegelTrace,
                      precision=DEFAULT_PRECISION) -> list[LedgerRow]:
    """Evaluate the chain of elementary inequalities, reporting tight constants."""
    if k < 2:
        raise InvalidParameter("the estimates assume k >= 2")
    bits = max(trace.precision_bits, bits_for_width(Fraction(precision)))
    width = Fraction(1, 1 << bits)
    eps_r, eps_c = fam.epsilon.embed(width)
    alpha_r, alpha_c = fam.alpha.embed(width)
    xi_r, xi_c = dec.xi.embed(width)
    ell = dec.ell
    sqeps = ri_sqrt(eps_r, bits)

    def half_power(two_j: int) -> RI:
        return sqeps.pow_int(two_j)

    abs_alpha = abs(alpha_r)
    abs_alpha_c = alpha_c.abs(bits)
    abs_xi = abs(xi_r)
    abs_xi_c = xi_c.abs(bits)
    log_k = ri_log(RI.point(k), bits)
    house = abs_xi.max_with(abs_xi_c)
    kappa9 = ri_log(house.max_with(abs_xi.recip()).max_with(abs_xi_c.recip()),
                    bits) / log_k
    k_pow_kappa9 = ri_exp(kappa9 * log_k, bits)

    rows: list[LedgerRow] = []
    if n < 0:
        rows.append(LedgerRow(
            "swap", "negative index: swap reduction applies", None,
            "solutions at -n map to the variable-swapped problem at |n|",
            None, note="rows below evaluate the literal quantities at n < 0"))

    # (8): eps^n |alpha| >= 2 |eps'^n alpha'|
    lhs8 = eps_r.pow_int(n) * abs_alpha
    rhs8 = 2 * abs_alpha_c * half_power(-n)
    margin8 = lhs8 - rhs8
    holds8 = True if margin8.lo >= 0 else (False if margin8.hi < 0 else None)
    rows.append(LedgerRow("8", "real root dominates its conjugate", lhs8,
                          "2 |eps'^n alpha'|", holds8, margin8))
    if holds8 is False:
        lhs_alt = half_power(3 * n)
        rhs_alt = 2 * abs_alpha_c / abs_alpha
        rows.append(LedgerRow(
            "8-alt", "dominance fails: eps^(3n/2) < 2|alpha'|/|alpha|",
            lhs_alt, "2 |alpha'| / |alpha|",
            True if (rhs_alt - lhs_alt).lo > 0 else None,
            rhs_alt - lhs_alt,
            note="this branch feeds the n-bound of row 18 directly"))

    # |y| <= 4 |A| / |B| with A the larger of the reduced conjugate pair
    abs_y = RI.point(abs(y))
    big_a = (eps_r.pow_int(ell) * abs_xi).max_with(half_power(-ell) * abs_xi_c)
    big_b = eps_r.pow_int(n) * abs_alpha
    lhs_y = abs_y
    rhs_y = 4 * big_a / big_b
    margin_y = rhs_y - lhs_y
    row_id = "9" if ell <= 0 else "12"
    kappa_y = (abs_y * half_power(2 * n - abs(ell)) / k_pow_kappa9
               if ell <= 0 else abs_y * half_power(2 * (n - ell)) / k_pow_kappa9)
    rows.append(LedgerRow(
        row_id, "|y| against the balanced numerator bound", lhs_y,
        "4 max(eps^l |xi|, eps^(|l|/2) |xi'|) / (eps^n |alpha|)",
        True if margin_y.lo >= 0 else (False if margin_y.hi < 0 else None),
        margin_y, kappa_y,
        note="constant shown makes |y| <= c * eps^(...) * k^kappa9 tight"))

    # index bound: n <= |l|/2 + c log k   (l <= 0)   /   n <= l + c log k  (l > 0)
    if ell <= 0:
        kappa_n = (RI.point(n) - Fraction(abs(ell), 2)) / log_k
        rows.append(LedgerRow("10", "index bound from the first case",
                              RI.point(n), "|l|/2 + c log k", None,
                              empirical_constant=kappa_n))
    else:
        kappa_n = (RI.point(n) - ell) / log_k
        rows.append(LedgerRow("13", "index bound from the second case",
                              RI.point(n), "l + c log k", None,
                              empirical_constant=kappa_n))

    # |x| <= eps^(-n/2) |alpha' y| + c k^kappa9 eps^(±|l|/2)
    abs_x = RI.point(abs(x))
    base_x = half_power(-n) * abs_alpha_c * abs_y
    tail_scale = half_power(abs(ell)) if ell <= 0 else half_power(-ell)
    kappa_x = (abs_x - base_x) / (k_pow_kappa9 * tail_scale)
    rows.append(LedgerRow(
        "11" if ell <= 0 else "14", "|x| recovered from the conjugate relation",
        abs_x, "eps^(-n/2) |alpha' y| + c k^kappa9 eps^(-+l/2)", None,
        empirical_constant=kappa_x))

    if ell > 0:
        small = half_power(-ell) * abs_xi_c
        branch = small.hi < Fraction(1, 2)
        if branch:
            kappa16 = (RI.point(Fraction(3 * n, 2)) - ell) / log_k
            rows.append(LedgerRow(
                "16", "sharpened index bound (small conjugate branch)",
                RI.point(Fraction(3 * n, 2)), "l + c log k", None,
                empirical_constant=kappa16,
                note="|eps'^l xi'| < 1/2 certified"))
        else:
            rows.append(LedgerRow(
                "16", "small-conjugate branch not taken", small,
                "|eps'^l xi'| >= 1/2 leads directly to the length bound",
                None))

    kappa17a = (RI.point(n) - Fraction(2 * abs(ell), 3)) / log_k
    rows.append(LedgerRow("17a", "uniform index bound", RI.point(n),
                          "(2/3)|l| + c log k", None,
                          empirical_constant=kappa17a))
    kappa17b = (RI.point(Fraction(abs(ell), 3)) - abs(ell - n)) / log_k
    rows.append(LedgerRow("17b", "gap bound |l - n| >= |l|/3 - c log k",
                          RI.point(abs(ell - n)), "|l|/3 - c log k", None,
                          empirical_constant=kappa17b))

    log_ell = ri_log(RI.point(max(abs(ell), 2)), bits)
    kappa18 = RI.point(n) / (log_k + log_ell)
    rows.append(LedgerRow("18", "index bound in the remaining case",
                          RI.point(n), "c (log k + log max(|l|, 2))", None,
                          empirical_constant=kappa18))
    return rows


# -- linear form in logarithms -------------------------------------------------------


def _angle01(box: CBox, bits: int, z_sq: SplitElement | None,
             alg: SplittingAlgebra | None) -> RI | None:
    """Argument divided by 2 pi, representative in [0, 1).

    For a box straddling the negative real axis, an exact test on the square
    of the underlying algebraic value settles whether the angle is exactly
    1/2 (a real square together with a negative box means the value is
    purely imaginary, so the ratio conj(z)/z is exactly -1)."""
    if box.im.contains_zero() and box.re.is_negative():
        if z_sq is not None and alg is not None and alg.is_real_value(z_sq):
            return RI.point(Fraction(1, 2))
        return None
    a = _angle_mod_2pi(box, bits)
    if a is None:
        return None
    return a / (2 * ri_pi(bits))


def _unique_integer(x: RI) -> int | None:
    import math as _m

    lo = _m.ceil(x.lo)
    hi = _m.floor(x.hi)
    if lo == hi:
        return lo
    return None


def lambda_machinery(fam: FormFamily, n: int, dec: Decomposition,
                     precision=DEFAULT_PRECISION, k: int | None = None,
                     trace: SiegelTrace | None = None) -> LambdaData:
    """Linear form in logarithms attached to a third-case solution.

    With rho = xi (beta' - beta'bar) and mu = xi' (beta'bar - beta), the
    vanishing identity becomes rho eps^l + mu eps'^l - conj(mu eps'^l) = 0;
    dividing by -mu eps'^l yields e^Lambda - 1 on one side.  The integer h
    makes Lambda - l*lambda1 - lambda2 = 2 i pi h and satisfies |h| <= |l|+2."""
    if trace is not None and trace.case != CASE_T2T3:
        raise NotThirdCase(f"trace case is {trace.case}")
    target = Fraction(precision)
    ell = dec.ell
    beta = fam.beta(n)
    alg = SplittingAlgebra(fam.field)
    mu_split = alg.sigma(dec.xi) * (alg.sigma_bar(beta) - alg.from_k(beta))
    w_split = mu_split * (alg.sigma(fam.epsilon) ** ell)
    # squares decide branch-cut ties exactly: z^2 real and the box on the
    # negative axis together pin conj(z)/z = -1
    mu_sq = None if mu_split.is_zero() else mu_split * mu_split
    w_sq = None if w_split.is_zero() else w_split * w_split

    bits = bits_for_width(target)
    while True:
        width = Fraction(1, 1 << bits)
        eps_r, eps_c = fam.epsilon.embed(width)
        beta_r, beta_c = beta.embed(width)
        xi_r, xi_c = dec.xi.embed(width)
        rho = CBox.from_real(xi_r) * (beta_c - beta_c.conj())
        mu = xi_c * (beta_c.conj() - CBox.from_real(beta_r))
        w = mu * eps_c.pow_int(ell)
        if bits > _MAX_BITS:
            raise PrecisionExhausted("period count h could not be pinned")
        if w.contains_zero():
            bits *= 2
            continue
        q = w.conj() / w
        q1 = eps_c.conj() / eps_c
        nu = _angle01(q1, bits, None, None)
        theta_n = _angle01(mu.conj() / mu, bits, mu_sq, alg)
        lam_arg = _principal_arg(q, bits, w_sq, alg)
        if nu is None or theta_n is None or lam_arg is None:
            bits *= 2
            continue
        two_pi = 2 * ri_pi(bits)
        big_lambda = CBox(ri_log(q.abs2(), bits) / 2, lam_arg)
        h_interval = (big_lambda.im - two_pi * (ell * nu + theta_n)) / two_pi
        h = _unique_integer(h_interval)
        ok_width = (big_lambda.width <= target and nu.width <= target
                    and theta_n.width <= target)
        if h is not None and ok_width:
            break
        bits *= 2

    lambda1 = CBox(RI.point(0), two_pi * nu)
    lambda2 = CBox(RI.point(0), two_pi * theta_n)

    checks = []
    checks.append(TraceCheck("h_bound", abs(h) <= abs(ell) + 2,
                             RI.point(abs(ell) + 2 - abs(h)),
                             "period count within |l| + 2"))
    residual = (rho * CBox.from_real(eps_r.pow_int(ell)) + w - w.conj())
    checks.append(TraceCheck("identity_residual", residual.contains_zero(),
                             RI.point(residual.width),
                             "rho eps^l + mu eps'^l - conj(...) encloses 0"))
    q_minus_1 = q - CBox.point(1)
    abs_q1 = q_minus_1.abs(bits)
    abs_lambda = big_lambda.abs(bits)
    if abs_q1.hi < Fraction(1, 2):
        margin3b = 2 * abs_q1 - abs_lambda
        checks.append(TraceCheck("log_vs_distance", margin3b.hi >= 0, margin3b,
                                 "|Lambda| <= 2 |e^Lambda - 1|"))
    else:
        checks.append(TraceCheck("log_vs_distance", True, None,
                                 "skipped: |e^Lambda - 1| >= 1/2"))

    # quantitative smallness row with its tight constant
    rows = []
    decay = ri_sqrt(eps_r, bits).pow_int(-(n + 3 * abs(ell)))
    if k is not None and k >= 2:
        log_k = ri_log(RI.point(k), bits)
        house = abs(xi_r).max_with(xi_c.abs(bits))
        kappa9 = ri_log(house.max_with(abs(xi_r).recip())
                        .max_with(xi_c.abs(bits).recip()), bits) / log_k
        scale = decay * ri_exp(kappa9 * log_k, bits)
    else:
        scale = decay
    kappa49 = abs_q1 / scale
    rows.append(LedgerRow(
        "20", "smallness of the unit-equation ratio", abs_q1,
        "c * eps^(-(n + 3|l|)/2) * k^kappa9", None,
        empirical_constant=kappa49))

    mp = alg.min_poly(mu_split)
    lead = _to_int_primitive(mp)[0]
    mu_height = height_from_conjugates(lead, alg.embeddings(mu_split, bits),
                                       len(mp) - 1, precision)
    return LambdaData(rho, mu, lambda1, lambda2, big_lambda, h, nu, theta_n,
                      mu_height, tuple(checks), tuple(rows))


def _principal_arg(box: CBox, bits: int, z_sq: SplitElement | None,
                   alg: SplittingAlgebra | None) -> RI | None:
    """Principal argument of the ratio conj(z)/z from an enclosure of it.

    When the enclosure straddles the branch cut, an exact real test on z^2
    settles whether the ratio is exactly -1, in which case the principal
    argument is pi."""
    if not (box.im.contains_zero() and box.re.is_negative()):
        return box.arg(bits)
    if z_sq is not None and alg is not None and alg.is_real_value(z_sq):
        return ri_pi(bits)
    return None


# -- certificates ------------------------------------------------------------------


def _check_json(c: TraceCheck) -> dict:
    out = {"id": c.check_id, "holds": c.holds, "note": c.note}
    if c.margin is not None:
        out["margin"] = ri_json(c.margin, 25)
    return out


def _row_json(r: LedgerRow) -> dict:
    out = {"id": r.row_id, "description": r.description,
           "rhs": r.rhs_structure, "holds": r.holds, "note": r.note}
    if r.lhs is not None:
        out["lhs"] = ri_json(r.lhs, 25)
    if r.margin is not None:
        out["margin"] = ri_json(r.margin, 25)
    if r.empirical_constant is not None:
        out["empirical_constant"] = ri_json(r.empirical_constant, 25)
    return out


def trace_certificate(fam: FormFamily, n: int, x: int, y: int, k: int,
                      precision=DEFAULT_PRECISION) -> dict:
    """Full JSON-serializable audit of one solution."""
    dec, house_report = decompose_solution(fam, n, x, y, k, precision)
    trace = siegel_terms(fam, n, dec, precision)
    rows = inequality_ledger(fam, n, x, y, k, dec, trace, precision)
    value = form_at(fam, n).evaluate(x, y)
    cert = {
        "schema": 1,
        "type": "trace",
        "n": n, "x": x, "y": y, "k": k,
        "value": value,
        "ell": dec.ell,
        "xi1": [frac_str(c) for c in dec.xi.coords],
        "norm_abs": frac_str(dec.norm_abs),
        "balance": ri_json(dec.balance, 25),
        "kappa9_emp": (ri_json(house_report.kappa9_emp, 25)
                       if house_report.kappa9_emp is not None else None),
        "case": trace.case,
        "degenerate_sines": list(trace.degenerate_sines),
        "terms": {
            "T1": cbox_json(trace.t1, 30),
            "T2": cbox_json(trace.t2, 30),
            "T3": cbox_json(trace.t3, 30),
        },
        "angles": {
            "theta": ri_json(trace.theta, 30),
            "delta": ri_json(trace.delta, 30),
            "v": ri_json(trace.v, 30),
        },
        "checks": [_check_json(c) for c in trace.ledger],
        "section2_rows": [_row_json(r) for r in rows],
        "lambda": None,
    }
    if trace.case == CASE_T2T3:
        lam = lambda_machinery(fam, n, dec, precision, k=k, trace=trace)
        cert["lambda"] = {
            "h": lam.h,
            "nu": ri_json(lam.nu, 30),
            "theta_n": ri_json(lam.theta_n, 30),
            "Lambda": cbox_json(lam.Lambda, 30),
            "mu_height": ri_json(lam.mu_height.height, 25),
            "mu_degree": lam.mu_height.degree_used,
            "checks": [_check_json(c) for c in lam.checks],
            "rows": [_row_json(r) for r in lam.rows],
        }
    return cert


def certificate_json(cert: dict) -> str:
    return json.dumps(cert, indent=2)
