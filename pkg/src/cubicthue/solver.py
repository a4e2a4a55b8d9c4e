"""Exhaustive solving of 0 < |F_n(x, y)| <= k over a finite box.

Two independent enumeration paths cover the same box and must agree:

* `solve_box` prunes by the factorization |F| = |x - b y| |x - b' y|^2 with
  b the real root and b' the complex root of the n-th form.  Any solution
  either has x among the nearest integers to b*y, or satisfies
  |x - Re(b') y| <= sqrt(2k) (because |x - b y| >= 1/2 forces the quadratic
  factor below 2k).  Candidate tests use certified dyadic enclosures, so no
  solution can be missed; each surviving candidate is confirmed by exact
  integer evaluation.

* `brute_force_oracle` never looks at the roots' enclosures: for each
  (n, y) it splits the cubic in x into its monotone pieces (the critical
  points come from the exact integer quadratic F'), discards pieces whose
  endpoint values exclude the window [-k, k], and binary-searches the
  window boundaries on the remaining pieces with exact evaluations.  A
  floating root approximation merely seeds the search; correctness rests on
  the exact monotone bracketing alone.  `naive=True` forces the literal
  triple loop for small boxes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath

from .cubicfield import DEFAULT_PRECISION
from .errors import PrecisionExhausted
from .family import BinaryCubicForm, FormFamily, form_at
from .intervals import RI
from .reduction import Decomposition, decompose_solution
from .reporting import frac_str, ri_json


@dataclass(frozen=True, slots=True)
class SearchSpec:
    k: int
    n_lo: int
    n_hi: int
    y_max: int
    exclude_trivial: bool = True
    exclude_degenerate: bool = True

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.n_lo > self.n_hi:
            raise ValueError("empty index range")
        if self.y_max < 1:
            raise ValueError("y_max must be >= 1")

    def indices(self) -> range:
        return range(self.n_lo, self.n_hi + 1)


@dataclass(frozen=True, slots=True)
class SolutionRecord:
    n: int
    x: int
    y: int
    value: int
    primitive: bool
    degenerate: bool = False
    decomposition: Decomposition | None = None
    trace_ref: str | None = None

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.n, self.y, self.x)

    def to_json(self) -> dict:
        out = {"n": self.n, "x": self.x, "y": self.y, "value": self.value,
               "primitive": self.primitive}
        if self.degenerate:
            out["degenerate"] = True
        if self.decomposition is not None:
            out["ell"] = self.decomposition.ell
            out["xi1"] = [frac_str(c) for c in self.decomposition.xi.coords]
            out["balance"] = ri_json(self.decomposition.balance, 20)
        return out


def record_keys(records: list[SolutionRecord]) -> list[tuple[int, int, int, int]]:
    return [(r.n, r.x, r.y, r.value) for r in records]


def x_cap(fam: FormFamily, spec: SearchSpec) -> int:
    """|x| bound closing the box: y_max * ceil(max_n |real root|) + k."""
    top = Fraction(1)
    for n in spec.indices():
        real = abs(fam.beta(n).real_embedding(Fraction(1, 1 << 48)))
        top = max(top, real.hi)
    return spec.y_max * math.ceil(top) + spec.k


def _finish(fam: FormFamily, spec: SearchSpec, found: dict,
            with_decomposition: bool) -> list[SolutionRecord]:
    records = []
    for (n, x, y), (value, degenerate) in found.items():
        dec = None
        if with_decomposition and not degenerate and x != 0 and y != 0:
            dec, _ = decompose_solution(fam, n, x, y,
                                        k=spec.k if spec.k >= 2 else None)
        records.append(SolutionRecord(
            n, x, y, value, math.gcd(abs(x), abs(y)) == 1, degenerate, dec))
    records.sort(key=lambda r: r.key)
    return records


def _collect(found: dict, spec: SearchSpec, cap: int, n: int, x: int, y: int,
             value: int, degenerate: bool) -> None:
    if value == 0 or abs(value) > spec.k or abs(x) > cap:
        return
    if spec.exclude_trivial and x * y == 0:
        return
    found[(n, x, y)] = (value, degenerate)


def _trivial_axis_solutions(found: dict, spec: SearchSpec, cap: int, n: int,
                            form: BinaryCubicForm, degenerate: bool) -> None:
    """Solutions on the axes x = 0 and y = 0, when trivial pairs are kept."""
    if spec.exclude_trivial or spec.k == 0:
        return
    for y in range(-spec.y_max, spec.y_max + 1):
        v = form.evaluate(0, y)
        if v != 0 and abs(v) <= spec.k:
            found[(n, 0, y)] = (v, degenerate)
    x = 1
    while abs(form.evaluate(x, 0)) <= spec.k:
        for s in (x, -x):
            v = form.evaluate(s, 0)
            if v != 0 and abs(v) <= spec.k and abs(s) <= cap:
                found[(n, s, 0)] = (v, degenerate)
        x += 1


def _degenerate_lines(found: dict, spec: SearchSpec, cap: int, n: int,
                      fam: FormFamily, form: BinaryCubicForm) -> None:
    """Enumerate the degenerate index exactly: F = (x - b y)^3 with b in Z."""
    beta = fam.beta(n)
    b = beta.c0
    assert b.denominator == 1, "degenerate root of an integral form is an integer"
    b = int(b)
    tmax = int(round(spec.k ** (1 / 3))) + 1
    while tmax**3 > spec.k:
        tmax -= 1
    for y in range(-spec.y_max, spec.y_max + 1):
        for t in range(-tmax, tmax + 1):
            if t == 0:
                continue
            x = b * y + t
            _collect(found, spec, cap, n, x, y, form.evaluate(x, y), True)


# -- certified pruned enumeration -------------------------------------------------


def _stripe_data(fam: FormFamily, n: int, y_max: int):
    """Dyadic anchors for the pruning tests of one index.

    Returns scaled integer brackets of the real root and of the complex
    root's real part, plus a dyadic lower bound on Im(complex root)^2."""
    shift = 64 + max(48, (2 * y_max).bit_length() + 100)
    width = Fraction(1, 1 << shift)
    beta = fam.beta(n)
    for _ in range(8):
        real, cplx = beta.embed(width)
        if cplx.im.sign_definite():
            break
        width /= 1 << 64
    else:
        raise PrecisionExhausted(f"imaginary part not separated at n={n}")
    scale = 1 << shift
    p_lo = math.floor(real.lo * scale)
    p_hi = math.ceil(real.hi * scale)
    im2 = abs(cplx.im).lo ** 2
    # dyadic lower bound num2 / 2^s2 <= Im^2, with num2 > 0
    s2 = 80
    num2 = math.floor(im2 * (1 << s2))
    while num2 <= 0:
        s2 *= 2
        num2 = math.floor(im2 * (1 << s2))
    r_lo = math.floor(cplx.re.lo * scale)
    r_hi = math.ceil(cplx.re.hi * scale)
    return shift, p_lo, p_hi, num2, s2, r_lo, r_hi


def solve_box(fam: FormFamily, spec: SearchSpec,
              precision=DEFAULT_PRECISION,
              with_decomposition: bool = True) -> list[SolutionRecord]:
    """Pruned exhaustive enumeration; equals the oracle on the same box.

    Any solution has |x - b y| <= k / (y Im b')^2, which prunes to the
    integers nearest b*y, or falls in the band |x - Re(b') y| <= sqrt(2k);
    both tests run in exact scaled-integer arithmetic on certified dyadic
    brackets, so the candidate set provably contains every solution."""
    found: dict = {}
    if spec.k == 0:
        return []
    cap = x_cap(fam, spec)
    zk = math.isqrt(2 * spec.k) + 1
    for n in spec.indices():
        form = form_at(fam, n)
        if fam.is_degenerate_index(n):
            if not spec.exclude_degenerate:
                _degenerate_lines(found, spec, cap, n, fam, form)
                _trivial_axis_solutions(found, spec, cap, n, form, True)
            continue
        try:
            shift, p_lo, p_hi, num2, s2, r_lo, r_hi = _stripe_data(
                fam, n, spec.y_max)
        except PrecisionExhausted:
            _oracle_index(found, fam, spec, cap, n, form)
            continue
        one = 1 << shift
        zone_y2_cap = ((2 * spec.k) << s2) // num2  # zone active iff y^2 <= cap
        evaluate = form.evaluate
        for y in range(-spec.y_max, spec.y_max + 1):
            if y == 0:
                continue
            # integers nearest to (real root) * y, kept only when within the
            # certified radius k / (y Im b')^2 of the enclosure
            t_lo, t_hi = (p_lo * y, p_hi * y) if y > 0 else (p_hi * y, p_lo * y)
            r_scaled = ((spec.k << (shift + s2)) // (y * y * num2)) + 1
            x_first = t_lo // one
            x_last = -((-t_hi) // one)
            for x in range(x_first, x_last + 1):
                d = max(t_lo - x * one, x * one - t_hi, 0)
                if d <= r_scaled:
                    _collect(found, spec, cap, n, x, y, evaluate(x, y), False)
            # wide-linear-factor band around Re(complex root) * y
            if y * y <= zone_y2_cap:
                c_lo, c_hi = (r_lo * y, r_hi * y) if y > 0 else (r_hi * y, r_lo * y)
                z_first = (c_lo - (zk << shift)) // one
                z_last = -((-(c_hi + (zk << shift))) // one)
                for x in range(z_first, z_last + 1):
                    if x_first <= x <= x_last:
                        continue
                    _collect(found, spec, cap, n, x, y, evaluate(x, y), False)
        _trivial_axis_solutions(found, spec, cap, n, form, False)
    return _finish(fam, spec, found, with_decomposition)


# -- oracle -----------------------------------------------------------------------


def _real_root_float(form: BinaryCubicForm):
    """Float seed for the real root of F(t, 1); accuracy is not load-bearing."""
    with mpmath.workdps(60):
        roots = mpmath.polyroots([form.a0, form.a1, form.a2, form.a3],
                                 maxsteps=200, extraprec=120)
        real = [r for r in roots if abs(mpmath.im(r)) < 1e-30]
        return mpmath.mpf(mpmath.re(real[0])) if real else mpmath.mpf(0)


def _window_on_monotone(evaluate, y: int, lo: int, hi: int, k: int,
                        increasing: bool,
                        seed: int | None) -> tuple[int, int] | None:
    """Integer subinterval of [lo, hi] where -k <= F(x, y) <= k.

    F is monotone on the integers of [lo, hi]; exact binary searches find
    the window boundaries.  A seed near the window shrinks the bracket by
    exact galloping first; a bad seed costs time, never correctness."""
    if lo > hi:
        return None
    f_lo, f_hi = evaluate(lo, y), evaluate(hi, y)
    v_min, v_max = (f_lo, f_hi) if increasing else (f_hi, f_lo)
    if v_min > k or v_max < -k:
        return None
    sign = 1 if increasing else -1

    a, b = lo, hi
    if seed is not None and lo <= seed <= hi:
        step = 1
        a = seed
        while a > lo and sign * evaluate(a, y) >= -k:
            a = max(lo, seed - step)
            step <<= 1
        step = 1
        b = seed
        while b < hi and sign * evaluate(b, y) <= k:
            b = min(hi, seed + step)
            step <<= 1

    def first_with(pred):  # smallest x in [a, b] satisfying monotone pred
        u, v = a, b
        while u < v:
            m = (u + v) // 2
            if pred(evaluate(m, y)):
                v = m
            else:
                u = m + 1
        return u

    left = first_with(lambda t: sign * t >= -k)
    right = first_with(lambda t: sign * t > k) - 1 \
        if sign * evaluate(b, y) > k else b
    if left > right or sign * evaluate(left, y) > k:
        return None
    return (left, right)


def _oracle_index(found: dict, fam: FormFamily, spec: SearchSpec, cap: int,
                  n: int, form: BinaryCubicForm) -> None:
    """Monotone-piece exhaustive search for one index; no enclosures used.

    The derivative 3 a0 x^2 + 2 a1 x y + a2 y^2 is an upward parabola, so
    the line splits into increasing / decreasing / increasing at the two
    critical points.  Integer bounds for the pieces come from the exact
    integer square root; the few integers between the outer and inner
    bounds around each critical point are evaluated directly."""
    a0, a1, a2, _ = form.coefficients
    assert a0 > 0, "family forms are monic"
    root_seed = _real_root_float(form)
    disc = a1 * a1 - 3 * a0 * a2  # critical points exist iff positive
    evaluate = form.evaluate
    for y in range(-spec.y_max, spec.y_max + 1):
        if y == 0:
            continue
        pieces: list[tuple[int, int, bool]] = []
        direct: list[int] = []
        if disc > 0:
            s = math.isqrt(disc * y * y)
            outer_left = (-a1 * y - s - 1) // (3 * a0)
            inner_left = -((a1 * y + s) // (3 * a0))
            inner_right = (-a1 * y + s) // (3 * a0)
            outer_right = -((a1 * y - s - 1) // (3 * a0))
            pieces.append((-cap, min(outer_left, cap), True))
            pieces.append((max(inner_left, -cap), min(inner_right, cap), False))
            pieces.append((max(outer_right, -cap), cap, True))
            direct.extend(range(max(outer_left + 1, -cap),
                                min(inner_left, cap + 1)))
            direct.extend(range(max(inner_right + 1, -cap),
                                min(outer_right, cap + 1)))
        else:
            pieces.append((-cap, cap, True))
        seed = int(mpmath.nint(root_seed * y))
        for lo, hi, increasing in pieces:
            window = _window_on_monotone(evaluate, y, lo, hi, spec.k,
                                         increasing,
                                         seed if increasing else None)
            if window is None:
                continue
            for x in range(window[0], window[1] + 1):
                _collect(found, spec, cap, n, x, y, evaluate(x, y), False)
        for x in direct:
            _collect(found, spec, cap, n, x, y, evaluate(x, y), False)
    _trivial_axis_solutions(found, spec, cap, n, form, False)


def brute_force_oracle(fam: FormFamily, spec: SearchSpec,
                       naive: bool = False,
                       with_decomposition: bool = True) -> list[SolutionRecord]:
    """Ground-truth enumeration over the same box as `solve_box`.

    The default path is exhaustive-equivalent: on each monotone piece of the
    integer cubic it brackets the window |F| <= k by exact binary search, so
    its output equals a literal scan of every x in the box.  `naive=True`
    performs that literal scan (use only on small boxes)."""
    found: dict = {}
    if spec.k == 0:
        return []
    cap = x_cap(fam, spec)
    for n in spec.indices():
        form = form_at(fam, n)
        degenerate = fam.is_degenerate_index(n)
        if degenerate:
            if not spec.exclude_degenerate:
                _degenerate_lines(found, spec, cap, n, fam, form)
                _trivial_axis_solutions(found, spec, cap, n, form, True)
            continue
        if naive:
            for y in range(-spec.y_max, spec.y_max + 1):
                if y == 0:
                    continue
                for x in range(-cap, cap + 1):
                    _collect(found, spec, cap, n, x, y, form.evaluate(x, y),
                             False)
            _trivial_axis_solutions(found, spec, cap, n, form, False)
        else:
            _oracle_index(found, fam, spec, cap, n, form)
    return _finish(fam, spec, found, with_decomposition)


# -- sweep -------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SweepRow:
    k: int
    count: int
    max_quantity: float
    fitted_exponent: float | None
    kappa4_emp: float | None
    stable: bool | None
    added_by_doubling: int | None
    solve_seconds: float

    def to_json(self) -> dict:
        return {
            "k": self.k, "count": self.count,
            "max_quantity": self.max_quantity,
            "fitted_exponent": self.fitted_exponent,
            "kappa4_emp": self.kappa4_emp,
            "stable": self.stable,
            "added_by_doubling": self.added_by_doubling,
            "solve_seconds": round(self.solve_seconds, 3),
        }


def theorem1_sweep(fam: FormFamily, k_list: list[int], spec_template: SearchSpec,
                   stability_factor: int | None = None,
                   precision=DEFAULT_PRECISION) -> list[SweepRow]:
    """Growth of max(eps^|n|, |x|, |y|) over solutions as k increases.

    Also reports the empirical exponent of the reverse inequality
    |F| >= c * max(|x|, |y|, eps^|n|)^kappa over the found solutions."""
    if sorted(k_list) != list(k_list):
        raise ValueError("k_list must be ascending")
    eps_hi = float(fam.epsilon.real_embedding(Fraction(1, 1 << 64)).hi)
    rows = []
    for k in k_list:
        spec = replace(spec_template, k=k)
        start = time.perf_counter()
        records = solve_box(fam, spec, precision, with_decomposition=False)
        elapsed = time.perf_counter() - start
        max_q = 0.0
        kappa4 = None
        for r in records:
            quantity = max(eps_hi ** abs(r.n), abs(r.x), abs(r.y))
            max_q = max(max_q, quantity)
            if quantity >= 2:
                ratio = math.log(abs(r.value)) / math.log(quantity)
                kappa4 = ratio if kappa4 is None else min(kappa4, ratio)
        fitted = (math.log(max_q) / math.log(k)
                  if k >= 2 and max_q > 1 else None)
        stable = None
        added = None
        if stability_factor is not None:
            wider = replace(spec_template, k=k,
                            y_max=spec_template.y_max * stability_factor)
            wide_records = solve_box(fam, wider, precision,
                                     with_decomposition=False)
            added = len(wide_records) - len(records)
            stable = added == 0
        rows.append(SweepRow(k, len(records), max_q, fitted, kappa4, stable,
                             added, elapsed))
    return rows
