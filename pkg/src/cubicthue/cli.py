"""Command-line interface.

Subcommands:
  family   print family members over an index range
  solve    enumerate 0 < |F_n(x, y)| <= k over a box (pruned or oracle path)
  trace    emit the JSON audit certificate for one solution
  verify   run the cross-module identity suite (exit 5 on first failure)

Exit codes: 0 success, 2 usage or invalid parameters, 3 precision
exhausted, 4 the trace input is not a solution, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import errors
from .bounds import calibrate_c2
from .config import Config, load_config
from .family import (
    FormFamily,
    coefficient_sequence,
    example_family,
    family_from_json,
    form_at,
    swap_identity_check,
)
from .heights import abs_log_height, check_fundamental, regulator
from .reduction import unit_reduce
from .reporting import frac_to_decimal
from .solver import SearchSpec, brute_force_oracle, record_keys, solve_box
from .tracer import certificate_json, family_angles, trace_certificate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECISION = 3
EXIT_NOT_A_SOLUTION = 4
EXIT_VERIFY_FAILED = 5

_SOLUTION_INPUT_ERRORS = (errors.DegenerateN, errors.TrivialXY,
                          errors.ZeroValue)


class NotASolution(errors.CubicThueError):
    pass


def _parse_n_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    n = int(text)
    return n, n


def _load_family(args) -> FormFamily:
    if getattr(args, "family_file", None):
        with open(args.family_file, "r", encoding="utf-8") as handle:
            return family_from_json(handle.read())
    if args.D is None:
        raise errors.InvalidParameter("provide --D or --family-file")
    return example_family(args.D)


def cmd_family(args, cfg: Config) -> int:
    fam = _load_family(args)
    n_lo, n_hi = _parse_n_range(args.n)
    single = n_lo == n_hi
    if cfg.output == "json":
        print(json.dumps({"schema": 1}))
    for n in range(n_lo, n_hi + 1):
        form = form_at(fam, n)
        if cfg.output == "json":
            print(json.dumps({"n": n, "coefficients": list(form.coefficients),
                              "degenerate": fam.is_degenerate_index(n)}))
        elif single:
            print(form)
        else:
            print(f"{n}\t{form}")
    return EXIT_OK


def cmd_solve(args, cfg: Config) -> int:
    fam = _load_family(args)
    n_lo, n_hi = _parse_n_range(args.n)
    spec = SearchSpec(k=args.k, n_lo=n_lo, n_hi=n_hi, y_max=args.y_max,
                      exclude_trivial=not args.include_trivial,
                      exclude_degenerate=not args.include_degenerate)
    if args.oracle:
        records = brute_force_oracle(fam, spec, naive=args.naive)
    else:
        records = solve_box(fam, spec, cfg.precision)
    if cfg.output == "json":
        print(json.dumps({"schema": 1, "k": spec.k, "n_lo": n_lo,
                          "n_hi": n_hi, "y_max": spec.y_max}))
        for r in records:
            print(json.dumps(r.to_json()))
    else:
        for r in records:
            ell = r.decomposition.ell if r.decomposition else ""
            print(f"{r.n}\t{r.x}\t{r.y}\t{r.value}\t{ell}")
    return EXIT_OK


def cmd_trace(args, cfg: Config) -> int:
    fam = _load_family(args)
    value = form_at(fam, args.n).evaluate(args.x, args.y)
    if value == 0 or abs(value) > args.k:
        raise NotASolution(
            f"|F_{args.n}({args.x}, {args.y})| = {abs(value)} not in (0, {args.k}]")
    cert = trace_certificate(fam, args.n, args.x, args.y, args.k,
                             cfg.precision)
    print(certificate_json(cert))
    return EXIT_OK


def _verify_checks(fam: FormFamily, deep: bool, precision: Fraction):
    """Yield (name, passed, detail) for the cross-module identity suite."""
    tight = Fraction(1, 10**20)
    reg = regulator(fam, tight)

    ok = all(swap_identity_check(fam, n)[0] for n in range(-10, 11))
    yield "swap_identity", ok, "F_(-n)(X,Y) = -F_(n-2)(Y,X) on [-10, 10]"

    if fam.D is not None:
        seq = coefficient_sequence(fam.D, -10, 10)
        init_ok = (seq.values[0] == 3 * fam.D**2 and seq.values[-1] == 3
                   and seq.values[-2] == -3 * fam.D)
        yield "recurrence_initial_values", init_ok, "a_0, a_-1, a_-2"
        mism = seq.printed_order_mismatch
        yield ("reversed_recurrence_detected",
               fam.D in (0, 1, -1) or not mism["orders_agree"],
               f"reversed order predicts {mism['reversed_order_predicts_a1']}, "
               f"trace gives {mism['trace_a1']}")

    h = abs_log_height(fam.epsilon, tight).height
    diff = h - reg / 3
    ok = abs(diff).hi <= Fraction(1, 10**12)
    yield "height_equals_regulator_third", ok, f"|h - R/3| <= {float(abs(diff).hi):.2e}"

    prec = Fraction(1, 10**25)
    real, cplx = fam.epsilon.embed(prec)
    from .intervals import bits_for_width, ri_sqrt

    bits = bits_for_width(prec)
    lhs = cplx.abs(bits)
    rhs = ri_sqrt(real, bits).recip()
    ok = lhs.overlaps(rhs) and (lhs.width + rhs.width) <= Fraction(1, 10**20)
    yield "conjugate_modulus", ok, "|eps'| = eps^(-1/2) within 1e-20"

    rng = random.Random(7)
    reg_half = reg / 2 + Fraction(1, 10**9)
    ok = True
    for _ in range(20):
        coords = [rng.randint(-50, 50) for _ in range(3)]
        if coords == [0, 0, 0]:
            coords = [1, 0, 0]
        gamma = fam.field.element(*coords)
        dec = unit_reduce(fam, gamma)
        if (fam.epsilon ** dec.ell) * dec.xi != gamma or dec.balance.hi > reg_half.hi:
            ok = False
            break
    yield "unit_reduction", ok, "exact reconstruction and balance <= R/2 + 1e-9"

    y_max = 1000 if deep else 30
    spec = SearchSpec(k=5, n_lo=-3, n_hi=3, y_max=y_max)
    pruned = record_keys(solve_box(fam, spec, precision,
                                   with_decomposition=False))
    oracle = record_keys(brute_force_oracle(fam, spec,
                                            with_decomposition=False))
    yield "solver_equivalence", pruned == oracle, (
        f"{len(pruned)} solutions, y_max = {y_max}")
    if not deep:
        naive = record_keys(brute_force_oracle(fam, spec, naive=True,
                                               with_decomposition=False))
        yield "naive_oracle_equivalence", naive == oracle, "literal triple loop"

    fund = check_fundamental(fam)
    yield "fundamentality", True, f"certificate: {fund.status}"

    if deep:
        delta, theta = family_angles(fam, Fraction(1, 10**30))
        cal = calibrate_c2(delta, theta, 10**4, Fraction(1, 10**25))
        yield ("sine_calibration", cal.c2 > 0 and cal.c2 < 1e6,
               f"c2 = {cal.c2:.6f}, skipped = {len(cal.skipped)}")


def cmd_verify(args, cfg: Config) -> int:
    families = []
    if args.family_file:
        with open(args.family_file, "r", encoding="utf-8") as handle:
            families.append(("file", family_from_json(handle.read())))
    for d_text in (args.D.split(",") if args.D else []):
        d = int(d_text)
        families.append((f"D={d}", example_family(d)))
    if not families:
        families = [(f"D={d}", example_family(d)) for d in (1, 2, 3)]
    failed = None
    for label, fam in families:
        for name, passed, detail in _verify_checks(fam, args.deep,
                                                   cfg.precision):
            status = "ok" if passed else "FAIL"
            print(f"[{label}] {status:4s} {name}: {detail}")
            if not passed and failed is None:
                failed = f"{label} {name}"
    if failed is not None:
        print(f"first failing identity: {failed}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubicthue",
        description="Unit-indexed families of cubic Thue inequalities: "
                    "exact solving and proof auditing.")
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--output", choices=("table", "json"),
                        help="override the configured output mode")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_args(p):
        p.add_argument("--D", type=int, help="example-family parameter")
        p.add_argument("--family-file", help="JSON family record")

    p_family = sub.add_parser("family", help="print family members")
    add_family_args(p_family)
    p_family.add_argument("--n", required=True,
                          help="index or inclusive range lo..hi")

    p_solve = sub.add_parser("solve", help="enumerate solutions over a box")
    add_family_args(p_solve)
    p_solve.add_argument("--n", required=True, help="index range lo..hi")
    p_solve.add_argument("--k", type=int, required=True)
    p_solve.add_argument("--y-max", type=int, default=100)
    p_solve.add_argument("--oracle", action="store_true",
                         help="use the unpruned reference path")
    p_solve.add_argument("--naive", action="store_true",
                         help="with --oracle: literal triple loop")
    p_solve.add_argument("--include-trivial", action="store_true")
    p_solve.add_argument("--include-degenerate", action="store_true")

    p_trace = sub.add_parser("trace", help="audit one solution")
    add_family_args(p_trace)
    p_trace.add_argument("--n", type=int, required=True)
    p_trace.add_argument("--x", type=int, required=True)
    p_trace.add_argument("--y", type=int, required=True)
    p_trace.add_argument("--k", type=int, required=True)

    p_verify = sub.add_parser("verify", help="run the identity suite")
    p_verify.add_argument("--D", help="comma-separated parameters, e.g. 1,2,3")
    p_verify.add_argument("--family-file", help="JSON family record")
    p_verify.add_argument("--deep", action="store_true",
                          help="add the 10^4 calibration scan and larger boxes")

    return parser


def _merge_range_values(argv: list[str]) -> list[str]:
    """Join `--n -5..5` into `--n=-5..5` so argparse accepts the dash."""
    import re

    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok == "--n" and i + 1 < len(argv)
                and re.fullmatch(r"-\d+(\.\.(-?\d+))?", argv[i + 1])):
            out.append(f"--n={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_merge_range_values(
        list(sys.argv[1:] if argv is None else argv)))
    try:
        cfg = load_config(args.config, output_override=args.output)
        handler = {"family": cmd_family, "solve": cmd_solve,
                   "trace": cmd_trace, "verify": cmd_verify}[args.command]
        return handler(args, cfg)
    except _SOLUTION_INPUT_ERRORS as exc:
        print(f"not a valid solution input: {exc}", file=sys.stderr)
        return EXIT_NOT_A_SOLUTION
    except NotASolution as exc:
        print(f"not a solution: {exc}", file=sys.stderr)
        return EXIT_NOT_A_SOLUTION
    except errors.PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (errors.InvalidParameter, errors.NotAUnit,
            errors.ReduciblePolynomial, errors.TotallyReal, errors.NonMonic,
            ValueError, OSError, json.JSONDecodeError) as exc:
        if args.command == "verify":
            print(f"verification setup failed: {exc}", file=sys.stderr)
            return EXIT_VERIFY_FAILED
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
