"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 precision exhausted.  All numeric input is parsed exactly: integers,
fractions like -5/2, and decimal strings like 2.5 (never binary floats).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import circle_h1, interval_h0, negabinary, verify
from .divisor import (
    DEFAULT_PRECISION_BITS,
    ArakelovDivisor,
    euler_characteristic,
    figure_data,
    rr_scan,
    series_to_csv,
    series_to_json,
    series_to_svg,
)
from .errors import DomainError, FormulaViolation, PrecisionError

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

#: Degree magnitudes beyond this would materialize astronomically wide
#: integers in floor(2**deg2); refuse them at the door.
MAX_DEGREE_MAGNITUDE = 10 ** 6


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION_BITS
    budget: int = interval_h0.DEFAULT_SEARCH_BUDGET
    workers: int = 1
    output_format: str = "text"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def parse_place(text: str) -> tuple[int, int]:
    try:
        prime_text, _, mult_text = text.partition(":")
        return int(prime_text), int(mult_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"places are written PRIME:MULTIPLICITY, got {text!r}"
        ) from exc


def parse_digits(text: str) -> tuple[int, ...]:
    cleaned = text.replace(",", "").replace(" ", "")
    if not cleaned or set(cleaned) - {"0", "1"}:
        raise argparse.ArgumentTypeError(
            f"digit words are strings over 0/1 (little-endian), got {text!r}"
        )
    return tuple(int(c) for c in cleaned)


def _check_degree_magnitude(deg: Fraction) -> Fraction:
    if abs(deg) > MAX_DEGREE_MAGNITUDE:
        raise DomainError(
            f"degree magnitude capped at {MAX_DEGREE_MAGNITUDE} (got {deg})"
        )
    return deg


def _emit(args, payload_text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(payload_text)
    else:
        sys.stdout.write(payload_text)


def _print_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2) + "\n")


def cmd_dim_h0(args, config: RunConfig) -> int:
    deg = _check_degree_magnitude(args.deg2)
    dim = interval_h0.dim_h0(deg)
    obj: dict = {"deg2": str(deg), "dim_h0": dim}
    lines = [f"dim_S H0 = {dim}"]
    if deg < 0:
        lines.append("degree is negative: the module is the base point alone")
    else:
        a = interval_h0.floor_pow2(deg)
        obj["interval_bound"] = str(a)
        lines.append(f"integer part of 2^deg2: a = {a}")
        if a >= 1:
            n = a.bit_length()
            gens = interval_h0.explicit_generating_set(a)
            obj["n"] = n
            obj["generating_set"] = list(gens)
            lines.append(f"bracketing: 2^{n - 1} <= a < 2^{n}, so the dimension is n + 1 = {n + 1}")
            lines.append(f"generating set (size {len(gens)}): {{{', '.join(map(str, gens))}}}")
            if a <= 1 << 20:
                covered = interval_h0.covers(gens, a)
                obj["certified"] = covered
                lines.append(
                    f"certificate: all {2 * a + 1} targets admissibly realized"
                    if covered
                    else "certificate: FAILED"
                )
                if not covered:
                    _render(args, config, obj, lines)
                    return EXIT_VERIFICATION_FAILED
            else:
                obj["certified"] = None
                lines.append("certificate: skipped (bound above built-in check cap)")
    _render(args, config, obj, lines)
    return EXIT_OK


def cmd_dim_h1(args, config: RunConfig) -> int:
    deg = _check_degree_magnitude(args.deg2)
    m = circle_h1.dim_h1(deg)
    obj: dict = {"deg2": str(deg), "dim_h1": m}
    lines = [f"dim_S H1 = {m}"]
    if m == 0:
        lines.append("degree at least -1: no coarsening is needed, the module is trivial")
    else:
        lines.append(f"window: deg2 in [-{m + 1}, -{m})")
        if m <= circle_h1.SUBSET_SUM_CAP:
            cert = circle_h1.certify_family(m)
            obj["family_certified"] = cert.passed
            obj["lambda"] = str(cert.lam)
            lines.append(
                f"family of {m} dyadic points generates at lambda = {cert.lam}: "
                f"{'yes' if cert.passed else 'NO'}"
            )
            lines.append(f"counting bound: no family smaller than {cert.cardinality_bound} covers")
            if not cert.passed:
                _render(args, config, obj, lines)
                return EXIT_VERIFICATION_FAILED
        else:
            obj["family_certified"] = None
            lines.append("family certification skipped (enumeration cap)")
    _render(args, config, obj, lines)
    return EXIT_OK


def cmd_euler(args, config: RunConfig) -> int:
    divisor = ArakelovDivisor.from_places(
        tuple(args.place or ()), arch=args.arch if args.arch is not None else 0
    )
    result = euler_characteristic(divisor, precision_bits=config.precision_bits)
    deg = result.deg2
    obj = {
        "divisor": {
            "places": {str(p): m for p, m in divisor.finite_part},
            "arch": str(divisor.archimedean_log2),
        },
        "deg2": str(deg),
        "deg2_approx": deg.approx(),
        "h0": result.h0,
        "h1": result.h1,
        "chi": result.chi,
        "step_value": result.step_value,
    }
    lines = [
        f"deg2 = {deg} (~{deg.approx():.6f})",
        f"dim_S H0 = {result.h0}",
        f"dim_S H1 = {result.h1}",
        f"chi = {result.chi}",
        f"step formula: primed-ceiling(deg2) + 1 = {result.step_value}",
        "identity verified: chi == step formula",
    ]
    _render(args, config, obj, lines)
    return EXIT_OK


def cmd_min_gen(args, config: RunConfig) -> int:
    options = interval_h0.SearchOptions(
        max_cardinality=args.max_size,
        parallel_width=config.workers,
        report_all_minima=args.all,
        budget=config.budget,
    )
    found = interval_h0.min_generating_set(args.bound, options)
    obj: dict = {
        "a": args.bound,
        "size": found.size,
        "lower_bound": interval_h0.lower_bound_size(args.bound),
        "witness": list(found.witness),
        "certified": found.certificate.validate(),
    }
    lines = [
        f"minimal generating set size for [-{args.bound}, {args.bound}]: {found.size}",
        f"counting lower bound: {obj['lower_bound']}",
        f"first witness (combination order): {{{', '.join(map(str, found.witness))}}}",
        f"certificate recheck: {'ok' if obj['certified'] else 'FAILED'}",
    ]
    if found.all_minima is not None:
        obj["all_minima"] = [list(w) for w in found.all_minima]
        lines.append(f"all minima ({len(found.all_minima)}):")
        lines.extend(f"  {{{', '.join(map(str, w))}}}" for w in found.all_minima)
    _render(args, config, obj, lines)
    return EXIT_OK if obj["certified"] else EXIT_VERIFICATION_FAILED


def cmd_negabinary(args, config: RunConfig) -> int:
    if args.mode == "encode":
        word = negabinary.encode(args.value, args.width)
        obj = {
            "value": args.value,
            "width": args.width,
            "digits": list(word.digits),
        }
        lines = [
            f"{args.value} at width {args.width}: "
            + "".join(str(d) for d in word.digits)
            + "  (little-endian, digit i weighs (-2)^i)"
        ]
        _render(args, config, obj, lines)
        return EXIT_OK
    if args.mode == "decode":
        word = negabinary.NegabinaryWord(args.digits)
        value = negabinary.decode(word)
        obj = {"digits": list(word.digits), "width": word.width, "value": value}
        _render(args, config, obj, [f"value: {value}"])
        return EXIT_OK
    report = negabinary.verify_bijection(args.width)
    window = report.interval
    obj = {
        "width": report.n,
        "window": [window.lo, window.hi],
        "distinct_values": report.distinct_values,
        "injective": report.injective,
        "onto_interval": report.onto_interval,
        "passed": report.passed,
    }
    lines = [
        f"width {report.n}: window [{window.lo}, {window.hi}] "
        f"({window.width} integers)",
        f"distinct decoded values: {report.distinct_values}",
        f"bijective onto window: {'yes' if report.passed else 'NO'}",
    ]
    _render(args, config, obj, lines)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def cmd_scan(args, config: RunConfig) -> int:
    report = rr_scan(args.lo, args.hi, args.step)
    obj = {
        "lo": str(args.lo),
        "hi": str(args.hi),
        "step": str(args.step),
        "points": len(report.rows),
        "passed": report.passed,
        "violations": [str(v) for v in report.violations],
    }
    lines = [f"checked {len(report.rows)} grid points on [{args.lo}, {args.hi}]"]
    lines.append(
        "identity holds everywhere" if report.passed
        else f"identity FAILS at {', '.join(map(str, report.violations))}"
    )
    _render(args, config, obj, lines)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def cmd_figure(args, config: RunConfig) -> int:
    series = figure_data(args.lo, args.hi, samples_per_unit=args.samples_per_unit)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(series_to_svg(series))
    if config.output_format == "csv":
        _emit(args, series_to_csv(series))
    elif config.output_format == "json":
        _emit(args, series_to_json(series))
    else:
        lines = [f"chi - 1 on [{series.lo}, {series.hi}]"]
        lines.append(f"jump points: {', '.join(map(str, series.jump_points)) or 'none'}")
        lines.append(f"{'deg2':>10}  {'chi-1':>6}  jump")
        jumps = set(series.jump_points)
        for x, value in series.samples:
            mark = "*" if x in jumps else ""
            lines.append(f"{str(x):>10}  {value:>6}  {mark}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _suite_lines(suites) -> tuple[list[str], bool]:
    lines = []
    all_passed = True
    for suite in suites:
        status = "PASS" if suite.passed else "FAIL"
        all_passed = all_passed and suite.passed
        lines.append(f"{status} {suite.name} ({suite.checks} checks)")
        for failure in suite.failures[:5]:
            lines.append(f"     counterexample: {failure}")
        for note in suite.skipped:
            lines.append(f"     skipped: {note}")
    return lines, all_passed


def cmd_verify_lemma33(args, config: RunConfig) -> int:
    suites = [
        verify.verify_golden_table(budget=config.budget, workers=config.workers),
        verify.verify_construction(a_max=args.construction_max),
    ]
    lines, passed = _suite_lines(suites)
    obj = {"passed": passed, "suites": [s.to_json_obj() for s in suites]}
    _render(args, config, obj, lines)
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


def cmd_verify_h1(args, config: RunConfig) -> int:
    suites = [verify.verify_circle(m_max=args.max_m)]
    lines, passed = _suite_lines(suites)
    obj = {"passed": passed, "suites": [s.to_json_obj() for s in suites]}
    _render(args, config, obj, lines)
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


def cmd_verify_all(args, config: RunConfig) -> int:
    suites = verify.run_all(
        budget=config.budget,
        workers=config.workers,
        inject_fault=args.inject_fault,
    )
    lines, passed = _suite_lines(suites)
    obj = {"passed": passed, "suites": [s.to_json_obj() for s in suites]}
    _render(args, config, obj, lines)
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


def _render(args, config: RunConfig, obj, lines) -> None:
    if config.output_format == "json":
        _print_json(args, obj)
    elif config.output_format == "csv":
        # Flat two-column CSV of the JSON payload for commands without a
        # richer tabular form.
        rows = ["key,value"]
        for key, value in obj.items():
            rows.append(f"{key},{json.dumps(value) if isinstance(value, (dict, list)) else value}")
        _emit(args, "\n".join(rows) + "\n")
    else:
        _emit(args, "\n".join(lines) + "\n")


def _accept_negative_rationals(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """Let bare negative rationals like -5/2 be positional arguments."""
    parser._negative_number_matcher = re.compile(r"^-\d+(\.\d+)?(/\d+)?$")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arakelov-rr",
        description=(
            "Exact dimensions and Euler characteristics of Arakelov divisors "
            "on the compactified arithmetic line (degrees in log2 units)."
        ),
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=DEFAULT_PRECISION_BITS,
        metavar="BITS",
        help="interval-refinement cap for odd-prime logarithms (default 256)",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=interval_h0.DEFAULT_SEARCH_BUDGET,
        metavar="A",
        help="largest interval bound for exhaustive minimal searches (default 31)",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=max(1, os.cpu_count() or 1),
        metavar="N",
        help="parallel workers for the minimal search (results are order-independent)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default="text",
        dest="output_format",
        help="output format (default text)",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = _accept_negative_rationals(sub.add_parser("dim-h0", help="dimension of H0 at a rational degree"))
    p.add_argument("deg2", type=parse_rational, help="degree in log2 units (e.g. 4, -5/2, 2.5)")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    p.set_defaults(handler=cmd_dim_h0)

    p = _accept_negative_rationals(sub.add_parser("dim-h1", help="dimension of H1 at a rational degree"))
    p.add_argument("deg2", type=parse_rational)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_dim_h1)

    p = _accept_negative_rationals(
        sub.add_parser("euler", help="both dimensions and chi for a divisor")
    )
    p.add_argument(
        "--place",
        action="append",
        type=parse_place,
        metavar="P:M",
        help="finite place with multiplicity, repeatable (e.g. --place 3:-1)",
    )
    p.add_argument(
        "--arch",
        type=parse_rational,
        metavar="Q",
        help="archimedean coefficient in log2 units (exact rational)",
    )
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_euler)

    p = sub.add_parser("min-gen", help="exhaustive minimal generating set of [-a, a]")
    p.add_argument("bound", type=int, metavar="A")
    p.add_argument("--all", action="store_true", help="report every minimum, not just the first")
    p.add_argument("--max-size", type=int, default=None, help="stop after this cardinality")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_min_gen)

    p = sub.add_parser("negabinary", help="base -2 encode/decode/verify")
    mode = p.add_subparsers(dest="mode", required=True, metavar="MODE")
    enc = mode.add_parser("encode", help="encode an integer at a given width")
    enc.add_argument("value", type=int)
    enc.add_argument("width", type=int)
    enc.add_argument("--out", metavar="FILE")
    enc.set_defaults(handler=cmd_negabinary)
    dec = mode.add_parser("decode", help="decode a little-endian 0/1 word")
    dec.add_argument("digits", type=parse_digits, help="e.g. 111 or 1,1,1")
    dec.add_argument("--out", metavar="FILE")
    dec.set_defaults(handler=cmd_negabinary)
    ver = mode.add_parser("verify", help="exhaustively verify one width")
    ver.add_argument("width", type=int)
    ver.add_argument("--out", metavar="FILE")
    ver.set_defaults(handler=cmd_negabinary)

    p = _accept_negative_rationals(sub.add_parser("scan", help="check the chi identity on a rational grid"))
    p.add_argument("lo", type=parse_rational)
    p.add_argument("hi", type=parse_rational)
    p.add_argument("--step", type=parse_rational, default=Fraction(1, 4))
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_scan)

    p = _accept_negative_rationals(sub.add_parser("figure", help="step-function data for chi - 1"))
    p.add_argument("lo", type=parse_rational)
    p.add_argument("hi", type=parse_rational)
    p.add_argument("--samples-per-unit", type=int, default=16)
    p.add_argument("--svg", metavar="FILE", help="also render an SVG to FILE")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser(
        "verify-lemma33",
        help="verify the tabulated minimal sets and the general construction",
    )
    p.add_argument("--construction-max", type=int, default=512, metavar="A")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_verify_lemma33)

    p = sub.add_parser("verify-h1", help="verify the dyadic circle families")
    p.add_argument("--max-m", type=int, default=12)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_verify_h1)

    p = sub.add_parser("verify-all", help="run every built-in verification suite")
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="self-test: corrupt one tabulated value and confirm detection",
    )
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 32:
        parser.error("--precision must be at least 32 bits")
    if args.budget < 0 or args.workers < 1:
        parser.error("--budget must be >= 0 and --workers >= 1")
    config = RunConfig(
        precision_bits=args.precision,
        budget=args.budget,
        workers=args.workers,
        output_format=args.output_format,
    )
    try:
        return args.handler(args, config)
    except PrecisionError as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except FormulaViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
