"""Command line front end.

Three subcommands:

    fiberbound report <config> [--verify-green] [--oracle N] [--json]
    fiberbound scan --type VII --resolution 60
    fiberbound check-ineq 1 2 3

``report`` reads a fiber configuration file, one fiber per line:

    # comment
    II  a=1
    VII a=1/3 b=1/3 c=1/3
    IV  a=2 b=0.5

Keys are a, b, c in chain order; values are integers, fractions p/q, or
finite decimals, all parsed exactly.  Exit codes: 0 on success, 2 on a
parse or usage failure, 3 when a requested verification fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bogomolov import (
    GlobalReport,
    VerificationError,
    check_amgm_inequality,
    decimal_string,
    global_report,
    minimize_contribution_ratio,
)
from .genus2_catalog import FiberSpec, FiberType, e_from_oracle
from .metric_graph import GraphError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3

_LENGTH_KEYS = ("a", "b", "c")


class ConfigError(ValueError):
    """A configuration file failed to parse; message carries the line number."""


def _parse_length(token: str, lineno: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ConfigError("line %d: not a rational number: %r" % (lineno, token)) from None
    if value <= 0:
        raise ConfigError("line %d: lengths must be positive, got %s" % (lineno, value))
    return value


def _parse_line(line: str, lineno: int) -> FiberSpec:
    tokens = line.split()
    kind_token, assignments = tokens[0], tokens[1:]
    try:
        kind = FiberType(kind_token.upper())
    except ValueError:
        raise ConfigError(
            "line %d: unknown fiber type %r (expected I..VII)" % (lineno, kind_token)
        ) from None
    seen: dict[str, Fraction] = {}
    for token in assignments:
        key, sep, raw = token.partition("=")
        if not sep or not raw:
            raise ConfigError(
                "line %d: expected key=value, got %r" % (lineno, token)
            )
        if key not in _LENGTH_KEYS:
            raise ConfigError(
                "line %d: unknown key %r (expected one of a, b, c)" % (lineno, key)
            )
        if key in seen:
            raise ConfigError("line %d: duplicate key %r" % (lineno, key))
        seen[key] = _parse_length(raw, lineno)
    expected = _LENGTH_KEYS[: kind.arity]
    missing = [k for k in expected if k not in seen]
    extra = [k for k in seen if k not in expected]
    if missing or extra:
        raise ConfigError(
            "line %d: type %s takes lengths %s; missing %s, unexpected %s"
            % (lineno, kind.value, list(expected), missing or "none", extra or "none")
        )
    return FiberSpec(kind, tuple(seen[k] for k in expected))


@dataclass(frozen=True)
class ConfigFile:
    """A parsed fiber configuration."""

    specs: tuple[FiberSpec, ...]


def parse_config(text: str) -> ConfigFile:
    """Parse a configuration file; raises ConfigError with a line number."""
    specs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.partition("#")[0].strip()
        if not line:
            continue
        specs.append(_parse_line(line, lineno))
    return ConfigFile(tuple(specs))


def _fraction_json(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def report_json(report: GlobalReport) -> dict:
    fibers = [
        {
            "type": r.spec.kind.value,
            "lengths": {k: _fraction_json(v) for k, v in r.spec.named_lengths.items()},
            "delta": _fraction_json(r.delta),
            "d": _fraction_json(r.d),
            "e": _fraction_json(r.e),
            "contribution": _fraction_json(r.contribution),
        }
        for r in report.fibers
    ]
    return {
        "fibers": fibers,
        "summary": {
            "delta": _fraction_json(report.delta),
            "omega2": _fraction_json(report.omega2),
            "omega2_admissible": _fraction_json(report.omega2_admissible),
            "deg_det": _fraction_json(report.deg_det),
            "bound_radicand": _fraction_json(report.bound_radicand),
            "floor_radicand": _fraction_json(report.floor_radicand),
            "bound_decimal": report.bound_decimal,
            "floor_decimal": report.floor_decimal,
        },
        "warnings": list(report.warnings),
    }


def specs_from_json(payload: dict) -> tuple[FiberSpec, ...]:
    """Rebuild the fiber list from a ``report --json`` payload."""
    specs = []
    for entry in payload["fibers"]:
        lengths = entry["lengths"]
        kind = FiberType(entry["type"])
        specs.append(
            FiberSpec(
                kind,
                tuple(
                    Fraction(lengths[k]["num"], lengths[k]["den"])
                    for k in _LENGTH_KEYS[: kind.arity]
                ),
            )
        )
    return tuple(specs)


def _render_lengths(spec: FiberSpec) -> str:
    return " ".join("%s=%s" % (k, v) for k, v in spec.named_lengths.items()) or "-"


def render_report(report: GlobalReport) -> str:
    lines = []
    lines.append("fiber  lengths              delta        d            e            contribution")
    for r in report.fibers:
        lines.append(
            "%-6s %-20s %-12s %-12s %-12s %s"
            % (r.spec.kind.value, _render_lengths(r.spec), r.delta, r.d, r.e, r.contribution)
        )
    lines.append("")
    lines.append("delta (total)        = %s" % report.delta)
    lines.append("omega^2              = %s" % report.omega2)
    lines.append("sum of e             = %s" % report.sum_e)
    lines.append("omega_a^2            = %s" % report.omega2_admissible)
    lines.append("deg det              = %s" % report.deg_det)
    lines.append(
        "bound   sqrt(%s) = %s" % (report.bound_radicand, report.bound_decimal)
    )
    lines.append(
        "floor   sqrt(%s) = %s  (= sqrt((2/135) delta))"
        % (report.floor_radicand, report.floor_decimal)
    )
    if report.floor_is_attained and report.delta > 0:
        lines.append("the bound meets the (2/135) delta floor exactly")
    for warning in report.warnings:
        lines.append("warning: %s" % warning)
    return "\n".join(lines) + "\n"


def _run_oracle(report: GlobalReport, n: int, out) -> int:
    """Compare each fiber's e against the discretized solver; 0 or EXIT_VERIFY."""
    tolerance = 10.0 / n
    worst = 0.0
    for r in report.fibers:
        approx = e_from_oracle(r.spec, n=n)
        deviation = abs(approx - float(r.e))
        worst = max(worst, deviation)
        out.write(
            "oracle %-4s n=%d: e ~ %.12g, exact %s, deviation %.3g\n"
            % (r.spec.kind.value, n, approx, r.e, deviation)
        )
    out.write("oracle max deviation %.3g (tolerance %.3g)\n" % (worst, tolerance))
    if worst > tolerance:
        out.write("oracle check FAILED\n")
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_report(args, out) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            config = parse_config(handle.read())
    except OSError as exc:
        out.write("error: cannot read %s: %s\n" % (args.config, exc))
        return EXIT_PARSE
    except ConfigError as exc:
        out.write("error: %s\n" % exc)
        return EXIT_PARSE
    try:
        report = global_report(config.specs, verify_green=args.verify_green)
    except VerificationError as exc:
        out.write("error: %s\n" % exc)
        return EXIT_VERIFY
    if args.json:
        json.dump(report_json(report), out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        out.write(render_report(report))
    if args.oracle is not None:
        if args.oracle < 2:
            out.write("error: --oracle needs at least 2 subdivisions\n")
            return EXIT_PARSE
        return _run_oracle(report, args.oracle, out)
    return EXIT_OK


def _cmd_scan(args, out) -> int:
    try:
        result = minimize_contribution_ratio(args.type, args.resolution)
    except ValueError as exc:
        out.write("error: %s\n" % exc)
        return EXIT_PARSE
    out.write("type %s, resolution %d\n" % (result.kind.value, result.resolution))
    out.write(
        "minimum contribution/delta = %s (~%s)\n"
        % (result.minimum, decimal_string(result.minimum))
    )
    out.write(
        "at normalized lengths (%s)\n" % ", ".join(str(x) for x in result.argmin)
    )
    if result.attained:
        out.write("the minimum is attained\n")
    else:
        out.write(
            "not attained: infimum %s on the boundary (open face, no minimizer)\n"
            % result.boundary_infimum
        )
    return EXIT_OK


def _cmd_check_ineq(args, out) -> int:
    try:
        result = check_amgm_inequality(args.a, args.b, args.c)
    except (ValueError, TypeError) as exc:
        out.write("error: %s\n" % exc)
        return EXIT_PARSE
    out.write(
        "abc/(ab+bc+ca) = %s, (a+b+c)/9 = %s\n" % (result.lhs, result.rhs)
    )
    if result.is_equality:
        out.write("equality holds (a = b = c)\n")
    elif result.holds:
        out.write("strict inequality holds\n")
    else:
        out.write("inequality VIOLATED\n")
        return EXIT_VERIFY
    return EXIT_OK


def _rational(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % token) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiberbound",
        description="Per-fiber invariants and the effective Bogomolov bound "
        "for semistable genus-2 fibrations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="invariants of a fiber configuration file")
    report.add_argument("config", help="configuration file, one fiber per line")
    report.add_argument(
        "--verify-green",
        action="store_true",
        help="recompute every e through the Green solver and require exact agreement",
    )
    report.add_argument(
        "--oracle",
        type=int,
        metavar="N",
        help="cross-check e against an N-subdivision discretization",
    )
    report.add_argument("--json", action="store_true", help="emit JSON instead of text")

    scan = sub.add_parser("scan", help="minimize contribution/delta over one fiber type")
    scan.add_argument("--type", required=True, help="fiber type II..VII")
    scan.add_argument("--resolution", type=int, required=True, help="simplex grid resolution")

    ineq = sub.add_parser(
        "check-ineq", help="check abc/(ab+bc+ca) <= (a+b+c)/9 for positive rationals"
    )
    ineq.add_argument("a", type=_rational)
    ineq.add_argument("b", type=_rational)
    ineq.add_argument("c", type=_rational)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    if args.command == "report":
        return _cmd_report(args, out)
    if args.command == "scan":
        return _cmd_scan(args, out)
    return _cmd_check_ineq(args, out)


if __name__ == "__main__":
    sys.exit(main())
