"""Command-line front end.  Every command prints one result envelope.

Exit codes: 0 ok, 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import logging
import sys
from fractions import Fraction
from typing import Callable, Optional

from . import bounds, criteria, ellcurve, localchar
from . import numfield as nf
from .exactnum import DEFAULT_PREC

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3

LIST_LIMIT = 1000


class UsageError(ValueError):
    pass


def _positive_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("A must be positive")
    return value


# -- commands ---------------------------------------------------------------


def cmd_invariants(args, diagnostics: list) -> dict:
    F = nf.parse_field(args.field)
    return {"field": str(F), **nf.invariants(F, args.precision).to_json()}


def cmd_bounds(args, diagnostics: list) -> dict:
    F = nf.parse_field(args.field)
    inv = nf.invariants(F, args.precision)
    selectors = [s for s in ("n", "q", "torsion", "cK", "jk", "c1", "c2", "delta") if getattr(args, s) not in (None, False)]
    if len(selectors) != 1:
        raise UsageError("choose exactly one of --n, --q, --torsion, --cK, --jk, --c1, --c2, --delta")
    sel = selectors[0]
    if sel in ("cK", "jk") and args.A is None:
        raise UsageError(f"--{sel} needs --A")
    if sel not in ("cK", "jk") and args.A is not None:
        raise UsageError("--A only applies to --cK and --jk")
    prec = args.precision
    if sel == "n":
        rep = bounds.c_of_n(inv, args.n, prec)
    elif sel == "q":
        rep = bounds.b_of_q(inv, args.q, F, prec)
    elif sel == "torsion":
        rep = bounds.torsion_report(inv)
    elif sel == "cK":
        rep = bounds.c_K(inv, args.A, prec)
    elif sel == "jk":
        rep = bounds.jk_report(inv, args.A)
    elif sel == "c1":
        rep = bounds.c1_report(inv, prec)
    elif sel == "c2":
        rep = bounds.c2_report(inv, prec)
    else:
        rep = bounds.BoundReport("delta", bounds.delta_K(inv, prec), {"d": inv.degree, "r": inv.unit_rank}, prec)
    if not rep.stable:
        diagnostics.append("precision cap reached: value is a valid upper bound but may not be the tightest ceiling")
    return {"field": str(F), "bound": rep.to_json()}


def _places_for(F, q: Optional[int], max_prime: Optional[int]) -> list:
    if (q is None) == (max_prime is None):
        raise UsageError("choose exactly one of --q and --max-prime")
    if q is not None:
        if q < 5:
            raise ValueError(f"q = {q} < 5 is not supported")
        return nf.degree_one_places(F, q)
    return criteria.scan_places(F, max_prime)


def cmd_classify(args, diagnostics: list) -> dict:
    F = nf.parse_field(args.field)
    E = ellcurve.parse_curve(args.curve, F)
    places = _places_for(F, args.q, args.max_prime)
    rows = []
    for c in criteria.classify_all(E, places, args.jobs, diagnostics):
        row = c.to_json()
        if c.type is not None and c.type.is_good:
            try:
                row["frobenius"] = ellcurve.trace_of_frobenius(E, c.place).to_json()
            except ellcurve.NoGoodModelError as exc:
                diagnostics.append(f"place {c.place.label()}: {exc}")
        rows.append(row)
    return {"field": str(F), "curve": str(E), "j": str(ellcurve.j_invariant(E)), "places": rows}


def cmd_certify(args, diagnostics: list) -> dict:
    F = nf.parse_field(args.field)
    E = ellcurve.parse_curve(args.curve, F)
    result = criteria.certify(E, F, args.max_prime, args.precision, args.jobs)
    diagnostics.extend(result.diagnostics)
    if isinstance(result, criteria.IrreducibilityCertificate) and not result.stable:
        diagnostics.append("precision cap reached: bound is valid but may not be the tightest ceiling")
    return result.to_json()


def cmd_jk(args, diagnostics: list) -> dict:
    F = nf.parse_field(args.field)
    inv = nf.invariants(F, args.precision)
    S = criteria.jk_set(F, args.A, inv)
    places, truncated = S.places(args.limit)
    primes = sorted({P.q for P in places})
    out = {
        "field": str(F),
        "A": str(args.A),
        "bound": str(S.bound),
        "primes": [str(q) for q in primes],
        "places": [P.to_json() for P in places],
        "truncated": truncated,
    }
    if isinstance(F, nf.QuadraticField) and not F.is_real:
        cov = criteria.class_coverage(F, S)
        out.update(cov.to_json())
        out["verified"] = True
    else:
        out["verified"] = False
        diagnostics.append("class coverage is only checked for imaginary quadratic fields: unverified")
    if truncated:
        diagnostics.append(f"place list truncated at {args.limit} entries")
    return out


def cmd_case_table(args, diagnostics: list) -> dict:
    F = nf.parse_field(args.field)
    return {
        "field": str(F),
        "exponent_table": [row.to_json() for row in localchar.EXPONENT_TABLE],
        "cases": [desc.to_json() for desc in localchar.case_table(F)],
    }


def cmd_verify_case(args, diagnostics: list) -> dict:
    F = nf.parse_field(args.field)
    E = ellcurve.parse_curve(args.curve, F)
    case = localchar.Case.parse(args.case)
    if args.q < 5:
        raise ValueError(f"q = {args.q} < 5 is not supported")
    places = nf.degree_one_places(F, args.q)
    if args.root is not None:
        places = [P for P in places if P.root == args.root % args.q]
        if not places:
            raise ValueError(f"no place above {args.q} with root {args.root}")
    inv = nf.invariants(F, args.precision)
    rows = []
    for P in places:
        t = ellcurve.classify_place(E, P)
        rows.append({**P.to_json(), "type": str(t), "holds": localchar.verify_case_identity(E, P, case, inv)})
    return {"field": str(F), "curve": str(E), "case": str(case), "results": rows}


COMMANDS: dict[str, Callable] = {
    "invariants": cmd_invariants,
    "bounds": cmd_bounds,
    "classify": cmd_classify,
    "certify": cmd_certify,
    "jk": cmd_jk,
    "case-table": cmd_case_table,
    "verify-case": cmd_verify_case,
}

INPUT_ERRORS = (
    UsageError,
    ValueError,
    nf.FieldError,
    nf.UnsupportedFieldError,
)


# -- parser -----------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--precision", type=int, metavar="BITS", default=default(DEFAULT_PREC),
                        help="working precision in bits (default 128)")
    parser.add_argument("--json", action="store_true", default=default(False), help="print JSON")
    parser.add_argument("--reproducible", action="store_true", default=default(False),
                        help="omit the timestamp so output is byte-identical across runs")
    parser.add_argument("--jobs", type=int, metavar="N", default=default(1),
                        help="worker processes for the place scan")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irredcert", description="Irreducibility bounds and certificates for elliptic curves.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="field invariants")
    p.add_argument("field")

    p = sub.add_parser("bounds", parents=[common], help="explicit bounds")
    p.add_argument("field")
    p.add_argument("--n", type=int, help="C(K, n)")
    p.add_argument("--q", type=int, help="B(K; q) for a split prime q")
    p.add_argument("--torsion", action="store_true", help="(1 + 3^(6dh))^2")
    p.add_argument("--cK", action="store_true", help="C_K (needs --A)")
    p.add_argument("--jk", action="store_true", help="norm bound of J_K (needs --A)")
    p.add_argument("--c1", action="store_true", help="C1 enclosure")
    p.add_argument("--c2", action="store_true", help="C2 enclosure")
    p.add_argument("--delta", action="store_true", help="delta_K enclosure")
    p.add_argument("--A", type=_positive_rational, help="Chebotarev constant")

    p = sub.add_parser("classify", parents=[common], help="reduction types at split places")
    p.add_argument("field")
    p.add_argument("curve")
    p.add_argument("--q", type=int)
    p.add_argument("--max-prime", type=int)

    p = sub.add_parser("certify", parents=[common], help="irreducibility certificate")
    p.add_argument("field")
    p.add_argument("curve")
    p.add_argument("--max-prime", type=int, required=True)

    p = sub.add_parser("jk", parents=[common], help="J_K set and class coverage")
    p.add_argument("field")
    p.add_argument("--A", type=_positive_rational, required=True)
    p.add_argument("--limit", type=int, default=LIST_LIMIT, help="max places listed")

    p = sub.add_parser("case-table", parents=[common], help="exponent and case tables")
    p.add_argument("field", nargs="?", default="Q")

    p = sub.add_parser("verify-case", parents=[common], help="check the case identity at places above q")
    p.add_argument("field")
    p.add_argument("curve")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--case", required=True)
    p.add_argument("--root", type=int)
    return parser


# -- output -----------------------------------------------------------------


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                sub = _render_text(item, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip() if sub else f"{pad}-")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _decimal_strings(obj):
    """Every integer in the payload becomes a decimal string; booleans stay."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _decimal_strings(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_decimal_strings(v) for v in obj]
    return obj


def envelope(command: str, status: str, payload: dict, diagnostics: list, reproducible: bool) -> dict:
    out = {"status": status, "command": command, "payload": payload, "diagnostics": diagnostics}
    if not reproducible:
        out["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return out


def execute(args: argparse.Namespace) -> tuple[int, dict]:
    """Run a parsed command; returns (exit code, envelope)."""
    diagnostics: list[str] = []
    try:
        payload = _decimal_strings(COMMANDS[args.command](args, diagnostics))
        return EXIT_OK, envelope(args.command, "ok", payload, diagnostics, args.reproducible)
    except INPUT_ERRORS as exc:
        payload = {"error": str(exc), "kind": "input"}
        return EXIT_INPUT, envelope(args.command, "error", payload, diagnostics, args.reproducible)
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        payload = {"error": f"{type(exc).__name__}: {exc}", "kind": "internal"}
        return EXIT_INTERNAL, envelope(args.command, "error", payload, diagnostics, args.reproducible)


def run(argv: Optional[list] = None) -> tuple[int, dict]:
    """Parse and execute.  Usage errors raise SystemExit(2) from argparse."""
    return execute(build_parser().parse_args(argv))


def format_envelope(env: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(env, indent=2, sort_keys=True)
    return "\n".join(_render_text(env))


def main(argv: Optional[list] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    code, env = execute(args)
    print(format_envelope(env, args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
