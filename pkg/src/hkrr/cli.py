"""Command-line surface: every subcommand emits one deterministic report.

A report is {"command", "inputs", "results", "claims"}; --markdown renders
the same object as nested sections instead of JSON.  Exit codes: 0 success,
1 validation error, 2 search budget exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .chernrr import ChernData, q_rr_from_chern
from .cnconst import SearchBudgetExceeded, cn_value
from .exactpoly import Poly, as_rat, rat_str
from .hkprofile import (
    denominator_check,
    even_values_check,
    known_family_prr,
    profile_from_prr,
    real_root_classifier,
)
from .isosolver import solve_case
from .qkbasis import qk_laurent_check, qk_poly, qk_roots, decompose_qk, decompose_shifted

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 64

ROOT_TOLERANCE = 1e-9


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: A003 - argparse hook
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="hkrr", description=__doc__)
    parser.add_argument("--version", action="version", version=f"hkrr {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_cn = sub.add_parser("cn", help="certified gcd constant C(n)")
    p_cn.add_argument("n", type=int)
    p_cn.add_argument("--stability", type=int, default=3)
    p_cn.add_argument("--max-bound", type=int, default=None)
    _output_flags(p_cn)

    p_qk = sub.add_parser("qk", help="basis polynomial q_k, roots, Laurent identity")
    p_qk.add_argument("k", type=int)
    p_qk.add_argument("--roots", action="store_true")
    p_qk.add_argument("--laurent-check", action="store_true")
    _output_flags(p_qk)

    p_qrr = sub.add_parser("qrr", help="Riemann-Roch polynomial from Chern data")
    p_qrr.add_argument("--chern", required=True, metavar="FILE")
    _output_flags(p_qrr)

    p_profile = sub.add_parser("profile", help="invariant bundle of a candidate polynomial")
    src = p_profile.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=["split", "product"])
    src.add_argument("--poly", metavar="FILE")
    p_profile.add_argument("--n", type=int, default=None)
    _output_flags(p_profile)

    p_dec = sub.add_parser("decompose", help="decompose into the q_k or shifted-power basis")
    p_dec.add_argument("--poly", required=True, metavar="FILE")
    p_dec.add_argument("--basis", required=True, choices=["qk", "shifted"])
    p_dec.add_argument("--shift", default=None, metavar="RAT")
    _output_flags(p_dec)

    p_iso = sub.add_parser("isotropic", help="dimension-6 isotropic case analysis")
    p_iso.add_argument("--n", type=int, required=True)
    p_iso.add_argument("--a", type=int, required=True)
    _output_flags(p_iso)

    p_check = sub.add_parser("check", help="denominator and even-value checks")
    p_check.add_argument("--poly", required=True, metavar="FILE")
    p_check.add_argument("--n", type=int, required=True)
    p_check.add_argument("--even", action="store_true")
    _output_flags(p_check)

    return parser


def _output_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", dest="fmt", action="store_const", const="json")
    group.add_argument("--markdown", dest="fmt", action="store_const", const="markdown")
    parser.set_defaults(fmt="json")


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _report(command: str, inputs: dict, results: dict, claims: list[str]) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "claims": claims}


def _cmd_cn(args: argparse.Namespace) -> dict:
    max_bound = args.max_bound
    if max_bound is None:
        env = os.environ.get("HKRR_MAX_BOUND")
        max_bound = int(env) if env else None
    cert = cn_value(args.n, stability=args.stability, max_bound=max_bound)
    return _report(
        "cn",
        {"n": args.n, "stability": args.stability, "max_bound": max_bound},
        cert.to_json(),
        [f"certified gcd constant for n={args.n}"],
    )


def _cmd_qk(args: argparse.Namespace) -> dict:
    if args.k < 0:
        raise ValueError("k must be >= 0")
    results: dict[str, Any] = {"k": args.k, "poly": qk_poly(args.k).to_json()}
    claims = [f"basis polynomial of degree {args.k}"]
    if args.roots:
        results["roots"] = {"values": qk_roots(args.k), "tolerance": ROOT_TOLERANCE}
        claims.append("roots verified against -4 sin^2(j pi / (2(k+1))) " f"within {ROOT_TOLERANCE}")
    if args.laurent_check:
        results["laurent_identity"] = qk_laurent_check(args.k)
        claims.append("Laurent identity T^k q_k(T + 1/T - 2) = 1 + T^2 + ... + T^2k")
    return _report(
        "qk",
        {"k": args.k, "roots": args.roots, "laurent_check": args.laurent_check},
        results,
        claims,
    )


def _cmd_qrr(args: argparse.Namespace) -> dict:
    data = ChernData.from_json(_load_json(args.chern))
    q = q_rr_from_chern(data)
    return _report(
        "qrr",
        {"chern": data.to_json()},
        {"q_rr": q.to_json(), "degree": q.degree},
        ["normalized Riemann-Roch polynomial from Chern numbers"],
    )


def _cmd_profile(args: argparse.Namespace) -> dict:
    if args.family:
        if args.n is None:
            raise ValueError("--family requires --n")
        p = known_family_prr(args.family, args.n)
        n = args.n
        inputs: dict[str, Any] = {"family": args.family, "n": n}
    else:
        p = Poly.from_json(_load_json(args.poly))
        n = args.n if args.n is not None else p.degree
        inputs = {"poly": p.to_json(), "n": n}
    profile = profile_from_prr(n, p)
    verdict = real_root_classifier(profile)
    results = profile.to_json()
    results["roots"] = verdict.to_json()
    return _report("profile", inputs, results, ["invariant bundle extracted and validated"])


def _cmd_decompose(args: argparse.Namespace) -> dict:
    p = Poly.from_json(_load_json(args.poly))
    if args.basis == "qk":
        if args.shift is not None:
            raise ValueError("--shift applies only to the shifted basis")
        coeffs = decompose_qk(p)
        inputs = {"poly": p.to_json(), "basis": "qk"}
        claim = "decomposition into the monic positive basis q_(n-2i)"
    else:
        if args.shift is None:
            raise ValueError("the shifted basis requires --shift")
        shift = as_rat(args.shift)
        coeffs = decompose_shifted(p, shift)
        inputs = {"poly": p.to_json(), "basis": "shifted", "shift": rat_str(shift)}
        claim = "decomposition into shifted powers (T+s)^(n-2j)"
    return _report(
        "decompose",
        inputs,
        {"coefficients": [rat_str(c) for c in coeffs]},
        [claim],
    )


def _cmd_isotropic(args: argparse.Namespace) -> dict:
    case = solve_case(args.n, args.a)
    survivors = ", ".join(str(nx) for _, nx in case.survivors)
    return _report(
        "isotropic",
        {"n": args.n, "a": args.a},
        case.to_json(),
        [f"dimension-6 isotropic case a={args.a}: surviving n_x in {{{survivors}}}"],
    )


def _cmd_check(args: argparse.Namespace) -> dict:
    p = Poly.from_json(_load_json(args.poly))
    den = denominator_check(args.n, p, even_form=args.even)
    even_vals = even_values_check(args.n, p)
    return _report(
        "check",
        {"poly": p.to_json(), "n": args.n, "even": args.even},
        {"denominator": den.to_json(), "even_values": even_vals.to_json()},
        ["coefficient denominator bounds and even-value integrality"],
    )


_HANDLERS = {
    "cn": _cmd_cn,
    "qk": _cmd_qk,
    "qrr": _cmd_qrr,
    "profile": _cmd_profile,
    "decompose": _cmd_decompose,
    "isotropic": _cmd_isotropic,
    "check": _cmd_check,
}


def render_markdown(report: dict) -> str:
    lines = [f"# hkrr {report['command']}", ""]
    _render_value(report, lines, 0)
    return "\n".join(lines) + "\n"


def _render_value(value: Any, lines: list[str], depth: int) -> None:
    pad = "  " * depth
    if isinstance(value, dict):
        for key, sub in value.items():
            if isinstance(sub, (dict, list)):
                lines.append(f"{pad}- **{key}**:")
                _render_value(sub, lines, depth + 1)
            else:
                lines.append(f"{pad}- **{key}**: {sub}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                _render_value(item, lines, depth + 1)
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{value}")


def run(argv: Sequence[str] | None = None) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    if args.command is None:
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    try:
        report = _HANDLERS[args.command](args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.fmt == "markdown":
        print(render_markdown(report), end="")
    else:
        print(json.dumps(report, indent=2))
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
