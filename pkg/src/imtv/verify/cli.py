"""Command-line interface: ``imtv eval | expand | verify | cache``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from mpmath import mp

from .. import __version__
from ..genfun import LevelError, LevelData, oracle_table, solve_phi0, uvw_bounds_for_weight
from ..index import InvalidIndex, format_index, interpolation_expansion, parse_index
from ..numeric.cache import CACHE_ENV, ValueCache, set_default_cache
from ..numeric.tvalues import NotAdmissible, ToleranceUnreachable, t_interp_eval
from ..series import monomial_name
from .checks import (REGISTRY, CheckSpec, InvalidParams, UnknownCheck, catalogue, exit_code,
                     report_json, run_checks)

EXIT_USAGE = 2


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imtv", description="Interpolated multiple t-values of level N: "
                                     "evaluation, generating-function coefficients and identity checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON file with defaults (command-line flags win)")
    parser.add_argument("--cache-dir", help=f"value cache directory (default: ${CACHE_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="compute one interpolated t-value")
    ev.add_argument("--level", type=int, required=True, help="modulus N")
    ev.add_argument("--residue", type=int, required=True, help="residue a, 1 ≤ a ≤ N")
    ev.add_argument("--index", required=True, help='index such as "2,1" or "3,{1}^2"')
    ev.add_argument("--r", type=_fraction, default=None, help="interpolation parameter (default 0)")
    ev.add_argument("--precision", type=int, default=None, help="decimal digits (default 30)")
    ev.add_argument("--tol", type=_positive_float, default=None, help="target error bound")
    ev.add_argument("--json", action="store_true", help="print a JSON object")

    ex = sub.add_parser("expand", help="interpolation expansion or Phi_0 coefficients")
    ex.add_argument("--index", help="print the r-expansion of this index")
    ex.add_argument("--level", type=int, help="modulus N (with --orders)")
    ex.add_argument("--residue", type=int, help="residue a (with --orders)")
    ex.add_argument("--orders", type=int, help="print Phi_0 coefficients through z^ORDERS")
    ex.add_argument("--max-weight", type=int, default=5, help="largest weight k shown (default 5)")
    ex.add_argument("--oracle", action="store_true",
                    help="emit the JSON comparison table against brute-force sums")

    ve = sub.add_parser("verify", help="run identity checks")
    ve.add_argument("--check", action="append", default=[], metavar="ID", help="check id (repeatable)")
    ve.add_argument("--all", action="store_true", help="run the whole catalogue")
    ve.add_argument("--list", action="store_true", help="list the catalogue and exit")
    ve.add_argument("--json", metavar="PATH", help='write the JSON report to PATH ("-" for stdout)')
    ve.add_argument("--jobs", type=int, default=None, help="parallel worker processes")
    ve.add_argument("--param", action="append", default=[], metavar="KEY=JSON",
                    help="override a check parameter (applies to every selected check having it)")

    ca = sub.add_parser("cache", help="inspect or clear the value cache")
    ca.add_argument("action", choices=["inspect", "clear"])
    for p in (ev, ex, ve, ca):
        p.set_defaults(subparser=p)
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _pick(flag, config: dict, key: str, default):
    return flag if flag is not None else config.get(key, default)


def _cmd_eval(args, config) -> int:
    level = LevelData(args.level, args.residue)
    index = parse_index(args.index)
    r = _pick(args.r, config, "r", Fraction(0))
    P = _pick(args.precision, config, "precision", 30)
    tol = _pick(args.tol, config, "tol", None)
    value = t_interp_eval(level, index, Fraction(r), P, tol)
    digits = P
    if args.json:
        print(json.dumps({"level": [level.N, level.a], "index": format_index(index), "r": str(r),
                          "precision": P, "value": mp.nstr(value.value, digits),
                          "err": mp.nstr(value.err, 3)}))
    else:
        print(f"t^r_{{{level.N},{level.a}}}({format_index(index)}) at r={r}")
        print(f"value {mp.nstr(value.value, digits)}")
        print(f"err   {mp.nstr(value.err, 3)}")
    return 0


def _cmd_expand(args, parser) -> int:
    if args.index is not None:
        index = parse_index(args.index)
        for term in interpolation_expansion(index):
            coef = "" if term.r_exponent == 0 else ("r " if term.r_exponent == 1 else f"r^{term.r_exponent} ")
            print(f"{coef}t({format_index(term.index)})")
        return 0
    if args.orders is None or args.level is None or args.residue is None:
        parser.error("expand needs --index, or --level, --residue and --orders")
    level = LevelData(args.level, args.residue)
    bounds = uvw_bounds_for_weight(args.max_weight)
    sol = solve_phi0(level, args.orders, *bounds)
    if args.oracle:
        print(json.dumps(oracle_table(sol, args.max_weight), indent=1))
        return 0
    for m in range(args.orders + 1):
        for mono, coeff in sol.series[m].items():
            print(f"z^{m} {monomial_name(mono)}: {coeff}")
    return 0


def _parse_params(items: list[str], parser) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key or key.startswith("_"):
            parser.error(f"--param expects KEY=JSON, got {item!r}")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def _cmd_verify(args, config, parser) -> int:
    if args.list:
        for entry in catalogue():
            print(f"{entry['id']:24} {entry['kind']:8} {entry['statement']}")
        return 0
    ids = list(REGISTRY) if args.all else args.check
    if not ids:
        parser.error("verify needs --check ID or --all")
    overrides = _parse_params(args.param, parser)
    unused = sorted(k for k in overrides if not any(k in REGISTRY[c].defaults for c in ids if c in REGISTRY))
    if unused:
        parser.error(f"no selected check takes parameter(s) {', '.join(unused)}")
    per_check = config.get("checks", {})
    specs = []
    for cid in ids:
        if cid not in REGISTRY:
            raise UnknownCheck(f"unknown check id {cid!r}; known: {', '.join(REGISTRY)}")
        params = dict(per_check.get(cid, {}))
        params.update({k: v for k, v in overrides.items() if k in REGISTRY[cid].defaults})
        specs.append(CheckSpec(cid, params))
    jobs = _pick(args.jobs, config, "jobs", 1)
    reports = run_checks(specs, jobs)
    doc = report_json(reports)
    if args.json == "-":
        print(json.dumps(doc, indent=1, ensure_ascii=False))
    else:
        if args.json:
            with open(args.json, "w") as fh:
                json.dump(doc, fh, indent=1, ensure_ascii=False)
        for rep in reports:
            note = f" ({rep.reason})" if rep.reason else ""
            print(f"{rep.status.upper():7} {rep.id}{note} [{rep.ms} ms]")
            for case in rep.counterexamples[:3]:
                diff = case.delta if case.delta is not None else case.coeff_diff
                print(f"        {case.desc}: lhs {case.lhs}, rhs {case.rhs}, diff {diff}")
    return exit_code(reports)


def _cmd_cache(args, cache: ValueCache) -> int:
    if cache.path is None:
        print(f"no cache directory configured (set {CACHE_ENV} or --cache-dir)")
        return 0
    if args.action == "clear":
        n = cache.clear()
        print(f"removed {n} entries from {cache.path}")
    else:
        print(f"{cache.path}: {len(cache)} entries, {cache.skipped} corrupt lines skipped")
        for key in cache.keys():
            hit = cache.get(key)
            print(f"{key} {mp.nstr(hit.value, 20)} ± {mp.nstr(hit.err, 3)}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args.subparser
    try:
        config = _load_config(args.config)
    except (OSError, ValueError) as exc:
        parser.error(f"cannot read config: {exc}")
    cache_dir = args.cache_dir or config.get("cache_dir") or os.environ.get(CACHE_ENV) or None
    cache = ValueCache(cache_dir)
    set_default_cache(cache)
    try:
        if args.command == "eval":
            return _cmd_eval(args, config)
        if args.command == "expand":
            return _cmd_expand(args, sub)
        if args.command == "verify":
            return _cmd_verify(args, config, sub)
        return _cmd_cache(args, cache)
    except (LevelError, InvalidIndex, NotAdmissible, UnknownCheck, InvalidParams) as exc:
        sub.print_usage(sys.stderr)
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        print(f"imtv {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceUnreachable as exc:
        print(f"imtv {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
