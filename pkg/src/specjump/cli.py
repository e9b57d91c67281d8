"""``specjump`` command line: resolve, lct, jumps, spectrum, verify.

Exit status is 0 on success, 1 when ``verify`` finds a mismatch and 2 on
input or limit errors. With ``--format json`` errors are printed as JSON on
stdout as well.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import oracle as oracle_mod
from .errors import SpecjumpError
from .exact import DEFAULT_MAX_FACTOR_DEGREE, format_rational, parse_poly
from .multiplier import candidate_alphas, inner_jump_multiplicity, lct
from .resdata import ResolutionData, dumps, load, to_dict
from .resolver import DEFAULT_MAX_BLOWUPS, Limits, resolve_germ
from .spectrum import spectrum_table, verify_theorem

COMMANDS = ("resolve", "lct", "jumps", "spectrum", "verify")


@dataclass(frozen=True)
class RunConfiguration:
    command: str
    poly: Optional[str]
    resdata: Optional[str]
    fmt: str
    max_blowups: int
    max_factor_degree: int
    oracle_cutoff: int
    oracle: bool
    force: bool = False

    def __post_init__(self):
        if (self.poly is None) == (self.resdata is None):
            raise ValueError("exactly one of --poly and --resdata is required")
        if min(self.max_blowups, self.max_factor_degree, self.oracle_cutoff) <= 0:
            raise ValueError("limits must be positive")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="germ as text, e.g. 'x^2 + y^3'")
    src.add_argument("--resdata", help="resolution data JSON file")
    common.add_argument("--format", dest="fmt", choices=("table", "json"), default="table")
    common.add_argument("--max-blowups", type=_positive, default=DEFAULT_MAX_BLOWUPS)
    common.add_argument("--max-factor-degree", type=_positive, default=DEFAULT_MAX_FACTOR_DEGREE)
    common.add_argument("--oracle-cutoff", type=_positive, default=oracle_mod.DEFAULT_CUTOFF)
    common.add_argument("--no-oracle", dest="oracle", action="store_false")
    common.add_argument("--force", action="store_true", help="load resolution data even if it fails validation")

    parser = argparse.ArgumentParser(
        prog="specjump",
        description="Jumping numbers, inner jump multiplicities and Hodge spectrum of plane curve germs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "resolve": "print the embedded resolution data",
        "lct": "print the log canonical threshold",
        "jumps": "candidate jumping numbers with inner jump multiplicities",
        "spectrum": "Hodge spectrum on (0, 1] from the stratified sum",
        "verify": "cross-check both formulas and the colength oracle",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _data(cfg: RunConfiguration) -> ResolutionData:
    if cfg.poly is not None:
        return resolve_germ(parse_poly(cfg.poly), Limits(cfg.max_blowups, cfg.max_factor_degree))
    return load(cfg.resdata, force=cfg.force)


def _table(rows: List[List[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _render_resolve(data: ResolutionData) -> str:
    rows = [["id", "kind", "m", "k", "self", "cluster"]]
    for c in data.components:
        si = "" if c.self_intersection is None else str(c.self_intersection)
        rows.append([c.id, c.kind, str(c.m), str(c.k), si, str(c.cluster_degree)])
    inter = to_dict(data)["intersections"]
    lines = [_table(rows), "", "intersections:"]
    lines += [f"  {e['a']} . {e['b']} = {e['points']}" for e in inter]
    return "\n".join(lines)


def execute(cfg: RunConfiguration) -> tuple[int, str]:
    data = _data(cfg)
    json_out = cfg.fmt == "json"

    if cfg.command == "resolve":
        return 0, dumps(data) if json_out else _render_resolve(data)

    if cfg.command == "lct":
        value = format_rational(lct(data))
        return 0, json.dumps({"lct": value}) if json_out else value

    if cfg.command == "jumps":
        rows = [(a, inner_jump_multiplicity(data, a)) for a in candidate_alphas(data)]
        if json_out:
            payload = {
                "lct": format_rational(lct(data)),
                "candidates": [{"alpha": format_rational(a), "inner": n} for a, n in rows],
            }
            return 0, json.dumps(payload)
        table = [["alpha", "inner"]] + [[format_rational(a), str(n)] for a, n in rows]
        return 0, _table(table)

    if cfg.command == "spectrum":
        table = spectrum_table(data)
        if json_out:
            return 0, json.dumps({"spectrum": table.to_json()})
        if not len(table):
            return 0, "(empty spectrum on (0, 1])"
        return 0, _table([["alpha", "n"]] + [[format_rational(a), str(n)] for a, n in table])

    report = verify_theorem(data, use_oracle=cfg.oracle, cutoff=cfg.oracle_cutoff)
    status = 0 if report.passed else 1
    if json_out:
        return status, json.dumps(report.to_json())
    rows = [["alpha", "inner", "stratum", "oracle", "result"]]
    for e in report.entries:
        oracle_col = str(e.oracle) if e.oracle is not None else "skipped"
        rows.append([format_rational(e.alpha), str(e.inner), str(e.stratum), oracle_col, "PASS" if e.passed else "FAIL"])
    footer = f"convention: {report.convention}\nresult: {'PASS' if report.passed else 'FAIL'}"
    return status, _table(rows) + "\n\n" + footer


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfiguration(
            command=args.command,
            poly=args.poly,
            resdata=args.resdata,
            fmt=args.fmt,
            max_blowups=args.max_blowups,
            max_factor_degree=args.max_factor_degree,
            oracle_cutoff=args.oracle_cutoff,
            oracle=args.oracle,
            force=args.force,
        )
        status, text = execute(cfg)
    except (SpecjumpError, OSError) as exc:
        payload = exc.to_json() if isinstance(exc, SpecjumpError) else {"error": "io", "message": str(exc)}
        if args.fmt == "json":
            print(json.dumps(payload), file=stdout)
        print(f"specjump: error: {payload['message']}", file=stderr)
        return 2
    print(text, file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
