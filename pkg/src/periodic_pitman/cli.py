"""Command-line entry point: ``periodic-pitman <suite> [options]``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import InvalidInputError, ResourceLimitError
from .stochastic import FAMILIES
from .suites import SUITES, RunConfig, run_suite

OUT_DIR_ENV = "PERIODIC_PITMAN_OUT"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="periodic-pitman", description="Run seeded verification suites and write a report.")
    p.add_argument("suite", nargs="?", choices=SUITES + ("all",), help="suite to run")
    p.add_argument("--suite", dest="suite_flag", choices=SUITES + ("all",), help="same as the positional suite")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, help="Monte Carlo sample size")
    p.add_argument("--N", type=int, help="largest period used by the suites")
    p.add_argument("--trials", type=int, help="random instances per check")
    p.add_argument("--tol", action="append", default=[], metavar="TAG=VAL",
                   help="tolerance override, e.g. exact=1e-12 or braid-1=1e-8; repeatable")
    p.add_argument("--family", action="append", choices=FAMILIES, help="weight family; repeatable")
    p.add_argument("--out", help="output file (default: stdout, or $%s/<suite>-seed<seed>.<fmt>)" % OUT_DIR_ENV)
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    return p


def _parse_tol(items) -> dict:
    out = {}
    for item in items:
        tag, sep, val = item.partition("=")
        if not sep or not tag:
            raise _UsageError(f"--tol expects TAG=VAL, got {item!r}")
        try:
            out[tag] = float(val)
        except ValueError:
            raise _UsageError(f"--tol value for {tag!r} is not a number: {val!r}") from None
    return out


def make_config(args) -> RunConfig:
    doc = {}
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise _UsageError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(doc, dict):
            raise _UsageError("config file must hold a JSON object")
    if args.suite and args.suite_flag and args.suite != args.suite_flag:
        raise _UsageError("conflicting suite names")
    suite = args.suite or args.suite_flag
    if suite:
        doc["suite"] = suite
    for name in ("seed", "samples", "N", "trials", "out", "format"):
        val = getattr(args, name)
        if val is not None:
            doc[name] = val
    if args.family:
        doc["families"] = list(dict.fromkeys(args.family))
    if args.tol:
        doc["tolerances"] = {**doc.get("tolerances", {}), **_parse_tol(args.tol)}
    if "suite" not in doc:
        raise _UsageError("no suite given")
    try:
        return RunConfig.from_dict(doc)
    except TypeError as exc:
        raise _UsageError(str(exc)) from None


def _destination(cfg: RunConfig) -> Path | None:
    if cfg.out:
        return Path(cfg.out)
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        return Path(out_dir) / f"{cfg.suite}-seed{cfg.seed}.{cfg.format}"
    return None


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = make_config(args)
    except (_UsageError, InvalidInputError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    try:
        report = run_suite(cfg)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    text = report.render(cfg.format)
    dest = _destination(cfg)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
    failures = report.failures()
    print(f"{cfg.suite}: {len(report.records) - len(failures)}/{len(report.records)} checks passed",
          file=sys.stderr)
    for rec in failures:
        print(f"  FAIL {rec.tag} [{rec.digest}] value={rec.value!r} threshold={rec.threshold!r} {rec.detail}",
              file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
