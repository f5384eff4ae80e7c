"""Command line front end.

Subcommands: ``run`` executes a scenario (file path or catalog name),
``verify`` statically validates one, ``catalog list`` shows the built-in
scenarios, and ``acceptance`` drives the full acceptance suite.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..errors import ConfigError
from .acceptance import run_acceptance
from .catalog import CATALOG, catalog_names
from .runner import load_config, run, verify


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regsweep",
        description="Sweeping processes with prox-regular moving constraints",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario and write artifacts")
    p_run.add_argument("config", help="path to a scenario JSON file or a catalog name")
    p_run.add_argument("--out-dir", default="out", help="artifact directory (default: ./out)")
    p_run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p_run.add_argument(
        "--format",
        default=None,
        help="comma separated artifact formats, e.g. csv,svg (default: scenario setting)",
    )

    p_verify = sub.add_parser("verify", help="validate a scenario without solving")
    p_verify.add_argument("config", help="path to a scenario JSON file or a catalog name")

    p_cat = sub.add_parser("catalog", help="inspect the built-in scenario catalog")
    cat_sub = p_cat.add_subparsers(dest="catalog_command", required=True)
    cat_sub.add_parser("list", help="list built-in scenarios")
    p_show = cat_sub.add_parser("show", help="print a built-in scenario as JSON")
    p_show.add_argument("name")

    p_acc = sub.add_parser("acceptance", help="run the acceptance suite")
    p_acc.add_argument(
        "--only",
        default=None,
        help="comma separated criterion numbers to run (default: all)",
    )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "run":
        formats = args.format.split(",") if args.format else None
        try:
            record = run(args.config, args.out_dir, seed=args.seed, formats=formats)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for exp in record.experiments:
            print(f"{record.scenario}: {exp.kind}: {exp.status}")
        print(f"record: {args.out_dir}/{record.scenario}/run_record.json")
        return 0 if record.ok else 1

    if args.command == "verify":
        try:
            report = verify(args.config)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(report)
        return 0 if report.ok else 1

    if args.command == "catalog":
        if args.catalog_command == "list":
            doc = sys.modules["regsweep.harness.catalog"].__doc__ or ""
            blurbs = {}
            for line in doc.splitlines():
                parts = line.strip().split(None, 1)
                if parts and parts[0].strip("`") in CATALOG:
                    blurbs[parts[0].strip("`")] = parts[1] if len(parts) > 1 else ""
            for name in catalog_names():
                print(f"{name:30s} {blurbs.get(name, '')}".rstrip())
            return 0
        if args.catalog_command == "show":
            cfg = load_config(args.name)
            print(json.dumps(cfg, indent=2, sort_keys=True))
            return 0

    if args.command == "acceptance":
        numbers = None
        if args.only:
            numbers = {int(x) for x in args.only.split(",")}
        results = run_acceptance(numbers)
        failed = [r for r in results if not r.passed]
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
        return 0 if not failed else 1

    return 2  # pragma: no cover


if __name__ == "__main__":
    raise SystemExit(main())
