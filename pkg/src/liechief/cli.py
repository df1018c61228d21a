"""Command line surface.

    liechief check FILE --suite ID [--seed N] [--format text|json] [--max-dim D]
    liechief catalog list
    liechief catalog dump NAME

FILE may also be a catalog name.  Exit codes: 0 all checks pass, 1 at least
one failure, 2 input error.  LIECHIEF_SEED overrides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import reps
from .catalog import catalog_names, get as catalog_get
from .fileio import SpecFileError, load_spec, spec_to_dict
from .suites import SUITE_IDS, emit_report, run_suite


def _default_seed() -> int:
    try:
        return int(os.environ.get("LIECHIEF_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liechief", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a verification suite on an algebra file")
    check.add_argument("file", help="algebra JSON file, or a catalog name")
    check.add_argument("--suite", default="all", choices=SUITE_IDS)
    check.add_argument("--seed", type=int, default=None)
    check.add_argument("--format", dest="fmt", default="text", choices=("text", "json"))
    check.add_argument("--max-dim", type=int, default=None, help="override the MeatAxe module-dimension guard")

    cat = sub.add_parser("catalog", help="built-in example algebras")
    catsub = cat.add_subparsers(dest="catalog_command", required=True)
    catsub.add_parser("list", help="list catalog names")
    dump = catsub.add_parser("dump", help="print a catalog algebra as a JSON file")
    dump.add_argument("name")
    return parser


def _load(path: str):
    if os.path.exists(path):
        return load_spec(path)
    try:
        return catalog_get(path)
    except KeyError:
        raise SpecFileError(path, "no such file, and not a catalog name") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        if args.catalog_command == "list":
            for name in catalog_names():
                print(name)
            return 0
        try:
            spec = catalog_get(args.name)
        except KeyError as exc:
            print(exc.args[0], file=sys.stderr)
            return 2
        print(json.dumps(spec_to_dict(spec), sort_keys=True, indent=2))
        return 0

    if args.max_dim is not None:
        reps.MAX_MODULE_DIM = args.max_dim
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        spec = _load(args.file)
    except SpecFileError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"input error: {args.file}: {exc}", file=sys.stderr)
        return 2
    report = run_suite(spec, args.suite, seed)
    sys.stdout.write(emit_report(report, args.fmt))
    return 0 if report.verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
