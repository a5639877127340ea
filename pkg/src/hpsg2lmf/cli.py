"""Command line driver.

Subcommands: ``convert`` (the default when the first argument is a flag),
``validate``, ``gen`` and ``inspect``.  Exit codes: 0 success, 1 diagnostics
under ``--strict``, 2 fatal or usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from hpsg2lmf.fs import LexiconParseError, iter_lexicon
from hpsg2lmf.lmf import LmfError, read_tei, validate
from hpsg2lmf.pipeline import Converter, FatalError, RunConfig, run
from hpsg2lmf.synthetic import generate_synthetic_lexicon

EXIT_OK, EXIT_STRICT, EXIT_FATAL = 0, 1, 2

log = logging.getLogger("hpsg2lmf")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hpsg2lmf", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="convert HPSG lexica into one LMF/TEI resource")
    c.add_argument("--input", action="append", required=True, metavar="PATH",
                   help="HPSG lexicon (repeatable)")
    c.add_argument("--output", required=True, metavar="PATH")
    c.add_argument("--registry", metavar="PATH", help="feature registry override (TSV)")
    c.add_argument("--rules", metavar="PATH", help="rule pins, FEATURE<TAB>rule id")
    c.add_argument("--values", metavar="PATH", help="value translations, FEATURE<TAB>value<TAB>new")
    c.add_argument("--strict", action="store_true", help="exit 1 on any loss or conflict")
    c.add_argument("--loss-report", metavar="PATH")
    c.add_argument("--merge-report", metavar="PATH")
    c.add_argument("--stats", metavar="PATH", help="write run statistics ('-' for stdout)")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--lang", default="ar")
    c.add_argument("--compat", action="store_true",
                   help="plain TEI: omit the syntactic and semantic extension blocks")

    v = sub.add_parser("validate", help="check an LMF/TEI file against the model invariants")
    v.add_argument("path")

    g = sub.add_parser("gen", help="write a seeded synthetic HPSG lexicon")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--verbs", type=int, default=0)
    g.add_argument("--nouns", type=int, default=0)
    g.add_argument("--particles", type=int, default=0)
    g.add_argument("--output", "-o", default="-", metavar="PATH")

    i = sub.add_parser("inspect", help="print the projected emissions of entries")
    i.add_argument("path")
    i.add_argument("--entry", action="append", default=[],
                   help="entry ordinal or PHON value (default: all)")
    i.add_argument("--registry", metavar="PATH")
    return p


def _convert(args) -> int:
    config = RunConfig(
        inputs=args.input, output=args.output, registry=args.registry, rules=args.rules,
        values=args.values, strict=args.strict, loss_report=args.loss_report,
        merge_report=args.merge_report,
        stats=None if args.stats == "-" else args.stats,
        jobs=args.jobs, language=args.lang, compat=args.compat,
    )
    stats = run(config)
    if args.stats == "-":
        sys.stdout.write(stats.format())
    return EXIT_STRICT if stats.status else EXIT_OK


def _validate(args) -> int:
    diagnostics: list = []
    try:
        resource = read_tei(args.path, diagnostics)
    except (OSError, LmfError) as exc:
        raise FatalError(str(exc)) from None
    for d in diagnostics:
        print(d.as_line())
    violations = validate(resource)
    for v in violations:
        print(f"{v.entry_id or '-'}\t{v.message}")
    if violations:
        return EXIT_FATAL
    print(f"ok: {sum(1 for _ in resource.entries())} entries")
    return EXIT_OK


def _gen(args) -> int:
    try:
        data = generate_synthetic_lexicon(args.seed, args.verbs, args.nouns, args.particles)
    except ValueError as exc:
        raise FatalError(str(exc)) from None
    if args.output == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(args.output, "wb") as fp:
            fp.write(data)
    return EXIT_OK


def _inspect(args) -> int:
    config = RunConfig(inputs=[args.path], output=".", registry=args.registry)
    converter = Converter.from_config(config)
    wanted = set(args.entry)
    diagnostics: list = []
    try:
        for entry in iter_lexicon(args.path, diagnostics):
            if wanted and str(entry.source.index) not in wanted and entry.phon not in wanted:
                continue
            item = converter.project(entry)
            print(f"== {entry.source}  {entry.phon}")
            if item.projection is not None:
                print(f"   category={item.projection.category.value} "
                      f"inflecting={item.projection.inflecting} canonical={item.canonical}")
                print(f"   key={item.key}")
                for e in item.projection.emissions:
                    group = e.grouping_key or "-"
                    print(f"   {e.rule_id:<10} {e.target.value:<17} {group:<7} {e.attribute}={e.value}")
            for d in item.diagnostics:
                print(f"   ! {d.as_line()}")
    except (OSError, LexiconParseError) as exc:
        raise FatalError(str(exc)) from None
    for d in diagnostics:
        print(f"! {d.as_line()}")
    return EXIT_OK


_COMMANDS = {"convert": _convert, "validate": _validate, "gen": _gen, "inspect": _inspect}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0].startswith("--") and argv[0] not in ("--help", "--verbose"):
        argv.insert(0, "convert")
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_FATAL if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except FatalError as exc:
        print(f"hpsg2lmf: error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
