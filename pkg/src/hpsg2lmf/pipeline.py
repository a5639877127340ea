"""
End-to-end conversion: HPSG lexica in, one LMF/TEI lexical resource out.

Entries are read one ``<fs>`` fragment at a time, classified, projected and
placed.  Projection may run on a worker pool; placement always happens in
input order on the calling thread, so the output does not depend on
``jobs``.
"""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from hpsg2lmf.diagnostics import CONFLICT_KINDS, LOSS_KINDS, Diagnostic, write_report
from hpsg2lmf.fs import HpsgEntry, LexiconParseError, iter_lexicon
from hpsg2lmf.lmf import LmfInvariantError, LmfLexicalResource, serialize_tei, validate
from hpsg2lmf.merge import Draft, MergeKey, Merger, assemble, compute_merge_key
from hpsg2lmf.rules import Projection, Projector, load_rule_pins, load_value_map
from hpsg2lmf.schema import (
    ClassificationError,
    Registry,
    builtin_registry,
    classify,
    is_canonical_form,
    load_registry,
)

log = logging.getLogger(__name__)

MERGE_KINDS = frozenset({
    "conflict", "duplicate-canonical", "duplicate-form", "lemma-pending",
    "ambiguous-family", "missing-key",
})


class FatalError(Exception):
    """Conversion cannot produce an output."""


class ConfigError(FatalError):
    pass


@dataclass
class RunConfig:
    inputs: Sequence[str]
    output: str
    registry: Optional[str] = None
    rules: Optional[str] = None
    values: Optional[str] = None
    strict: bool = False
    loss_report: Optional[str] = None
    merge_report: Optional[str] = None
    stats: Optional[str] = None
    jobs: int = 1
    language: str = "ar"
    compat: bool = False

    def check(self) -> None:
        if not self.inputs:
            raise ConfigError("at least one input lexicon is required")
        if not self.output:
            raise ConfigError("an output path is required")
        parent = os.path.dirname(os.path.abspath(self.output))
        if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
            raise ConfigError(f"output directory {parent} is not writable")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")


STAT_COLUMNS = ("input", "output", "new", "attached", "promoted", "folded", "rejected")


@dataclass
class RunStats:
    categories: Dict[str, Counter] = field(default_factory=lambda: defaultdict(Counter))
    diagnostics: Counter = field(default_factory=Counter)
    wall_time: float = 0.0
    status: int = 0

    def conserved(self) -> bool:
        """Every input entry is accounted for exactly once."""
        return all(
            c["input"] == c["new"] + c["attached"] + c["promoted"] + c["folded"] + c["rejected"]
            for c in self.categories.values()
        )

    def total(self, column: str) -> int:
        return sum(c[column] for c in self.categories.values())

    def as_dict(self) -> dict:
        return {
            "categories": {k: {c: v[c] for c in STAT_COLUMNS} for k, v in sorted(self.categories.items())},
            "diagnostics": dict(sorted(self.diagnostics.items())),
            "wall_time": round(self.wall_time, 3),
            "status": self.status,
            "conserved": self.conserved(),
        }

    def format(self) -> str:
        rows = [("category",) + STAT_COLUMNS]
        for name in sorted(self.categories):
            rows.append((name,) + tuple(str(self.categories[name][c]) for c in STAT_COLUMNS))
        rows.append(("total",) + tuple(str(self.total(c)) for c in STAT_COLUMNS))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        lines.append("")
        for kind, n in sorted(self.diagnostics.items()):
            lines.append(f"diagnostics {kind}: {n}")
        lines.append(f"wall time: {self.wall_time:.3f}s")
        lines.append("--- summary (json)")
        lines.append(json.dumps(self.as_dict(), ensure_ascii=False, sort_keys=True))
        return "\n".join(lines) + "\n"


class Conversion(NamedTuple):
    resource: LmfLexicalResource
    diagnostics: List[Diagnostic]
    stats: RunStats


class _Projected(NamedTuple):
    entry: HpsgEntry
    projection: Optional[Projection]
    draft: Optional[Draft]
    key: Optional[MergeKey]
    canonical: bool
    diagnostics: List[Diagnostic]


class Converter:
    """Reusable conversion settings (registry, value map, rule pins)."""

    def __init__(
        self,
        registry: Optional[Registry] = None,
        values: Optional[dict] = None,
        pins: Optional[dict] = None,
        language: str = "ar",
    ):
        self.registry = registry or builtin_registry()
        self.values = values or {}
        self.pins = pins or {}
        self.language = language

    @classmethod
    def from_config(cls, config: RunConfig) -> "Converter":
        try:
            registry = load_registry(config.registry) if config.registry else None
            values = load_value_map(config.values) if config.values else None
            pins = load_rule_pins(config.rules) if config.rules else None
        except (OSError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        return cls(registry, values, pins, config.language)

    def projector(self) -> Projector:
        return Projector(self.registry, values=self.values, pins=self.pins)

    def project(self, entry: HpsgEntry) -> _Projected:
        diagnostics: List[Diagnostic] = []
        try:
            category = classify(entry)
        except ClassificationError as exc:
            diagnostics.append(Diagnostic("classify", str(exc), source=str(entry.source),
                                          feature="MAJ", values=(str(exc.raw),)))
            return _Projected(entry, None, None, None, False, diagnostics)
        projection = self.projector().project(entry, category)
        diagnostics += projection.diagnostics
        draft = assemble(entry, projection, diagnostics)
        canonical = is_canonical_form(entry, category, self.registry)
        key = compute_merge_key(entry, projection, draft, diagnostics, canonical, self.registry)
        return _Projected(entry, projection, draft, key, canonical, diagnostics)

    @staticmethod
    def _entries(sources: Iterable, parse_diagnostics: List[Diagnostic]) -> Iterator[HpsgEntry]:
        for source in sources:
            try:
                yield from iter_lexicon(source, parse_diagnostics)
            except OSError as exc:
                raise FatalError(f"cannot read {source}: {exc}") from None
            except LexiconParseError as exc:
                raise FatalError(str(exc)) from None

    def convert(self, sources: Iterable, jobs: int = 1) -> Conversion:
        started = time.perf_counter()
        diagnostics: List[Diagnostic] = []
        parse_diagnostics: List[Diagnostic] = []
        merger = Merger(self.language, self.registry)
        entries = self._entries(sources, parse_diagnostics)
        if jobs > 1:
            with ThreadPoolExecutor(jobs) as pool:
                for item in pool.map(self.project, entries, chunksize=64):
                    self._place(merger, item, diagnostics)
        else:
            for entry in entries:
                self._place(merger, self.project(entry), diagnostics)
        # one entry-level parse diagnostic per rejected fragment
        for _ in parse_diagnostics:
            merger.reject(None)
        diagnostics = parse_diagnostics + diagnostics
        resource = merger.finish()
        diagnostics += merger.diagnostics
        stats = RunStats()
        for name, counts in merger.counts.items():
            stats.categories[name].update(counts)
        for entry in resource.entries():
            stats.categories[entry.id.split(":")[1]]["output"] += 1
        stats.diagnostics.update(d.kind for d in diagnostics)
        stats.wall_time = time.perf_counter() - started
        return Conversion(resource, diagnostics, stats)

    @staticmethod
    def _place(merger: Merger, item: _Projected, diagnostics: List[Diagnostic]) -> None:
        diagnostics += item.diagnostics
        if item.projection is None:
            merger.reject(None)
            return
        merger.place(item.entry, item.projection, item.draft, item.key, item.canonical)


def convert(sources: Iterable, registry: Optional[Registry] = None, jobs: int = 1, **kw) -> Conversion:
    return Converter(registry, **kw).convert(sources, jobs)


def strict_failures(diagnostics: Iterable[Diagnostic]) -> List[Diagnostic]:
    return [d for d in diagnostics if d.kind in LOSS_KINDS or d.kind in CONFLICT_KINDS]


def run(config: RunConfig) -> RunStats:
    """Convert ``config.inputs`` into ``config.output`` and write the reports.

    Raises :class:`FatalError` when no output can be produced.  The returned
    ``status`` is 1 under ``strict`` when any loss or conflict was reported,
    0 otherwise.
    """
    config.check()
    converter = Converter.from_config(config)
    result = converter.convert(config.inputs, config.jobs)
    violations = validate(result.resource)
    if violations:
        listing = "\n".join(f"  {v.entry_id or '-'}: {v.message}" for v in violations)
        raise FatalError(f"invalid output resource:\n{listing}")
    try:
        data = serialize_tei(result.resource, compat=config.compat)
    except LmfInvariantError as exc:
        raise FatalError(str(exc)) from None
    with open(config.output, "wb") as fp:
        fp.write(data)
    if config.loss_report:
        write_report(config.loss_report, (d for d in result.diagnostics if d.kind in LOSS_KINDS),
                     "loss report")
    if config.merge_report:
        write_report(config.merge_report, (d for d in result.diagnostics if d.kind in MERGE_KINDS),
                     "merge report")
    stats = result.stats
    if config.strict and strict_failures(result.diagnostics):
        stats.status = 1
    if config.stats:
        with open(config.stats, "w", encoding="utf-8") as fp:
            fp.write(stats.format())
    for d in result.diagnostics:
        log.debug("%s", d.as_line())
    return stats
