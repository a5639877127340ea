"""
Placement of projected entries into an LMF lexicon.

HPSG lexica give every form, canonical or inflected, an AVM of its own; in
LMF a canonical (or derived) form and all its inflected forms make up one
lexical entry.  The :class:`Merger` decides for each projected entry whether
it starts a new LMF entry, joins an existing one as an inflected form, or
supplies the lemma of an entry first seeded by one of its inflected forms.
"""

from __future__ import annotations

import enum
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from hpsg2lmf.diagnostics import Diagnostic
from hpsg2lmf.fs import HpsgEntry
from hpsg2lmf.lmf import (
    INFLECTED,
    LEMMA,
    LmfForm,
    LmfLexicalEntry,
    LmfLexicalResource,
    LmfLexicon,
    SemanticArgument,
    SemanticPredicate,
    SubcatFrame,
    SyntacticArgument,
)
from hpsg2lmf.rules import (
    CONSTITUENT,
    FUNCTION,
    WRITTEN_FORM,
    Projection,
    Target,
)
from hpsg2lmf.schema import (
    DENUDED,
    LexicalCategory,
    Registry,
    builtin_registry,
    is_canonical_form,
)

NORMAL_FORM = "NFC"
CATEGORY_ORDER = {LexicalCategory.VERB: 0, LexicalCategory.NOUN: 1, LexicalCategory.PARTICLE: 2}


def normalize(text: str) -> str:
    return unicodedata.normalize(NORMAL_FORM, text)


@dataclass(frozen=True)
class MergeKey:
    category: LexicalCategory
    key_fields: Tuple[Tuple[str, str], ...]
    # vocalized canonical orthography; None when an inflected form does not name it
    vocalized_lemma: Optional[str] = None

    @property
    def family(self) -> Tuple[LexicalCategory, Tuple[Tuple[str, str], ...]]:
        return self.category, self.key_fields


@dataclass
class Draft:
    """One projected HPSG entry, grouped by LMF class."""

    orthography: str
    entry_attributes: Dict[str, str] = field(default_factory=dict)
    form_attributes: Dict[str, str] = field(default_factory=dict)
    frames: List[List[SyntacticArgument]] = field(default_factory=list)
    predicates: List[List[SemanticArgument]] = field(default_factory=list)
    features: Dict[str, str] = field(default_factory=dict)


def assemble(entry: HpsgEntry, projection: Projection, diagnostics: List[Diagnostic]) -> Draft:
    draft = Draft(entry.phon)
    frames: Dict[str, Dict[str, SyntacticArgument]] = {}
    preds: Dict[str, List[SemanticArgument]] = {}

    def put(target: Dict[str, str], e):
        old = target.get(e.attribute)
        if old is not None and old != e.value:
            diagnostics.append(Diagnostic(
                "conflict", f"{e.attribute} given twice in one entry; keeping the first",
                source=str(entry.source), feature=e.feature, values=(old, e.value)))
            return
        target[e.attribute] = e.value

    for e in projection.emissions:
        if e.feature and e.feature not in draft.features and e.target in (Target.LEXICAL_ENTRY, Target.FORM):
            draft.features[e.feature] = e.value
        if e.target is Target.SYNTACTIC_ARGUMENT:
            frame_key, _, arg_key = e.grouping_key.partition(".")
            args = frames.setdefault(frame_key, {})
            arg = args.get(arg_key)
            if arg is None:
                arg = args[arg_key] = SyntacticArgument("", "")
            if e.attribute == FUNCTION:
                arg.function = e.value
            elif e.attribute == CONSTITUENT:
                arg.constituent = e.value
            else:
                put(arg.attributes, e)
        elif e.target is Target.SEMANTIC_ARGUMENT:
            preds.setdefault(e.grouping_key, []).append(SemanticArgument(e.attribute, e.value))
        elif e.feature == "PHON" and e.attribute == WRITTEN_FORM:
            continue  # the orthography itself
        elif e.target is Target.FORM:
            put(draft.form_attributes, e)
        else:
            put(draft.entry_attributes, e)
    draft.frames = [list(args.values()) for args in frames.values()]
    labels = {a.attributes["label"] for f in draft.frames for a in f if "label" in a.attributes}
    for args in preds.values():
        for arg in args:
            if arg.value in labels:
                arg.link = arg.value
        draft.predicates.append(args)
    return draft


def compute_merge_key(
    entry: HpsgEntry,
    projection: Projection,
    draft: Draft,
    diagnostics: Optional[List[Diagnostic]] = None,
    canonical: Optional[bool] = None,
    registry: Optional[Registry] = None,
) -> Optional[MergeKey]:
    """Identity of the form family ``entry`` belongs to, or None if it stands alone."""
    category = projection.category
    if category is LexicalCategory.PARTICLE or not projection.inflecting:
        return None
    if canonical is None:
        canonical = is_canonical_form(entry, category, registry or builtin_registry())
    values = draft.features
    if category is LexicalCategory.VERB:
        if values.get("DENUDE") in DENUDED:
            names = ("RADICAL", "DENUDE")
        else:
            names = ("RADICAL", "SCHEME")
    else:
        names = ("NATURE", "RADICAL")
    missing = [n for n in names if not values.get(n)]
    if missing:
        if diagnostics is not None:
            diagnostics.append(Diagnostic(
                "missing-key", f"{category} lacks {', '.join(missing)}; entry stands alone",
                source=str(entry.source), feature=missing[0]))
        return None
    fields = tuple((n, normalize(values[n])) for n in names)
    if canonical:
        marker = normalize(entry.phon)
    else:
        marker = values.get("LEMMA")
        marker = normalize(marker) if marker else None
    return MergeKey(category, fields, marker)


class Placement(str, enum.Enum):
    NEW_ENTRY = "new_entry"
    ATTACH_INFLECTED = "attach_inflected"
    PROMOTE_LEMMA = "promote_lemma"
    FOLD = "fold"
    REJECTED = "rejected"


@dataclass
class _Record:
    seq: int
    category: LexicalCategory
    key: Optional[MergeKey]
    marker: Optional[str]
    attributes: Dict[str, str] = field(default_factory=dict)
    lemma: Optional[LmfForm] = None
    inflected: List[LmfForm] = field(default_factory=list)
    frames: List[List[SyntacticArgument]] = field(default_factory=list)
    predicates: List[List[SemanticArgument]] = field(default_factory=list)
    sources: List[str] = field(default_factory=list)

    @property
    def pending(self) -> bool:
        return self.lemma is None


class MergeIndex:
    """Form families seen so far: (category, key fields) -> records."""

    def __init__(self):
        self._families: Dict[tuple, List[_Record]] = defaultdict(list)

    def family(self, key: MergeKey) -> List[_Record]:
        return self._families[key.family]

    def add(self, record: _Record) -> None:
        self._families[record.key.family].append(record)

    def __len__(self):
        return sum(len(v) for v in self._families.values())


def _form_sort_key(form: LmfForm):
    return normalize(form.orthography), sorted(form.attributes.items())


def _args_signature(args):
    return tuple((a.function, a.constituent, tuple(sorted(a.attributes.items()))) for a in args)


def _pred_signature(args):
    return tuple((a.role, a.value, a.link or "") for a in args)


def _standalone_signature(category: LexicalCategory, draft: Draft) -> tuple:
    return (
        category,
        normalize(draft.orthography),
        tuple(sorted(draft.entry_attributes.items())),
        tuple(sorted(draft.form_attributes.items())),
        tuple(_args_signature(f) for f in draft.frames),
        tuple(_pred_signature(p) for p in draft.predicates),
    )


class Merger:
    def __init__(self, language: str = "ar", registry: Optional[Registry] = None):
        self.language = language
        self.registry = registry or builtin_registry()
        self.index = MergeIndex()
        self.records: List[_Record] = []
        self.diagnostics: List[Diagnostic] = []
        self.counts: Dict[str, Counter] = defaultdict(Counter)
        # keyless entries, by full content: only exact repeats fold
        self._standalone: Dict[tuple, _Record] = {}

    def _new(self, category, key, marker, source) -> _Record:
        rec = _Record(len(self.records), category, key, marker)
        rec.sources.append(source)
        self.records.append(rec)
        if key is not None:
            self.index.add(rec)
        return rec

    def _fold(self, rec: _Record, draft: Draft, source: str) -> None:
        for name, value in draft.entry_attributes.items():
            old = rec.attributes.get(name)
            if old is None:
                rec.attributes[name] = value
            elif old != value:
                self.diagnostics.append(Diagnostic(
                    "conflict", f"{name} differs within one lexical entry; keeping the first",
                    source=source, entry=rec.sources[0], feature=name, values=(old, value)))
        have = {_args_signature(f) for f in rec.frames}
        for frame in draft.frames:
            if _args_signature(frame) not in have:
                rec.frames.append(frame)
                have.add(_args_signature(frame))
        have = {_pred_signature(p) for p in rec.predicates}
        for pred in draft.predicates:
            if _pred_signature(pred) not in have:
                rec.predicates.append(pred)
                have.add(_pred_signature(pred))
        if source not in rec.sources:
            rec.sources.append(source)

    def _lemma_form(self, draft: Draft) -> LmfForm:
        return LmfForm(draft.orthography, LEMMA, dict(draft.form_attributes))

    def place(
        self,
        entry: HpsgEntry,
        projection: Projection,
        draft: Draft,
        key: Optional[MergeKey],
        canonical: bool = True,
    ) -> Placement:
        source = str(entry.source)
        category = projection.category
        counts = self.counts[category.value]
        counts["input"] += 1
        if key is None:
            signature = _standalone_signature(category, draft)
            rec = self._standalone.get(signature)
            if rec is not None:
                self.diagnostics.append(Diagnostic(
                    "duplicate-canonical", f"repeated entry {draft.orthography}; folded",
                    source=source, entry=rec.sources[0], values=(draft.orthography,)))
                if source not in rec.sources:
                    rec.sources.append(source)
                counts["folded"] += 1
                return Placement.FOLD
            rec = self._new(category, None, None, source)
            self._standalone[signature] = rec
            rec.lemma = self._lemma_form(draft)
            self._fold(rec, draft, source)
            counts["new"] += 1
            return Placement.NEW_ENTRY
        family = self.index.family(key)
        if canonical:
            rec = next((r for r in family if r.marker == key.vocalized_lemma), None)
            if rec is None:
                unmarked = [r for r in family if r.marker is None and r.pending]
                if len(unmarked) == 1:
                    rec = unmarked[0]
                    rec.marker = key.vocalized_lemma
            if rec is None:
                rec = self._new(category, key, key.vocalized_lemma, source)
                rec.lemma = self._lemma_form(draft)
                self._fold(rec, draft, source)
                counts["new"] += 1
                return Placement.NEW_ENTRY
            if rec.pending:
                rec.lemma = self._lemma_form(draft)
                self._fold(rec, draft, source)
                counts["promoted"] += 1
                return Placement.PROMOTE_LEMMA
            self.diagnostics.append(Diagnostic(
                "duplicate-canonical", f"second canonical form for {key.vocalized_lemma}; folded",
                source=source, entry=rec.sources[0], values=(rec.lemma.orthography, draft.orthography)))
            for name, value in draft.form_attributes.items():
                old = rec.lemma.attributes.setdefault(name, value)
                if old != value:
                    self.diagnostics.append(Diagnostic(
                        "conflict", f"lemma form {name} differs; keeping the first",
                        source=source, entry=rec.sources[0], feature=name, values=(old, value)))
            self._fold(rec, draft, source)
            counts["folded"] += 1
            return Placement.FOLD

        # inflected form
        marker = key.vocalized_lemma
        rec = None
        if marker is not None:
            rec = next((r for r in family if r.marker == marker), None)
            if rec is None:
                unmarked = [r for r in family if r.marker is None]
                if len(unmarked) == 1:
                    rec = unmarked[0]
                    rec.marker = marker
        elif len(family) == 1:
            rec = family[0]
        elif len(family) > 1:
            rec = min(family, key=lambda r: (r.marker or "", r.seq))
            self.diagnostics.append(Diagnostic(
                "ambiguous-family",
                f"{len(family)} entries share {dict(key.key_fields)}; attached to {rec.marker}",
                source=source, values=tuple(sorted(r.marker or "-" for r in family))))
        form = LmfForm(draft.orthography, INFLECTED, dict(draft.form_attributes))
        if rec is None:
            rec = self._new(category, key, marker, source)
            rec.inflected.append(form)
            self._fold(rec, draft, source)
            counts["new"] += 1
            return Placement.NEW_ENTRY
        if form in rec.inflected:
            self.diagnostics.append(Diagnostic(
                "duplicate-form", f"inflected form {form.orthography} already present; folded",
                source=source, entry=rec.sources[0]))
            self._fold(rec, draft, source)
            counts["folded"] += 1
            return Placement.FOLD
        rec.inflected.append(form)
        self._fold(rec, draft, source)
        counts["attached"] += 1
        return Placement.ATTACH_INFLECTED

    def reject(self, category: Optional[LexicalCategory]) -> None:
        label = category.value if category else "unknown"
        self.counts[label]["input"] += 1
        self.counts[label]["rejected"] += 1

    def finish(self) -> LmfLexicalResource:
        """Resolve pending lemmas, order entries canonically and assign ids."""
        built = []
        for rec in self.records:
            inflected = sorted(rec.inflected, key=_form_sort_key)
            lemma = rec.lemma
            if lemma is None:
                first = inflected.pop(0)
                lemma = LmfForm(first.orthography, LEMMA, first.attributes, provisional=True)
                self.diagnostics.append(Diagnostic(
                    "lemma-pending",
                    f"no canonical form arrived; {first.orthography} used as provisional lemma",
                    entry=rec.sources[0], values=(first.orthography,)))
            entry = LmfLexicalEntry("", dict(rec.attributes), [lemma] + inflected, merge_key=rec.key)
            entry.syntactic_behaviours = [
                SubcatFrame("", [SyntacticArgument(a.function, a.constituent, dict(a.attributes))
                                 for a in args])
                for args in sorted(rec.frames, key=_args_signature)
            ]
            entry.senses = [
                SemanticPredicate("", [SemanticArgument(a.role, a.value, a.link) for a in args])
                for args in sorted(rec.predicates, key=_pred_signature)
            ]
            built.append((rec.category, entry))
        built.sort(key=lambda ce: (
            CATEGORY_ORDER[ce[0]],
            normalize(ce[1].lemma.orthography),
            sorted(ce[1].attributes.items()),
            sorted(ce[1].lemma.attributes.items()),
            [_form_sort_key(f) for f in ce[1].inflected_forms],
        ))
        ordinals: Counter = Counter()
        entries = []
        for category, entry in built:
            entry.id = f"{self.language}:{category.value}:{ordinals[category]}"
            ordinals[category] += 1
            _assign_ids(entry)
            entries.append(entry)
        return LmfLexicalResource({"language": self.language}, [LmfLexicon(self.language, entries)])


def _assign_ids(entry: LmfLexicalEntry) -> None:
    by_label: Dict[str, str] = {}
    for i, frame in enumerate(entry.syntactic_behaviours):
        frame.id = f"{entry.id}.frame{i}"
        for j, arg in enumerate(frame.arguments):
            arg.id = f"{frame.id}.arg{j}"
            label = arg.attributes.get("label")
            if label is not None:
                by_label.setdefault(label, arg.id)
    for i, pred in enumerate(entry.senses):
        pred.id = f"{entry.id}.pred{i}"
        for arg in pred.arguments:
            if arg.link is not None:
                arg.link = by_label.get(arg.link)
