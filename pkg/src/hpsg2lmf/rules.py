"""
Projection rules from HPSG features to LMF class attributes.

Rules are organised in families keyed by layer, scope and value shape.  Family
names follow the R<n><layer> convention: ``R5m`` for mapped
morphological features of inflecting entries, ``R9m`` for MAJ/PHON of
particles and non-inflecting nouns and verbs, ``R1syn`` for complex
syntactic values (one SyntacticArgument per value), ``R2syn`` for atomic
syntactic values and ``R1sem`` for the NUCLEUS roles.

A feature matched by no rule is carried through as an ``x-hpsg:NAME``
attribute so that nothing is silently dropped.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from hpsg2lmf.diagnostics import Diagnostic
from hpsg2lmf.fs import (
    FeatureStructure,
    FeatureValue,
    FsList,
    HpsgEntry,
    atom_text,
    is_atomic,
    is_empty,
    value_to_xml,
)
from hpsg2lmf.schema import (
    SEMANTIC_ROLES,
    FeatureDescriptor,
    FeatureLayer,
    FeatureScope,
    LexicalCategory,
    Registry,
    admits_inflected_forms,
    builtin_registry,
    classify,
    terminal_features,
)

PASSTHROUGH_PREFIX = "x-hpsg:"
FUNCTION = "function"
CONSTITUENT = "syntacticConstituent"
GRAMMATICAL_CATEGORY = "grammaticalCategory"
WRITTEN_FORM = "writtenForm"

# features whose arguments always open a frame of their own
DEDICATED_FRAME = frozenset({"SPR"})
# features naming the constituent inside an argument AVM
CONSTITUENT_FEATURES = ("CONSTITUENT", "CAT", "MAJ")


class Target(str, enum.Enum):
    LEXICAL_ENTRY = "LexicalEntry"
    FORM = "Form"
    SYNTACTIC_ARGUMENT = "SyntacticArgument"
    SUBCAT_FRAME = "SubcatFrame"
    SEMANTIC_ARGUMENT = "SemanticArgument"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Emission:
    target: Target
    attribute: str
    value: str
    grouping_key: Optional[str] = None
    feature: str = ""
    rule_id: str = ""


@dataclass(frozen=True)
class RuleContext:
    name: str
    descriptor: Optional[FeatureDescriptor]
    value: FeatureValue
    category: LexicalCategory
    inflecting: bool

    @property
    def canonical(self) -> str:
        return self.descriptor.name if self.descriptor else self.name

    @property
    def atomic(self) -> bool:
        return is_atomic(self.value)

    @property
    def complex(self) -> bool:
        return not self.atomic and not is_empty(self.value)

    def layer_is(self, layer: FeatureLayer) -> bool:
        return self.descriptor is not None and self.descriptor.layer is layer

    @property
    def mapped(self) -> bool:
        return self.descriptor is not None and self.descriptor.lmf_attribute is not None


class Piece(NamedTuple):
    """One (attribute, value) produced by a rule, with a local group label."""

    attribute: str
    value: str
    group: Optional[str] = None
    target: Optional[Target] = None


@dataclass(frozen=True)
class ProjectionRule:
    rule_id: str
    family: str
    target_class: Target
    description: str
    matches: Callable[[RuleContext], bool] = field(compare=False)
    apply: Callable[[RuleContext, "Projector"], List[Piece]] = field(compare=False)


# -- matchers -----------------------------------------------------------------

_R9M_FEATURES = frozenset({"MAJ", "PHON"})


def _r9m_case(ctx: RuleContext) -> bool:
    return ctx.canonical in _R9M_FEATURES and (
        ctx.category is LexicalCategory.PARTICLE or not ctx.inflecting
    )


def _morph(scope: FeatureScope) -> Callable[[RuleContext], bool]:
    def match(ctx: RuleContext) -> bool:
        return (
            ctx.layer_is(FeatureLayer.MORPHOLOGICAL)
            and ctx.descriptor.scope is scope
            and ctx.atomic
            and ctx.mapped
            and not _r9m_case(ctx)
        )

    return match


def _r9m(ctx: RuleContext) -> bool:
    return ctx.atomic and _r9m_case(ctx)


def _r1syn(ctx: RuleContext) -> bool:
    return ctx.layer_is(FeatureLayer.SYNTACTIC) and ctx.complex and ctx.mapped


def _r2syn(ctx: RuleContext) -> bool:
    return ctx.layer_is(FeatureLayer.SYNTACTIC) and ctx.atomic and ctx.mapped


def _r1sem(ctx: RuleContext) -> bool:
    return ctx.canonical == "NUCLEUS" and ctx.complex


def _r1sem_role(ctx: RuleContext) -> bool:
    return ctx.layer_is(FeatureLayer.SEMANTIC) and ctx.atomic and ctx.mapped


# -- appliers -----------------------------------------------------------------


def _apply_attribute(ctx: RuleContext, p: "Projector") -> List[Piece]:
    return [Piece(ctx.descriptor.lmf_attribute, p.translate(ctx.canonical, ctx.value.value))]


def _apply_r9m(ctx: RuleContext, p: "Projector") -> List[Piece]:
    attr = GRAMMATICAL_CATEGORY if ctx.canonical == "MAJ" else WRITTEN_FORM
    return [Piece(attr, p.translate(ctx.canonical, ctx.value.value))]


def _self_target(ctx: RuleContext) -> Target:
    if ctx.descriptor.scope is FeatureScope.FORM:
        return Target.FORM
    return Target.LEXICAL_ENTRY


def _apply_r2syn(ctx: RuleContext, p: "Projector") -> List[Piece]:
    return [Piece(ctx.descriptor.lmf_attribute, p.translate(ctx.canonical, ctx.value.value),
                  target=_self_target(ctx))]


def positional_function(base: str, i: int) -> str:
    if base == "argument":
        if i == 0:
            return "subject"
        base, i = "object", i - 1
    if i == 0:
        return base
    ordinals = ["second", "third", "fourth"]
    prefix = ordinals[i - 1] if i <= len(ordinals) else f"n{i + 1}"
    return prefix + base[0].upper() + base[1:]


def _elements(value: FeatureValue) -> List[FeatureValue]:
    if isinstance(value, FsList):
        return list(value.items)
    return [value]


def _apply_r1syn(ctx: RuleContext, p: "Projector") -> List[Piece]:
    base = ctx.descriptor.lmf_attribute
    elements = _elements(ctx.value)
    pieces: List[Piece] = []
    if elements and all(isinstance(e, FsList) for e in elements):
        # a list of lists: one frame per alternative
        for k, alternative in enumerate(elements):
            for i, el in enumerate(alternative.items):
                pieces += p.argument(el, positional_function(base, i), ctx, f"alt{k}.a{i}")
        return pieces
    for i, el in enumerate(elements):
        pieces += p.argument(el, positional_function(base, i), ctx, f"a{i}")
    return pieces


def _apply_r1sem(ctx: RuleContext, p: "Projector") -> List[Piece]:
    pieces = []
    for name, value in p.flatten(ctx.value):
        role = name
        d = p.registry.lookup(name)
        if d is not None and d.lmf_attribute:
            role = d.lmf_attribute
        if role not in SEMANTIC_ROLES:
            p.diag("unknown-role", f"semantic role {name!r} is not registered", name, value)
        pieces.append(Piece(role, value, "p"))
    return pieces


def _apply_r1sem_role(ctx: RuleContext, p: "Projector") -> List[Piece]:
    return [Piece(ctx.descriptor.lmf_attribute, ctx.value.value, "p")]


_RULES: Tuple[ProjectionRule, ...] = (
    ProjectionRule("R9m", "R9m", Target.LEXICAL_ENTRY,
                   "MAJ and PHON of particles, non-inflected nouns and verbs",
                   _r9m, _apply_r9m),
    ProjectionRule("R5m.entry", "R5m", Target.LEXICAL_ENTRY,
                   "mapped morphological feature constant across the form family",
                   _morph(FeatureScope.ENTRY), _apply_attribute),
    ProjectionRule("R5m.form", "R5m", Target.FORM,
                   "mapped morphological feature varying per inflected form",
                   _morph(FeatureScope.FORM), _apply_attribute),
    ProjectionRule("R1syn", "R1syn", Target.SYNTACTIC_ARGUMENT,
                   "complex syntactic value, one argument per element",
                   _r1syn, _apply_r1syn),
    ProjectionRule("R2syn", "R2syn", Target.LEXICAL_ENTRY,
                   "atomic syntactic value with an LMF equivalent (class chosen by scope)",
                   _r2syn, _apply_r2syn),
    ProjectionRule("R1sem", "R1sem", Target.SEMANTIC_ARGUMENT,
                   "non-empty NUCLEUS, one semantic argument per role",
                   _r1sem, _apply_r1sem),
    ProjectionRule("R1sem.role", "R1sem", Target.SEMANTIC_ARGUMENT,
                   "semantic role given outside NUCLEUS",
                   _r1sem_role, _apply_r1sem_role),
)


def builtin_rules() -> Tuple[ProjectionRule, ...]:
    return _RULES


def mapping_table(registry: Optional[Registry] = None) -> Dict[str, str]:
    """HPSG feature name -> LMF attribute (data category) name.

    MAJ maps to ``partOfSpeech`` for inflecting entries; R9m sends it to
    ``grammaticalCategory`` for the others.
    """
    registry = registry or builtin_registry()
    return {d.name: d.lmf_attribute for d in registry if d.lmf_attribute and not d.container}


def known_attributes(registry: Optional[Registry] = None) -> frozenset:
    """Every non-passthrough attribute name a projection can emit."""
    registry = registry or builtin_registry()
    names = set(mapping_table(registry).values())
    names |= {d.argument_attribute for d in registry if d.argument_attribute}
    names |= {GRAMMATICAL_CATEGORY, WRITTEN_FORM, FUNCTION, CONSTITUENT}
    return frozenset(names)


# -- config files -------------------------------------------------------------


def _tsv(path: os.PathLike) -> Iterable[Tuple[int, List[str]]]:
    with open(path, encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, [c.strip() for c in line.split("\t")]


def load_value_map(path: os.PathLike) -> Dict[Tuple[str, str], str]:
    """``FEATURE<TAB>value<TAB>replacement`` lines; FEATURE may be ``*``."""
    out = {}
    for lineno, cols in _tsv(path):
        if len(cols) != 3:
            raise ValueError(f"{os.fspath(path)}:{lineno}: expected 3 tab-separated columns")
        out[(cols[0], cols[1])] = cols[2]
    return out


def load_rule_pins(path: os.PathLike) -> Dict[str, str]:
    """``FEATURE<TAB>rule_id`` lines forcing the rule tried first for a feature."""
    ids = {r.rule_id for r in _RULES}
    out = {}
    for lineno, cols in _tsv(path):
        if len(cols) != 2 or cols[1] not in ids:
            raise ValueError(f"{os.fspath(path)}:{lineno}: expected FEATURE<TAB>rule id, one of {sorted(ids)}")
        out[cols[0]] = cols[1]
    return out


# -- engine -------------------------------------------------------------------


class Projection(NamedTuple):
    emissions: List[Emission]
    diagnostics: List[Diagnostic]
    category: LexicalCategory
    inflecting: bool


class Projector:
    """Applies a rule table to one entry at a time.

    Holds no state between entries; frame and predicate numbering is reset
    by :meth:`project`.
    """

    def __init__(
        self,
        registry: Optional[Registry] = None,
        rules: Optional[Sequence[ProjectionRule]] = None,
        values: Optional[Dict[Tuple[str, str], str]] = None,
        pins: Optional[Dict[str, str]] = None,
    ):
        self.registry = registry or builtin_registry()
        self.rules = tuple(rules) if rules is not None else builtin_rules()
        self.values = values or {}
        self.pins = pins or {}
        self._by_id = {r.rule_id: r for r in self.rules}
        self._diagnostics: List[Diagnostic] = []
        self._source = ""

    # helpers used by the rule appliers

    def translate(self, feature: str, value: str) -> str:
        return self.values.get((feature, value), self.values.get(("*", value), value))

    def diag(self, kind: str, message: str, feature: Optional[str] = None, *values: str) -> None:
        self._diagnostics.append(
            Diagnostic(kind, message, source=self._source, feature=feature, values=tuple(values))
        )

    def flatten(self, value: FeatureValue, prefix: str = "") -> List[Tuple[str, str]]:
        """Atomic (name, value) pairs below an AVM; lists are serialized whole."""
        out = []
        if isinstance(value, FeatureStructure):
            for name, v in value:
                if is_atomic(v):
                    out.append((name, v.value))
                elif isinstance(v, FeatureStructure):
                    out += self.flatten(v)
                elif len(v):
                    out.append((name, value_to_xml(v)))
        elif isinstance(value, FsList):
            for v in value:
                out += self.flatten(v)
        return out

    def argument(self, element: FeatureValue, function: str, ctx: RuleContext, group: str) -> List[Piece]:
        if is_atomic(element):
            return [Piece(FUNCTION, function, group),
                    Piece(CONSTITUENT, self.translate(ctx.canonical, element.value), group)]
        constituent = element.type if isinstance(element, FeatureStructure) else None
        attrs: List[Piece] = []
        for name, value in self.flatten(element):
            canon = self.registry.canonical_name(name) or name
            if canon == "FUNCTION":
                function = value
                continue
            if constituent is None and canon in CONSTITUENT_FEATURES:
                constituent = self.translate(canon, value)
                continue
            d = self.registry.lookup(name)
            if d is None:
                self.diag("loss", f"unregistered feature {name} inside {ctx.canonical} argument",
                          name, value)
                attrs.append(Piece(PASSTHROUGH_PREFIX + name, value, group))
                continue
            attr = d.argument_attribute or d.lmf_attribute
            if attr is None:
                attrs.append(Piece(PASSTHROUGH_PREFIX + name, value, group))
                continue
            attrs.append(Piece(attr, self.translate(canon, value), group))
        if not constituent:
            self.diag("incomplete-argument", f"{ctx.canonical} argument without constituent",
                      ctx.canonical)
            constituent = "unspecified"
        return [Piece(FUNCTION, function, group), Piece(CONSTITUENT, constituent, group)] + attrs

    # engine

    def select(self, ctx: RuleContext) -> Optional[ProjectionRule]:
        pinned = self.pins.get(ctx.canonical) or self.pins.get(ctx.name)
        if pinned:
            rule = self._by_id.get(pinned)
            if rule is not None and rule.matches(ctx):
                return rule
            self.diag("rule-pin-ignored", f"pinned rule {pinned} does not accept {ctx.name}",
                      ctx.name)
        for rule in self.rules:
            if rule.matches(ctx):
                return rule
        return None

    def project(
        self,
        entry: HpsgEntry,
        category: Optional[LexicalCategory] = None,
        inflecting: Optional[bool] = None,
    ) -> Projection:
        self._diagnostics = []
        self._source = str(entry.source)
        if category is None:
            category = classify(entry)
        if inflecting is None:
            inflecting = admits_inflected_forms(entry, self.registry, self._diagnostics, category)
        emissions: List[Emission] = []
        frames = 0
        arg_count: Dict[int, int] = {}
        open_frame: Optional[int] = None
        predicates = 0
        for name, value in terminal_features(entry.body, self.registry):
            d = self.registry.lookup(name)
            ctx = RuleContext(name, d, value, category, inflecting)
            if d is not None and not d.applies_to(category):
                self.diag("category", f"{d.name} does not apply to {category}; passed through",
                          d.name, atom_text(value) or "")
                emissions.append(self._passthrough(ctx))
                open_frame = None
                continue
            if d is not None and d.value_domain is not None and ctx.atomic \
                    and value.value not in d.value_domain:
                self.diag("domain", f"{d.name}={value.value!r} outside value domain",
                          d.name, value.value)
            if is_empty(value):
                open_frame = None
                continue
            rule = self.select(ctx)
            if rule is None:
                if d is None:
                    self.diag("loss", f"unregistered feature {name}; passed through",
                              name, atom_text(value) or value_to_xml(value))
                else:
                    self.diag("unmapped", f"{d.name} has no projection for this value; passed through",
                              d.name)
                emissions.append(self._passthrough(ctx))
                open_frame = None
                continue
            pieces = rule.apply(ctx, self)
            if rule.family == "R1syn":
                dedicated = ctx.canonical in DEDICATED_FRAME
                alts = list(dict.fromkeys(piece.group.rpartition(".")[0] for piece in pieces))
                if alts == [""] and not dedicated and open_frame is not None:
                    frame_of = {"": open_frame}
                else:
                    frame_of = {}
                    for alt in alts:
                        frame_of[alt] = frames
                        arg_count[frames] = 0
                        frames += 1
                arg_of: Dict[str, str] = {}
                for piece in pieces:
                    if piece.group not in arg_of:
                        frame = frame_of[piece.group.rpartition(".")[0]]
                        arg_of[piece.group] = f"f{frame}.a{arg_count[frame]}"
                        arg_count[frame] += 1
                    emissions.append(Emission(Target.SYNTACTIC_ARGUMENT, piece.attribute, piece.value,
                                              arg_of[piece.group], ctx.canonical, rule.rule_id))
                open_frame = frame_of[""] if alts == [""] and not dedicated else None
                continue
            open_frame = None
            if rule.family == "R1sem":
                for piece in pieces:
                    emissions.append(Emission(Target.SEMANTIC_ARGUMENT, piece.attribute, piece.value,
                                              f"p{predicates}", ctx.canonical, rule.rule_id))
                predicates += 1
                continue
            for piece in pieces:
                emissions.append(Emission(piece.target or rule.target_class, piece.attribute,
                                          piece.value, None, ctx.canonical, rule.rule_id))
        return Projection(emissions, self._diagnostics, category, inflecting)

    def _passthrough(self, ctx: RuleContext) -> Emission:
        scope = ctx.descriptor.scope if ctx.descriptor else FeatureScope.ENTRY
        target = Target.FORM if scope is FeatureScope.FORM else Target.LEXICAL_ENTRY
        text = ctx.value.value if ctx.atomic else value_to_xml(ctx.value)
        return Emission(target, PASSTHROUGH_PREFIX + ctx.name, text, None, ctx.canonical, "passthrough")


def project_entry(
    entry: HpsgEntry,
    registry: Optional[Registry] = None,
    rules: Optional[Sequence[ProjectionRule]] = None,
    **kw,
) -> Projection:
    return Projector(registry, rules, **{k: kw.pop(k) for k in ("values", "pins") if k in kw}).project(entry, **kw)
