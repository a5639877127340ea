"""
Inventory of the Arabic-adapted HPSG features.

Every feature is classified by linguistic layer (which LMF component it is
projected to) and by scope: entry-level features keep their value across a
canonical form and its inflected forms (RADICAL), form-level features vary
from one inflected form to the next (SCHEME).
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional

from hpsg2lmf.diagnostics import Diagnostic
from hpsg2lmf.fs import FeatureStructure, HpsgEntry, atom_text

REGISTRY_FORMAT = "hpsg2lmf-registry/1"


class LexicalCategory(str, enum.Enum):
    NOUN = "noun"
    VERB = "verb"
    PARTICLE = "particle"

    def __str__(self):
        return self.value


class FeatureLayer(str, enum.Enum):
    MORPHOLOGICAL = "morphological"
    SYNTACTIC = "syntactic"
    SEMANTIC = "semantic"


class FeatureScope(str, enum.Enum):
    ENTRY = "entry_level"
    FORM = "form_level"


N, V, P = LexicalCategory.NOUN, LexicalCategory.VERB, LexicalCategory.PARTICLE
ALL = frozenset({N, V, P})


@dataclass(frozen=True)
class FeatureDescriptor:
    name: str
    layer: FeatureLayer
    scope: FeatureScope
    categories: FrozenSet[LexicalCategory] = ALL
    value_domain: Optional[FrozenSet[str]] = None
    lmf_attribute: Optional[str] = None
    # structural wrapper (SYNSEM, HEAD, ...): descended into, never projected
    container: bool = False
    # values that mark the canonical (citation) form, per category
    canonical: Mapping[LexicalCategory, FrozenSet[str]] = field(default_factory=dict)
    # values stating that the entry admits no inflected forms (NFORM, VFORM)
    non_inflecting: FrozenSet[str] = frozenset()
    # attribute name used when the feature restricts a syntactic argument
    argument_attribute: Optional[str] = None

    def applies_to(self, category: LexicalCategory) -> bool:
        return category in self.categories


def _d(name, layer, scope, cats=ALL, domain=None, lmf=None, **kw) -> FeatureDescriptor:
    return FeatureDescriptor(
        name,
        FeatureLayer(layer),
        FeatureScope(scope),
        frozenset(cats),
        frozenset(domain) if domain is not None else None,
        lmf,
        **kw,
    )


M, S, SEM = "morphological", "syntactic", "semantic"
E, F = "entry_level", "form_level"

NFORM_VALUES = {
    "mutaṣṣarf muchtak", "mutaṣṣarf jāmed", "ghair mutaṣṣarf",
    "inflectional derivative", "inflectional inert", "non-inflectional",
    "متصرف مشتق", "متصرف جامد", "غير متصرف",
}
NFORM_FIXED = {"ghair mutaṣṣarf", "non-inflectional", "غير متصرف"}
# frozen verbs (ليس, نعم, بئس) do not conjugate
VFORM_FIXED = {"jāmid", "frozen", "non-inflectional", "جامد"}
DENUDED = frozenset({"mujarrid", "denuded", "مجرد"})
SINGULAR = frozenset({"singular", "sg", "مفرد"})
MASCULINE = frozenset({"masculine", "m", "مذكر"})

_BUILTIN: List[FeatureDescriptor] = [
    # structural wrappers
    _d("SYNSEM", S, E, container=True),
    _d("LOC", S, E, container=True),
    _d("CAT", S, E, container=True),
    _d("HEAD", M, E, container=True),
    _d("VALENCE", S, E, container=True),
    _d("CONT", SEM, E, container=True),
    _d("INDEX", SEM, E, container=True),
    # morphological
    _d("PHON", M, F, lmf="writtenForm"),
    _d("MAJ", M, E, lmf="partOfSpeech"),
    _d("CFORM", M, E, {V}, {"thulāthī", "rubāʿī", "trilateral", "quadrilateral", "ثلاثي", "رباعي"},
       lmf="ar:consonantalForm"),
    _d("DENUDE", M, E, {V}, {"mujarrid", "mazīd", "denuded", "increased", "مجرد", "مزيد"},
       lmf="ar:denudation"),
    _d("DIMINUTIVE", M, F, {N},
       {"ghair muṣaḡḡar", "ṣīghat al-ttaṣḡīr", "non-diminutive", "diminutive", "غير مصغر", "مصغر"},
       lmf="ar:diminutive",
       canonical={N: frozenset({"ghair muṣaḡḡar", "non-diminutive", "غير مصغر"})}),
    _d("RELATIVE", M, F, {N},
       {"manṣūb", "ghair manṣūb", "relative", "non-relative", "منسوب", "غير منسوب"},
       lmf="ar:relative",
       canonical={N: frozenset({"ghair manṣūb", "non-relative", "غير منسوب"})}),
    _d("NATURE", M, E, {N, P}, lmf="ar:nature"),
    _d("RADICAL", M, E, {N, V}, lmf="root"),
    _d("NFORM", M, E, {N}, NFORM_VALUES, lmf="ar:nounForm", non_inflecting=frozenset(NFORM_FIXED)),
    _d("VFORM", M, F, {V}, lmf="ar:verbForm", non_inflecting=frozenset(VFORM_FIXED)),
    _d("SCHEME", M, F, {V}, lmf="scheme"),
    _d("DEFN", M, F, {N}, {"definite", "indefinite", "معرفة", "نكرة"}, lmf="definiteness",
       canonical={N: frozenset({"indefinite", "نكرة"})}),
    _d("ORIGIN", M, E, {N}, lmf="ar:origin"),
    _d("LEMMA", M, E, {N, V}, lmf="ar:canonicalForm"),
    _d("PFORM", M, E, {P}, lmf="ar:prepositionForm"),
    # agreement: semantic in HPSG, morphological on the LMF side
    _d("GENR", M, F, lmf="gender", argument_attribute="gender", canonical={V: MASCULINE}),
    _d("NUMBER", M, F, lmf="grammaticalNumber", argument_attribute="number",
       canonical={N: SINGULAR, V: SINGULAR}),
    _d("CASE", M, F, {N, P}, lmf="grammaticalCase", argument_attribute="case"),
    _d("PERS", M, F, {V}, lmf="person", argument_attribute="person",
       canonical={V: frozenset({"3", "third", "غائب"})}),
    _d("TENSE", M, F, {V}, lmf="tense", canonical={V: frozenset({"perfect", "ماض"})}),
    _d("MOOD", M, F, {V}, lmf="mood"),
    # syntactic
    _d("SPR", S, E, lmf="specifier"),
    _d("SPEC", S, E, {P}, lmf="specified"),
    _d("COMPS", S, E, lmf="object"),
    _d("SUJ", S, E, {V}, lmf="subject"),
    _d("S-ARG", S, E, {N, V, P}, lmf="argument"),
    _d("TOPIC", S, E, lmf="topic"),
    _d("ATTRIBUT", S, E, lmf="attribute"),
    _d("MOD", S, E, {N}, lmf="modified"),
    _d("VOICE", S, F, {V}, lmf="voice",
       canonical={V: frozenset({"active", "مبني للمعلوم"})}),
    _d("RESTIND", S, E, {P}, lmf="ar:indexRestriction"),
    _d("SLASH", S, E),
    _d("FUNCTION", S, E, lmf="function"),
    _d("LABEL", S, E, lmf="label"),
    # semantic
    _d("NUCLEUS", SEM, E, {N, V}),
    _d("agent-noun", SEM, E, {N, V}, lmf="agent-noun"),
    _d("patient-noun", SEM, E, {N, V}, lmf="patient-noun"),
]

_BUILTIN_ALIASES = {
    "TETE": "HEAD",
    "ROOT": "RADICAL",
    "GENDER": "GENR",
    "NUM": "NUMBER",
    "PERSON": "PERS",
    "SUBJ": "SUJ",
    "ARG-ST": "S-ARG",
}

SEMANTIC_ROLES = frozenset({"agent-noun", "patient-noun"})


class Registry:
    """Immutable name -> FeatureDescriptor table with alias and case folding."""

    def __init__(self, descriptors: Iterable[FeatureDescriptor], aliases: Mapping[str, str] = ()):
        self._by_name: Dict[str, FeatureDescriptor] = {}
        for d in descriptors:
            self._by_name[d.name] = d
        self._aliases = dict(aliases)
        self._folded = {k.upper(): k for k in self._by_name}
        for alias, target in self._aliases.items():
            self._folded.setdefault(alias.upper(), target)

    def canonical_name(self, name: str) -> Optional[str]:
        if name in self._by_name:
            return name
        if name in self._aliases:
            return self._aliases[name]
        return self._folded.get(name.upper())

    def lookup(self, name: str) -> Optional[FeatureDescriptor]:
        canon = self.canonical_name(name)
        return self._by_name.get(canon) if canon else None

    def __contains__(self, name: str) -> bool:
        return self.lookup(name) is not None

    def __iter__(self) -> Iterator[FeatureDescriptor]:
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    @property
    def aliases(self) -> Dict[str, str]:
        return dict(self._aliases)

    def with_overrides(self, descriptors: Iterable[FeatureDescriptor]) -> "Registry":
        merged = dict(self._by_name)
        for d in descriptors:
            merged[d.name] = d
        return Registry(merged.values(), self._aliases)

    def check(self, name: str, value: str, category: LexicalCategory) -> List[str]:
        """Problems with one atomic observation; empty when consistent."""
        d = self.lookup(name)
        if d is None:
            return []
        problems = []
        if not d.applies_to(category):
            problems.append(f"{d.name} does not apply to {category}")
        if d.value_domain is not None and value not in d.value_domain:
            problems.append(f"{d.name}={value!r} outside value domain")
        return problems


_BUILTIN_REGISTRY: Optional[Registry] = None


def builtin_registry() -> Registry:
    global _BUILTIN_REGISTRY
    if _BUILTIN_REGISTRY is None:
        _BUILTIN_REGISTRY = Registry(_BUILTIN, _BUILTIN_ALIASES)
    return _BUILTIN_REGISTRY


# -- override file ------------------------------------------------------------
#
#   #format: hpsg2lmf-registry/1
#   name  layer  scope  categories  domain  lmf_attribute  [canonical]  [non_inflecting]
#   [container]  [argument_attribute]
#
# Tab-separated.  Sets are "|"-separated, "-" means empty/absent, categories
# are comma-separated or "*".  canonical is "cat=v1|v2;cat=v3".


class RegistryFormatError(ValueError):
    pass


def _set_or_none(col: str) -> Optional[FrozenSet[str]]:
    if col in ("", "-"):
        return None
    return frozenset(v.strip() for v in col.split("|") if v.strip())


def _categories(col: str) -> FrozenSet[LexicalCategory]:
    if col in ("", "*", "-"):
        return ALL
    return frozenset(LexicalCategory(c.strip()) for c in col.split(","))


def _canonical(col: str) -> Dict[LexicalCategory, FrozenSet[str]]:
    out = {}
    if col in ("", "-"):
        return out
    for part in col.split(";"):
        cat, _, values = part.partition("=")
        out[LexicalCategory(cat.strip())] = _set_or_none(values) or frozenset()
    return out


def parse_registry_lines(lines: Iterable[str], origin: str = "<registry>") -> List[FeatureDescriptor]:
    out = []
    version_seen = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if line.startswith("#format:"):
            version = line.split(":", 1)[1].strip()
            if version != REGISTRY_FORMAT:
                raise RegistryFormatError(f"{origin}:{lineno}: unsupported format {version!r}")
            version_seen = True
            continue
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 6:
            raise RegistryFormatError(f"{origin}:{lineno}: expected at least 6 columns")
        cols += ["-"] * (10 - len(cols))
        name, layer, scope, cats, domain, lmf, canonical, fixed, container, argattr = cols[:10]
        try:
            out.append(
                FeatureDescriptor(
                    name.strip(),
                    FeatureLayer(layer.strip()),
                    FeatureScope(scope.strip()),
                    _categories(cats.strip()),
                    _set_or_none(domain.strip()),
                    None if lmf.strip() in ("", "-") else lmf.strip(),
                    container=container.strip().lower() in ("yes", "true", "1"),
                    canonical=_canonical(canonical.strip()),
                    non_inflecting=_set_or_none(fixed.strip()) or frozenset(),
                    argument_attribute=None if argattr.strip() in ("", "-") else argattr.strip(),
                )
            )
        except ValueError as exc:
            raise RegistryFormatError(f"{origin}:{lineno}: {exc}") from None
    if not version_seen:
        raise RegistryFormatError(f"{origin}: missing '#format: {REGISTRY_FORMAT}' line")
    return out


def load_registry(path: os.PathLike, base: Optional[Registry] = None) -> Registry:
    with open(path, encoding="utf-8") as fp:
        descriptors = parse_registry_lines(fp, os.fspath(path))
    return (base or builtin_registry()).with_overrides(descriptors)


def format_registry(registry: Registry) -> str:
    """Dump a registry in the override-file format."""
    lines = [f"#format: {REGISTRY_FORMAT}"]
    for d in sorted(registry, key=lambda d: d.name):
        cats = "*" if d.categories == ALL else ",".join(sorted(c.value for c in d.categories))
        domain = "|".join(sorted(d.value_domain)) if d.value_domain else "-"
        canonical = ";".join(
            f"{c.value}={'|'.join(sorted(vs))}" for c, vs in sorted(d.canonical.items())
        ) or "-"
        fixed = "|".join(sorted(d.non_inflecting)) or "-"
        lines.append("\t".join([
            d.name, d.layer.value, d.scope.value, cats, domain, d.lmf_attribute or "-",
            canonical, fixed, "yes" if d.container else "-", d.argument_attribute or "-",
        ]))
    return "\n".join(lines) + "\n"


# -- category and inflection --------------------------------------------------


class ClassificationError(ValueError):
    def __init__(self, raw):
        super().__init__(f"unrecognised MAJ value {raw!r}")
        self.raw = raw


_MAJ_SPELLINGS = {
    V: {"verbe", "verb", "v", "فعل", "fiʿl", "fi'l", "fil"},
    N: {"nom", "noun", "n", "اسم", "ism", "commonnoun", "propernoun", "pronoun", "pronom"},
    P: {"particle", "particule", "p", "prep", "preposition", "préposition", "harf", "ḥarf",
        "حرف", "tool", "outil", "conjunction"},
}
_MAJ_LOOKUP = {s: cat for cat, spellings in _MAJ_SPELLINGS.items() for s in spellings}


def classify_value(raw: Optional[str]) -> LexicalCategory:
    if raw is None:
        raise ClassificationError(raw)
    cat = _MAJ_LOOKUP.get(raw.strip().lower())
    if cat is None:
        raise ClassificationError(raw)
    return cat


def classify(entry: HpsgEntry) -> LexicalCategory:
    return classify_value(entry.maj)


def admits_inflected_forms(
    entry: HpsgEntry,
    registry: Optional[Registry] = None,
    diagnostics: Optional[List[Diagnostic]] = None,
    category: Optional[LexicalCategory] = None,
) -> bool:
    registry = registry or builtin_registry()
    category = category or classify(entry)
    if category is P:
        return False
    name = "NFORM" if category is N else "VFORM"
    value = feature_value(entry, name, registry)
    if value is None:
        if diagnostics is not None:
            diagnostics.append(Diagnostic(
                "missing-inflection-marker",
                f"{category} without {name}; treated as non-inflecting",
                source=str(entry.source), feature=name,
            ))
        return False
    d = registry.lookup(name)
    return value not in (d.non_inflecting if d else ())


def terminal_features(body, registry: Registry) -> Iterator[tuple]:
    """(name, value) for every non-container feature, in document order.

    Only registered containers are descended; any other AVM or list value is
    returned whole.
    """
    for name, value in body:
        d = registry.lookup(name)
        if d is not None and d.container and isinstance(value, FeatureStructure):
            yield from terminal_features(value, registry)
        else:
            yield name, value


def feature_value(entry: HpsgEntry, name: str, registry: Registry) -> Optional[str]:
    """Atomic value of the first terminal feature resolving to ``name``."""
    for n, v in terminal_features(entry.body, registry):
        if registry.canonical_name(n) == name:
            return atom_text(v)
    return None


def is_canonical_form(entry: HpsgEntry, category: LexicalCategory, registry: Registry) -> bool:
    """True unless some form-level feature carries a non-citation value."""
    for n, v in terminal_features(entry.body, registry):
        d = registry.lookup(n)
        if d is None:
            continue
        allowed = d.canonical.get(category)
        value = atom_text(v)
        if allowed and value is not None and value not in allowed:
            return False
    return True
