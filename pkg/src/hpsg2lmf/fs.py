"""
Feature structures in the ISO 24610-1 (TEI) XML encoding.

An HPSG lexicon is a root element holding one top-level ``<fs>`` per lexical
entry.  Features are ``<f name="...">`` elements whose single child is a
``<symbol value="..."/>``, a ``<string>``, a nested ``<fs>`` or a
``<vColl>`` list.  Both TEI-namespaced and bare documents are accepted.
"""

from __future__ import annotations

import io
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import (
    BinaryIO,
    Dict,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)
from xml.sax.saxutils import escape, quoteattr

from hpsg2lmf.diagnostics import Diagnostic

TEI_NS = "http://www.tei-c.org/ns/1.0"

# French head-feature spelling found in some lexica
HEAD_ALIASES: Dict[str, str] = {"TETE": "HEAD"}


class FsError(Exception):
    """Base class for feature-structure errors."""


class LexiconParseError(FsError):
    """The lexicon is not well-formed XML."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = ""):
        super().__init__(f"{source or '<input>'}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.source = source


class EntryError(FsError):
    """A structural defect confined to one entry."""

    def __init__(self, kind: str, message: str, feature: Optional[str] = None):
        super().__init__(message)
        self.kind = kind
        self.feature = feature


# -- values -------------------------------------------------------------------


@dataclass(frozen=True)
class Symbol:
    value: str


@dataclass(frozen=True)
class Text:
    value: str


@dataclass(frozen=True)
class FsList:
    items: Tuple["FeatureValue", ...] = ()

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class FeatureStructure:
    features: Tuple[Tuple[str, "FeatureValue"], ...] = ()
    type: Optional[str] = None

    def __post_init__(self):
        features = tuple((str(n), v) for n, v in self.features)
        seen = set()
        for name, _ in features:
            if name in seen:
                raise EntryError(
                    "duplicate-feature", f"duplicate feature {name!r}", feature=name
                )
            seen.add(name)
        object.__setattr__(self, "features", features)

    @classmethod
    def of(cls, *features: Tuple[str, "FeatureValue"], type: Optional[str] = None):
        return cls(tuple(features), type)

    def __iter__(self) -> Iterator[Tuple[str, "FeatureValue"]]:
        return iter(self.features)

    def __len__(self) -> int:
        return len(self.features)

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.features)

    def get(self, name: str, default=None):
        for n, v in self.features:
            if n == name:
                return v
        return default

    def names(self) -> List[str]:
        return [n for n, _ in self.features]


FeatureValue = Union[Symbol, Text, FsList, FeatureStructure]
ATOMIC = (Symbol, Text)


def is_atomic(value: FeatureValue) -> bool:
    return isinstance(value, ATOMIC)


def is_empty(value: FeatureValue) -> bool:
    if isinstance(value, (FsList, FeatureStructure)):
        return len(value) == 0
    return False


# -- lookup -------------------------------------------------------------------


def get_path(
    fs: FeatureStructure, path: Sequence[str], aliases: Dict[str, str] = HEAD_ALIASES
) -> Optional[FeatureValue]:
    """Value at ``path`` descending through nested AVMs, or None.

    Lists are terminal.  A step missing under its own name is retried under
    its alias (``TETE`` and ``HEAD`` are interchangeable).
    """
    if not path:
        raise ValueError("path must be non-empty")
    reverse = {v: k for k, v in aliases.items()}
    current: FeatureValue = fs
    for step in path:
        if not isinstance(current, FeatureStructure):
            return None
        value = current.get(step)
        if value is None:
            alt = aliases.get(step) or reverse.get(step)
            value = current.get(alt) if alt else None
        if value is None:
            return None
        current = value
    return current


def find_feature(fs: FeatureStructure, name: str) -> Optional[FeatureValue]:
    """Shallowest value of feature ``name`` anywhere in ``fs``; lists are not entered."""
    queue = [fs]
    while queue:
        nxt = []
        for node in queue:
            for n, v in node:
                if n == name:
                    return v
                if isinstance(v, FeatureStructure):
                    nxt.append(v)
        queue = nxt
    return None


def atom_text(value: Optional[FeatureValue]) -> Optional[str]:
    if isinstance(value, ATOMIC):
        return value.value
    return None


# -- XML -> structures --------------------------------------------------------


def _local(tag: str) -> str:
    return tag.rpartition("}")[2]


def _value_from_element(el: ET.Element, aliases: Dict[str, str]) -> FeatureValue:
    tag = _local(el.tag)
    if tag == "symbol":
        if "value" not in el.attrib:
            raise EntryError("malformed", "<symbol> without value attribute")
        return Symbol(el.attrib["value"])
    if tag == "string":
        return Text(el.text or "")
    if tag == "fs":
        return _fs_from_element(el, aliases)
    if tag == "vColl":
        return FsList(tuple(_value_from_element(c, aliases) for c in el))
    if tag in ("vLabel", "vAlt", "vMerge", "vNot", "binary", "numeric", "default"):
        raise EntryError("unsupported", f"unsupported construct <{tag}>")
    raise EntryError("unsupported", f"unknown value element <{tag}>")


def _fs_from_element(el: ET.Element, aliases: Dict[str, str]) -> FeatureStructure:
    features = []
    for f in el:
        tag = _local(f.tag)
        if tag != "f":
            raise EntryError("unsupported", f"unexpected <{tag}> inside <fs>")
        name = f.attrib.get("name")
        if not name:
            raise EntryError("malformed", "<f> without name attribute")
        name = aliases.get(name, name)
        if "fVal" in f.attrib:
            raise EntryError(
                "unsupported", "re-entrancy (fVal) is not supported", feature=name
            )
        children = list(f)
        if len(children) != 1:
            raise EntryError(
                "unsupported",
                f"feature {name} has {len(children)} value elements, expected 1",
                feature=name,
            )
        try:
            value = _value_from_element(children[0], aliases)
        except EntryError as exc:
            if exc.feature is None:
                exc.feature = name
            raise
        features.append((name, value))
    return FeatureStructure(tuple(features), el.attrib.get("type"))


@dataclass(frozen=True)
class SourceRef:
    file: str
    index: int

    def __str__(self):
        return f"{self.file}#{self.index}"


@dataclass(frozen=True)
class HpsgEntry:
    phon: str
    body: FeatureStructure
    source: SourceRef = field(default_factory=lambda: SourceRef("<memory>", 0))

    @property
    def maj(self) -> Optional[str]:
        return atom_text(find_feature(self.body, "MAJ"))


class Lexicon(NamedTuple):
    entries: List[HpsgEntry]
    diagnostics: List[Diagnostic]


def entry_from_fs(body: FeatureStructure, source: SourceRef) -> HpsgEntry:
    phon = atom_text(body.get("PHON")) or atom_text(find_feature(body, "PHON"))
    if not phon:
        raise EntryError("missing-phon", "entry has no PHON value", feature="PHON")
    maj = find_feature(body, "MAJ")
    if maj is None:
        raise EntryError("missing-maj", "entry has no MAJ feature", feature="MAJ")
    if not isinstance(maj, ATOMIC) or not maj.value:
        raise EntryError("missing-maj", "MAJ value is not an atom", feature="MAJ")
    return HpsgEntry(phon, body, source)


def _open(source) -> Tuple[BinaryIO, str, bool]:
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source), "<bytes>", True
    if isinstance(source, (str, os.PathLike)):
        return open(source, "rb"), os.fspath(source), True
    return source, getattr(source, "name", "<stream>"), False


def iter_lexicon(
    source,
    diagnostics: Optional[List[Diagnostic]] = None,
    aliases: Dict[str, str] = HEAD_ALIASES,
    name: Optional[str] = None,
) -> Iterator[HpsgEntry]:
    """Yield entries one top-level ``<fs>`` at a time.

    Entry-level defects are appended to ``diagnostics`` and the entry is
    skipped.  Malformed XML raises :class:`LexiconParseError`.
    """
    if diagnostics is None:
        diagnostics = []
    stream, label, owned = _open(source)
    label = name or label
    depth = 0
    ordinal = 0
    root = None
    try:
        for event, el in ET.iterparse(stream, events=("start", "end")):
            if event == "start":
                depth += 1
                if depth == 1:
                    root = el
                continue
            depth -= 1
            if depth != 1:
                continue
            if _local(el.tag) == "fs":
                ref = SourceRef(label, ordinal)
                ordinal += 1
                try:
                    body = _fs_from_element(el, aliases)
                    entry = entry_from_fs(body, ref)
                except EntryError as exc:
                    diagnostics.append(
                        Diagnostic(exc.kind, str(exc), source=str(ref), feature=exc.feature)
                    )
                else:
                    yield entry
            root.clear()
    except ET.ParseError as exc:
        line, col = getattr(exc, "position", (0, 0))
        raise LexiconParseError(str(exc), line, col, label) from None
    finally:
        if owned:
            stream.close()


def parse_lexicon(source, aliases: Dict[str, str] = HEAD_ALIASES) -> Lexicon:
    diagnostics: List[Diagnostic] = []
    entries = list(iter_lexicon(source, diagnostics, aliases))
    return Lexicon(entries, diagnostics)


def parse_fs(data: Union[bytes, str], aliases: Optional[Dict[str, str]] = None) -> FeatureStructure:
    """Parse a single ``<fs>`` document."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        el = ET.fromstring(data)
    except ET.ParseError as exc:
        line, col = getattr(exc, "position", (0, 0))
        raise LexiconParseError(str(exc), line, col) from None
    if _local(el.tag) != "fs":
        raise FsError(f"expected <fs>, got <{_local(el.tag)}>")
    return _fs_from_element(el, aliases or {})


def parse_value(data: str) -> FeatureValue:
    """Inverse of :func:`value_to_xml` for a single value element."""
    return _value_from_element(ET.fromstring(data), {})


# -- structures -> XML --------------------------------------------------------


def value_to_xml(value: FeatureValue, ns: bool = False) -> str:
    parts: List[str] = []
    _write_value(value, parts, ns)
    return "".join(parts)


def _xmlns(ns: bool) -> str:
    return f' xmlns="{TEI_NS}"' if ns else ""


def _write_value(value: FeatureValue, out: List[str], ns: bool = False) -> None:
    if isinstance(value, Symbol):
        out.append(f"<symbol{_xmlns(ns)} value={quoteattr(value.value)}/>")
    elif isinstance(value, Text):
        out.append(f"<string{_xmlns(ns)}>{escape(value.value)}</string>")
    elif isinstance(value, FsList):
        if not value.items:
            out.append(f'<vColl{_xmlns(ns)} org="list"/>')
            return
        out.append(f'<vColl{_xmlns(ns)} org="list">')
        for item in value.items:
            _write_value(item, out)
        out.append("</vColl>")
    elif isinstance(value, FeatureStructure):
        attrs = _xmlns(ns)
        if value.type is not None:
            attrs += f" type={quoteattr(value.type)}"
        if not value.features:
            out.append(f"<fs{attrs}/>")
            return
        out.append(f"<fs{attrs}>")
        for name, v in value.features:
            out.append(f"<f name={quoteattr(name)}>")
            _write_value(v, out)
            out.append("</f>")
        out.append("</fs>")
    else:
        raise TypeError(f"not a feature value: {value!r}")


def serialize_fs(fs: FeatureStructure, namespace: bool = True) -> bytes:
    return value_to_xml(fs, ns=namespace).encode("utf-8")


def serialize_lexicon(bodies: Iterable[FeatureStructure], root: str = "lexicon") -> bytes:
    out = ['<?xml version="1.0" encoding="UTF-8"?>\n', f'<{root} xmlns="{TEI_NS}">\n']
    for body in bodies:
        _write_value(body, out)
        out.append("\n")
    out.append(f"</{root}>\n")
    return "".join(out).encode("utf-8")
