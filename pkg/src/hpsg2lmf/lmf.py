"""
LMF core model with morphological, syntactic and semantic extensions, and
its TEI serialization.

Element inventory of the output (default namespace is TEI)::

    TEI
      teiHeader/fileDesc/notesStmt/note[@type="globalInformation"][@n=attr]
      text/body/div[@type="lexicon"][@xml:lang]
        entry[@n=id]
          gramGrp                       entry-level data categories
          form[@type="lemma"|"inflected"][@subtype="provisional"]?
            orth
            gramGrp                     form-level data categories
          lmf:syntacticBehaviour        (extension block)
            lmf:subcatFrame[@n]
              lmf:syntacticArgument[@n][@function][@constituent]
                gramGrp
          lmf:semantics                 (extension block)
            lmf:semanticPredicate[@n]
              lmf:semanticArgument[@role][@value][@target]?

Inside a gramGrp, ``partOfSpeech``, ``grammaticalNumber``, ``gender`` and
``grammaticalCase`` use the TEI elements ``pos``, ``number``, ``gen`` and
``case``; every other data category is written as ``<gram type="name">``.
"""

from __future__ import annotations

import io
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple
from xml.sax.saxutils import escape, quoteattr

from hpsg2lmf.diagnostics import Diagnostic
from hpsg2lmf.fs import TEI_NS

EXT_NS = "urn:x-hpsg2lmf:lmf-extension"
XML_NS = "http://www.w3.org/XML/1998/namespace"

LEMMA = "lemma"
INFLECTED = "inflected"

_GRAM_TAGS = {
    "partOfSpeech": "pos",
    "grammaticalNumber": "number",
    "gender": "gen",
    "grammaticalCase": "case",
}
_GRAM_NAMES = {v: k for k, v in _GRAM_TAGS.items()}


class LmfError(Exception):
    pass


class AttributeConflict(LmfError):
    def __init__(self, name: str, old: str, new: str):
        super().__init__(f"attribute {name}: {old!r} vs {new!r}")
        self.name, self.old, self.new = name, old, new


class LmfInvariantError(LmfError):
    def __init__(self, violations: List["Violation"]):
        first = violations[0]
        where = f"entry {first.entry_id}: " if first.entry_id else ""
        super().__init__(f"{where}{first.message} ({len(violations)} violation(s))")
        self.violations = violations


@dataclass
class LmfForm:
    orthography: str
    kind: str = INFLECTED
    attributes: Dict[str, str] = field(default_factory=dict)
    provisional: bool = False


@dataclass
class SyntacticArgument:
    function: str
    constituent: str
    attributes: Dict[str, str] = field(default_factory=dict)
    id: str = ""


@dataclass
class SubcatFrame:
    id: str
    arguments: List[SyntacticArgument] = field(default_factory=list)


@dataclass
class SemanticArgument:
    role: str
    value: str
    link: Optional[str] = None


@dataclass
class SemanticPredicate:
    id: str
    arguments: List[SemanticArgument] = field(default_factory=list)

    @property
    def links(self) -> List[str]:
        return [a.link for a in self.arguments if a.link]


@dataclass
class LmfLexicalEntry:
    id: str
    attributes: Dict[str, str] = field(default_factory=dict)
    forms: List[LmfForm] = field(default_factory=list)
    syntactic_behaviours: List[SubcatFrame] = field(default_factory=list)
    senses: List[SemanticPredicate] = field(default_factory=list)
    merge_key: Any = field(default=None, compare=False, repr=False)

    @property
    def lemma(self) -> Optional[LmfForm]:
        for f in self.forms:
            if f.kind == LEMMA:
                return f
        return None

    @property
    def inflected_forms(self) -> List[LmfForm]:
        return [f for f in self.forms if f.kind == INFLECTED]

    def set_attribute(self, name: str, value: str) -> None:
        old = self.attributes.get(name)
        if old is not None and old != value:
            raise AttributeConflict(name, old, value)
        self.attributes[name] = value


@dataclass
class LmfLexicon:
    language: str
    entries: List[LmfLexicalEntry] = field(default_factory=list)


@dataclass
class LmfLexicalResource:
    global_info: Dict[str, str] = field(default_factory=dict)
    lexicons: List[LmfLexicon] = field(default_factory=list)

    def entries(self) -> Iterable[LmfLexicalEntry]:
        for lexicon in self.lexicons:
            yield from lexicon.entries


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    entry_id: Optional[str]
    message: str


def validate(resource: LmfLexicalResource) -> List[Violation]:
    out: List[Violation] = []
    if not resource.lexicons:
        out.append(Violation(None, "resource contains no lexicon"))
    seen = set()
    for lexicon in resource.lexicons:
        if not lexicon.entries:
            out.append(Violation(None, f"lexicon {lexicon.language!r} must contain at least one lexical entry"))
        for entry in lexicon.entries:
            out.extend(_validate_entry(entry, seen))
    return out


def _validate_entry(entry: LmfLexicalEntry, seen: set) -> List[Violation]:
    out = []

    def bad(msg):
        out.append(Violation(entry.id, msg))

    if not entry.id:
        bad("entry without id")
    elif entry.id in seen:
        bad("duplicate entry id")
    seen.add(entry.id)
    lemmas = sum(1 for f in entry.forms if f.kind == LEMMA)
    if lemmas != 1:
        bad(f"expected exactly one lemma form, found {lemmas}")
    for f in entry.forms:
        if f.kind not in (LEMMA, INFLECTED):
            bad(f"unknown form kind {f.kind!r}")
        if not f.orthography:
            bad("form with empty orthography")
        if any(not k for k in f.attributes):
            bad("form attribute with empty name")
    if any(not k for k in entry.attributes):
        bad("entry attribute with empty name")
    arg_ids = set()
    for frame in entry.syntactic_behaviours:
        if not frame.arguments:
            bad(f"subcategorisation frame {frame.id!r} has no argument")
        for arg in frame.arguments:
            if not arg.function or not arg.constituent:
                bad(f"syntactic argument in {frame.id!r} lacks function or constituent")
            if arg.id:
                arg_ids.add(arg.id)
    for pred in entry.senses:
        if not pred.arguments:
            bad(f"semantic predicate {pred.id!r} has no argument")
        for arg in pred.arguments:
            if not arg.role:
                bad(f"semantic argument in {pred.id!r} without role")
            if arg.link and arg.link not in arg_ids:
                bad(f"semantic argument links to unknown syntactic argument {arg.link!r}")
    return out


# -- serialization ------------------------------------------------------------


def _gramgrp(attrs: Dict[str, str], indent: str) -> List[str]:
    if not attrs:
        return []
    lines = [f"{indent}<gramGrp>"]
    for name in sorted(attrs):
        value = escape(attrs[name])
        tag = _GRAM_TAGS.get(name)
        if tag:
            lines.append(f"{indent}  <{tag}>{value}</{tag}>")
        else:
            lines.append(f"{indent}  <gram type={quoteattr(name)}>{value}</gram>")
    lines.append(f"{indent}</gramGrp>")
    return lines


def _entry_lines(entry: LmfLexicalEntry, compat: bool) -> List[str]:
    i = " " * 8
    lines = [f"{i}<entry n={quoteattr(entry.id)}>"]
    lines += _gramgrp(entry.attributes, i + "  ")
    # lemma first, then inflected forms in insertion order
    forms = [f for f in entry.forms if f.kind == LEMMA] + [f for f in entry.forms if f.kind != LEMMA]
    for form in forms:
        sub = ' subtype="provisional"' if form.provisional else ""
        lines.append(f"{i}  <form type={quoteattr(form.kind)}{sub}>")
        lines.append(f"{i}    <orth>{escape(form.orthography)}</orth>")
        lines += _gramgrp(form.attributes, i + "    ")
        lines.append(f"{i}  </form>")
    if not compat and entry.syntactic_behaviours:
        lines.append(f"{i}  <lmf:syntacticBehaviour>")
        for frame in entry.syntactic_behaviours:
            lines.append(f"{i}    <lmf:subcatFrame n={quoteattr(frame.id)}>")
            for arg in frame.arguments:
                head = (
                    f"{i}      <lmf:syntacticArgument n={quoteattr(arg.id)}"
                    f" function={quoteattr(arg.function)} constituent={quoteattr(arg.constituent)}"
                )
                if arg.attributes:
                    lines.append(head + ">")
                    lines += _gramgrp(arg.attributes, i + "        ")
                    lines.append(f"{i}      </lmf:syntacticArgument>")
                else:
                    lines.append(head + "/>")
            lines.append(f"{i}    </lmf:subcatFrame>")
        lines.append(f"{i}  </lmf:syntacticBehaviour>")
    if not compat and entry.senses:
        lines.append(f"{i}  <lmf:semantics>")
        for pred in entry.senses:
            lines.append(f"{i}    <lmf:semanticPredicate n={quoteattr(pred.id)}>")
            for arg in pred.arguments:
                link = f" target={quoteattr(arg.link)}" if arg.link else ""
                lines.append(
                    f"{i}      <lmf:semanticArgument role={quoteattr(arg.role)}"
                    f" value={quoteattr(arg.value)}{link}/>"
                )
            lines.append(f"{i}    </lmf:semanticPredicate>")
        lines.append(f"{i}  </lmf:semantics>")
    lines.append(f"{i}</entry>")
    return lines


def serialize_tei(resource: LmfLexicalResource, compat: bool = False) -> bytes:
    """TEI XML for ``resource``; same resource, same bytes.

    ``compat`` drops the syntactic and semantic extension blocks.
    """
    violations = validate(resource)
    if violations:
        raise LmfInvariantError(violations)
    ext = "" if compat else f" xmlns:lmf={quoteattr(EXT_NS)}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<TEI xmlns={quoteattr(TEI_NS)}{ext}>",
        "  <teiHeader>",
        "    <fileDesc>",
    ]
    if resource.global_info:
        lines.append("      <notesStmt>")
        for name in sorted(resource.global_info):
            lines.append(
                f'        <note type="globalInformation" n={quoteattr(name)}>'
                f"{escape(resource.global_info[name])}</note>"
            )
        lines.append("      </notesStmt>")
    lines += ["    </fileDesc>", "  </teiHeader>", "  <text>", "    <body>"]
    for lexicon in resource.lexicons:
        lines.append(f'      <div type="lexicon" xml:lang={quoteattr(lexicon.language)}>')
        for entry in lexicon.entries:
            lines += _entry_lines(entry, compat)
        lines.append("      </div>")
    lines += ["    </body>", "  </text>", "</TEI>", ""]
    return "\n".join(lines).encode("utf-8")


# -- parsing ------------------------------------------------------------------


def _split(tag: str) -> Tuple[str, str]:
    if tag.startswith("{"):
        ns, _, local = tag[1:].partition("}")
        return ns, local
    return "", tag


class _Reader:
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = diagnostics

    def skip(self, el: ET.Element, where: str) -> None:
        ns, local = _split(el.tag)
        label = f"{{{ns}}}{local}" if ns and ns not in (TEI_NS, EXT_NS) else local
        self.diagnostics.append(
            Diagnostic("unknown-element", f"skipped unrecognised <{label}> in {where}")
        )

    def is_(self, el: ET.Element, local: str, ext: bool = False) -> bool:
        ns, name = _split(el.tag)
        if name != local:
            return False
        return ns == EXT_NS if ext else ns in (TEI_NS, "")

    def gramgrp(self, el: ET.Element) -> Dict[str, str]:
        out = {}
        for child in el:
            ns, local = _split(child.tag)
            if ns not in (TEI_NS, ""):
                self.skip(child, "gramGrp")
            elif local == "gram":
                out[child.attrib.get("type", "")] = child.text or ""
            elif local in _GRAM_NAMES:
                out[_GRAM_NAMES[local]] = child.text or ""
            else:
                self.skip(child, "gramGrp")
        return out

    def form(self, el: ET.Element) -> LmfForm:
        form = LmfForm(
            orthography="",
            kind=el.attrib.get("type", INFLECTED),
            provisional=el.attrib.get("subtype") == "provisional",
        )
        for child in el:
            if self.is_(child, "orth"):
                form.orthography = child.text or ""
            elif self.is_(child, "gramGrp"):
                form.attributes.update(self.gramgrp(child))
            else:
                self.skip(child, "form")
        return form

    def frames(self, el: ET.Element) -> List[SubcatFrame]:
        frames = []
        for fel in el:
            if not self.is_(fel, "subcatFrame", ext=True):
                self.skip(fel, "syntacticBehaviour")
                continue
            frame = SubcatFrame(fel.attrib.get("n", ""))
            for ael in fel:
                if not self.is_(ael, "syntacticArgument", ext=True):
                    self.skip(ael, "subcatFrame")
                    continue
                arg = SyntacticArgument(
                    ael.attrib.get("function", ""),
                    ael.attrib.get("constituent", ""),
                    id=ael.attrib.get("n", ""),
                )
                for g in ael:
                    if self.is_(g, "gramGrp"):
                        arg.attributes.update(self.gramgrp(g))
                    else:
                        self.skip(g, "syntacticArgument")
                frame.arguments.append(arg)
            frames.append(frame)
        return frames

    def predicates(self, el: ET.Element) -> List[SemanticPredicate]:
        preds = []
        for pel in el:
            if not self.is_(pel, "semanticPredicate", ext=True):
                self.skip(pel, "semantics")
                continue
            pred = SemanticPredicate(pel.attrib.get("n", ""))
            for ael in pel:
                if not self.is_(ael, "semanticArgument", ext=True):
                    self.skip(ael, "semanticPredicate")
                    continue
                pred.arguments.append(SemanticArgument(
                    ael.attrib.get("role", ""), ael.attrib.get("value", ""), ael.attrib.get("target")
                ))
            preds.append(pred)
        return preds

    def entry(self, el: ET.Element) -> LmfLexicalEntry:
        entry = LmfLexicalEntry(el.attrib.get("n", ""))
        for child in el:
            if self.is_(child, "gramGrp"):
                entry.attributes.update(self.gramgrp(child))
            elif self.is_(child, "form"):
                entry.forms.append(self.form(child))
            elif self.is_(child, "syntacticBehaviour", ext=True):
                entry.syntactic_behaviours.extend(self.frames(child))
            elif self.is_(child, "semantics", ext=True):
                entry.senses.extend(self.predicates(child))
            else:
                self.skip(child, f"entry {entry.id}")
        return entry


def parse_tei(source, diagnostics: Optional[List[Diagnostic]] = None) -> LmfLexicalResource:
    """Read a document written by :func:`serialize_tei`.

    Unrecognised elements are reported in ``diagnostics`` and skipped.  A
    document without any lexical entry raises :class:`LmfInvariantError`.
    """
    if diagnostics is None:
        diagnostics = []
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    try:
        root = ET.parse(source).getroot()
    except ET.ParseError as exc:
        line, col = getattr(exc, "position", (0, 0))
        raise LmfError(f"{line}:{col}: {exc}") from None
    reader = _Reader(diagnostics)
    resource = LmfLexicalResource()
    for note in root.iter(f"{{{TEI_NS}}}note"):
        if note.attrib.get("type") == "globalInformation":
            resource.global_info[note.attrib.get("n", "")] = note.text or ""
    body = root.find(f"{{{TEI_NS}}}text/{{{TEI_NS}}}body")
    if body is None:
        body = root.find("text/body")
    for div in (body if body is not None else []):
        if not reader.is_(div, "div") or div.attrib.get("type") != "lexicon":
            reader.skip(div, "body")
            continue
        lexicon = LmfLexicon(div.attrib.get(f"{{{XML_NS}}}lang", ""))
        for child in div:
            if reader.is_(child, "entry"):
                lexicon.entries.append(reader.entry(child))
            else:
                reader.skip(child, "lexicon")
        resource.lexicons.append(lexicon)
    structural = [v for v in validate(resource) if v.entry_id is None]
    if structural:
        raise LmfInvariantError(structural)
    return resource


def read_tei(path: os.PathLike, diagnostics: Optional[List[Diagnostic]] = None) -> LmfLexicalResource:
    with open(path, "rb") as fp:
        return parse_tei(fp, diagnostics)
