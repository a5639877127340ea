"""Hand-built HPSG lexicon fragments shared by the test modules."""

from __future__ import annotations

from typing import Iterable, Optional

TEI = "http://www.tei-c.org/ns/1.0"


def sym(name: str, value: str) -> str:
    return f'<f name="{name}"><symbol value="{value}"/></f>'


def fs(*features: str, type: Optional[str] = None) -> str:
    attr = f' type="{type}"' if type else ""
    return f"<fs{attr}>{''.join(features)}</fs>"


def f(name: str, value: str) -> str:
    return f'<f name="{name}">{value}</f>'


def vlist(*items: str) -> str:
    return f'<vColl org="list">{"".join(items)}</vColl>'


def entry(phon: str, head: Iterable[str], valence: Iterable[str] = (), cont: Iterable[str] = (),
          head_name: str = "HEAD") -> str:
    cat = [f(head_name, fs(*head))]
    if valence:
        cat.append(f("VALENCE", fs(*valence)))
    loc = [f("CAT", fs(*cat))]
    if cont:
        loc.append(f("CONT", fs(*cont)))
    return fs(f("PHON", f"<string>{phon}</string>"), f("SYNSEM", fs(f("LOC", fs(*loc)))))


def lexicon(*entries: str, namespace: bool = True) -> bytes:
    ns = f' xmlns="{TEI}"' if namespace else ""
    return f'<?xml version="1.0" encoding="UTF-8"?>\n<lexicon{ns}>{"".join(entries)}</lexicon>'.encode()


# akhraja with a TETE head, as older lexica spell it
AKHRAJA = fs(
    f("PHON", "<string>أخرج</string>"),
    f("SYNSEM", fs(f("LOC", fs(f("CAT", fs(f("TETE", fs(
        sym("MAJ", "verbe"),
        sym("VFORM", "تأنيد التصريف"),
        sym("RADICAL", "أ خ ر ج"),
        sym("SCHEME", "أفعل"),
    )))))))),
)

_VERB_BASE = (
    sym("MAJ", "verbe"),
    sym("VFORM", "متصرف"),
    sym("CFORM", "ثلاثي"),
    sym("DENUDE", "مجرد"),
    sym("TENSE", "perfect"),
    sym("VOICE", "active"),
)


def verb(phon: str, radical: str, scheme: str, pers: str, number: str, gender: str = "masculine",
         extra: Iterable[str] = (), valence: Iterable[str] = (), cont: Iterable[str] = ()) -> str:
    head = _VERB_BASE + (
        sym("RADICAL", radical), sym("SCHEME", scheme),
        sym("PERS", pers), sym("NUMBER", number), sym("GENR", gender),
    ) + tuple(extra)
    return entry(phon, head, valence, cont)


DHAHABA = verb("ذَهَبَ", "ذ ه ب", "فَعَلَ", "3", "singular")
DHAHABNA = verb("ذَهَبْنَا", "ذ ه ب", "فَعَلَ", "1", "plural")

KHARAJA = verb("خَرَجَ", "خ ر ج", "فَعَلَ", "3", "singular")
KHARIJA = verb("خَرِجَ", "خ ر ج", "فَعِلَ", "3", "singular")

# kataba: perfect, active, root ktb, subject NP masculine nominative, object NP,
# NUCLEUS with agent and patient
KATABA = verb(
    "كَتَبَ", "ك ت ب", "فَعَلَ", "3", "singular",
    valence=[f("S-ARG", vlist(
        fs(sym("LABEL", "X"), f("INDEX", fs(sym("GENR", "masculine"), sym("CASE", "nominative"))),
           type="NP"),
        fs(sym("LABEL", "Y"), type="NP"),
    ))],
    cont=[f("NUCLEUS", fs(sym("agent-noun", "X"), sym("patient-noun", "Y")))],
)

# preposition fi: the object must be a genitive NP
FI = entry(
    "فِي",
    [sym("MAJ", "particle"), sym("PFORM", "جر"), sym("NATURE", "حرف معنى")],
    [f("COMPS", vlist(fs(f("INDEX", fs(sym("CASE", "genitive"))), type="NP")))],
)

# particle lan, restricting a subjunctive verb through SPEC
LAN = entry(
    "لَنْ",
    [sym("MAJ", "particle"), f("SPEC", fs(sym("MOOD", "subjunctive"), type="V"))],
    cont=[sym("RESTIND", "future")],
)


def noun(phon: str, nform: str, extra: Iterable[str] = (), cont: Iterable[str] = ()) -> str:
    return entry(phon, (sym("MAJ", "nom"), sym("NFORM", nform)) + tuple(extra), cont=cont)


MAJMA = noun("مَجْمَع", "متصرف جامد", [
    sym("NATURE", "مصدر ميمي"), sym("RADICAL", "ج م ع"), sym("DEFN", "نكرة"),
    sym("NUMBER", "مفرد"),
])
ALMAJMA = noun("الْمَجْمَع", "متصرف جامد", [
    sym("NATURE", "مصدر ميمي"), sym("RADICAL", "ج م ع"), sym("DEFN", "معرفة"),
    sym("NUMBER", "مفرد"),
])

UNREGISTERED = entry("كَتَبَ", list(_VERB_BASE) + [
    sym("RADICAL", "ك ت ب"), sym("SCHEME", "فَعَلَ"), sym("PERS", "3"),
    sym("NUMBER", "singular"), sym("GENR", "masculine"), sym("FOO", "bar"),
])
