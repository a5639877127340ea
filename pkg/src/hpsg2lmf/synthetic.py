"""Seeded generator of Arabic HPSG test lexica.

Verbs come in form families (canonical form plus conjugated forms), nouns
across several NATURE subcategories with definite, dual, plural and
diminutive forms, particles in both the preposition model (VALENCE/COMPS)
and the tool model (SPEC/RESTIND).
"""

from __future__ import annotations

import random
from typing import List, Optional, Set, Tuple

from hpsg2lmf.fs import FeatureStructure, FsList, Symbol, Text, serialize_lexicon

FATHA, DAMMA, KASRA, SUKUN, SHADDA = "َ", "ُ", "ِ", "ْ", "ّ"
CONSONANTS = "بتثجحخدذرزسشصضطظعغفقكلمنه"

VERB_VOWELS = {FATHA: "فَعَلَ", KASRA: "فَعِلَ", DAMMA: "فَعُلَ"}

# (suffix builder, features) for conjugated perfect forms
CONJUGATIONS = [
    (SUKUN + "نَا", {"PERS": "1", "NUMBER": "plural", "GENR": "masculine"}),
    (SUKUN + "تُ", {"PERS": "1", "NUMBER": "singular", "GENR": "masculine"}),
    (SUKUN + "تَ", {"PERS": "2", "NUMBER": "singular", "GENR": "masculine"}),
    (DAMMA + "وا", {"PERS": "3", "NUMBER": "plural", "GENR": "masculine"}),
    (FATHA + "تْ", {"PERS": "3", "NUMBER": "singular", "GENR": "feminine"}),
]

NOUN_NATURES = {
    "مصدر ميمي": lambda a, b, c: "مَ" + a + SUKUN + b + FATHA + c,
    "اسم فاعل": lambda a, b, c: a + FATHA + "ا" + b + KASRA + c,
    "اسم مفعول": lambda a, b, c: "مَ" + a + SUKUN + b + DAMMA + "و" + c,
    "صفة مشبهة": lambda a, b, c: a + FATHA + b + KASRA + "ي" + c,
    "اسم مكان": lambda a, b, c: "مَ" + a + SUKUN + b + KASRA + c,
}

NOUN_INFLECTIONS = [
    (lambda w, r: "الْ" + w, {"DEFN": "معرفة"}),
    (lambda w, r: w + FATHA + "انِ", {"NUMBER": "مثنى"}),
    (lambda w, r: w + DAMMA + "ونَ", {"NUMBER": "جمع"}),
    (lambda w, r: r[0] + DAMMA + r[1] + FATHA + "يْ" + r[2], {"DIMINUTIVE": "مصغر"}),
    (lambda w, r: w + KASRA + "يّ", {"RELATIVE": "منسوب"}),
]


def _sym(v: str) -> Symbol:
    return Symbol(v)


def _fs(*pairs, type: Optional[str] = None) -> FeatureStructure:
    return FeatureStructure(tuple((n, v) for n, v in pairs if v is not None), type)


def _np(case: Optional[str] = None, gender: Optional[str] = None, label: Optional[str] = None):
    index = [("GENR", _sym(gender) if gender else None), ("CASE", _sym(case) if case else None)]
    index = [(n, v) for n, v in index if v is not None]
    pairs = [("LABEL", _sym(label) if label else None)]
    if index:
        pairs.append(("INDEX", FeatureStructure(tuple(index))))
    return _fs(*pairs, type="NP")


def _entry(phon: str, head: list, valence: Optional[list] = None, cont: Optional[list] = None):
    cat = [("HEAD", _fs(*head))]
    if valence is not None:
        cat.append(("VALENCE", _fs(*valence)))
    loc = [("CAT", _fs(*cat))]
    if cont is not None:
        loc.append(("CONT", _fs(*cont)))
    return _fs(("PHON", Text(phon)), ("SYNSEM", _fs(("LOC", _fs(*loc)))))


class _Roots:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.used: Set[Tuple[str, str, str]] = set()

    def take(self) -> Tuple[str, str, str]:
        while True:
            root = tuple(self.rng.choice(CONSONANTS) for _ in range(3))
            if root not in self.used:
                self.used.add(root)
                return root


def _verb_family(rng, root, size, vowel, derived, mark) -> List[FeatureStructure]:
    a, b, c = root
    if derived:
        stem, scheme, denude = "أَ" + a + SUKUN + b + FATHA + c, "أَفْعَلَ", "مزيد"
    else:
        stem, scheme, denude = a + FATHA + b + vowel + c, VERB_VOWELS[vowel], "مجرد"
    canonical = stem + FATHA
    radical = " ".join(root)
    transitive = rng.random() < 0.6
    valence = [("SUJ", FsList((_np("مرفوع", "مذكر", "X"),)))]
    if transitive:
        valence.append(("COMPS", FsList((_np("منصوب", label="Y"),))))
    common = [
        ("MAJ", _sym("فعل")),
        ("VFORM", _sym("متصرف")),
        ("CFORM", _sym("ثلاثي")),
        ("DENUDE", _sym(denude)),
        ("RADICAL", _sym(radical)),
        ("SCHEME", _sym(scheme)),
        ("TENSE", _sym("perfect")),
        ("VOICE", _sym("active")),
    ]
    nucleus = [("agent-noun", _sym("X"))] + ([("patient-noun", _sym("Y"))] if transitive else [])
    out = [_entry(
        canonical,
        common + [("PERS", _sym("3")), ("NUMBER", _sym("singular")), ("GENR", _sym("masculine"))],
        valence,
        [("NUCLEUS", _fs(*nucleus))],
    )]
    for suffix, feats in rng.sample(CONJUGATIONS, size - 1):
        head = list(common) + [(k, _sym(v)) for k, v in feats.items()]
        if mark or rng.random() < 0.5:
            head.append(("LEMMA", _sym(canonical)))
        out.append(_entry(stem + suffix, head, valence))
    return out


def _frozen_verb(root) -> FeatureStructure:
    a, b, c = root
    return _entry(
        a + FATHA + b + SUKUN + c + FATHA,
        [("MAJ", _sym("فعل")), ("VFORM", _sym("جامد")), ("RADICAL", _sym(" ".join(root))),
         ("TENSE", _sym("perfect"))],
        [("SUJ", FsList((_np("مرفوع"),)))],
    )


def _noun_family(rng, root, size) -> List[FeatureStructure]:
    nature = rng.choice(sorted(NOUN_NATURES))
    word = NOUN_NATURES[nature](*root)
    radical = " ".join(root)
    gender = rng.choice(["مذكر", "مؤنث"])
    base = [
        ("MAJ", _sym("اسم")),
        ("NFORM", _sym("متصرف مشتق")),
        ("NATURE", _sym(nature)),
        ("RADICAL", _sym(radical)),
        ("GENR", _sym(gender)),
    ]
    canonical = {"DEFN": "نكرة", "DIMINUTIVE": "غير مصغر", "RELATIVE": "غير منسوب", "NUMBER": "مفرد"}
    valence = [("SPR", FsList((_fs(("MAJ", _sym("فعل")), type="V"),
                               _fs(("CONSTITUENT", _sym("DemP"))))))]

    def head(feats):
        return base + [(k, _sym(v)) for k, v in feats.items()]

    out = [_entry(word, head(canonical), valence, [("NUCLEUS", FeatureStructure())])]
    for build, feats in rng.sample(NOUN_INFLECTIONS, size - 1):
        out.append(_entry(build(word, root), head({**canonical, **feats}), valence))
    return out


def _standalone_noun(rng, root) -> FeatureStructure:
    a, b, c = root
    word = a + FATHA + b + SUKUN + c + "ُ"
    return _entry(word, [
        ("MAJ", _sym("اسم")),
        ("NFORM", _sym("غير متصرف")),
        ("NATURE", _sym("علم")),
        ("DEFN", _sym("معرفة")),
        ("ORIGIN", _sym(a + b + c)),
    ])


def _particle(rng, used: Set[str], i: int) -> FeatureStructure:
    while True:
        n = rng.choice([1, 2, 3])
        phon = "".join(rng.choice(CONSONANTS) + rng.choice([FATHA, KASRA, DAMMA, SUKUN]) for _ in range(n))
        if phon not in used:
            used.add(phon)
            break
    if i % 2 == 0:
        return _entry(
            phon,
            [("MAJ", _sym("حرف")), ("PFORM", _sym("جر")), ("NATURE", _sym("حرف معنى"))],
            [("COMPS", FsList((_np("مجرور"),)))],
        )
    return _entry(
        phon,
        [("MAJ", _sym("حرف")), ("NATURE", _sym("حرف معنى")),
         ("SPEC", _fs(("MOOD", _sym("منصوب")), type="V"))],
        cont=[("RESTIND", _sym("مضارع"))],
    )


def synthetic_entries(seed: int, verbs: int = 0, nouns: int = 0, particles: int = 0) -> List[FeatureStructure]:
    """Entry bodies in shuffled order; counts are numbers of HPSG entries."""
    if min(verbs, nouns, particles) < 0:
        raise ValueError("counts must be non-negative")
    rng = random.Random(seed)
    roots = _Roots(rng)
    out: List[FeatureStructure] = []
    left = verbs
    while left > 0:
        if left >= 2 and rng.random() < 0.05:
            # homograph families: same root, different vocalization
            root = roots.take()
            v1, v2 = rng.sample(sorted(VERB_VOWELS), 2)
            s1 = rng.randint(1, min(3, left - 1))
            s2 = rng.randint(1, min(3, left - s1)) if left - s1 >= 1 else 0
            out += _verb_family(rng, root, s1, v1, False, True)
            if s2:
                out += _verb_family(rng, root, s2, v2, False, True)
            left -= s1 + s2
            continue
        if rng.random() < 0.05:
            out.append(_frozen_verb(roots.take()))
            left -= 1
            continue
        size = rng.randint(1, min(4, left))
        out += _verb_family(rng, roots.take(), size, rng.choice(sorted(VERB_VOWELS)),
                            rng.random() < 0.3, False)
        left -= size
    left = nouns
    while left > 0:
        if rng.random() < 0.1:
            out.append(_standalone_noun(rng, roots.take()))
            left -= 1
            continue
        size = rng.randint(1, min(4, left))
        out += _noun_family(rng, roots.take(), size)
        left -= size
    used: Set[str] = set()
    for i in range(particles):
        out.append(_particle(rng, used, i))
    rng.shuffle(out)
    return out


def generate_synthetic_lexicon(seed: int, verbs: int = 0, nouns: int = 0, particles: int = 0) -> bytes:
    return serialize_lexicon(synthetic_entries(seed, verbs, nouns, particles))
