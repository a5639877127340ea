import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hpsg2lmf.fs import HpsgEntry, parse_lexicon
from hpsg2lmf.schema import (
    ClassificationError,
    FeatureLayer,
    FeatureScope,
    LexicalCategory,
    RegistryFormatError,
    admits_inflected_forms,
    builtin_registry,
    classify,
    format_registry,
    is_canonical_form,
    load_registry,
    parse_registry_lines,
)
from lexica import ALMAJMA, DHAHABA, DHAHABNA, FI, LAN, MAJMA, entry, lexicon, noun, sym, verb

# every feature name an Arabic HPSG lexicon of this family is known to use
SOURCE_FEATURES = [
    "PHON", "SYNSEM", "LOC", "CAT", "HEAD", "TETE", "VALENCE", "CONT", "INDEX", "MAJ",
    "CFORM", "DENUDE", "DIMINUTIVE", "RELATIVE", "NATURE", "RADICAL", "ROOT", "NFORM",
    "VFORM", "SCHEME", "DEFN", "ORIGIN", "PFORM", "SPR", "SPEC", "COMPS", "SUJ", "S-ARG",
    "TOPIC", "ATTRIBUT", "MOD", "VOICE", "RESTIND", "NUCLEUS", "agent-noun", "patient-noun",
]


def one(xml: str) -> HpsgEntry:
    return parse_lexicon(io.BytesIO(lexicon(xml))).entries[0]


def test_radical_is_entry_level():
    d = builtin_registry().lookup("RADICAL")
    assert (d.layer, d.scope) == (FeatureLayer.MORPHOLOGICAL, FeatureScope.ENTRY)


def test_scheme_is_form_level():
    d = builtin_registry().lookup("SCHEME")
    assert (d.layer, d.scope) == (FeatureLayer.MORPHOLOGICAL, FeatureScope.FORM)


def test_unknown_feature_absent():
    assert builtin_registry().lookup("UNKNOWN_FEATURE") is None


@pytest.mark.parametrize("name", SOURCE_FEATURES)
def test_registry_totality(name):
    assert builtin_registry().lookup(name) is not None


def test_aliases_and_case_folding():
    reg = builtin_registry()
    assert reg.canonical_name("TETE") == "HEAD"
    assert reg.canonical_name("radical") == "RADICAL"
    assert reg.canonical_name("ROOT") == "RADICAL"


def test_classify_spellings():
    assert classify(one(DHAHABA)) is LexicalCategory.VERB
    assert classify(one(LAN)) is LexicalCategory.PARTICLE
    assert classify(one(MAJMA)) is LexicalCategory.NOUN
    assert classify(one(entry("x", [sym("MAJ", "فعل")]))) is LexicalCategory.VERB


def test_classify_unknown():
    with pytest.raises(ClassificationError) as info:
        classify(one(entry("x", [sym("MAJ", "xyz")])))
    assert info.value.raw == "xyz"


def test_particles_never_inflect():
    assert admits_inflected_forms(one(FI)) is False
    assert admits_inflected_forms(one(LAN)) is False


def test_noun_inflection_by_nform():
    assert admits_inflected_forms(one(noun("زَيْد", "غير متصرف"))) is False
    assert admits_inflected_forms(one(noun("زَيْد", "ghair mutaṣṣarf"))) is False
    assert admits_inflected_forms(one(MAJMA)) is True


def test_missing_inflection_marker():
    diagnostics = []
    e = one(entry("x", [sym("MAJ", "nom")]))
    assert admits_inflected_forms(e, diagnostics=diagnostics) is False
    assert [d.kind for d in diagnostics] == ["missing-inflection-marker"]


def test_frozen_verb():
    e = one(entry("لَيْسَ", [sym("MAJ", "verbe"), sym("VFORM", "جامد")]))
    assert admits_inflected_forms(e) is False


def test_canonical_detection():
    reg = builtin_registry()
    assert is_canonical_form(one(DHAHABA), LexicalCategory.VERB, reg)
    assert not is_canonical_form(one(DHAHABNA), LexicalCategory.VERB, reg)
    assert is_canonical_form(one(MAJMA), LexicalCategory.NOUN, reg)
    assert not is_canonical_form(one(ALMAJMA), LexicalCategory.NOUN, reg)


def test_registry_file_round_trip(tmp_path):
    text = format_registry(builtin_registry())
    path = tmp_path / "reg.tsv"
    path.write_text(text, encoding="utf-8")
    again = load_registry(path)
    assert {d.name: d for d in again} == {d.name: d for d in builtin_registry()}


def test_registry_override_adds_feature():
    lines = ["#format: hpsg2lmf-registry/1",
             "FOO\tmorphological\tentry_level\t*\t-\tar:foo"]
    reg = builtin_registry().with_overrides(parse_registry_lines(lines))
    assert reg.lookup("FOO").lmf_attribute == "ar:foo"


def test_registry_bad_line():
    with pytest.raises(RegistryFormatError):
        parse_registry_lines(["#format: hpsg2lmf-registry/1", "FOO\tnowhere"])


@given(st.sampled_from(["particle", "preposition", "حرف"]),
       st.lists(st.sampled_from(["NFORM", "VFORM", "DEFN", "RADICAL"]), unique=True))
def test_particles_never_inflect_property(maj, extra):
    body = entry("x", [sym("MAJ", maj)] + [sym(n, "متصرف") for n in extra])
    assert admits_inflected_forms(one(body)) is False


def test_classify_is_pure_in_maj():
    a = one(verb("a", "ك ت ب", "فَعَلَ", "3", "singular"))
    b = one(entry("b", [sym("MAJ", "verbe")]))
    assert classify(a) == classify(b)
