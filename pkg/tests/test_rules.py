import io

from hypothesis import given, settings
from hypothesis import strategies as st

from hpsg2lmf.fs import HpsgEntry, entry_from_fs, is_empty, parse_lexicon, SourceRef
from hpsg2lmf.rules import (
    CONSTITUENT,
    FUNCTION,
    PASSTHROUGH_PREFIX,
    Projector,
    Target,
    builtin_rules,
    known_attributes,
    mapping_table,
    project_entry,
)
from hpsg2lmf.schema import builtin_registry, terminal_features
from hpsg2lmf.synthetic import synthetic_entries
from lexica import DHAHABA, FI, KATABA, LAN, MAJMA, entry, f, fs, lexicon, sym, verb, vlist


def one(xml: str) -> HpsgEntry:
    return parse_lexicon(io.BytesIO(lexicon(xml))).entries[0]


def arguments(projection):
    """grouping key -> {attribute: value} for SyntacticArgument emissions."""
    out = {}
    for e in projection.emissions:
        if e.target is Target.SYNTACTIC_ARGUMENT:
            out.setdefault(e.grouping_key, {})[e.attribute] = e.value
    return out


def rule_for(projection, feature):
    return {e.rule_id for e in projection.emissions if e.feature == feature}


def test_rule_table():
    rules = builtin_rules()
    assert len(rules) >= 5
    assert len({r.rule_id for r in rules}) == len(rules)


def test_maj_on_inflecting_verb_is_not_r9m():
    p = project_entry(one(DHAHABA))
    assert rule_for(p, "MAJ") == {"R5m.entry"}
    assert any(e.attribute == "partOfSpeech" for e in p.emissions)


def test_maj_on_particle_is_r9m():
    p = project_entry(one(LAN))
    assert rule_for(p, "MAJ") == {"R9m"}
    assert rule_for(p, "PHON") == {"R9m"}


def test_kataba():
    p = project_entry(one(KATABA))
    entry_attrs = {(e.attribute, e.value) for e in p.emissions if e.target is Target.LEXICAL_ENTRY}
    form_attrs = {(e.attribute, e.value) for e in p.emissions if e.target is Target.FORM}
    assert ("root", "ك ت ب") in entry_attrs
    assert {("tense", "perfect"), ("voice", "active")} <= form_attrs
    args = arguments(p)
    assert len({k.split(".")[0] for k in args}) == 1
    subject, obj = (args[k] for k in sorted(args))
    assert subject[FUNCTION] == "subject" and subject[CONSTITUENT] == "NP"
    assert subject["gender"] == "masculine" and subject["case"] == "nominative"
    assert obj[FUNCTION] == "object" and obj[CONSTITUENT] == "NP"
    roles = {e.attribute: e.value for e in p.emissions if e.target is Target.SEMANTIC_ARGUMENT}
    assert roles == {"agent-noun": "X", "patient-noun": "Y"}


def test_preposition_fi():
    p = project_entry(one(FI))
    (arg,) = arguments(p).values()
    assert arg == {FUNCTION: "object", CONSTITUENT: "NP", "case": "genitive"}


def test_unregistered_feature_passes_through():
    p = project_entry(one(entry("x", [sym("MAJ", "particle"), sym("FOO", "bar")])))
    passed = [e for e in p.emissions if e.attribute.startswith(PASSTHROUGH_PREFIX)]
    assert [(e.attribute, e.value) for e in passed] == [("x-hpsg:FOO", "bar")]
    assert [d.kind for d in p.diagnostics] == ["loss"]


def test_empty_nucleus():
    p = project_entry(one(entry("x", [sym("MAJ", "nom"), sym("NFORM", "غير متصرف")],
                                cont=[f("NUCLEUS", "<fs/>")])))
    assert not [e for e in p.emissions if e.target is Target.SEMANTIC_ARGUMENT]


def test_mapping_table():
    table = mapping_table()
    assert table["MAJ"] == "partOfSpeech"
    assert table["RADICAL"] == "root"
    assert table["SCHEME"] == "scheme"
    assert table["DEFN"] == "definiteness"
    assert table["VOICE"] == "voice"
    assert table["GENR"] == "gender"
    assert table["NUMBER"] == "grammaticalNumber"
    assert table["CASE"] == "grammaticalCase"
    assert table["CFORM"].startswith("ar:")
    for name in ("DENUDE", "DIMINUTIVE", "RELATIVE", "NATURE"):
        assert table[name].startswith("ar:")
    assert "UNMAPPED" not in table


def test_layer_routing():
    p = project_entry(one(MAJMA))
    targets = {e.feature: e.target for e in p.emissions}
    assert targets["RADICAL"] is Target.LEXICAL_ENTRY
    assert targets["DEFN"] is Target.FORM


def test_category_mismatch_passes_through():
    # PFORM does not apply to verbs
    p = project_entry(one(verb("ذَهَبَ", "ذ ه ب", "فَعَلَ", "3", "singular", extra=[sym("PFORM", "جر")])))
    assert any(e.attribute == "x-hpsg:PFORM" for e in p.emissions)
    assert "category" in [d.kind for d in p.diagnostics]


def test_value_translation_and_pins():
    p = Projector(values={("MAJ", "particle"): "حرف"}).project(one(LAN))
    assert any(e.attribute == "grammaticalCategory" and e.value == "حرف" for e in p.emissions)
    pinned = Projector(pins={"MAJ": "R9m"}).project(one(LAN))
    assert rule_for(pinned, "MAJ") == {"R9m"}


def test_function_override_in_argument():
    body = entry("x", [sym("MAJ", "particle")],
                 [f("COMPS", vlist(fs(sym("FUNCTION", "complement"), type="PP")))])
    (arg,) = arguments(project_entry(one(body))).values()
    assert arg[FUNCTION] == "complement" and arg[CONSTITUENT] == "PP"


# -- properties -----------------------------------------------------------------


def synthetic(seed):
    return [entry_from_fs(b, SourceRef("<gen>", i)) for i, b in enumerate(synthetic_entries(seed, 6, 6, 4))]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_totality_and_known_attributes(seed):
    reg = builtin_registry()
    known = known_attributes(reg)
    for e in synthetic(seed):
        p = project_entry(e)
        covered = {em.feature for em in p.emissions}
        for name, value in terminal_features(e.body, reg):
            if is_empty(value):
                continue
            assert (reg.canonical_name(name) or name) in covered, name
        for em in p.emissions:
            assert em.attribute in known or em.attribute.startswith(PASSTHROUGH_PREFIX)
        assert [d.kind for d in p.diagnostics] == []


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6))
def test_r1syn_cardinality(k):
    items = [fs(f("INDEX", fs(sym("CASE", "genitive"))), type="NP") for _ in range(k)]
    p = project_entry(one(entry("x", [sym("MAJ", "particle")], [f("COMPS", vlist(*items))])))
    assert len(arguments(p)) == k


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_projection_is_deterministic(seed):
    for e in synthetic(seed):
        assert project_entry(e) == project_entry(e)
