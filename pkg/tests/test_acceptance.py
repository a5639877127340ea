"""Acceptance criteria, one test per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import io
import json
import os
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

from hypothesis import given, settings
from hypothesis import strategies as st

from acceptance_log import RESULTS, criterion
from hpsg2lmf.cli import main
from hpsg2lmf.fs import FeatureStructure, FsList, parse_fs, serialize_fs, serialize_lexicon
from hpsg2lmf.lmf import (
    LmfForm,
    LmfLexicalEntry,
    LmfLexicalResource,
    LmfLexicon,
    parse_tei,
    serialize_tei,
)
from hpsg2lmf.pipeline import Converter
from hpsg2lmf.synthetic import synthetic_entries
from lexica import DHAHABA, DHAHABNA, KATABA, KHARAJA, KHARIJA, UNREGISTERED, lexicon, verb, f, fs, sym, vlist

TEI = "{http://www.tei-c.org/ns/1.0}"


def convert(*sources: bytes):
    return Converter().convert([io.BytesIO(s) for s in sources])


# 1 ---------------------------------------------------------------------------------


@criterion(1, "dhahaba + dhahabnā merge into one entry in both orders", 1.0)
def test_criterion_1_golden_merge():
    forward = convert(lexicon(DHAHABA, DHAHABNA)).resource
    backward = convert(lexicon(DHAHABNA, DHAHABA)).resource
    (entry,) = forward.entries()
    assert entry.lemma.orthography == "ذَهَبَ"
    assert [f.orthography for f in entry.inflected_forms] == ["ذَهَبْنَا"]
    assert len([f for f in entry.forms if f.kind == "lemma"]) == 1
    assert serialize_tei(forward) == serialize_tei(backward)


# 2 ---------------------------------------------------------------------------------

AYN_LISTING = """<entry>
  <gramGrp>
    <pos>commonNoun</pos>
  </gramGrp>
  <form type="lemma">
    <orth>عَيْن</orth>
  </form>
  <form type="inflected">
    <orth>عَيْن</orth>
    <gramGrp>
      <number>مفرد</number>
    </gramGrp>
  </form>
  <form type="inflected">
    <orth>عَيون</orth>
    <gramGrp>
      <number>جمع</number>
    </gramGrp>
  </form>
</entry>"""


def _shape(el):
    tag = el.tag.rpartition("}")[2]
    attrs = tuple(sorted((k, v) for k, v in el.attrib.items() if k != "n"))
    return tag, attrs, (el.text or "").strip(), tuple(_shape(c) for c in el)


@criterion(2, "ʿayn entry serializes to the reference TEI listing", 1.0)
def test_criterion_2_golden_tei():
    ayn = LmfLexicalEntry("ar:noun:0", {"partOfSpeech": "commonNoun"}, [
        LmfForm("عَيْن", "lemma"),
        LmfForm("عَيْن", "inflected", {"grammaticalNumber": "مفرد"}),
        LmfForm("عَيون", "inflected", {"grammaticalNumber": "جمع"}),
    ])
    resource = LmfLexicalResource({"language": "ar"}, [LmfLexicon("ar", [ayn])])
    data = serialize_tei(resource)
    (entry,) = ET.fromstring(data).iter(TEI + "entry")
    assert _shape(entry) == _shape(ET.fromstring(AYN_LISTING))
    assert parse_tei(io.BytesIO(data)) == resource


# 3 ---------------------------------------------------------------------------------


KATABA_PLAIN = verb(
    "كَتَبَ", "ك ت ب", "فَعَلَ", "3", "singular",
    valence=[f("S-ARG", vlist(
        fs(f("INDEX", fs(sym("GENR", "masculine"), sym("CASE", "nominative"))), type="NP"),
        fs(type="NP"),
    ))],
)


@criterion(3, "kataba yields a 2-argument frame and a 2-argument predicate", 1.0)
def test_criterion_3_subcat():
    (entry,) = convert(lexicon(KATABA_PLAIN)).resource.entries()
    (frame,) = entry.syntactic_behaviours
    got = [(a.function, a.constituent, a.attributes) for a in frame.arguments]
    assert got == [("subject", "NP", {"gender": "masculine", "case": "nominative"}),
                   ("object", "NP", {})]
    assert entry.senses == []

    # with NUCLEUS roles coindexed to the arguments through LABEL
    (entry,) = convert(lexicon(KATABA)).resource.entries()
    (frame,) = entry.syntactic_behaviours
    assert [(a.function, a.constituent) for a in frame.arguments] == [("subject", "NP"), ("object", "NP")]
    subject, obj = frame.arguments
    assert subject.attributes["gender"] == "masculine" and subject.attributes["case"] == "nominative"
    (pred,) = entry.senses
    assert [(a.role, a.value, a.link) for a in pred.arguments] == [
        ("agent-noun", "X", subject.id), ("patient-noun", "Y", obj.id)]


# 4 ---------------------------------------------------------------------------------


@criterion(4, "kharaja / kharija stay two entries", 1.0)
def test_criterion_4_homographs():
    for order in ((KHARAJA, KHARIJA), (KHARIJA, KHARAJA)):
        entries = list(convert(lexicon(*order)).resource.entries())
        assert sorted(e.lemma.orthography for e in entries) == ["خَرَجَ", "خَرِجَ"]


# 5 ---------------------------------------------------------------------------------


def _leaves(value):
    if isinstance(value, FeatureStructure):
        for _, v in value:
            yield from _leaves(v)
    elif isinstance(value, FsList):
        for v in value:
            yield from _leaves(v)
    else:
        yield value.value


def _recoverable(entry: LmfLexicalEntry, orth: str) -> set:
    """Every string the output keeps for one input form."""
    (form,) = [f for f in entry.forms if f.orthography == orth]
    out = {orth, *entry.attributes.values(), *form.attributes.values()}
    for frame in entry.syntactic_behaviours:
        for a in frame.arguments:
            out |= {a.function, a.constituent, *a.attributes.values()}
    for pred in entry.senses:
        out |= {a.value for a in pred.arguments}
    return out


@criterion(5, "property suite over 200 seeded synthetic lexica", 60.0)
@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(0, 2**32 - 1), st.integers(1, 12), st.integers(0, 8), st.integers(0, 4),
       st.randoms(use_true_random=False))
def test_criterion_5_properties(seed, verbs, nouns, particles, rnd):
    bodies = synthetic_entries(seed, verbs, nouns, particles)
    result = convert(serialize_lexicon(bodies))
    entries = list(result.resource.entries())

    # (a) entry-count bound
    assert len(entries) <= len(bodies)

    # (b) order independence
    shuffled = list(bodies)
    rnd.shuffle(shuffled)
    data = serialize_tei(result.resource)
    assert serialize_tei(convert(serialize_lexicon(shuffled)).resource) == data

    # (c) form conservation
    phons = sorted(b.get("PHON").value for b in bodies)
    assert sorted(f.orthography for e in entries for f in e.forms) == phons

    # (d) no loss: empty loss report, every input value recoverable
    assert [d for d in result.diagnostics if d.kind == "loss"] == []
    owner = {f.orthography: e for e in entries for f in e.forms}
    for body in bodies:
        phon = body.get("PHON").value
        missing = set(_leaves(body)) - _recoverable(owner[phon], phon)
        assert not missing, (phon, missing)

    # (e) round trips
    for body in bodies:
        assert parse_fs(serialize_fs(body)) == body
    assert parse_tei(io.BytesIO(data)) == result.resource


# 6 ---------------------------------------------------------------------------------

SCALE_SCRIPT = r"""
import json, resource, sys, time
from hpsg2lmf.pipeline import RunConfig, run
from hpsg2lmf.synthetic import generate_synthetic_lexicon
src, out = sys.argv[1], sys.argv[2]
with open(src, "wb") as fp:
    fp.write(generate_synthetic_lexicon(2024, 3000, 450, 50))
started = time.perf_counter()
stats = run(RunConfig([src], out))
elapsed = time.perf_counter() - started
peak_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
print(json.dumps({"stats": stats.as_dict(), "elapsed": elapsed, "peak_mb": peak_kb / 1024}))
"""


@criterion(6, "3000 verbs + 450 nouns + 50 particles convert end to end", 30.0)
def test_criterion_6_scale():
    with tempfile.TemporaryDirectory() as tmp:
        src, out = os.path.join(tmp, "in.xml"), os.path.join(tmp, "out.xml")
        proc = subprocess.run([sys.executable, "-c", SCALE_SCRIPT, src, out],
                              capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout.strip().splitlines()[-1])
        cats = report["stats"]["categories"]
        assert (cats["verb"]["input"], cats["noun"]["input"], cats["particle"]["input"]) == (3000, 450, 50)
        assert report["stats"]["conserved"] is True
        for counts in cats.values():
            assert counts["output"] <= counts["input"]
        assert report["elapsed"] < 30
        assert report["peak_mb"] < 1024, report["peak_mb"]
        print(f"scale run: {report['elapsed']:.2f}s, peak {report['peak_mb']:.0f} MB, "
              f"{sum(c['output'] for c in cats.values())} entries", file=sys.stderr)


# 7 ---------------------------------------------------------------------------------


@criterion(7, "unregistered feature: --strict exits 1, default exits 0, passthrough kept", 10.0)
def test_criterion_7_strict():
    with tempfile.TemporaryDirectory() as tmp:
        src, out = os.path.join(tmp, "in.xml"), os.path.join(tmp, "out.xml")
        with open(src, "wb") as fp:
            fp.write(lexicon(UNREGISTERED))
        assert main(["convert", "--input", src, "--output", out, "--strict"]) == 1
        with open(out, "rb") as fp:
            assert b'<gram type="x-hpsg:FOO">bar</gram>' in fp.read()
        os.remove(out)
        assert main(["convert", "--input", src, "--output", out]) == 0
        with open(out, "rb") as fp:
            assert b'<gram type="x-hpsg:FOO">bar</gram>' in fp.read()


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
