"""Two HPSG entries, one LMF entry.

dhahaba (he went) and dhahabnā (we went) are separate AVMs in the HPSG
lexicon.  Projected into LMF they become one lexical entry: the canonical
form is the lemma, the conjugated form hangs below it.  The order in which
they arrive does not matter.
"""

import io

from hpsg2lmf import convert, serialize_tei

HEAD = """<f name="MAJ"><symbol value="verbe"/></f>
<f name="VFORM"><symbol value="متصرف"/></f>
<f name="RADICAL"><symbol value="ذ ه ب"/></f>
<f name="DENUDE"><symbol value="مجرد"/></f>
<f name="SCHEME"><symbol value="فَعَلَ"/></f>
<f name="TENSE"><symbol value="perfect"/></f>
<f name="VOICE"><symbol value="active"/></f>
<f name="GENR"><symbol value="masculine"/></f>"""


def entry(phon, pers, number):
    return f"""<fs><f name="PHON"><string>{phon}</string></f>
<f name="SYNSEM"><fs><f name="LOC"><fs><f name="CAT"><fs><f name="HEAD"><fs>
{HEAD}
<f name="PERS"><symbol value="{pers}"/></f>
<f name="NUMBER"><symbol value="{number}"/></f>
</fs></f></fs></f></fs></f></fs></f></fs>"""


def lexicon(*entries):
    body = "".join(entries)
    return io.BytesIO(f'<lexicon xmlns="http://www.tei-c.org/ns/1.0">{body}</lexicon>'.encode())


dhahaba = entry("ذَهَبَ", "3", "singular")
dhahabna = entry("ذَهَبْنَا", "1", "plural")

forward = convert([lexicon(dhahaba, dhahabna)])
backward = convert([lexicon(dhahabna, dhahaba)])

for e in forward.resource.entries():
    print(e.id, "lemma:", e.lemma.orthography)
    for form in e.inflected_forms:
        print("   inflected:", form.orthography, form.attributes)

same = serialize_tei(forward.resource) == serialize_tei(backward.resource)
print("same output in both orders:", same)
print("reverse order promoted the lemma:", backward.stats.categories["verb"]["promoted"] == 1)
print()
print(serialize_tei(forward.resource).decode())
