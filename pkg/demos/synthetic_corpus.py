"""A synthetic corpus the size of a real one.

Generates 3000 verbs, 450 nouns and 50 particles, converts them and prints
the run statistics.  Every input entry is accounted for: it opened a new
LMF entry, attached as an inflected form, promoted a pending lemma, was
folded into a duplicate or was rejected.
"""

import os
import tempfile

from hpsg2lmf import RunConfig, generate_synthetic_lexicon, run

with tempfile.TemporaryDirectory() as tmp:
    src = os.path.join(tmp, "lexicon.xml")
    out = os.path.join(tmp, "lmf.xml")
    with open(src, "wb") as fp:
        fp.write(generate_synthetic_lexicon(seed=7, verbs=3000, nouns=450, particles=50))
    stats = run(RunConfig(inputs=[src], output=out, jobs=4))
    print(stats.format())
    print(f"input {os.path.getsize(src) / 1e6:.1f} MB, output {os.path.getsize(out) / 1e6:.1f} MB")
