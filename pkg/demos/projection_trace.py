"""Which rule handles which feature.

Projects a transitive verb and a preposition and prints every emission
with the rule that produced it and the LMF class it lands in.  Features
the registry does not know are carried through as x-hpsg:NAME and
reported as losses.
"""

from hpsg2lmf import builtin_rules, parse_fs, project_entry
from hpsg2lmf.fs import entry_from_fs, SourceRef

KATABA = """<fs>
<f name="PHON"><string>كَتَبَ</string></f>
<f name="SYNSEM"><fs><f name="LOC"><fs>
 <f name="CAT"><fs>
  <f name="HEAD"><fs>
   <f name="MAJ"><symbol value="verbe"/></f>
   <f name="VFORM"><symbol value="متصرف"/></f>
   <f name="RADICAL"><symbol value="ك ت ب"/></f>
   <f name="DENUDE"><symbol value="مجرد"/></f>
   <f name="TENSE"><symbol value="perfect"/></f>
   <f name="VOICE"><symbol value="active"/></f>
   <f name="REGISTER"><symbol value="classical"/></f>
  </fs></f>
  <f name="VALENCE"><fs>
   <f name="S-ARG"><vColl org="list">
    <fs type="NP"><f name="LABEL"><symbol value="X"/></f>
     <f name="INDEX"><fs><f name="GENR"><symbol value="masculine"/></f>
      <f name="CASE"><symbol value="nominative"/></f></fs></f></fs>
    <fs type="NP"><f name="LABEL"><symbol value="Y"/></f></fs>
   </vColl></f>
  </fs></f>
 </fs></f>
 <f name="CONT"><fs><f name="NUCLEUS"><fs>
  <f name="agent-noun"><symbol value="X"/></f>
  <f name="patient-noun"><symbol value="Y"/></f>
 </fs></f></fs></f>
</fs></f></fs></f>
</fs>"""

FI = """<fs>
<f name="PHON"><string>فِي</string></f>
<f name="SYNSEM"><fs><f name="LOC"><fs><f name="CAT"><fs>
 <f name="HEAD"><fs><f name="MAJ"><symbol value="particle"/></f></fs></f>
 <f name="VALENCE"><fs><f name="COMPS"><vColl org="list">
  <fs type="NP"><f name="INDEX"><fs><f name="CASE"><symbol value="genitive"/></f></fs></f></fs>
 </vColl></f></fs></f>
</fs></f></fs></f></fs></f>
</fs>"""

print("rules:")
for rule in builtin_rules():
    print(f"  {rule.rule_id:<11} -> {rule.target_class.value:<17} {rule.description}")

for text in (KATABA, FI):
    entry = entry_from_fs(parse_fs(text, {"TETE": "HEAD"}), SourceRef("<demo>", 0))
    projection = project_entry(entry)
    print(f"\n{entry.phon}  ({projection.category.value}, inflecting={projection.inflecting})")
    for e in projection.emissions:
        print(f"  {e.feature:<13} {e.rule_id:<11} {e.target.value:<17} "
              f"{e.grouping_key or '':<6} {e.attribute} = {e.value}")
    for d in projection.diagnostics:
        print("  diagnostic:", d.kind, d.feature, d.message)
