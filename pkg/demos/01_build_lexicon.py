"""Build the human-noun database from the bundled source dumps.

Walks through ingestion, merging, class annotation and the
masculine-generics subset, then shows the recursive definition search
pulling in a noun that no source matched directly.
"""

import json
from pathlib import Path

from mg_audit.ingest import ingest_source
from mg_audit.lexicon import (
    DictionarySnapshot,
    annotate_classes,
    extract_mg_subset,
    merge_lexicons,
    recursive_definition_search,
)

MINI = Path(__file__).resolve().parent.parent / "data" / "mini"

SOURCES = [
    ("demonette_csv", "demonette.csv"),
    ("wikidata_tsv", "wikidata.tsv"),
    ("nhuma_csv", "nhuma.csv"),
    ("wiktextract_jsonl", "wiktextract.jsonl"),
    ("dictionary_snapshot", "tlfi_snapshot.jsonl"),
]

parts = []
for adapter, filename in SOURCES:
    entries, report = ingest_source(adapter, MINI / "sources" / filename)
    print(f"{adapter:20s} {report.n_records:3d} records -> {len(entries):3d} entries"
          f" ({len(report.errors)} errors)")
    parts.append(entries)

db, conflicts = merge_lexicons(parts)
print(f"\nmerged database: {len(db)} entries, {len(conflicts)} class conflicts")

gold = json.loads((MINI / "resources/class_gold.json").read_text())
predicted = json.loads((MINI / "resources/class_predicted.json").read_text())
mapping = json.loads((MINI / "resources/class_mapping.json").read_text())
db = annotate_classes(db, gold, predicted, mapping)

mg = extract_mg_subset(db)
print(f"masculine-generics subset: {len(mg)} entries")
print("  sample:", ", ".join(sorted(mg.lemmas)[:8]), "...")

# "artiste" exists under both genders with the same form, so it is epicene
# and stays out of the MG subset.
artiste = db.get("artiste", "masculine")
print(f"\nartiste: epicene={artiste.epicene}, in MG subset: {'artiste' in mg}")

# The snapshot adapter only takes direct definition matches; breadth-first
# search also reaches nouns defined through already-accepted ones.
snapshot = DictionarySnapshot.load_jsonl(MINI / "sources/tlfi_snapshot.jsonl")
direct = recursive_definition_search(snapshot, {"personne"}, max_depth=1)
recursive = recursive_definition_search(snapshot, {"personne"}, max_depth=2)
print(f"\ndefinition search depth 1: {sorted(direct)}")
print(f"definition search depth 2: {sorted(recursive)}  (forgeron via artisan)")
