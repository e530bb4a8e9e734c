import json
import random

import pytest

from mg_audit.ingest import ingest_source
from mg_audit.lexicon import (
    DictionarySnapshot,
    HumanNounDB,
    LexicalEntry,
    annotate_classes,
    extract_mg_subset,
    merge_lexicons,
    recursive_definition_search,
)


def entry(lemma, gender, source="test", hn_class=None, provenance="none"):
    return LexicalEntry(
        lemma=lemma,
        gender=gender,
        sources=frozenset({source}),
        hn_class=hn_class,
        class_provenance=provenance,
    )


class TestLexicalEntry:
    def test_rejects_empty_lemma(self):
        with pytest.raises(ValueError):
            entry("", "masculine")

    def test_rejects_whitespace_lemma(self):
        with pytest.raises(ValueError):
            entry(" chanteur", "masculine")

    def test_rejects_empty_sources(self):
        with pytest.raises(ValueError):
            LexicalEntry(lemma="x", gender="masculine", sources=frozenset())

    def test_class_iff_provenance(self):
        with pytest.raises(ValueError):
            entry("x", "masculine", hn_class="profession", provenance="none")
        with pytest.raises(ValueError):
            entry("x", "masculine", hn_class=None, provenance="human")


class TestMerge:
    def test_dedup_unions_sources(self):
        a = [entry("médecin", "masculine", source="s1")]
        b = [entry("médecin", "masculine", source="s2")]
        db, conflicts = merge_lexicons([a, b])
        assert len(db) == 1
        assert db.get("médecin", "masculine").sources == {"s1", "s2"}
        assert conflicts == []

    def test_idempotent(self):
        part = [
            entry("avocat", "masculine"),
            entry("avocate", "feminine"),
            entry("artiste", "masculine"),
            entry("artiste", "feminine"),
        ]
        once, _ = merge_lexicons([part])
        twice, _ = merge_lexicons([part, part])
        assert once == twice

    def test_epicene_from_gender_pair(self):
        db, _ = merge_lexicons(
            [[entry("artiste", "masculine"), entry("artiste", "feminine"),
              entry("avocat", "masculine")]]
        )
        assert db.get("artiste", "masculine").epicene
        assert db.get("artiste", "feminine").epicene
        assert not db.get("avocat", "masculine").epicene

    def test_human_beats_model(self):
        a = [entry("boulanger", "masculine", hn_class="speciality", provenance="model")]
        b = [entry("boulanger", "masculine", hn_class="profession", provenance="human")]
        db, conflicts = merge_lexicons([a, b])
        result = db.get("boulanger", "masculine")
        assert result.hn_class == "profession"
        assert result.class_provenance == "human"
        assert conflicts == []

    def test_human_conflict_first_wins_and_logged(self):
        a = [entry("garde", "masculine", hn_class="profession", provenance="human")]
        b = [entry("garde", "masculine", hn_class="status", provenance="human")]
        db, conflicts = merge_lexicons([a, b])
        assert db.get("garde", "masculine").hn_class == "profession"
        assert len(conflicts) == 1
        assert conflicts[0].kept == "profession"
        assert conflicts[0].discarded == "status"

    def test_key_set_permutation_invariant(self):
        rng = random.Random(7)
        entries = [
            entry(f"mot{i}", g, source=f"s{i % 3}")
            for i in range(30)
            for g in (["masculine"] if i % 2 else ["masculine", "feminine"])
        ]
        parts = [entries[:10], entries[10:20], entries[20:]]
        keys_forward = {e.key for e in merge_lexicons(parts)[0]}
        shuffled = parts[:]
        rng.shuffle(shuffled)
        keys_shuffled = {e.key for e in merge_lexicons(shuffled)[0]}
        assert keys_forward == keys_shuffled


class TestMGSubset:
    def test_definition_case(self):
        db, _ = merge_lexicons(
            [[entry("avocat", "masculine"), entry("avocate", "feminine"),
              entry("artiste", "masculine"), entry("artiste", "feminine")]]
        )
        mg = extract_mg_subset(db)
        assert mg.lemmas == {"avocat"}

    def test_all_entries_masculine_non_epicene_and_in_db(self):
        db, _ = merge_lexicons(
            [[entry(f"nom{i}", g)
              for i in range(20)
              for g in (["masculine", "feminine"] if i % 3 == 0 else ["masculine"])]]
        )
        mg = extract_mg_subset(db)
        for item in mg:
            assert item.gender == "masculine"
            assert not item.epicene
            assert (item.lemma, "masculine") in db

    def test_empty_when_no_masculines(self):
        db, _ = merge_lexicons([[entry("femme", "feminine")]])
        assert len(extract_mg_subset(db)) == 0


class TestRecursiveSearch:
    def test_direct_prefix_match(self):
        snapshot = DictionarySnapshot(
            definitions={"plombier": ["personne qui installe des tuyaux"]}
        )
        assert recursive_definition_search(snapshot, {"personne"}, 1) == {"plombier"}

    def test_two_level_expansion(self):
        snapshot = DictionarySnapshot(
            definitions={
                "artisan": ["personne exerçant un métier manuel"],
                "forgeron": ["artisan qui travaille le fer"],
            }
        )
        assert recursive_definition_search(snapshot, {"personne"}, 2) == {
            "artisan",
            "forgeron",
        }

    def test_depth_bound(self):
        snapshot = DictionarySnapshot(
            definitions={
                "artisan": ["personne exerçant un métier manuel"],
                "forgeron": ["artisan qui travaille le fer"],
            }
        )
        assert recursive_definition_search(snapshot, {"personne"}, 1) == {"artisan"}

    def test_depth_zero_is_empty(self):
        snapshot = DictionarySnapshot(definitions={"plombier": ["personne qui ..."]})
        assert recursive_definition_search(snapshot, {"personne"}, 0) == set()

    def test_determiner_stripped(self):
        snapshot = DictionarySnapshot(
            definitions={
                "notaire": ["Une personne chargée des actes"],
                "élève": ["L'individu qui suit un enseignement"],
            }
        )
        found = recursive_definition_search(snapshot, {"personne", "individu"}, 1)
        assert found == {"notaire", "élève"}

    def test_excludes_seeds(self):
        snapshot = DictionarySnapshot(
            definitions={"personne": ["individu de l'espèce humaine"]}
        )
        assert recursive_definition_search(snapshot, {"personne", "individu"}, 2) == set()

    def test_deeper_is_superset(self):
        rng = random.Random(3)
        lemmas = [f"mot{i}" for i in range(40)]
        defs = {}
        heads = ["personne"] + lemmas
        for lemma in lemmas:
            defs[lemma] = [f"{rng.choice(heads)} qui fait quelque chose"]
        snapshot = DictionarySnapshot(definitions=defs)
        previous = set()
        for depth in range(6):
            current = recursive_definition_search(snapshot, {"personne"}, depth)
            assert previous <= current
            previous = current


class TestAnnotateClasses:
    def make_db(self):
        db, _ = merge_lexicons(
            [[entry("caporal", "masculine"), entry("boulanger", "masculine"),
              entry("inconnu", "masculine")]]
        )
        return db

    def test_model_label_through_mapping(self):
        db = annotate_classes(
            self.make_db(),
            gold={},
            predicted={"caporal": "NH-Grade"},
            mapping={"NH-Grade": "title"},
        )
        result = db.get("caporal", "masculine")
        assert result.hn_class == "title"
        assert result.class_provenance == "model"

    def test_gold_beats_predicted(self):
        db = annotate_classes(
            self.make_db(),
            gold={"boulanger": "profession"},
            predicted={"boulanger": "NH-Spé"},
            mapping={"NH-Spé": "speciality"},
        )
        result = db.get("boulanger", "masculine")
        assert result.hn_class == "profession"
        assert result.class_provenance == "human"

    def test_absent_stays_unannotated(self):
        db = annotate_classes(self.make_db(), gold={}, predicted={}, mapping={})
        assert db.get("inconnu", "masculine").class_provenance == "none"

    def test_unmapped_raw_label_is_fatal(self):
        with pytest.raises(KeyError):
            annotate_classes(
                self.make_db(), gold={}, predicted={"caporal": "NH-XXX"}, mapping={}
            )


class TestIngest:
    def test_demonette_pair_expansion(self, tmp_path):
        path = tmp_path / "demonette.csv"
        path.write_text("chanteur,chanteuse\n", encoding="utf-8")
        entries, report = ingest_source("demonette_csv", path)
        assert {(e.lemma, e.gender) for e in entries} == {
            ("chanteur", "masculine"),
            ("chanteuse", "feminine"),
        }
        assert report.n_records == 1 and not report.errors

    def test_wikidata_tsv(self, tmp_path):
        path = tmp_path / "wikidata.tsv"
        path.write_text("acteur\tactrice\n", encoding="utf-8")
        entries, _ = ingest_source("wikidata_tsv", path)
        assert {(e.lemma, e.gender) for e in entries} == {
            ("acteur", "masculine"),
            ("actrice", "feminine"),
        }

    def test_nhuma_carries_human_class(self, tmp_path):
        path = tmp_path / "nhuma.csv"
        path.write_text("médecin,masculine,profession\n", encoding="utf-8")
        entries, _ = ingest_source("nhuma_csv", path)
        assert entries[0].hn_class == "profession"
        assert entries[0].class_provenance == "human"

    def test_wiktextract_index_rule(self, tmp_path):
        path = tmp_path / "wikt.jsonl"
        records = [
            {"word": "plombier", "gender": "masculine",
             "senses": [{"gloss": "personne qui installe des tuyaux"}]},
            {"word": "navet", "gender": "masculine",
             "senses": [{"gloss": "plante potagère"}, {"gloss": "film raté"},
                        {"gloss": "personne sans talent"}]},
            {"word": "témoin", "gender": "masculine",
             "senses": [{"gloss": "objet servant de preuve"},
                        {"gloss": "personne qui atteste un fait"}]},
        ]
        path.write_text(
            "\n".join(json.dumps(r, ensure_ascii=False) for r in records), encoding="utf-8"
        )
        entries, _ = ingest_source("wiktextract_jsonl", path)
        # navet's first human sense is at index 3 > 2: dropped
        assert {e.lemma for e in entries} == {"plombier", "témoin"}

    def test_malformed_rows_collected_not_fatal(self, tmp_path):
        path = tmp_path / "demonette.csv"
        path.write_text("chanteur,chanteuse\nsolo\n,\n", encoding="utf-8")
        entries, report = ingest_source("demonette_csv", path)
        assert len(entries) == 2
        assert len(report.errors) == 2

    def test_unreadable_file_is_fatal(self, tmp_path):
        with pytest.raises(OSError):
            ingest_source("demonette_csv", tmp_path / "missing.csv")

    def test_reingest_merges_identically(self, tmp_path):
        path = tmp_path / "demonette.csv"
        path.write_text("chanteur,chanteuse\navocat,avocate\n", encoding="utf-8")
        first, _ = ingest_source("demonette_csv", path)
        second, _ = ingest_source("demonette_csv", path)
        assert merge_lexicons([first, second])[0] == merge_lexicons([first])[0]

    def test_emission_bound_and_no_empty_lemmas(self, tmp_path):
        rng = random.Random(11)
        rows = []
        for i in range(50):
            masc = f"mot{i}" if rng.random() > 0.1 else ""
            fem = f"mot{i}e" if rng.random() > 0.1 else ""
            rows.append(f"{masc},{fem}")
        path = tmp_path / "demonette.csv"
        path.write_text("\n".join(rows), encoding="utf-8")
        entries, report = ingest_source("demonette_csv", path)
        assert len(entries) <= 2 * report.n_records
        assert all(e.lemma for e in entries)

    def test_lemma_normalization_collapses_case(self, tmp_path):
        path = tmp_path / "demonette.csv"
        path.write_text("Chanteur,chanteuse\nchanteur,Chanteuse\n", encoding="utf-8")
        entries, _ = ingest_source("demonette_csv", path)
        db, _ = merge_lexicons([entries])
        assert len(db) == 2

    def test_dictionary_snapshot_adapter(self, tmp_path):
        path = tmp_path / "tlfi.jsonl"
        records = [
            {"lemma": "plombier", "gender": "masculine",
             "definitions": ["Personne qui installe des tuyaux"]},
            {"lemma": "table", "gender": "feminine",
             "definitions": ["Meuble à plateau horizontal"]},
        ]
        path.write_text(
            "\n".join(json.dumps(r, ensure_ascii=False) for r in records), encoding="utf-8"
        )
        entries, _ = ingest_source("dictionary_snapshot", path)
        assert {e.lemma for e in entries} == {"plombier"}


class TestRoundTrip:
    def test_jsonl_save_load(self, tmp_path):
        db, _ = merge_lexicons(
            [[entry("médecin", "masculine", hn_class="profession", provenance="human"),
              entry("artiste", "masculine"), entry("artiste", "feminine")]]
        )
        path = tmp_path / "lexicon.jsonl"
        db.save_jsonl(path)
        assert HumanNounDB.load_jsonl(path) == db
