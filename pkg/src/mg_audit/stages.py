"""Pipeline stages: lexicon, training, filtering, narrowing, dispatch,
validation, analysis and reporting.

Stages run in a fixed order enforced through the run manifest; each stage
writes its outputs atomically and records their checksums, so re-running
a completed stage is a no-op and interrupted runs resume where they
stopped.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from . import __version__
from .analysis import analyze_text, find_candidates, load_analyses, save_analyses
from .config import ModelConfig, RunConfig
from .conllu import AnnotatedDocument, read_conllu, write_conllu
from .dispatch import ExchangeStore, RetryPolicy, dispatch
from .ensemble import train_member
from .features import FeatureResources, feature_matrix
from .filters import (
    FilterDecision,
    RuleHit,
    filter_document,
    load_wordlist,
    write_filter_report,
)
from .ingest import ingest_source
from .lexicon import (
    HumanNounDB,
    MGLexicon,
    annotate_classes,
    extract_mg_subset,
    merge_lexicons,
)
from .manifest import RunManifest, atomic_write_text, sha256_text
from .markers import MarkerLexicon
from .narrowing import apportion, narrow_proportional
from .report import emit_report
from .resources import EmbeddingTable, IndicatorLexicon, PrototypeLexicon, SuffixSet
from .transport import GenerationConfig, HttpChatTransport, MockTransport
from .validation import (
    VALIDATION_MAX_TOKENS,
    VALIDATION_SYSTEM_PROMPT,
    VALIDATION_TEMPERATURE,
    build_validation_prompt,
    parse_validation_response,
)
from .wordnet import WordNetSnapshot

logger = logging.getLogger(__name__)

STAGES = (
    "build-lexicon",
    "train-hscorer",
    "filter",
    "narrow",
    "dispatch",
    "validate",
    "analyze",
    "report",
)

STAGE_DEPS: dict[str, tuple[str, ...]] = {
    "build-lexicon": (),
    "train-hscorer": ("build-lexicon",),
    "filter": ("build-lexicon",),
    "narrow": ("filter",),
    "dispatch": ("narrow",),
    "validate": ("dispatch",),
    "analyze": ("validate",),
    "report": ("analyze",),
}

RULE_MG_INSTRUCTION = "mg_instruction"

# Config keys each stage actually reads; a changed key invalidates the
# stage (and, because artifacts flow forward, everything after it).
STAGE_CONFIG_KEYS: dict[str, tuple[str, ...]] = {
    "build-lexicon": ("lexicon_sources", "class_gold", "class_predicted", "class_mapping"),
    "train-hscorer": ("hscorer",),
    "filter": ("corpora", "stoplist", "given_names", "det_attachment",
               "jargon_datasets", "ner_optional"),
    "narrow": ("corpora", "seed", "narrow_target"),
    "dispatch": ("corpora", "models", "generation"),
    "validate": ("models", "stoplist", "given_names", "marker_lexicon",
                 "det_attachment", "jargon_datasets"),
    "analyze": ("models", "stoplist", "given_names", "marker_lexicon",
                "det_attachment", "jargon_datasets", "count_unvalidated"),
    "report": ("models",),
}


class StageError(RuntimeError):
    pass


def _dumps(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _transport_for(
    config: RunConfig, model: ModelConfig | None, mock_dir: Path | None
):
    if mock_dir is not None:
        if mock_dir.is_dir():
            name = f"{model.model_id}.jsonl" if model else "validator.jsonl"
            fixture = mock_dir / name
        else:
            fixture = mock_dir
        if not fixture.exists():
            raise StageError(f"mock transport fixture not found: {fixture}")
        return MockTransport(fixture)
    provider = model.provider if model else config.validator_provider
    if provider is None:
        raise StageError(
            "no provider configured and no mock transport given"
            + (f" for model {model.model_id}" if model else " for the validator")
        )
    return HttpChatTransport(provider)


def _load_lexicon(out: Path) -> tuple[HumanNounDB, MGLexicon]:
    lexicon_path = out / "lexicon" / "lexicon.jsonl"
    mg_path = out / "lexicon" / "mg.jsonl"
    for path in (lexicon_path, mg_path):
        if not path.exists():
            raise StageError(f"missing upstream artifact: {path}")
    return HumanNounDB.load_jsonl(lexicon_path), MGLexicon.load_jsonl(mg_path)


def stage_build_lexicon(config: RunConfig, out: Path) -> list[Path]:
    parts = []
    reports = []
    for source in config.lexicon_sources:
        entries, report = ingest_source(source.adapter, source.path, source.options)
        parts.append(entries)
        reports.append(report.to_dict())
    db, conflicts = merge_lexicons(parts)

    if config.class_mapping and (config.class_gold or config.class_predicted):
        gold = json.loads(config.class_gold.read_text(encoding="utf-8")) if config.class_gold else {}
        predicted = (
            json.loads(config.class_predicted.read_text(encoding="utf-8"))
            if config.class_predicted
            else {}
        )
        mapping = json.loads(config.class_mapping.read_text(encoding="utf-8"))
        db = annotate_classes(db, gold, predicted, mapping)

    mg = extract_mg_subset(db)
    lexicon_dir = out / "lexicon"
    lexicon_dir.mkdir(parents=True, exist_ok=True)
    db.save_jsonl(lexicon_dir / "lexicon.jsonl")
    mg.save_jsonl(lexicon_dir / "mg.jsonl")
    atomic_write_text(
        lexicon_dir / "ingest_report.json",
        _dumps(
            {
                "sources": reports,
                "n_entries": len(db),
                "n_mg": len(mg),
                "class_conflicts": [
                    {"lemma": c.lemma, "gender": c.gender, "kept": c.kept, "discarded": c.discarded}
                    for c in conflicts
                ],
            }
        ),
    )
    return [
        lexicon_dir / "lexicon.jsonl",
        lexicon_dir / "mg.jsonl",
        lexicon_dir / "ingest_report.json",
    ]


def stage_train_hscorer(config: RunConfig, out: Path) -> list[Path]:
    h = config.hscorer
    if h is None:
        raise StageError("train-hscorer requires an hscorer section in the config")
    resources = FeatureResources(
        wordnet=WordNetSnapshot.load_jsonl(
            h.wordnet_snapshot,
            human_anchors=set(h.human_anchors),
            nonhuman_anchors=set(h.nonhuman_anchors),
            expand_anchors=h.expand_anchors,
        ),
        indicators=IndicatorLexicon.load_json(h.indicators),
        prototypes=PrototypeLexicon.load_json(h.prototypes),
        embeddings=EmbeddingTable.load_text(h.embeddings),
        suffixes=SuffixSet.load_text(h.suffixes),
    )
    positives = sorted(load_wordlist(h.golden_hn))
    negatives = sorted(load_wordlist(h.golden_non_hn))
    words = positives + negatives
    labels = [1] * len(positives) + [0] * len(negatives)
    checksum = sha256_text(json.dumps([words, labels]))

    import numpy as np

    X = feature_matrix(words, resources)
    y = np.array(labels)

    members = {}
    for kind, params in (
        ("logistic_regression", h.lr_params),
        ("gradient_boosted_trees", h.gbt_params),
    ):
        members[kind] = train_member(
            kind, X, y, hyperparams=params, split_seed=h.split_seed, data_checksum=checksum
        )

    hscorer_dir = out / "hscorer"
    hscorer_dir.mkdir(parents=True, exist_ok=True)
    lr_path = hscorer_dir / "lr_member.json"
    gbt_path = hscorer_dir / "gbt_member.json"
    members["logistic_regression"].save(lr_path)
    members["gradient_boosted_trees"].save(gbt_path)
    report_path = hscorer_dir / "training_report.json"
    atomic_write_text(
        report_path,
        _dumps(
            {
                "n_hn": len(positives),
                "n_non_hn": len(negatives),
                "data_checksum": checksum,
                "lr_validation_accuracy": members["logistic_regression"].validation_accuracy,
                "gbt_validation_accuracy": members["gradient_boosted_trees"].validation_accuracy,
            }
        ),
    )
    return [lr_path, gbt_path, report_path]


def _mg_instruction_decision(doc: AnnotatedDocument, mg: MGLexicon, stoplist) -> FilterDecision:
    offsets = tuple(
        i
        for i, token in enumerate(doc.flat_tokens())
        if token.lemma in mg and token.lemma not in stoplist
    )
    fired = [RuleHit(RULE_MG_INSTRUCTION, offsets)] if offsets else []
    return FilterDecision(doc_id=doc.doc_id, kept=not fired, fired_rules=fired)


def stage_filter(config: RunConfig, out: Path) -> list[Path]:
    db, mg = _load_lexicon(out)
    stoplist = load_wordlist(config.stoplist)
    given_names = load_wordlist(config.given_names)
    jargon_tags = frozenset(config.jargon_datasets)

    filter_dir = out / "filter"
    kept_dir = filter_dir / "kept"
    kept_dir.mkdir(parents=True, exist_ok=True)
    decisions = []
    outputs = []
    any_ner = False
    for dataset in sorted(config.corpora):
        docs = read_conllu(config.corpora[dataset], dataset_tag=dataset)
        any_ner = any_ner or any(
            token.ner is not None for doc in docs for token in doc.flat_tokens()
        )
        survivors = []
        for doc in docs:
            filtered_doc, decision = filter_document(
                doc,
                mg,
                db,
                given_names,
                det_attachment=config.det_attachment,
                jargon_dataset_tags=jargon_tags,
            )
            if decision.kept:
                mg_decision = _mg_instruction_decision(filtered_doc, mg, stoplist)
                if mg_decision.kept:
                    survivors.append(filtered_doc)
                else:
                    decision = FilterDecision(
                        doc_id=doc.doc_id,
                        kept=False,
                        fired_rules=decision.fired_rules + mg_decision.fired_rules,
                    )
            decisions.append(decision)
        path = kept_dir / f"{dataset}.conllu"
        write_conllu(survivors, path)
        outputs.append(path)

    if not any_ner and not config.ner_optional:
        raise StageError(
            "no NER labels found in any corpus: the person-name rules need "
            "annotations with NER=<label> in the MISC column (set "
            '"ner_optional": true to filter un-annotated corpora anyway)'
        )
    report_path = filter_dir / "filter_report.jsonl"
    write_filter_report(decisions, report_path)
    outputs.append(report_path)
    return outputs


def stage_narrow(config: RunConfig, out: Path) -> list[Path]:
    kept_dir = out / "filter" / "kept"
    groups = {}
    for dataset in sorted(config.corpora):
        path = kept_dir / f"{dataset}.conllu"
        if not path.exists():
            raise StageError(f"missing upstream artifact: {path}")
        groups[dataset] = read_conllu(path, dataset_tag=dataset)

    quotas = apportion({name: len(docs) for name, docs in groups.items()}, config.narrow_target)
    sampled = narrow_proportional(groups, config.narrow_target, seed=config.seed)

    narrow_dir = out / "narrow"
    narrowed_dir = narrow_dir / "narrowed"
    narrowed_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    for dataset, docs in sorted(sampled.items()):
        path = narrowed_dir / f"{dataset}.conllu"
        write_conllu(docs, path)
        outputs.append(path)
    quota_path = narrow_dir / "quotas.json"
    atomic_write_text(quota_path, _dumps(quotas))
    outputs.append(quota_path)
    return outputs


def _narrowed_instructions(config: RunConfig, out: Path) -> list[AnnotatedDocument]:
    narrowed_dir = out / "narrow" / "narrowed"
    docs = []
    for dataset in sorted(config.corpora):
        path = narrowed_dir / f"{dataset}.conllu"
        if not path.exists():
            raise StageError(f"missing upstream artifact: {path}")
        docs.extend(read_conllu(path, dataset_tag=dataset))
    return docs


def stage_dispatch(
    config: RunConfig, out: Path, mock_dir: Path | None = None
) -> list[Path]:
    instructions = [(doc.doc_id, doc.text) for doc in _narrowed_instructions(config, out)]
    exchange_dir = out / "dispatch" / "exchanges"
    exchange_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    retry = RetryPolicy() if mock_dir is None else RetryPolicy(sleep=lambda _: None)
    for model in config.models:
        transport = _transport_for(config, model, mock_dir)
        store = ExchangeStore(exchange_dir / f"{model.model_id}.jsonl")
        dispatch(instructions, config.generation_config(model.model_id), transport, store, retry)
        outputs.append(store.path)
    return outputs


def _response_docs(model: ModelConfig) -> dict[str, AnnotatedDocument]:
    docs = read_conllu(model.response_annotations, dataset_tag=model.model_id)
    return {doc.doc_id: doc for doc in docs}


def stage_validate(
    config: RunConfig, out: Path, mock_dir: Path | None = None
) -> list[Path]:
    db, mg = _load_lexicon(out)
    stoplist = load_wordlist(config.stoplist)
    given_names = load_wordlist(config.given_names)
    markers = MarkerLexicon.load_json(config.marker_lexicon)

    validate_dir = out / "validate"
    outputs = []
    for model in config.models:
        store = ExchangeStore(out / "dispatch" / "exchanges" / f"{model.model_id}.jsonl")
        if not store.path.exists():
            raise StageError(f"missing upstream artifact: {store.path}")
        exchanges = store.load()
        annotations = _response_docs(model)

        # Mock fixtures live per model file; live validation goes through
        # the dedicated validator provider.
        if mock_dir is not None:
            transport = _transport_for(config, model, mock_dir)
            validator_id = "validator"
        else:
            transport = _transport_for(config, None, None)
            validator_id = config.validator_provider.model_id
        gen = GenerationConfig(
            model_id=validator_id,
            temperature=VALIDATION_TEMPERATURE,
            max_tokens=VALIDATION_MAX_TOKENS,
            system_prompt=VALIDATION_SYSTEM_PROMPT,
        )

        decisions = []
        verdict_records = []
        for instruction_id in sorted(exchanges):
            exchange = exchanges[instruction_id]
            if exchange.status == "error":
                continue
            doc = annotations.get(instruction_id)
            if doc is None:
                raise StageError(
                    f"no response annotation for {instruction_id!r} in "
                    f"{model.response_annotations}"
                )
            filtered_doc, decision = filter_document(
                doc, mg, db, given_names,
                det_attachment=config.det_attachment,
                jargon_dataset_tags=frozenset(config.jargon_datasets),
            )
            decisions.append(decision)
            if not decision.kept:
                continue
            candidates = find_candidates(
                filtered_doc, db, stoplist, mg, neutral_lemmas=markers.neutral_lemmas
            )
            if not candidates:
                verdict_records.append(
                    {"doc_id": instruction_id, "verdicts": {}, "missing": [],
                     "extraneous": [], "parse_error": None}
                )
                continue
            nouns = [c.form for c in candidates]
            expected = [c.occurrence_id for c in candidates]
            system, user = build_validation_prompt(filtered_doc.text, nouns)
            request_id = f"validate::{model.model_id}::{instruction_id}"
            messages = [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ]
            result = transport.complete(request_id, messages, gen)
            parsed = parse_validation_response(result.text, expected)
            verdict_records.append(
                {
                    "doc_id": instruction_id,
                    "verdicts": parsed.verdicts,
                    "missing": parsed.missing,
                    "extraneous": parsed.extraneous,
                    "parse_error": parsed.parse_error,
                }
            )

        model_dir = validate_dir / model.model_id
        model_dir.mkdir(parents=True, exist_ok=True)
        report_path = model_dir / "response_filter.jsonl"
        write_filter_report(decisions, report_path)
        verdict_path = model_dir / "verdicts.jsonl"
        atomic_write_text(
            verdict_path,
            "".join(
                json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n"
                for rec in sorted(verdict_records, key=lambda r: r["doc_id"])
            ),
        )
        outputs += [report_path, verdict_path]
    return outputs


def stage_analyze(config: RunConfig, out: Path) -> list[Path]:
    db, mg = _load_lexicon(out)
    stoplist = load_wordlist(config.stoplist)
    given_names = load_wordlist(config.given_names)
    markers = MarkerLexicon.load_json(config.marker_lexicon)

    analyze_dir = out / "analyze" / "analyses"
    analyze_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    for model in config.models:
        model_dir = out / "validate" / model.model_id
        filter_path = model_dir / "response_filter.jsonl"
        verdict_path = model_dir / "verdicts.jsonl"
        for path in (filter_path, verdict_path):
            if not path.exists():
                raise StageError(f"missing upstream artifact: {path}")

        kept_ids = set()
        with open(filter_path, encoding="utf-8") as fp:
            for line in fp:
                record = json.loads(line)
                if record["kept"]:
                    kept_ids.add(record["doc_id"])
        verdicts: dict[str, dict[str, int]] = {}
        with open(verdict_path, encoding="utf-8") as fp:
            for line in fp:
                record = json.loads(line)
                verdicts[record["doc_id"]] = {
                    k: int(v) for k, v in record["verdicts"].items()
                }

        annotations = _response_docs(model)
        analyses = []
        for doc_id in sorted(kept_ids):
            doc = annotations[doc_id]
            filtered_doc, _ = filter_document(
                doc, mg, db, given_names,
                det_attachment=config.det_attachment,
                jargon_dataset_tags=frozenset(config.jargon_datasets),
            )
            analyses.append(
                analyze_text(
                    filtered_doc,
                    db,
                    mg,
                    stoplist,
                    verdicts=verdicts.get(doc_id, {}),
                    marker_lexicon=markers,
                    unit_id=model.model_id,
                    count_unvalidated=config.count_unvalidated,
                )
            )
        path = analyze_dir / f"{model.model_id}.jsonl"
        save_analyses(analyses, path)
        outputs.append(path)
    return outputs


def stage_report(config: RunConfig, out: Path) -> list[Path]:
    db, _ = _load_lexicon(out)
    analyze_dir = out / "analyze" / "analyses"
    per_unit = {}
    for model in config.models:
        path = analyze_dir / f"{model.model_id}.jsonl"
        if not path.exists():
            raise StageError(f"missing upstream artifact: {path}")
        per_unit[model.model_id] = load_analyses(path)
    written = emit_report(per_unit, db, out / "report")
    return [path for paths in written.values() for path in paths]


_STAGE_FUNCS = {
    "build-lexicon": stage_build_lexicon,
    "train-hscorer": stage_train_hscorer,
    "filter": stage_filter,
    "narrow": stage_narrow,
    "dispatch": stage_dispatch,
    "validate": stage_validate,
    "analyze": stage_analyze,
    "report": stage_report,
}

_TRANSPORT_STAGES = ("dispatch", "validate")


def run_stage(
    stage: str,
    config: RunConfig,
    force: bool = False,
    mock_transport: str | Path | None = None,
) -> RunManifest:
    """Run one pipeline stage, enforcing ordering through the manifest."""
    if stage not in STAGES:
        raise StageError(f"unknown stage: {stage!r} (expected one of {', '.join(STAGES)})")
    config.validate_paths()
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    effective = config.effective_dict()
    checksum = sha256_text(json.dumps(effective, sort_keys=True))
    fingerprints = {
        name: sha256_text(
            json.dumps({k: effective.get(k) for k in STAGE_CONFIG_KEYS[name]},
                       sort_keys=True)
        )
        for name in STAGES
    }
    manifest = RunManifest.load(out)
    if manifest is None:
        manifest = RunManifest(
            output_dir=out, config_checksum=checksum, tool_version=__version__,
            fingerprints=fingerprints,
        )
    elif manifest.config_checksum != checksum:
        if not force:
            raise StageError(
                "config checksum does not match the existing manifest; "
                "re-run with --force to adopt the new configuration"
            )
        # Drop everything from the first stage whose config slice changed;
        # earlier stages keep their artifacts.
        for name in STAGES:
            if manifest.fingerprints.get(name) != fingerprints[name]:
                manifest.invalidate_from(list(STAGES), name)
                break
        manifest.config_checksum = checksum
        manifest.fingerprints = fingerprints
        manifest.save()

    for dependency in STAGE_DEPS[stage]:
        if not manifest.is_complete(dependency):
            raise StageError(
                f"stage {stage!r} requires completed stage {dependency!r}; "
                f"run `mg-audit {dependency}` first"
            )

    if manifest.is_complete(stage) and not force:
        logger.info("stage %s already complete; skipping", stage)
        return manifest
    if force:
        manifest.invalidate_from(list(STAGES), stage)

    func = _STAGE_FUNCS[stage]
    if stage in _TRANSPORT_STAGES:
        mock_dir = Path(mock_transport) if mock_transport else None
        outputs = func(config, out, mock_dir)
    else:
        outputs = func(config, out)
    manifest.mark_complete(stage, outputs)
    return manifest


def run_all(
    config: RunConfig,
    force: bool = False,
    mock_transport: str | Path | None = None,
) -> RunManifest:
    manifest = None
    for stage in STAGES:
        manifest = run_stage(stage, config, force=force, mock_transport=mock_transport)
        force = False  # only reset once; later stages rebuild from the manifest
    assert manifest is not None
    return manifest
