import json
import random

import pytest

from mg_audit.agreement import cohen_kappa
from mg_audit.dispatch import ChatExchange, ExchangeStore, RetryPolicy, dispatch
from mg_audit.transport import (
    AuthenticationError,
    GenerationConfig,
    MockTransport,
    TransportError,
    TransportResult,
)
from mg_audit.validation import (
    ValidationRequest,
    build_validation_prompt,
    occurrence_ids,
    parse_validation_response,
)


class EchoTransport:
    def complete(self, request_id, messages, config):
        return TransportResult(text=f"echo:{request_id}")


class FlakyTransport:
    """Fails a fixed number of times per id, then succeeds."""

    def __init__(self, failures=2):
        self.failures = failures
        self.attempts = {}

    def complete(self, request_id, messages, config):
        seen = self.attempts.get(request_id, 0)
        self.attempts[request_id] = seen + 1
        if seen < self.failures:
            raise TransportError("rate limited")
        return TransportResult(text="finally")


def fast_retry(max_attempts=3):
    return RetryPolicy(max_attempts=max_attempts, initial_backoff=0.0,
                       sleep=lambda _: None)


CONFIG = GenerationConfig(model_id="m")


class TestDispatch:
    def test_three_instructions_echo(self, tmp_path):
        store = ExchangeStore(tmp_path / "ex.jsonl")
        instructions = [("i1", "a"), ("i2", "b"), ("i3", "c")]
        exchanges = dispatch(instructions, CONFIG, EchoTransport(), store, fast_retry())
        assert [e.status for e in exchanges] == ["ok", "ok", "ok"]
        assert [e.response_text for e in exchanges] == ["echo:i1", "echo:i2", "echo:i3"]

    def test_retry_then_success_counts_attempts(self, tmp_path):
        store = ExchangeStore(tmp_path / "ex.jsonl")
        exchanges = dispatch(
            [("i1", "a")], CONFIG, FlakyTransport(failures=2), store, fast_retry()
        )
        assert exchanges[0].status == "ok"
        assert exchanges[0].attempt_count == 3

    def test_exhausted_retries_record_error(self, tmp_path):
        store = ExchangeStore(tmp_path / "ex.jsonl")
        exchanges = dispatch(
            [("i1", "a")], CONFIG, FlakyTransport(failures=99), store, fast_retry()
        )
        assert exchanges[0].status == "error"
        assert exchanges[0].response_text == ""
        assert exchanges[0].attempt_count == 3

    def test_resume_skips_completed(self, tmp_path):
        store = ExchangeStore(tmp_path / "ex.jsonl")
        transport = EchoTransport()
        dispatch([("i1", "a")], CONFIG, transport, store, fast_retry())

        class CountingTransport(EchoTransport):
            calls = 0

            def complete(self, request_id, messages, config):
                CountingTransport.calls += 1
                return super().complete(request_id, messages, config)

        counting = CountingTransport()
        exchanges = dispatch(
            [("i1", "a"), ("i2", "b")], CONFIG, counting, store, fast_retry()
        )
        assert CountingTransport.calls == 1  # only i2 dispatched
        assert {e.instruction_id for e in exchanges} == {"i1", "i2"}

    def test_resume_retries_errors(self, tmp_path):
        store = ExchangeStore(tmp_path / "ex.jsonl")
        dispatch([("i1", "a")], CONFIG, FlakyTransport(failures=99), store, fast_retry())
        assert store.load()["i1"].status == "error"
        dispatch([("i1", "a")], CONFIG, EchoTransport(), store, fast_retry())
        assert store.load()["i1"].status == "ok"

    def test_store_content_independent_of_interruption(self, tmp_path):
        instructions = [(f"i{n}", f"t{n}") for n in range(6)]
        full_store = ExchangeStore(tmp_path / "full.jsonl")
        dispatch(instructions, CONFIG, EchoTransport(), full_store, fast_retry())

        # interrupted after 3, then resumed
        part_store = ExchangeStore(tmp_path / "part.jsonl")
        dispatch(instructions[:3], CONFIG, EchoTransport(), part_store, fast_retry())
        dispatch(instructions, CONFIG, EchoTransport(), part_store, fast_retry())

        full = {k: v.response_text for k, v in full_store.load().items()}
        part = {k: v.response_text for k, v in part_store.load().items()}
        assert full == part

    def test_auth_error_is_fatal(self, tmp_path):
        class AuthFail:
            def complete(self, request_id, messages, config):
                raise AuthenticationError("bad key")

        store = ExchangeStore(tmp_path / "ex.jsonl")
        with pytest.raises(AuthenticationError):
            dispatch([("i1", "a")], CONFIG, AuthFail(), store, fast_retry())

    def test_empty_instruction_list_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            dispatch([], CONFIG, EchoTransport(), ExchangeStore(tmp_path / "x"), fast_retry())

    def test_exchange_invariant(self):
        with pytest.raises(ValueError):
            ChatExchange(
                instruction_id="i", model_id="m", request={}, response_text="",
                status="ok", started_at=0, finished_at=0, attempt_count=1,
            )


class TestMockTransport:
    def test_reads_fixture(self, tmp_path):
        fixture = tmp_path / "fx.jsonl"
        fixture.write_text(
            json.dumps({"id": "i1", "text": "Bonjour"}) + "\n", encoding="utf-8"
        )
        transport = MockTransport(fixture)
        assert transport.complete("i1", [], CONFIG).text == "Bonjour"
        with pytest.raises(TransportError):
            transport.complete("missing", [], CONFIG)


class TestOccurrenceIds:
    def test_repeats_suffixed_from_2(self):
        assert occurrence_ids(["facteurs", "facteurs"]) == ["facteurs", "facteurs_2"]

    def test_single_noun_unsuffixed(self):
        assert occurrence_ids(["président"]) == ["président"]

    def test_distinct_nouns_in_order(self):
        assert occurrence_ids(["président", "citoyens", "mesures"]) == [
            "président",
            "citoyens",
            "mesures",
        ]

    def test_third_occurrence(self):
        assert occurrence_ids(["x", "x", "x"]) == ["x", "x_2", "x_3"]

    def test_request_carries_ids_and_decoding_defaults(self):
        request = ValidationRequest(text="t", nouns=("facteurs", "facteurs"))
        assert request.ids == ["facteurs", "facteurs_2"]
        assert request.temperature == 0.0
        assert request.max_tokens == 500


class TestValidationPrompt:
    def test_template_contains_contract_lines(self):
        system, user = build_validation_prompt("Du texte.", ["mot"])
        assert system == (
            "You are an assistant that validates human noun classifications in French texts."
        )
        assert user.startswith(
            "Given a text and nouns, for each noun, determine if it is a human noun in context."
        )
        assert "distinguished by ID ('noun_1', 'noun_2'...)" in user
        assert "Only respond in this format" in user
        assert user.rstrip().endswith("Output:")

    def test_in_context_examples_verbatim(self):
        _, user = build_validation_prompt("T", ["n"])
        assert "Nouns: facteurs, facteurs_2" in user
        assert 'Output: { "facteurs": 0, "facteurs_2": 1 }' in user
        assert 'Output: { "président": 1, "citoyens": 1, "mesures": 0 }' in user
        assert 'Output: { "esprits": 0, "fantômes": 0, "enfant": 1 }' in user

    def test_text_and_ids_slotted(self):
        _, user = build_validation_prompt(
            "Les facteurs et les facteurs.", ["facteurs", "facteurs"]
        )
        assert "Text: Les facteurs et les facteurs." in user
        assert user.rstrip().endswith("Nouns: facteurs, facteurs_2\nOutput:")

    def test_empty_nouns_rejected(self):
        with pytest.raises(ValueError):
            build_validation_prompt("texte", [])


class TestParseValidation:
    def test_example_outputs(self):
        parsed = parse_validation_response(
            '{ "facteurs": 0, "facteurs_2": 1 }', ["facteurs", "facteurs_2"]
        )
        assert parsed.ok
        assert parsed.verdicts == {"facteurs": 0, "facteurs_2": 1}

    def test_three_entries(self):
        parsed = parse_validation_response(
            '{ "président": 1, "citoyens": 1, "mesures": 0 }',
            ["président", "citoyens", "mesures"],
        )
        assert parsed.verdicts == {"président": 1, "citoyens": 1, "mesures": 0}

    def test_not_json_flags_error(self):
        parsed = parse_validation_response("not json", ["a"])
        assert not parsed.ok
        assert parsed.verdicts == {}
        assert parsed.parse_error is not None

    def test_extraneous_ignored_with_warning(self):
        parsed = parse_validation_response('{"a": 1, "b": 0}', ["a"])
        assert parsed.verdicts == {"a": 1}
        assert parsed.extraneous == ["b"]

    def test_missing_listed(self):
        parsed = parse_validation_response('{"a": 1}', ["a", "b"])
        assert parsed.missing == ["b"]
        assert not parsed.ok

    def test_json_embedded_in_prose(self):
        raw = 'Voici ma réponse:\n```json\n{"a": 1}\n```\nMerci.'
        parsed = parse_validation_response(raw, ["a"])
        assert parsed.verdicts == {"a": 1}

    def test_round_trip_ids(self):
        nouns = ["facteurs", "mesures", "facteurs", "citoyens"]
        _, user = build_validation_prompt("t", nouns)
        ids = occurrence_ids(nouns)
        fake_response = json.dumps({i: 1 for i in ids}, ensure_ascii=False)
        parsed = parse_validation_response(fake_response, ids)
        assert parsed.ok
        assert list(parsed.verdicts) == ids


class TestCohenKappa:
    def test_identical_non_constant(self):
        result = cohen_kappa([1, 0, 1, 0, 1], [1, 0, 1, 0, 1])
        assert result.kappa == pytest.approx(1.0, abs=1e-9)

    def test_hand_computed_zero(self):
        result = cohen_kappa([1, 1, 0, 0], [1, 0, 0, 1])
        assert result.kappa == pytest.approx(0.0, abs=1e-9)
        assert result.confusion == ((1, 1), (1, 1))
        assert result.n_items == 4

    def test_constant_identical_defined_as_one(self):
        assert cohen_kappa([1, 1, 1], [1, 1, 1]).kappa == 1.0

    def test_symmetry_on_random_pairs(self):
        rng = random.Random(21)
        for _ in range(100):
            n = rng.randint(2, 40)
            a = [rng.randint(0, 1) for _ in range(n)]
            b = [rng.randint(0, 1) for _ in range(n)]
            ab = cohen_kappa(a, b).kappa
            ba = cohen_kappa(b, a).kappa
            assert abs(ab - ba) < 1e-9
            assert -1.0 - 1e-9 <= ab <= 1.0 + 1e-9

    def test_self_agreement_is_one(self):
        rng = random.Random(8)
        for _ in range(20):
            a = [rng.randint(0, 1) for _ in range(10)]
            if len(set(a)) < 2:
                continue
            assert cohen_kappa(a, a).kappa == pytest.approx(1.0, abs=1e-9)

    def test_length_mismatch_fatal(self):
        with pytest.raises(ValueError):
            cohen_kappa([1, 0], [1])

    def test_confusion_sums_to_n(self):
        rng = random.Random(4)
        for _ in range(50):
            n = rng.randint(1, 30)
            a = [rng.randint(0, 1) for _ in range(n)]
            b = [rng.randint(0, 1) for _ in range(n)]
            result = cohen_kappa(a, b)
            assert sum(sum(row) for row in result.confusion) == n
