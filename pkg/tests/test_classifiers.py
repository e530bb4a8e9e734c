import json
import threading
import warnings
from http.server import BaseHTTPRequestHandler, HTTPServer

import numpy as np
import pytest

from mg_audit.boosting import GBTParams, GradientBoostedTrees
from mg_audit.ensemble import (
    ClassifierMember,
    EnsembleVerdict,
    RemoteScorer,
    RemoteScorerError,
    ensemble_classify,
    stratified_split,
    train_member,
)
from mg_audit.logistic import LogisticRegressionL1, log_loss, log_loss_grad


def finite_difference_grad(w, X, y, h=1e-6):
    """Central-difference oracle for the log-loss gradient."""
    grad = np.zeros_like(w)
    for i in range(len(w)):
        up = w.copy()
        down = w.copy()
        up[i] += h
        down[i] -= h
        grad[i] = (log_loss(up, X, y) - log_loss(down, X, y)) / (2 * h)
    return grad


def separable_set(n=200, seed=0):
    """Two well-separated 2-D Gaussian blobs; separable by construction."""
    rng = np.random.RandomState(seed)
    pos = rng.randn(n // 2, 2) * 0.3 + np.array([3.0, 3.0])
    neg = rng.randn(n // 2, 2) * 0.3 + np.array([-3.0, -3.0])
    X = np.vstack([pos, neg])
    y = np.array([1] * (n // 2) + [0] * (n // 2))
    order = rng.permutation(n)
    return X[order], y[order]


class TestLogLossGradient:
    def test_matches_finite_differences_on_100_instances(self):
        rng = np.random.RandomState(42)
        for _ in range(100):
            n = rng.randint(5, 30)
            d = rng.randint(2, 10)
            X = rng.randn(n, d)
            y = rng.randint(0, 2, size=n).astype(float)
            w = rng.randn(d)
            analytic = log_loss_grad(w, X, y)
            numeric = finite_difference_grad(w, X, y)
            rel_err = np.linalg.norm(analytic - numeric) / max(
                np.linalg.norm(numeric), 1e-12
            )
            assert rel_err < 1e-5


class TestLogisticRegression:
    def test_perfect_accuracy_on_separable_set(self):
        X, y = separable_set()
        member = train_member("logistic_regression", X, y, split_seed=42)
        assert member.validation_accuracy == 1.0

    def test_deterministic_under_fixed_seed(self):
        X, y = separable_set(seed=3)
        a = train_member("logistic_regression", X, y, split_seed=7)
        b = train_member("logistic_regression", X, y, split_seed=7)
        assert a.validation_accuracy == b.validation_accuracy
        assert np.array_equal(a.model.weights, b.model.weights)

    def test_single_class_is_fatal(self):
        X = np.random.RandomState(0).randn(10, 2)
        with pytest.raises(ValueError):
            train_member("logistic_regression", X, np.ones(10))

    def test_nonconvergence_warns_keeps_model(self):
        X, y = separable_set(seed=1)
        model = LogisticRegressionL1(max_iter=3)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            model.fit(X, y)
        assert any(issubclass(w.category, RuntimeWarning) for w in caught)
        assert model.weights is not None
        assert not model.converged

    def test_l1_shrinks_noise_features(self):
        rng = np.random.RandomState(0)
        n = 300
        signal = rng.randn(n)
        X = np.column_stack([signal, rng.randn(n, 5) * 0.01])
        y = (signal > 0).astype(float)
        strong = LogisticRegressionL1(C=0.01).fit(X, y)
        weak = LogisticRegressionL1(C=100.0).fit(X, y)
        assert np.abs(strong.weights).sum() < np.abs(weak.weights).sum()

    def test_artifact_round_trip(self, tmp_path):
        X, y = separable_set(seed=5)
        member = train_member(
            "logistic_regression", X, y, split_seed=11, data_checksum="abc"
        )
        path = tmp_path / "lr.json"
        member.save(path)
        loaded = ClassifierMember.load(path)
        assert loaded.validation_accuracy == member.validation_accuracy
        assert loaded.data_checksum == "abc"
        assert np.array_equal(loaded.model.weights, member.model.weights)


class TestGradientBoostedTrees:
    def test_train_loss_non_increasing_50_rounds(self):
        X, y = separable_set()
        params = GBTParams(
            n_estimators=50, max_depth=3, min_child_weight=1.0,
            learning_rate=0.2, early_stopping_rounds=None,
        )
        model = GradientBoostedTrees(params=params).fit(X, y)
        losses = model.train_losses
        assert len(losses) == 50
        for earlier, later in zip(losses, losses[1:]):
            assert later <= earlier + 1e-12

    def test_separable_set_high_accuracy(self):
        X, y = separable_set(seed=2)
        params = GBTParams(
            n_estimators=50, max_depth=3, min_child_weight=1.0, learning_rate=0.3,
            early_stopping_rounds=None,
        )
        member = train_member("gradient_boosted_trees", X, y,
                              hyperparams=params.to_dict(), split_seed=42)
        assert member.validation_accuracy == 1.0

    def test_early_stopping_trims_rounds(self):
        X, y = separable_set(seed=4)
        params = GBTParams(
            n_estimators=400, max_depth=3, min_child_weight=1.0,
            learning_rate=0.3, early_stopping_rounds=5,
        )
        model = GradientBoostedTrees(params=params)
        model.fit(X[:160], y[:160], eval_set=(X[160:], y[160:]))
        assert len(model.trees) < 400
        assert len(model.trees) == model.best_iteration

    def test_deterministic(self):
        X, y = separable_set(seed=6)
        params = GBTParams(n_estimators=20, max_depth=3, min_child_weight=1.0,
                           subsample=0.8, seed=42, early_stopping_rounds=None)
        a = GradientBoostedTrees(params=params).fit(X, y)
        b = GradientBoostedTrees(params=params).fit(X, y)
        assert a.train_losses == b.train_losses
        assert np.array_equal(a.decision_function(X), b.decision_function(X))

    def test_min_child_weight_blocks_splits(self):
        X, y = separable_set(n=100)
        # hessian mass at the root is ~25, so a 78 threshold forbids any split
        params = GBTParams(n_estimators=3, min_child_weight=78.0,
                           early_stopping_rounds=None)
        model = GradientBoostedTrees(params=params).fit(X, y)
        assert all(tree.is_leaf for tree in model.trees)

    def test_artifact_round_trip(self, tmp_path):
        X, y = separable_set(seed=8)
        params = GBTParams(n_estimators=10, max_depth=3, min_child_weight=1.0,
                           early_stopping_rounds=None)
        member = train_member("gradient_boosted_trees", X, y,
                              hyperparams=params.to_dict(), split_seed=5)
        path = tmp_path / "gbt.json"
        member.save(path)
        loaded = ClassifierMember.load(path)
        assert np.array_equal(loaded.model.predict(X), member.model.predict(X))


class TestStratifiedSplit:
    def test_preserves_classes_and_partitions(self):
        y = np.array([0] * 40 + [1] * 10)
        train, valid = stratified_split(y, 0.2, seed=0)
        assert len(train) + len(valid) == 50
        assert set(train) & set(valid) == set()
        assert (y[valid] == 1).sum() == 2
        assert (y[valid] == 0).sum() == 8


class _FixedVoteMember:
    """Test double standing in for a trained member with a fixed vote."""

    def __init__(self, vote, kind="fixed"):
        self._vote = vote
        self.kind = kind

    def vote(self, x):
        return self._vote


class TestEnsemble:
    def test_all_vote_combinations_up_to_k3(self):
        # enumeration oracle: accepted iff every vote is true
        x = np.zeros(2)
        for k in (1, 2, 3):
            for bits in range(2**k):
                votes = [(bits >> i) & 1 == 1 for i in range(k)]
                members = [_FixedVoteMember(v, kind=f"m{i}") for i, v in enumerate(votes)]
                verdict = ensemble_classify("mot", x, members)
                assert verdict.accepted == all(votes)

    def test_monotone_in_votes(self):
        x = np.zeros(2)
        rng = np.random.RandomState(1)
        for _ in range(50):
            k = rng.randint(1, 4)
            votes = [bool(rng.randint(0, 2)) for _ in range(k)]
            base = ensemble_classify(
                "w", x, [_FixedVoteMember(v, kind=f"m{i}") for i, v in enumerate(votes)]
            )
            for flip in range(k):
                if not votes[flip]:
                    continue
                flipped = list(votes)
                flipped[flip] = False
                worse = ensemble_classify(
                    "w", x,
                    [_FixedVoteMember(v, kind=f"m{i}") for i, v in enumerate(flipped)],
                )
                assert not (worse.accepted and not base.accepted)
                assert not worse.accepted or base.accepted

    def test_verdict_consistency_enforced(self):
        with pytest.raises(ValueError):
            EnsembleVerdict(votes={"a": True, "b": False}, accepted=True)

    def test_requires_members(self):
        with pytest.raises(ValueError):
            ensemble_classify("w", np.zeros(1), [])


class _ScoreHandler(BaseHTTPRequestHandler):
    votes = {}

    def do_POST(self):
        length = int(self.headers["Content-Length"])
        payload = json.loads(self.rfile.read(length))
        vote = self.votes.get(payload["word"], 1)
        body = json.dumps({"vote": vote}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture()
def score_server():
    server = HTTPServer(("127.0.0.1", 0), _ScoreHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}"
    server.shutdown()


class TestRemoteScorer:
    def test_remote_vote_joins_conjunction(self, score_server):
        _ScoreHandler.votes = {"facteur": 0, "plombier": 1}
        remote = RemoteScorer(score_server)
        members = [_FixedVoteMember(True, kind="local")]
        assert not ensemble_classify("facteur", np.zeros(1), members, remote).accepted
        assert ensemble_classify("plombier", np.zeros(1), members, remote).accepted

    def test_unreachable_default_fails(self):
        remote = RemoteScorer("http://127.0.0.1:1", timeout=0.2)
        with pytest.raises(RemoteScorerError):
            ensemble_classify("w", np.zeros(1), [_FixedVoteMember(True)], remote)

    def test_unreachable_degrade_flags(self):
        remote = RemoteScorer("http://127.0.0.1:1", timeout=0.2)
        verdict = ensemble_classify(
            "w", np.zeros(1), [_FixedVoteMember(True)], remote,
            on_remote_error="degrade",
        )
        assert verdict.accepted
        assert verdict.remote_error is not None
