"""
Unit tests for the learning stack: policy network, advantages, value
baselines and the trainer.
"""

import json

import numpy as np
import pytest

from src.core.config import TrainerConfig
from src.core.constants import EnvConstants, TrainingConstants
from src.core.exceptions import (
    InvalidArgumentError,
    ModelFormatError,
    NonFiniteLossError,
    RolloutLimitError,
    ShapeError,
)
from src.groebner import BuchbergerState, buchberger
from src.learn import (
    PolicySample,
    SurrogateResult,
    Trainer,
    adam_step,
    best_checkpoint,
    evaluate,
    gae,
    init_params,
    interpretation_stats,
    LearnedStrategy,
    load_model,
    normalize_advantages,
    policy_forward,
    sample_action,
    save_model,
    surrogate,
    trace_episodes,
    train_epoch,
    value_estimate,
)
from src.learn.ppo import episode_seed, epoch_spec, make_env
from src.learn.values import degree_rollout_value
from src.utils import read_jsonl

PARAM_NAMES = ("W1", "b1", "W2", "b2")


def make_params(n=2, mode=EnvConstants.LEAD_ONLY, hidden=5, seed=0):
    return init_params(n, mode, hidden, np.random.default_rng(seed))


def tiny_config(**overrides):
    values = {
        "distributions": ["2-3-3 weighted"],
        "episodes_per_epoch": 3,
        "max_updates_per_epoch": 3,
        "hidden_size": 8,
        "value_kind": TrainingConstants.PAIRS_LEFT,
        "learning_rate": 1e-3,
        "kl_limit": 1.0,
        "epochs": 2,
        "checkpoint_every": 1,
        "seed": 4,
    }
    values.update(overrides)
    return TrainerConfig.from_dict(values)


class TestPolicyForward:
    """Test the row-scoring network."""

    def test_single_row(self):
        """One row always has probability 1."""
        probs, _ = policy_forward(make_params(), np.array([[1, 2, 0, 3]]))
        assert probs == pytest.approx([1.0])

    def test_probabilities_sum_to_one(self):
        """Softmax over rows."""
        obs = np.random.default_rng(1).integers(0, 10, size=(7, 4))
        probs, _ = policy_forward(make_params(), obs)
        assert probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(probs > 0)

    def test_identical_rows(self):
        """Identical rows get identical probability."""
        probs, _ = policy_forward(make_params(), np.array([[1, 2, 3, 4]] * 3))
        assert probs == pytest.approx([1 / 3] * 3)

    def test_output_bias_invariance(self):
        """Shifting every score leaves the distribution unchanged."""
        params = make_params()
        obs = np.random.default_rng(2).integers(0, 10, size=(5, 4))
        before, _ = policy_forward(params, obs)
        params.b2 += 3.5
        after, _ = policy_forward(params, obs)
        np.testing.assert_allclose(before, after, atol=1e-12)

    def test_permutation_equivariance(self):
        """Permuting rows permutes the probabilities."""
        params = make_params()
        obs = np.random.default_rng(3).integers(0, 10, size=(6, 4))
        order = np.array([3, 0, 5, 1, 4, 2])
        probs, _ = policy_forward(params, obs)
        permuted, _ = policy_forward(params, obs[order])
        np.testing.assert_allclose(permuted, probs[order], atol=1e-12)

    def test_width_mismatch(self):
        """Observations of the wrong width raise ShapeError."""
        with pytest.raises(ShapeError, match="expected width 4, got 8"):
            policy_forward(make_params(), np.zeros((2, 8)))

    def test_greedy_action(self):
        """Greedy selection takes the most probable row."""
        params = make_params()
        obs = np.random.default_rng(4).integers(0, 10, size=(5, 4))
        probs, _ = policy_forward(params, obs)
        action, logp = sample_action(params, obs, None, greedy=True)
        assert action == int(np.argmax(probs))
        assert logp == pytest.approx(np.log(probs[action]))


class TestSurrogate:
    """Test the clipped objective and its hand-written gradient."""

    @staticmethod
    def make_batch(params, rng, ratio_offsets):
        batch = []
        for offset in ratio_offsets:
            obs = rng.uniform(0.0, 5.0, size=(int(rng.integers(3, 6)), 4))
            probs, cache = policy_forward(params, obs)
            action = int(rng.integers(len(probs)))
            batch.append(PolicySample(obs, action, float(rng.normal()), float(cache.log_probs[action] - offset)))
        return batch

    @staticmethod
    def numeric_gradient(params, batch, h=1e-6):
        grads = {}
        for name in PARAM_NAMES:
            if name == "b2":
                base = params.b2
                params.b2 = base + h
                up = surrogate(params, batch, 0.2).objective
                params.b2 = base - h
                down = surrogate(params, batch, 0.2).objective
                params.b2 = base
                grads[name] = np.array((up - down) / (2 * h))
                continue
            array = getattr(params, name)
            grad = np.zeros_like(array)
            for idx in np.ndindex(array.shape):
                base = array[idx]
                array[idx] = base + h
                up = surrogate(params, batch, 0.2).objective
                array[idx] = base - h
                down = surrogate(params, batch, 0.2).objective
                array[idx] = base
                grad[idx] = (up - down) / (2 * h)
            grads[name] = grad
        return grads

    def test_gradient_matches_finite_differences(self):
        """Analytic and central-difference gradients agree."""
        params = make_params()
        params.b1 = np.random.default_rng(5).normal(size=params.hidden)
        rng = np.random.default_rng(6)
        batch = self.make_batch(params, rng, rng.uniform(-0.05, 0.05, size=3))
        analytic = surrogate(params, batch, 0.2).grads
        numeric = self.numeric_gradient(params, batch)
        for name in PARAM_NAMES:
            a, b = np.ravel(analytic[name]), np.ravel(numeric[name])
            scale = max(np.linalg.norm(a) + np.linalg.norm(b), 1e-8)
            assert np.linalg.norm(a - b) / scale < 1e-5, name

    def test_zero_advantage(self):
        """A zero advantage contributes no gradient."""
        params = make_params()
        obs = np.random.default_rng(7).uniform(0, 5, size=(4, 4))
        _, cache = policy_forward(params, obs)
        result = surrogate(params, [PolicySample(obs, 1, 0.0, float(cache.log_probs[1]))], 0.2)
        assert result.objective == 0.0
        assert all(np.all(g == 0) for g in result.grads.values())

    def test_clipped_ratio_has_no_gradient(self):
        """A ratio above 1 + eps with a positive advantage is clipped."""
        params = make_params()
        obs = np.random.default_rng(8).uniform(0, 5, size=(4, 4))
        _, cache = policy_forward(params, obs)
        old_logp = float(cache.log_probs[2] - np.log(1.3))
        result = surrogate(params, [PolicySample(obs, 2, 1.0, old_logp)], 0.2)
        assert result.objective == pytest.approx(1.2)
        assert all(np.all(g == 0) for g in result.grads.values())

    def test_kl_is_zero_at_sampling_policy(self):
        """The KL estimate vanishes before any update."""
        params = make_params()
        rng = np.random.default_rng(9)
        batch = self.make_batch(params, rng, [0.0, 0.0])
        assert surrogate(params, batch, 0.2).kl == pytest.approx(0.0, abs=1e-12)

    def test_empty_batch(self):
        """An empty batch has zero objective and gradient."""
        result = surrogate(make_params(), [], 0.2)
        assert result.objective == 0.0

    def test_adam_zero_learning_rate(self):
        """A zero learning rate leaves the weights untouched."""
        params = make_params()
        before = params.copy()
        grads = {name: np.ones_like(params.get(name)) for name in PARAM_NAMES}
        adam_step(params, grads, 0.0)
        for name in PARAM_NAMES:
            np.testing.assert_array_equal(params.get(name), before.get(name))
        assert params.adam_t == 1

    def test_adam_ascends(self):
        """Adam moves parameters along the gradient."""
        params = make_params()
        before = params.W2.copy()
        grads = {name: np.zeros_like(params.get(name)) for name in PARAM_NAMES}
        grads["W2"] = np.ones_like(params.W2)
        adam_step(params, grads, 0.01)
        assert np.all(params.W2 > before)


class TestModelFiles:
    """Test model persistence."""

    def test_round_trip(self, tmp_path):
        """A saved model reproduces the same probabilities exactly."""
        params = make_params(n=3, mode=EnvConstants.FULL, hidden=6)
        path = tmp_path / "model.json"
        save_model(params, path)
        loaded = load_model(path, n=3, observation_mode=EnvConstants.FULL)
        obs = np.random.default_rng(10).integers(0, 9, size=(5, 12))
        np.testing.assert_array_equal(policy_forward(params, obs)[0], policy_forward(loaded, obs)[0])

    def test_variable_count_mismatch(self, tmp_path):
        """Loading for another n is rejected."""
        path = tmp_path / "model.json"
        save_model(make_params(n=3, mode=EnvConstants.FULL), path)
        with pytest.raises(ModelFormatError, match="n=3"):
            load_model(path, n=2)

    def test_mode_mismatch(self, tmp_path):
        """Loading for another observation mode is rejected."""
        path = tmp_path / "model.json"
        save_model(make_params(), path)
        with pytest.raises(ModelFormatError, match="observation mode"):
            load_model(path, observation_mode=EnvConstants.FULL)

    def test_corrupt_file(self, tmp_path):
        """Truncated JSON is reported as a model format error."""
        path = tmp_path / "model.json"
        path.write_text('{"header": {', encoding="utf-8")
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_wrong_shape(self, tmp_path):
        """Weights that disagree with the header are rejected."""
        path = tmp_path / "model.json"
        save_model(make_params(), path)
        document = json.loads(path.read_text(encoding="utf-8"))
        document["weights"]["b1"] = [0.0]
        path.write_text(json.dumps(document), encoding="utf-8")
        with pytest.raises(ModelFormatError, match="b1"):
            load_model(path)

    def test_missing_file(self, tmp_path):
        """A missing file is a model format error."""
        with pytest.raises(ModelFormatError):
            load_model(tmp_path / "absent.json")


class TestAdvantages:
    """Test generalized advantage estimation."""

    def test_single_step_bootstrap(self):
        """A = r + gamma*V(next) - V(s)."""
        adv, targets = gae([-3.0], [-10.0], 0.99, 0.97, bootstrap=-6.0)
        assert adv[0] == pytest.approx(1.06)
        assert targets[0] == pytest.approx(-8.94)

    def test_lambda_zero_is_td_error(self):
        """With lambda 0 each advantage is its own TD error."""
        rewards, values = [-1.0, -2.0, -3.0], [-5.0, -4.0, -2.0]
        adv, _ = gae(rewards, values, 0.9, 0.0)
        expected = [-1 + 0.9 * -4 + 5, -2 + 0.9 * -2 + 4, -3 + 2]
        np.testing.assert_allclose(adv, expected)

    def test_monte_carlo_limit(self):
        """gamma = lambda = 1 with zero values gives rewards-to-go."""
        adv, _ = gae([-1.0, -2.0, -3.0], [0.0, 0.0, 0.0], 1.0, 1.0)
        np.testing.assert_allclose(adv, [-6.0, -5.0, -3.0])

    def test_length_mismatch(self):
        """Rewards and values must align."""
        with pytest.raises(InvalidArgumentError):
            gae([-1.0, -2.0], [0.0], 0.99, 0.97)

    def test_normalize(self):
        """Normalized advantages have mean 0 and std 1."""
        adv = normalize_advantages(np.array([1.0, 2.0, 3.0, 10.0]))
        assert adv.mean() == pytest.approx(0.0, abs=1e-12)
        assert adv.std() == pytest.approx(1.0)

    def test_normalize_constant(self):
        """A constant batch normalizes to zeros."""
        np.testing.assert_array_equal(normalize_advantages(np.full(4, 1.06)), np.zeros(4))


class TestValues:
    """Test state value baselines."""

    def test_degree_rollout(self, small_ideal):
        """-1 - 0.99*2 from the initial state of the worked example."""
        state = BuchbergerState.from_generators(small_ideal)
        assert value_estimate(state, TrainingConstants.DEGREE_ROLLOUT, 0.99) == pytest.approx(-2.98)
        assert state.pairs_processed == 0
        assert len(state.P) == 1

    def test_pairs_left_and_none(self, small_ideal):
        """Simple baselines."""
        state = BuchbergerState.from_generators(small_ideal)
        assert value_estimate(state, TrainingConstants.PAIRS_LEFT) == -1.0
        assert value_estimate(state, TrainingConstants.NO_VALUE) == 0.0

    def test_terminal_state(self, poly):
        """A state without pairs is worth zero."""
        state = BuchbergerState.from_generators([poly("x0", 2)])
        assert value_estimate(state, TrainingConstants.DEGREE_ROLLOUT) == 0.0

    def test_rollout_cap(self, small_ideal):
        """Rollouts longer than the cap raise."""
        state = BuchbergerState.from_generators(small_ideal)
        with pytest.raises(RolloutLimitError):
            degree_rollout_value(state, 0.99, max_steps=1)

    def test_unknown_kind(self, small_ideal):
        """Unknown value kinds are rejected."""
        state = BuchbergerState.from_generators(small_ideal)
        with pytest.raises(InvalidArgumentError):
            value_estimate(state, "oracle")


class TestTraining:
    """Test epochs, checkpoints and evaluation."""

    def test_zero_learning_rate(self):
        """With learning rate 0 the weights do not move."""
        config = tiny_config(learning_rate=0.0)
        params = init_params(2, config.observation_mode, config.hidden_size, np.random.default_rng(0))
        before = params.copy()
        report = train_epoch(config, params, 1)
        for name in PARAM_NAMES:
            np.testing.assert_array_equal(params.get(name), before.get(name))
        assert report.episodes == 3
        assert report.mean_additions > 0
        assert report.updates == 3

    def test_zero_kl_limit(self):
        """A zero KL limit stops before the first update."""
        config = tiny_config(kl_limit=0.0)
        params = init_params(2, config.observation_mode, config.hidden_size, np.random.default_rng(0))
        assert train_epoch(config, params, 1).updates == 0

    def test_epoch_reproducible(self):
        """Same seed, same parameters after an epoch."""
        config = tiny_config()
        results = []
        for _ in range(2):
            params = init_params(2, config.observation_mode, config.hidden_size, np.random.default_rng(0))
            train_epoch(config, params, 1)
            results.append(params)
        for name in PARAM_NAMES:
            np.testing.assert_array_equal(results[0].get(name), results[1].get(name))

    def test_degree_rollout_baseline(self):
        """An epoch runs with the rollout baseline."""
        config = tiny_config(value_kind=TrainingConstants.DEGREE_ROLLOUT, episodes_per_epoch=2)
        params = init_params(2, config.observation_mode, config.hidden_size, np.random.default_rng(0))
        assert train_epoch(config, params, 1).episodes == 2

    def test_non_finite_loss(self, mocker):
        """A non-finite objective aborts the epoch."""
        config = tiny_config()
        params = init_params(2, config.observation_mode, config.hidden_size, np.random.default_rng(0))
        grads = {name: np.zeros_like(params.get(name)) for name in PARAM_NAMES}
        mocker.patch("src.learn.ppo.surrogate", return_value=SurrogateResult(float("nan"), 0.0, grads))
        with pytest.raises(NonFiniteLossError):
            train_epoch(config, params, 1)

    def test_epoch_ideals_are_distinct(self):
        """Redrawn ideals never reuse the seed of a later episode in the epoch."""
        config = tiny_config(distributions=["2-3-2 weighted"], episodes_per_epoch=60)
        spec = epoch_spec(config, 1)
        ideals = []
        for k in range(config.episodes_per_epoch):
            env = make_env(spec, episode_seed(config, 1, k), config.observation_mode, config.max_episode_length)
            env.reset()
            ideals.append(env.ideal)
        assert [ideal.seed for ideal in ideals] == [episode_seed(config, 1, k) for k in range(60)]
        assert any(ideal.attempt for ideal in ideals)
        assert len({ideal.generators for ideal in ideals}) == len(ideals)

    def test_prime_reaches_training_ideals(self):
        """The configured characteristic is used for every sampled ideal."""
        config = tiny_config(prime=101)
        assert epoch_spec(config, 1).p == 101
        env = make_env(epoch_spec(config, 1), 0, config.observation_mode, None)
        env.reset()
        assert all(g.p == 101 for g in env.ideal.generators)

    def test_best_checkpoint(self):
        """Lowest trailing moving average among checkpoint epochs."""
        log = [{"epoch": k + 1, "mean_additions": m} for k, m in enumerate([10, 9, 8, 1, 7, 7])]
        assert best_checkpoint(log, window=1, checkpoint_every=2) == 4
        assert best_checkpoint(log, window=3, checkpoint_every=2) == 6
        assert best_checkpoint([], window=3) is None
        with pytest.raises(InvalidArgumentError):
            best_checkpoint(log, window=0)

    def test_trainer_files_and_resume(self, tmp_path):
        """Training writes the model, log and checkpoints and can resume."""
        Trainer(tiny_config(epochs=2), tmp_path).train()
        assert (tmp_path / "model.json").exists()
        assert (tmp_path / "checkpoints" / "model_epoch2.json").exists()
        assert [r["epoch"] for r in read_jsonl(tmp_path / "epochs.jsonl")] == [1, 2]

        reports = Trainer(tiny_config(epochs=3), tmp_path, resume=True).train()
        assert [r.epoch for r in reports] == [3]
        assert [r["epoch"] for r in read_jsonl(tmp_path / "epochs.jsonl")] == [1, 2, 3]

    def test_zero_epochs(self, tmp_path):
        """With no epochs the initial model is still written."""
        assert Trainer(tiny_config(epochs=0), tmp_path).train() == []
        load_model(tmp_path / "model.json", n=2)
        assert read_jsonl(tmp_path / "epochs.jsonl") == []

    def test_mixed_variable_counts(self, tmp_path):
        """All training distributions must share n."""
        with pytest.raises(InvalidArgumentError):
            Trainer(tiny_config(distributions=["2-3-3", "3-3-3"]), tmp_path)


class TestEvaluation:
    """Test policy evaluation."""

    def test_no_episodes(self):
        """Zero episodes report zeros."""
        report = evaluate(make_params(mode=EnvConstants.FULL), "2-3-3 weighted", 0)
        assert report.mean_additions == 0.0
        assert report.additions == []

    def test_deterministic(self):
        """Evaluation depends only on the seed."""
        params = make_params(mode=EnvConstants.FULL)
        first = evaluate(params, "2-3-3 weighted", 4, seed=1)
        second = evaluate(params, "2-3-3 weighted", 4, seed=1)
        assert first.additions == second.additions
        assert len(first.additions) == 4

    def test_learned_strategy_in_batch_run(self, small_ideal):
        """The learned strategy drives a full run."""
        _, stats = buchberger(small_ideal, LearnedStrategy(make_params(mode=EnvConstants.FULL), greedy=True))
        assert stats.additions == 3

    def test_interpretation_fractions(self):
        """Choice fractions lie in [0, 1]."""
        stats = interpretation_stats(make_params(mode=EnvConstants.FULL), "2-3-3 weighted", 3, seed=2)
        assert stats.steps > 0
        for value in stats.to_dict().values():
            assert value >= 0
        assert 0 <= stats.degree_fraction <= 1
        assert 0 <= stats.monomial_fraction <= 1

    def test_trace_matches_evaluation(self, tmp_path):
        """Trace rewards of each episode sum to minus its evaluated additions."""
        params = make_params(mode=EnvConstants.FULL)
        path = tmp_path / "trace.jsonl"
        written = trace_episodes(params, "2-3-3 weighted", 4, path, seed=1)
        records = read_jsonl(path)
        assert len(records) == written
        assert set(records[0]) == {"pair", "reward", "p_before", "basis_size", "episode"}
        report = evaluate(params, "2-3-3 weighted", 4, seed=1)
        for k, additions in enumerate(report.additions):
            assert sum(r["reward"] for r in records if r["episode"] == k) == -additions

    def test_empty_trace(self, tmp_path):
        """Zero episodes still create an empty trace file."""
        path = tmp_path / "trace.jsonl"
        assert trace_episodes(make_params(mode=EnvConstants.FULL), "2-3-3 weighted", 0, path) == 0
        assert read_jsonl(path) == []
