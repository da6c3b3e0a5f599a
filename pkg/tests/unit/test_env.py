"""
Unit tests for the Buchberger environment.
"""

import numpy as np
import pytest

from src.core.constants import EnvConstants, GroebnerConstants
from src.core.exceptions import InvalidActionError, InvalidArgumentError, InvalidStateError
from src.env import BuchbergerEnv, encode_observation, observation_width
from src.groebner import BuchbergerState, buchberger, get_strategy
from src.learn import LearnedStrategy, init_params
from src.utils import read_jsonl


@pytest.fixture
def three_generators(poly):
    return [
        poly("x0*x1^6+9*x1^2*x2^4", 3),
        poly("x2^4+13*x2", 3),
        poly("x0*x1^3+91*x0*x1^2", 3),
    ]


class TestObservation:
    """Test the pair-exponent matrix."""

    def test_width(self):
        """Rows have 4n entries, or 2n with leading terms only."""
        assert observation_width(3, EnvConstants.FULL) == 12
        assert observation_width(3, EnvConstants.LEAD_ONLY) == 6
        with pytest.raises(InvalidArgumentError):
            observation_width(3, "pixels")

    def test_full_matrix(self, three_generators):
        """Each row concatenates the two leading exponents of both generators."""
        state = BuchbergerState.from_generators(three_generators, GroebnerConstants.NAIVE)
        obs = encode_observation(state)
        expected = np.array(
            [
                [1, 6, 0, 0, 2, 4, 0, 0, 4, 0, 0, 1],
                [1, 6, 0, 0, 2, 4, 1, 3, 0, 1, 2, 0],
                [0, 0, 4, 0, 0, 1, 1, 3, 0, 1, 2, 0],
            ]
        )
        np.testing.assert_array_equal(obs.matrix, expected)
        assert obs.num_actions == 3
        assert [pair.indices for pair in obs.pairs] == [(0, 1), (0, 2), (1, 2)]

    def test_lead_only_matrix(self, three_generators):
        """Leading terms only."""
        state = BuchbergerState.from_generators(three_generators, GroebnerConstants.NAIVE)
        obs = encode_observation(state, EnvConstants.LEAD_ONLY)
        np.testing.assert_array_equal(obs.matrix[0], [1, 6, 0, 0, 0, 4])

    def test_monomial_generator_padded(self, poly):
        """A generator with one term pads its second block with zeros."""
        state = BuchbergerState.from_generators([poly("x0^2*x1", 2), poly("x0*x1^2+x1", 2)])
        obs = encode_observation(state)
        np.testing.assert_array_equal(obs.matrix[0, :4], [2, 1, 0, 0])

    def test_empty_pair_set(self, poly):
        """No pairs gives a 0 x 4n matrix."""
        state = BuchbergerState.from_generators([poly("x0", 2)])
        assert encode_observation(state).matrix.shape == (0, 8)


class TestEpisodes:
    """Test reset and step."""

    def test_worked_episode(self, small_ideal):
        """Rewards -1 then -2, matching the batch run."""
        env = BuchbergerEnv()
        obs = env.reset(small_ideal)
        assert obs.matrix.shape == (1, 8)

        first = env.step(0)
        assert first.reward == -1
        assert not first.done
        assert first.info["basis_size"] == 3
        assert first.observation.num_actions == 1

        second = env.step(0)
        assert second.reward == -2
        assert second.done
        assert second.info["zero_reduction"]
        assert not second.truncated
        assert [record["reward"] for record in env.trace] == [-1, -2]
        assert env.run_stats().additions == 3

    def test_invalid_action(self, small_ideal):
        """Out-of-range actions raise without changing the state."""
        env = BuchbergerEnv()
        env.reset(small_ideal)
        with pytest.raises(InvalidActionError, match=r"1 not in \[0, 1\)"):
            env.step(1)
        assert env.steps == 0

    def test_step_after_done(self, small_ideal):
        """Stepping a finished episode is an error."""
        env = BuchbergerEnv()
        env.reset(small_ideal)
        env.step(0)
        env.step(0)
        with pytest.raises(InvalidStateError, match="episode is done"):
            env.step(0)

    def test_step_before_reset(self):
        """Stepping before reset is an error."""
        with pytest.raises(InvalidStateError):
            BuchbergerEnv().step(0)

    def test_single_generator_done(self, poly):
        """An ideal without pairs is done on reset."""
        env = BuchbergerEnv()
        obs = env.reset([poly("x0^2+x1", 2)])
        assert env.done
        assert obs.num_actions == 0

    def test_empty_ideal(self):
        """Resetting on an empty ideal is rejected."""
        with pytest.raises(InvalidArgumentError):
            BuchbergerEnv().reset([])

    def test_no_distribution(self):
        """Sampler mode needs a distribution."""
        with pytest.raises(InvalidStateError):
            BuchbergerEnv().reset()

    def test_sampler_reset(self):
        """Sampled episodes always start with pairs to choose from."""
        env = BuchbergerEnv("3-5-5 weighted", seed=3)
        for _ in range(5):
            obs = env.reset()
            assert obs.num_actions == len(env.state.P) > 0
            assert obs.matrix.shape[1] == 12
            assert env.ideal is not None

    def test_truncation(self, small_ideal):
        """The step cap ends the episode early."""
        env = BuchbergerEnv(max_steps=1)
        env.reset(small_ideal)
        result = env.step(0)
        assert result.done
        assert result.truncated
        assert env.run_stats().truncated

    def test_clone_is_independent(self, small_ideal):
        """Stepping the environment leaves a clone untouched."""
        env = BuchbergerEnv()
        env.reset(small_ideal)
        clone = env.clone_state()
        env.step(0)
        assert len(clone.P) == 1
        assert len(clone.G) == 2

    @pytest.mark.parametrize("name", GroebnerConstants.DETERMINISTIC_STRATEGIES)
    def test_rewards_match_batch_run(self, name):
        """Summed rewards equal minus the additions of the batch algorithm."""
        env = BuchbergerEnv("3-5-5 weighted", seed=21, max_steps=None)
        selector = get_strategy(name)
        for _ in range(3):
            env.reset()
            total = 0
            while not env.done:
                total += env.step(selector.choose(env.state)).reward
            _, stats = buchberger(env.ideal.generators, name)
            assert total == -stats.additions

    def test_sampler_seeds_follow_resets(self):
        """The k-th reset runs ideal k of the stream, whatever was redrawn before it."""
        env = BuchbergerEnv("2-3-2 weighted", seed=10)
        seeds = []
        for _ in range(30):
            env.reset()
            seeds.append(env.ideal.seed)
        assert seeds == list(range(10, 40))
        assert env.draws == 30

    def test_replay_is_deterministic(self):
        """Replaying recorded actions on the same seed reproduces observations and rewards."""
        rng = np.random.default_rng(5)
        env = BuchbergerEnv("3-5-5 weighted", seed=2, max_steps=None)
        observations = [env.reset().matrix]
        actions, rewards = [], []
        while not env.done:
            action = int(rng.integers(len(env.state.P)))
            result = env.step(action)
            actions.append(action)
            rewards.append(result.reward)
            observations.append(result.observation.matrix)

        replay = BuchbergerEnv("3-5-5 weighted", seed=2, max_steps=None)
        np.testing.assert_array_equal(replay.reset().matrix, observations[0])
        for k, action in enumerate(actions):
            result = replay.step(action)
            assert result.reward == rewards[k]
            np.testing.assert_array_equal(result.observation.matrix, observations[k + 1])
        assert replay.done


class TestRewardConsistency:
    """Summed env rewards equal the batch algorithm's additions for seeded policies."""

    @staticmethod
    def _compare(selector, episodes=20):
        env = BuchbergerEnv("3-5-5 weighted", seed=31, max_steps=None)
        for k in range(episodes):
            env.reset()
            rng = np.random.default_rng(k)
            total = 0
            while not env.done:
                total += env.step(selector.choose(env.state, rng)).reward
            _, stats = buchberger(env.ideal.generators, selector, np.random.default_rng(k))
            assert total == -stats.additions

    def test_random_policy(self):
        """Random selection with matching streams."""
        self._compare(get_strategy(GroebnerConstants.RANDOM))

    def test_learned_policy(self):
        """A sampling policy with matching streams."""
        params = init_params(3, EnvConstants.FULL, 8, np.random.default_rng(0))
        self._compare(LearnedStrategy(params))


class TestTrace:
    """Test the JSON-lines episode trace."""

    def test_round_trip(self, small_ideal, tmp_path):
        """Written records read back with the extra fields attached."""
        env = BuchbergerEnv()
        env.reset(small_ideal)
        env.step(0)
        env.step(0)
        path = tmp_path / "trace.jsonl"
        assert env.write_trace(path, episode=0) == 2
        records = read_jsonl(path)
        assert records == [dict(record, episode=0) for record in env.trace]
        assert records[0] == {"pair": [0, 1], "reward": -1, "p_before": 1, "basis_size": 3, "episode": 0}

    def test_append(self, small_ideal, tmp_path):
        """Appending keeps earlier episodes."""
        env = BuchbergerEnv()
        path = tmp_path / "trace.jsonl"
        for k in range(2):
            env.reset(small_ideal)
            while not env.done:
                env.step(0)
            env.write_trace(path, append=k > 0, episode=k)
        assert [record["episode"] for record in read_jsonl(path)] == [0, 0, 1, 1]
