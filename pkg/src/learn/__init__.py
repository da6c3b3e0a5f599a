"""
Learn module: the pair-scoring policy, value baselines, advantage
estimation and the clipped policy-gradient trainer.
"""

from .advantages import gae, normalize_advantages
from .policy import (
    ForwardCache,
    PolicyParams,
    PolicySample,
    SurrogateResult,
    adam_step,
    init_params,
    load_model,
    model_header,
    policy_forward,
    policy_gradient,
    sample_action,
    save_model,
    surrogate,
)
from .ppo import (
    EpisodeJob,
    EpochReport,
    EvaluationReport,
    InterpretationStats,
    LearnedStrategy,
    SampleJob,
    SampleResult,
    Trainer,
    Trajectory,
    action_rng,
    best_checkpoint,
    collect_episode,
    epoch_spec,
    evaluate,
    interpretation_stats,
    make_env,
    run_on_samples,
    run_sample,
    sample_episodes,
    trace_episodes,
    train_epoch,
)
from .values import degree_rollout_value, value_estimate

__all__ = [
    "gae",
    "normalize_advantages",
    "ForwardCache",
    "PolicyParams",
    "PolicySample",
    "SurrogateResult",
    "adam_step",
    "init_params",
    "load_model",
    "model_header",
    "policy_forward",
    "policy_gradient",
    "sample_action",
    "save_model",
    "surrogate",
    "EpisodeJob",
    "EpochReport",
    "EvaluationReport",
    "InterpretationStats",
    "LearnedStrategy",
    "SampleJob",
    "SampleResult",
    "Trainer",
    "Trajectory",
    "action_rng",
    "best_checkpoint",
    "collect_episode",
    "epoch_spec",
    "evaluate",
    "interpretation_stats",
    "make_env",
    "run_on_samples",
    "run_sample",
    "sample_episodes",
    "trace_episodes",
    "train_epoch",
    "degree_rollout_value",
    "value_estimate",
]
