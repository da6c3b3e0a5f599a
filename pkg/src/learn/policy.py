"""
Pair-scoring policy network.

Every observation row is scored by a one-hidden-layer perceptron and the
policy is the softmax of the scores over rows. Gradients of the clipped
surrogate objective are computed by hand, and parameters are updated with
Adam (gradient ascent).
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..core import (
    EnvConstants,
    ModelFormatError,
    ParseError,
    ShapeError,
    TrainingConstants,
    get_logger,
)
from ..env import observation_width
from ..utils import read_json, write_json

logger = get_logger("policy")

PARAM_NAMES = ("W1", "b1", "W2", "b2")


@dataclass
class PolicyParams:
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: float
    n: int
    observation_mode: str = EnvConstants.FULL
    # Adam moments keyed by parameter name, plus the step counter
    adam_m: Dict[str, np.ndarray] = field(default_factory=dict)
    adam_v: Dict[str, np.ndarray] = field(default_factory=dict)
    adam_t: int = 0

    def __post_init__(self):
        self.b2 = float(self.b2)
        if not self.adam_m:
            self.adam_m = {name: np.zeros_like(self.get(name)) for name in PARAM_NAMES}
        if not self.adam_v:
            self.adam_v = {name: np.zeros_like(self.get(name)) for name in PARAM_NAMES}

    @property
    def hidden(self) -> int:
        return self.W1.shape[0]

    @property
    def width(self) -> int:
        return self.W1.shape[1]

    def get(self, name: str) -> np.ndarray:
        value = getattr(self, name)
        return np.asarray(value, dtype=np.float64)

    def copy(self) -> "PolicyParams":
        return PolicyParams(
            W1=self.W1.copy(),
            b1=self.b1.copy(),
            W2=self.W2.copy(),
            b2=self.b2,
            n=self.n,
            observation_mode=self.observation_mode,
            adam_m={k: v.copy() for k, v in self.adam_m.items()},
            adam_v={k: v.copy() for k, v in self.adam_v.items()},
            adam_t=self.adam_t,
        )

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(self.get(name))) for name in PARAM_NAMES)


def init_params(
    n: int,
    observation_mode: str = EnvConstants.FULL,
    hidden: int = TrainingConstants.HIDDEN_SIZE,
    rng: Optional[np.random.Generator] = None,
    gain: float = TrainingConstants.INIT_GAIN,
) -> PolicyParams:
    """Uniform(-gain/sqrt(fan_in), gain/sqrt(fan_in)) weights, zero biases."""
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(0))
    width = observation_width(n, observation_mode)
    bound1 = gain / np.sqrt(width)
    bound2 = gain / np.sqrt(hidden)
    return PolicyParams(
        W1=rng.uniform(-bound1, bound1, size=(hidden, width)),
        b1=np.zeros(hidden),
        W2=rng.uniform(-bound2, bound2, size=hidden),
        b2=0.0,
        n=n,
        observation_mode=observation_mode,
    )


@dataclass(frozen=True)
class ForwardCache:
    X: np.ndarray
    Z: np.ndarray
    H: np.ndarray
    scores: np.ndarray
    log_probs: np.ndarray

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)


def policy_forward(params: PolicyParams, obs: np.ndarray) -> Tuple[np.ndarray, ForwardCache]:
    """
    Row probabilities for an observation matrix.

    Returns:
        (probabilities over rows, cached activations)

    Raises:
        ShapeError: If the observation width differs from the model's
    """
    X = np.asarray(obs, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != params.width:
        raise ShapeError(expected=params.width, actual=X.shape[-1] if X.ndim else 0)
    Z = X @ params.W1.T + params.b1
    H = np.maximum(Z, 0.0)
    scores = H @ params.W2 + params.b2
    shifted = scores - scores.max()
    log_probs = shifted - np.log(np.exp(shifted).sum())
    cache = ForwardCache(X, Z, H, scores, log_probs)
    return cache.probs, cache


@dataclass(frozen=True)
class PolicySample:
    """One decision of a recorded episode, prepared for an update."""

    observation: np.ndarray
    action: int
    advantage: float
    old_logp: float


@dataclass
class SurrogateResult:
    objective: float
    kl: float
    grads: Dict[str, np.ndarray]


def surrogate(params: PolicyParams, batch: Sequence[PolicySample], clip_epsilon: float) -> SurrogateResult:
    """
    Mean clipped surrogate min(rho*A, clip(rho, 1-eps, 1+eps)*A), its
    gradient and the sampled KL estimate mean(old_logp - new_logp).
    """
    grads = {
        "W1": np.zeros_like(params.W1),
        "b1": np.zeros_like(params.b1),
        "W2": np.zeros_like(params.W2),
        "b2": np.zeros(()),
    }
    if not batch:
        return SurrogateResult(0.0, 0.0, grads)

    objective = 0.0
    kl = 0.0
    low, high = 1.0 - clip_epsilon, 1.0 + clip_epsilon
    for sample in batch:
        probs, cache = policy_forward(params, sample.observation)
        logp = cache.log_probs[sample.action]
        rho = np.exp(logp - sample.old_logp)
        A = sample.advantage
        objective += min(rho * A, np.clip(rho, low, high) * A)
        kl += sample.old_logp - logp

        active = (low <= rho <= high) or (rho > high and A < 0) or (rho < low and A > 0)
        if not active or A == 0:
            continue
        # d(rho*A)/d scores = rho*A*(e_a - probs)
        ds = -probs * (rho * A)
        ds[sample.action] += rho * A
        grads["W2"] += cache.H.T @ ds
        grads["b2"] += ds.sum()
        dZ = np.outer(ds, params.W2) * (cache.Z > 0)
        grads["W1"] += dZ.T @ cache.X
        grads["b1"] += dZ.sum(axis=0)

    count = len(batch)
    for name in grads:
        grads[name] /= count
    return SurrogateResult(objective / count, kl / count, grads)


def policy_gradient(params: PolicyParams, batch: Sequence[PolicySample], clip_epsilon: float) -> Dict[str, np.ndarray]:
    return surrogate(params, batch, clip_epsilon).grads


def adam_step(
    params: PolicyParams,
    grads: Dict[str, np.ndarray],
    learning_rate: float,
    beta1: float = TrainingConstants.ADAM_BETA1,
    beta2: float = TrainingConstants.ADAM_BETA2,
    epsilon: float = TrainingConstants.ADAM_EPSILON,
):
    """One bias-corrected Adam ascent step, in place."""
    params.adam_t += 1
    t = params.adam_t
    for name in PARAM_NAMES:
        g = np.asarray(grads[name], dtype=np.float64)
        params.adam_m[name] = beta1 * params.adam_m[name] + (1 - beta1) * g
        params.adam_v[name] = beta2 * params.adam_v[name] + (1 - beta2) * g * g
        m_hat = params.adam_m[name] / (1 - beta1 ** t)
        v_hat = params.adam_v[name] / (1 - beta2 ** t)
        step = learning_rate * m_hat / (np.sqrt(v_hat) + epsilon)
        if name == "b2":
            params.b2 = float(params.b2 + step)
        else:
            setattr(params, name, getattr(params, name) + step)


def sample_action(params: PolicyParams, obs: np.ndarray, rng: np.random.Generator, greedy: bool = False) -> Tuple[int, float]:
    """Choose a row; returns (action, log-probability)."""
    probs, cache = policy_forward(params, obs)
    if greedy:
        action = int(np.argmax(probs))
    else:
        action = int(rng.choice(len(probs), p=probs))
    return action, float(cache.log_probs[action])


# --- persistence -----------------------------------------------------------


def model_header(params: PolicyParams) -> dict:
    return {
        "format_version": TrainingConstants.MODEL_FORMAT_VERSION,
        "n": params.n,
        "observation_mode": params.observation_mode,
        "h": params.hidden,
        "w": params.width,
        "adam": {
            "beta1": TrainingConstants.ADAM_BETA1,
            "beta2": TrainingConstants.ADAM_BETA2,
            "epsilon": TrainingConstants.ADAM_EPSILON,
        },
    }


def save_model(params: PolicyParams, path: Union[str, Path], extra: Optional[dict] = None):
    """
    Write a JSON model: header, row-major weights and Adam state.
    Floats are written with repr precision so loading is bit-exact.
    """
    document = {
        "header": model_header(params),
        "weights": {name: params.get(name).tolist() for name in PARAM_NAMES},
        "adam": {
            "t": params.adam_t,
            "m": {name: np.asarray(v).tolist() for name, v in params.adam_m.items()},
            "v": {name: np.asarray(v).tolist() for name, v in params.adam_v.items()},
        },
    }
    if extra:
        document["extra"] = extra
    write_json(path, document)
    logger.info(f"Saved model ({params.hidden}x{params.width}) to {path}")


def load_model(
    path: Union[str, Path],
    n: Optional[int] = None,
    observation_mode: Optional[str] = None,
) -> PolicyParams:
    """
    Load a model written by save_model.

    Args:
        path: Model file
        n: Expected variable count, checked against the header
        observation_mode: Expected observation mode, checked against the header

    Raises:
        ModelFormatError: On a corrupt file or a header mismatch
    """
    try:
        document = read_json(path)
        header = document["header"]
        weights = document["weights"]
        adam = document.get("adam", {})
        version = header["format_version"]
        if version != TrainingConstants.MODEL_FORMAT_VERSION:
            raise ModelFormatError(f"unsupported model format version {version}")
        file_n, mode, h, w = header["n"], header["observation_mode"], header["h"], header["w"]

        if n is not None and file_n != n:
            raise ModelFormatError(f"model was trained for n={file_n}, requested n={n}")
        if observation_mode is not None and mode != observation_mode:
            raise ModelFormatError(f"model uses observation mode {mode!r}, requested {observation_mode!r}")
        if w != observation_width(file_n, mode):
            raise ModelFormatError(f"width {w} does not match n={file_n} in mode {mode!r}")

        arrays = {name: np.asarray(weights[name], dtype=np.float64) for name in PARAM_NAMES}
        expected = {"W1": (h, w), "b1": (h,), "W2": (h,), "b2": ()}
        for name, shape in expected.items():
            if arrays[name].shape != shape:
                raise ModelFormatError(f"{name} has shape {arrays[name].shape}, header says {shape}")

        params = PolicyParams(
            W1=arrays["W1"],
            b1=arrays["b1"],
            W2=arrays["W2"],
            b2=float(arrays["b2"]),
            n=file_n,
            observation_mode=mode,
            adam_m={k: np.asarray(v, dtype=np.float64) for k, v in adam.get("m", {}).items()},
            adam_v={k: np.asarray(v, dtype=np.float64) for k, v in adam.get("v", {}).items()},
            adam_t=int(adam.get("t", 0)),
        )
    except ModelFormatError:
        raise
    except (KeyError, TypeError, ValueError, ParseError) as e:
        raise ModelFormatError(f"corrupt model file {path}: {e}") from e
    except OSError as e:
        raise ModelFormatError(f"cannot read model file {path}: {e}") from e

    if not params.is_finite():
        raise ModelFormatError(f"model file {path} contains non-finite weights")
    logger.info(f"Loaded model from {path}")
    return params
