"""
Graph-Attention Q Model
=======================

Fixed architecture mapping fog-region features to per-region action values.

    X (N x 2)
      -> encoder.0  Dense 32, ReLU
      -> encoder.1  Dense 32, ReLU
      -> gat        graph attention 32, no activation
      -> qnet.0..3  Dense 32, 32, 64, 64, ReLU
      -> head       Dense 5, no activation
    Q (N x 5)

WHY THIS FILE EXISTS:
- One named parameter dict is shared by forward, backward, Adam and checkpoints
- Online and target networks are two QModel instances with equal architecture
- The forward cache exposes every pre-activation so gradient checks can stay
  away from ReLU and LeakyReLU kinks

Parameter names: "<layer>.weight", "<layer>.bias", plus "gat.attention".
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from backend.core.exceptions import ShapeError
from backend.services.network.model import FogAdjacency
from backend.services.neural.gat import GatCache, GatParams, gat_backward, gat_forward_cached
from backend.services.neural.layers import (
    Activation,
    DenseParams,
    dense_backward,
    dense_pre_activation,
    glorot_uniform,
    relu,
)

ACTION_COUNT = 5
FEATURE_COUNT = 2
ENCODER_SIZES = (32, 32)
GAT_SIZE = 32
QNET_SIZES = (32, 32, 64, 64)

Params = Dict[str, np.ndarray]
AdjacencyLike = Union[FogAdjacency, np.ndarray]


def _layer_plan(feature_count: int) -> List[Tuple[str, int, int]]:
    """(name, in, out) for every dense layer, in forward order, gat included."""
    plan: List[Tuple[str, int, int]] = []
    width = feature_count
    for index, size in enumerate(ENCODER_SIZES):
        plan.append((f"encoder.{index}", width, size))
        width = size
    plan.append(("gat", width, GAT_SIZE))
    width = GAT_SIZE
    for index, size in enumerate(QNET_SIZES):
        plan.append((f"qnet.{index}", width, size))
        width = size
    plan.append(("head", width, ACTION_COUNT))
    return plan


ENCODER_LAYERS = tuple(f"encoder.{i}" for i in range(len(ENCODER_SIZES)))
QNET_LAYERS = tuple(f"qnet.{i}" for i in range(len(QNET_SIZES)))


@dataclass
class QModel:
    """Named float64 parameters of the graph-attention Q network."""

    params: Params
    feature_count: int = FEATURE_COUNT
    leaky_slope: float = 0.2

    def dense(self, name: str) -> DenseParams:
        return DenseParams(weight=self.params[f"{name}.weight"], bias=self.params[f"{name}.bias"])

    def gat(self) -> GatParams:
        return GatParams(
            weight=self.params["gat.weight"],
            attention=self.params["gat.attention"],
            bias=self.params["gat.bias"],
            leaky_slope=self.leaky_slope,
        )

    @property
    def architecture(self) -> Dict[str, object]:
        return {
            "feature_count": self.feature_count,
            "encoder": list(ENCODER_SIZES),
            "gat": GAT_SIZE,
            "qnet": list(QNET_SIZES),
            "actions": ACTION_COUNT,
            "leaky_slope": self.leaky_slope,
            "shapes": {name: list(value.shape) for name, value in self.params.items()},
        }

    def copy(self) -> "QModel":
        return QModel(
            params={name: value.copy() for name, value in self.params.items()},
            feature_count=self.feature_count,
            leaky_slope=self.leaky_slope,
        )

    def load_from(self, other: "QModel") -> None:
        """Overwrite every parameter in place with other's values."""
        for name, value in other.params.items():
            np.copyto(self.params[name], value)


def init_model(
    rng: np.random.Generator,
    feature_count: int = FEATURE_COUNT,
    leaky_slope: float = 0.2,
) -> QModel:
    """Glorot-uniform weights and zero biases; attention vector drawn as a (2d', 1) matrix."""
    params: Params = {}
    for name, fan_in, fan_out in _layer_plan(feature_count):
        params[f"{name}.weight"] = glorot_uniform(rng, fan_in, fan_out)
        if name == "gat":
            params["gat.attention"] = glorot_uniform(rng, 2 * fan_out, 1).ravel()
        params[f"{name}.bias"] = np.zeros(fan_out)
    return QModel(params=params, feature_count=feature_count, leaky_slope=leaky_slope)


# === Forward / backward ===


@dataclass
class ForwardCache:
    x: np.ndarray
    dense_inputs: Dict[str, np.ndarray] = field(default_factory=dict)
    pre_activations: Dict[str, np.ndarray] = field(default_factory=dict)
    gat: Optional[GatCache] = None


def _adjacency_matrix(adjacency: AdjacencyLike) -> np.ndarray:
    return adjacency.matrix if isinstance(adjacency, FogAdjacency) else np.asarray(adjacency)


def _activation(name: str) -> Activation:
    return "none" if name == "head" else "relu"


def model_forward_cached(
    model: QModel, x: np.ndarray, adjacency: AdjacencyLike
) -> Tuple[np.ndarray, ForwardCache]:
    matrix = _adjacency_matrix(adjacency)
    if x.ndim != 2 or x.shape[1] != model.feature_count:
        raise ShapeError(f"expected (N, {model.feature_count}) features, got {x.shape}")
    cache = ForwardCache(x=x)

    hidden = x
    for name in ENCODER_LAYERS:
        cache.dense_inputs[name] = hidden
        z = dense_pre_activation(model.dense(name), hidden)
        cache.pre_activations[name] = z
        hidden = relu(z)

    hidden, cache.gat = gat_forward_cached(model.gat(), hidden, matrix)

    for name in QNET_LAYERS + ("head",):
        cache.dense_inputs[name] = hidden
        z = dense_pre_activation(model.dense(name), hidden)
        cache.pre_activations[name] = z
        hidden = relu(z) if _activation(name) == "relu" else z

    return hidden, cache


def model_forward(model: QModel, x: np.ndarray, adjacency: AdjacencyLike) -> np.ndarray:
    """Q values, one row of ACTION_COUNT entries per fog region."""
    q, _ = model_forward_cached(model, x, adjacency)
    return q


def model_backward(
    model: QModel, x: np.ndarray, adjacency: AdjacencyLike, upstream: np.ndarray
) -> Params:
    """Gradient of sum(upstream * Q) with respect to every parameter."""
    q, cache = model_forward_cached(model, x, adjacency)
    if upstream.shape != q.shape:
        raise ShapeError(f"upstream gradient {upstream.shape} does not match Q {q.shape}")

    grads: Params = {}
    grad = upstream
    for name in ("head",) + tuple(reversed(QNET_LAYERS)):
        grad, d_weight, d_bias = dense_backward(
            model.dense(name),
            cache.dense_inputs[name],
            cache.pre_activations[name],
            grad,
            _activation(name),
        )
        grads[f"{name}.weight"] = d_weight
        grads[f"{name}.bias"] = d_bias

    assert cache.gat is not None
    grad, d_weight, d_attention, d_bias = gat_backward(model.gat(), cache.gat, grad)
    grads["gat.weight"] = d_weight
    grads["gat.attention"] = d_attention
    grads["gat.bias"] = d_bias

    for name in reversed(ENCODER_LAYERS):
        grad, d_weight, d_bias = dense_backward(
            model.dense(name),
            cache.dense_inputs[name],
            cache.pre_activations[name],
            grad,
            "relu",
        )
        grads[f"{name}.weight"] = d_weight
        grads[f"{name}.bias"] = d_bias

    return {name: grads[name] for name in model.params}
