"""
Dense Layers
============

Fully connected layers, activations and initialization on float64 numpy arrays.

Shapes: x is (rows, in), weight is (in, out), bias is (out,). Every function
checks the shapes it relies on and raises ShapeError otherwise.
"""

from dataclasses import dataclass
from typing import Literal, Tuple

import numpy as np

from backend.core.exceptions import ShapeError

Activation = Literal["relu", "none"]


@dataclass
class DenseParams:
    """Weight and bias of one dense layer. Arrays may be views into a model."""

    weight: np.ndarray
    bias: np.ndarray

    def __post_init__(self) -> None:
        if self.weight.ndim != 2 or self.bias.shape != (self.weight.shape[1],):
            raise ShapeError(
                f"dense weight {self.weight.shape} and bias {self.bias.shape} disagree"
            )

    @property
    def in_features(self) -> int:
        return int(self.weight.shape[0])

    @property
    def out_features(self) -> int:
        return int(self.weight.shape[1])


def relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def leaky_relu(z: np.ndarray, slope: float) -> np.ndarray:
    return np.where(z > 0, z, slope * z)


def glorot_uniform(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    """Uniform in +-sqrt(6 / (fan_in + fan_out))."""
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def dense_pre_activation(p: DenseParams, x: np.ndarray) -> np.ndarray:
    if x.ndim != 2 or x.shape[1] != p.in_features:
        raise ShapeError(f"dense layer expects (*, {p.in_features}), got {x.shape}")
    return x @ p.weight + p.bias


def dense_forward(p: DenseParams, x: np.ndarray, activation: Activation = "none") -> np.ndarray:
    """y = activation(x W + b), row-wise."""
    z = dense_pre_activation(p, x)
    return relu(z) if activation == "relu" else z


def dense_backward(
    p: DenseParams,
    x: np.ndarray,
    z: np.ndarray,
    upstream: np.ndarray,
    activation: Activation = "none",
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Gradients of a dense layer given its input x and pre-activation z.

    Returns:
        (d_input, d_weight, d_bias)
    """
    if upstream.shape != z.shape:
        raise ShapeError(f"upstream gradient {upstream.shape} does not match output {z.shape}")
    grad = upstream * (z > 0) if activation == "relu" else upstream
    return grad @ p.weight.T, x.T @ grad, grad.sum(axis=0)
