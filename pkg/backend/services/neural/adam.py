"""
Adam Optimizer
==============

Adam with bias correction, updating a named parameter dict in place.

    m_t = b1 m + (1 - b1) g
    v_t = b2 v + (1 - b2) g^2
    p  -= lr * (m_t / (1 - b1^t)) / (sqrt(v_t / (1 - b2^t)) + eps)

AdamState is mutated by adam_step, so a single writer must own it.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from backend.core.exceptions import ShapeError

Params = Dict[str, np.ndarray]


@dataclass
class AdamState:
    m: Params
    v: Params
    step: int = 0

    @classmethod
    def zeros_like(cls, params: Params) -> "AdamState":
        return cls(
            m={name: np.zeros_like(value) for name, value in params.items()},
            v={name: np.zeros_like(value) for name, value in params.items()},
        )


def adam_step(
    params: Params,
    grads: Params,
    state: AdamState,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    epsilon: float = 1e-8,
) -> Tuple[Params, AdamState]:
    """One bias-corrected Adam update of every parameter, in place."""
    if not lr > 0:
        raise ValueError(f"learning rate must be positive, got {lr}")

    state.step += 1
    correction1 = 1.0 - beta1**state.step
    correction2 = 1.0 - beta2**state.step

    for name, param in params.items():
        grad = grads[name]
        if grad.shape != param.shape:
            raise ShapeError(f"gradient for {name} has shape {grad.shape}, expected {param.shape}")
        m, v = state.m[name], state.v[name]
        m *= beta1
        m += (1.0 - beta1) * grad
        v *= beta2
        v += (1.0 - beta2) * (grad * grad)
        param -= lr * (m / correction1) / (np.sqrt(v / correction2) + epsilon)

    return params, state
