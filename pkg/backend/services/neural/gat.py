"""
Graph Attention Layer
=====================

Single-head graph attention over the fog-region graph, forward and backward.

FORWARD:
    Z       = H W                                  (N, d')
    raw_ij  = T_src . Z_i + T_dst . Z_j            T = [T_src || T_dst]
    e_ij    = LeakyReLU(raw_ij)
    alpha_i = softmax of e_i over {j : A_ij = 1}, exactly 0 elsewhere
    H'      = alpha Z + b

The unit diagonal of A keeps every row's neighbourhood non-empty. The softmax
subtracts the row maximum over the neighbourhood before exponentiating.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from backend.core.exceptions import ShapeError
from backend.services.neural.layers import leaky_relu


@dataclass
class GatParams:
    weight: np.ndarray
    attention: np.ndarray
    bias: np.ndarray
    leaky_slope: float = 0.2

    def __post_init__(self) -> None:
        out = self.weight.shape[1]
        if self.attention.shape != (2 * out,) or self.bias.shape != (out,):
            raise ShapeError(
                f"gat weight {self.weight.shape}, attention {self.attention.shape} "
                f"and bias {self.bias.shape} disagree"
            )

    @property
    def out_features(self) -> int:
        return int(self.weight.shape[1])


@dataclass
class GatCache:
    """Intermediates kept by the forward pass for backward."""

    h: np.ndarray
    z: np.ndarray
    raw: np.ndarray
    mask: np.ndarray
    alpha: np.ndarray


def masked_softmax(logits: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Row softmax restricted to mask; masked-out entries are exactly 0."""
    masked = np.where(mask, logits, -np.inf)
    shifted = masked - masked.max(axis=1, keepdims=True)
    weights = np.where(mask, np.exp(shifted), 0.0)
    return weights / weights.sum(axis=1, keepdims=True)


def gat_forward_cached(
    p: GatParams, h: np.ndarray, adjacency: np.ndarray
) -> Tuple[np.ndarray, GatCache]:
    n = adjacency.shape[0]
    if h.ndim != 2 or h.shape[0] != n or h.shape[1] != p.weight.shape[0]:
        raise ShapeError(
            f"gat expects ({n}, {p.weight.shape[0]}) node embeddings, got {h.shape}"
        )
    if adjacency.shape != (n, n):
        raise ShapeError(f"adjacency must be square, got {adjacency.shape}")

    d_out = p.out_features
    z = h @ p.weight
    src = z @ p.attention[:d_out]
    dst = z @ p.attention[d_out:]
    raw = src[:, None] + dst[None, :]
    mask = adjacency != 0
    alpha = masked_softmax(leaky_relu(raw, p.leaky_slope), mask)
    out = alpha @ z + p.bias
    return out, GatCache(h=h, z=z, raw=raw, mask=mask, alpha=alpha)


def gat_forward(
    p: GatParams, h: np.ndarray, adjacency: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Aggregated node embeddings and the attention matrix."""
    out, cache = gat_forward_cached(p, h, adjacency)
    return out, cache.alpha


def gat_backward(
    p: GatParams, cache: GatCache, upstream: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Reverse-mode gradients of the attention layer.

    Returns:
        (d_h, d_weight, d_attention, d_bias)
    """
    z, alpha = cache.z, cache.alpha
    if upstream.shape != z.shape:
        raise ShapeError(f"upstream gradient {upstream.shape} does not match output {z.shape}")
    d_out = p.out_features

    d_bias = upstream.sum(axis=0)
    d_z = alpha.T @ upstream
    d_alpha = upstream @ z.T

    # softmax rows; alpha is 0 off the mask so those entries vanish
    d_e = alpha * (d_alpha - (alpha * d_alpha).sum(axis=1, keepdims=True))
    d_raw = d_e * np.where(cache.raw > 0, 1.0, p.leaky_slope)

    d_src = d_raw.sum(axis=1)
    d_dst = d_raw.sum(axis=0)
    t_src, t_dst = p.attention[:d_out], p.attention[d_out:]
    d_z += np.outer(d_src, t_src) + np.outer(d_dst, t_dst)
    d_attention = np.concatenate([z.T @ d_src, z.T @ d_dst])

    d_weight = cache.h.T @ d_z
    d_h = d_z @ p.weight.T
    return d_h, d_weight, d_attention, d_bias
