"""
Neural Services
===============

numpy float64 building blocks of the graph-attention Q network.

Modules:
- layers.py: DenseParams, dense_forward, dense_backward, initialization
- gat.py: GatParams, gat_forward, gat_backward
- model.py: QModel, init_model, model_forward, model_backward
- adam.py: AdamState, adam_step
- checkpoint.py: save_checkpoint, load_checkpoint
"""

from backend.services.neural.adam import AdamState, adam_step
from backend.services.neural.checkpoint import load_checkpoint, save_checkpoint
from backend.services.neural.gat import GatParams, gat_backward, gat_forward, masked_softmax
from backend.services.neural.layers import DenseParams, dense_backward, dense_forward
from backend.services.neural.model import (
    ACTION_COUNT,
    QModel,
    init_model,
    model_backward,
    model_forward,
    model_forward_cached,
)

__all__ = [
    "ACTION_COUNT",
    "AdamState",
    "DenseParams",
    "GatParams",
    "QModel",
    "adam_step",
    "dense_backward",
    "dense_forward",
    "gat_backward",
    "gat_forward",
    "init_model",
    "load_checkpoint",
    "masked_softmax",
    "model_backward",
    "model_forward",
    "model_forward_cached",
    "save_checkpoint",
]
