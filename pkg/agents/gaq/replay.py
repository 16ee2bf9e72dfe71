"""
Experience Replay
=================

Fixed-capacity FIFO buffer of transitions with uniform sampling without
replacement.
"""

from collections import deque
from typing import Deque, Iterator, List

import numpy as np

from agents.base import Transition
from backend.core.exceptions import InsufficientReplayError


class ReplayBuffer:
    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"replay capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._items: Deque[Transition] = deque(maxlen=capacity)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[Transition]:
        return iter(self._items)

    def append(self, transition: Transition) -> None:
        """Insert at the tail; the oldest transition drops out when full."""
        self._items.append(transition)

    def sample(self, batch_size: int, rng: np.random.Generator) -> List[Transition]:
        """
        Raises:
            InsufficientReplayError: fewer transitions than batch_size
        """
        if len(self._items) < batch_size:
            raise InsufficientReplayError(size=len(self._items), batch_size=batch_size)
        indexes = rng.choice(len(self._items), size=batch_size, replace=False)
        return [self._items[int(i)] for i in indexes]
