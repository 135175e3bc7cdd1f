"""Fixed-length trajectory segments from one agent's perspective."""

from dataclasses import dataclass

import numpy as np

from ..errors import InputError


@dataclass
class Trajectory:
    observations: np.ndarray  # (L, obs_dim) float32
    actions: np.ndarray  # (L,) int
    rewards: np.ndarray  # (L,) float32
    behavior_probs: np.ndarray  # (L,) float32, probabilities the actor assigned

    def __post_init__(self):
        L = len(self.actions)
        if not (len(self.observations) == len(self.rewards) == len(self.behavior_probs) == L):
            raise InputError("trajectory arrays disagree on length")
        if L and (self.behavior_probs.min() <= 0.0 or self.behavior_probs.max() > 1.0):
            raise InputError("behavior probabilities must lie in (0, 1]")

    def __len__(self) -> int:
        return len(self.actions)
