"""Action-delay wrapper with stacked observations.

Submitted actions take effect k ticks later; each seat observes the k+1 most
recent raw observations plus one-hot encodings of its k most recent submitted
actions. Histories are padded with the initial observation and neutral
actions.
"""

from collections import deque

import numpy as np

from ..env.actions import NEUTRAL_ACTION, NUM_ACTIONS
from ..errors import ConfigError


class DelayedSession:
    """Wraps a GameSession; per-seat delays may differ (0 = passthrough)."""

    def __init__(self, session, delay_p1: int, delay_p2: int):
        if delay_p1 < 0 or delay_p2 < 0:
            raise ConfigError("delays must be >= 0")
        self.session = session
        self.delays = {1: delay_p1, 2: delay_p2}
        self._queues = {}
        self._obs_hist = {}
        self._act_hist = {}
        for seat, k in self.delays.items():
            self._queues[seat] = deque([NEUTRAL_ACTION] * k)
            first = session.observe(seat)
            self._obs_hist[seat] = deque([first] * (k + 1), maxlen=k + 1)
            self._act_hist[seat] = deque([NEUTRAL_ACTION] * k, maxlen=max(k, 1))

    @property
    def state(self):
        return self.session.state

    @property
    def tick(self):
        return self.session.tick

    @property
    def obs_dim(self) -> int:
        return self.obs_dim_for(1)

    def obs_dim_for(self, seat: int) -> int:
        k = self.delays[seat]
        return (k + 1) * self.session.obs_dim + k * NUM_ACTIONS

    def character(self, seat: int) -> str:
        return self.session.character(seat)

    def step(self, a1: int, a2: int):
        effective = {}
        for seat, submitted in ((1, a1), (2, a2)):
            if self.delays[seat] == 0:
                effective[seat] = submitted
            else:
                self._queues[seat].append(submitted)
                effective[seat] = self._queues[seat].popleft()
                self._act_hist[seat].append(submitted)
        events = self.session.step(effective[1], effective[2])
        for seat in (1, 2):
            self._obs_hist[seat].append(self.session.observe(seat))
        return events

    def observe(self, seat: int) -> np.ndarray:
        k = self.delays[seat]
        if k == 0:
            return self.session.observe(seat)
        parts = list(self._obs_hist[seat])
        onehots = np.zeros((k, NUM_ACTIONS), dtype=np.float32)
        for i, action in enumerate(self._act_hist[seat]):
            onehots[i, action] = 1.0
        return np.concatenate([np.concatenate(parts), onehots.reshape(-1)])


def delay_wrap(session, k: int) -> DelayedSession:
    """Symmetric wrapper: both seats act through a k-tick queue."""
    return DelayedSession(session, k, k)


def delayed_obs_dim(base_dim: int, k: int) -> int:
    return (k + 1) * base_dim + k * NUM_ACTIONS
