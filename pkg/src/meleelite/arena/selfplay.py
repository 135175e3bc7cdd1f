"""Opponent sampling from the snapshot history."""

from ..errors import NotReady
from ..pipeline.policies import NetPolicy, SOFTMAX_KIND


def self_play_opponent(store, rng, recent_bias: float) -> int:
    """Pick an opponent snapshot version: the latest with probability
    recent_bias, otherwise uniform over the full history."""
    versions = store.versions()
    if not versions:
        raise NotReady("snapshot store has no versions to sample")
    if len(versions) == 1 or rng.random() < recent_bias:
        return versions[-1]
    return versions[int(rng.integers(0, len(versions)))]


class SelfPlayDriver:
    """Opponent seat driven by sampled historical snapshots of the learner."""

    def __init__(self, store, recent_bias: float = 0.5, kind: str = SOFTMAX_KIND,
                 tau: float = 1.0, epsilon: float = 0.0):
        self.store = store
        self.recent_bias = recent_bias
        self.kind = kind
        self.tau = tau
        self.epsilon = epsilon
        self._policy = None
        self.version = None

    def episode_character(self, rng):
        return None  # self-play mirrors the agent's character

    def on_episode(self, rng) -> None:
        try:
            version = self_play_opponent(self.store, rng, self.recent_bias)
        except NotReady:
            return
        if version != self.version:
            params, _ = self.store.read(version)
            self._policy = NetPolicy(params, self.kind, tau=self.tau, epsilon=self.epsilon)
            self.version = version

    def act(self, session, seat: int, rng) -> int:
        if self._policy is None:
            self.on_episode(rng)
            if self._policy is None:
                return 0
        action, _ = self._policy.act(session.observe(seat), rng)
        return action
