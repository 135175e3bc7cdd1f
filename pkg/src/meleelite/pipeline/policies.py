"""Behavior policies and seat drivers used by actors and evaluation."""

import numpy as np

from ..env.cpu import ScriptedCpu
from ..nn import mlp
from ..rl.actor_critic import sample_policy_action
from ..rl.qlearn import boltzmann_epsilon

Q_KIND = "q"
SOFTMAX_KIND = "softmax"
GREEDY_KIND = "greedy"


class NetPolicy:
    """Network-driven policy over observations.

    kind:
      q        Boltzmann over predicted action values, epsilon-mixed
      softmax  action-probability head, epsilon-mixed
      greedy   argmax over outputs (evaluation only)
    """

    def __init__(self, params, kind: str, tau: float = 1.0, epsilon: float = 0.0):
        self.params = params
        self.kind = kind
        self.tau = tau
        self.epsilon = epsilon

    def act(self, obs, rng):
        if self.kind == Q_KIND:
            q = mlp.forward_one(self.params, obs)
            return boltzmann_epsilon(q, self.tau, self.epsilon, rng)
        if self.kind == SOFTMAX_KIND:
            return sample_policy_action(self.params, obs, self.epsilon, rng)
        if self.kind == GREEDY_KIND:
            out = mlp.forward_one(self.params, obs)
            return int(np.argmax(out)), 1.0
        raise ValueError(f"unknown policy kind {self.kind!r}")


class NetDriver:
    """Opponent seat driven by a fixed network."""

    def __init__(self, params, kind: str = SOFTMAX_KIND, tau: float = 1.0,
                 epsilon: float = 0.0, character: str | None = None):
        self._policy = NetPolicy(params, kind, tau, epsilon)
        self._character = character

    def episode_character(self, rng):
        return self._character

    def on_episode(self, rng) -> None:
        pass

    def act(self, session, seat: int, rng) -> int:
        action, _ = self._policy.act(session.observe(seat), rng)
        return action


class CpuDriver:
    """Opponent seat driven by the scripted CPU."""

    def __init__(self, roster):
        self._cpu = ScriptedCpu(roster)

    def episode_character(self, rng):
        return None

    def on_episode(self, rng) -> None:
        self._cpu.reset()

    def act(self, session, seat: int, rng) -> int:
        return self._cpu.act(session.state, seat, rng)


class IdleDriver:
    """Always-neutral opponent (baseline)."""

    def episode_character(self, rng):
        return None

    def on_episode(self, rng) -> None:
        pass

    def act(self, session, seat: int, rng) -> int:
        return 0


class BenchmarkDriver:
    """Opponent seat cycling through a set of reference snapshots.

    A new member is drawn each episode; the actor rebuilds the match when the
    opponent's character changes.
    """

    def __init__(self, members: dict, kind: str = SOFTMAX_KIND, tau: float = 1.0,
                 epsilon: float = 0.0):
        self.members = members  # character -> params
        self.kind = kind
        self.tau = tau
        self.epsilon = epsilon
        self._names = sorted(members)
        self._current = self._names[0]
        self._policy = NetPolicy(members[self._current], kind, tau, epsilon)

    def episode_character(self, rng):
        self._current = self._names[int(rng.integers(0, len(self._names)))]
        self._policy = NetPolicy(self.members[self._current], self.kind, self.tau, self.epsilon)
        return self._current

    def on_episode(self, rng) -> None:
        pass

    def act(self, session, seat: int, rng) -> int:
        action, _ = self._policy.act(session.observe(seat), rng)
        return action
