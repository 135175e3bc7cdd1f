"""Fixed-opponent evaluation: benchmark sets, scored episodes, and exact
mirror-paired self-play checks."""

import os

import numpy as np

from ..env.actions import mirror_action
from ..env.observe import ObservationEncoder
from ..env.session import GameSession
from ..env.sim import MeleeLite
from ..errors import ConfigError
from ..nn.snapshot import decode_params
from ..pipeline.actors import EPISODE_TICKS
from ..pipeline.policies import GREEDY_KIND, NetPolicy, Q_KIND, SOFTMAX_KIND
from .delay import DelayedSession


class BenchmarkSet:
    """Six reference snapshots, one per character archetype."""

    def __init__(self, members: dict, kind: str = SOFTMAX_KIND):
        if not members:
            raise ConfigError("benchmark set is empty")
        self.members = dict(members)
        self.kind = kind
        dims = {params.layer_sizes[0] for params in members.values()}
        if len(dims) != 1:
            raise ConfigError(f"benchmark members disagree on observation dim: {dims}")
        self.obs_dim = dims.pop()

    @property
    def characters(self) -> list:
        return sorted(self.members)

    @classmethod
    def from_dir(cls, directory: str, kind: str = SOFTMAX_KIND) -> "BenchmarkSet":
        members = {}
        for name in sorted(os.listdir(directory)):
            if name.endswith(".mlpsnap"):
                with open(os.path.join(directory, name), "rb") as fh:
                    members[name[: -len(".mlpsnap")]] = decode_params(fh.read())
        if not members:
            raise ConfigError(f"no .mlpsnap files in {directory}")
        return cls(members, kind)

    def save(self, directory: str) -> None:
        from ..nn.snapshot import encode_params

        os.makedirs(directory, exist_ok=True)
        for character, params in self.members.items():
            path = os.path.join(directory, f"{character}.mlpsnap")
            with open(path, "w+b") as fh:
                fh.write(encode_params(params))


def play_scored_episode(sim: MeleeLite, encoder: ObservationEncoder, *,
                        agent_params, agent_character: str, agent_kind: str,
                        opponent_policy, opponent_character: str,
                        agent_seat: int, seed: int, rng, ticks: int = EPISODE_TICKS,
                        agent_delay: int = 0, tau: float = 1.0) -> float:
    """One fixed-length episode; returns the agent's summed reward."""
    if agent_seat == 1:
        chars = (agent_character, opponent_character)
    else:
        chars = (opponent_character, agent_character)
    session = GameSession(sim, encoder, chars[0], chars[1], seed)
    if agent_delay > 0:
        delays = (agent_delay, 0) if agent_seat == 1 else (0, agent_delay)
        session = DelayedSession(session, *delays)
    agent = NetPolicy(agent_params, agent_kind, tau=tau, epsilon=0.0)
    opp_seat = 2 if agent_seat == 1 else 1
    total = 0.0
    for _ in range(ticks):
        a_agent, _ = agent.act(session.observe(agent_seat), rng)
        a_opp, _ = opponent_policy.act(session.observe(opp_seat), rng)
        if agent_seat == 1:
            events = session.step(a_agent, a_opp)
            total += events.reward_p1
        else:
            events = session.step(a_opp, a_agent)
            total += events.reward_p2
    return total


def benchmark_eval(agent_params, benchmark: BenchmarkSet, *, sim: MeleeLite,
                   encoder: ObservationEncoder, agent_character: str,
                   episodes: int, seed: int, agent_kind: str = SOFTMAX_KIND,
                   agent_delay: int = 0, tau: float = 1.0) -> dict:
    """Mean reward per 600-tick episode against each benchmark member.

    Evaluation runs greedy/softmax-mode policies (no exploration mix); seats
    alternate across episodes; results are deterministic in (snapshot, seed).
    """
    if episodes < 1:
        raise ConfigError("episodes must be >= 1")
    if benchmark.obs_dim != encoder.dim:
        raise ConfigError(
            f"benchmark observation dim {benchmark.obs_dim} != encoder dim {encoder.dim}"
        )
    per_opponent = {}
    for idx, character in enumerate(benchmark.characters):
        opponent = NetPolicy(benchmark.members[character], benchmark.kind,
                             tau=tau, epsilon=0.0)
        scores = []
        for ep in range(episodes):
            rng = np.random.default_rng((seed, idx, ep))
            scores.append(play_scored_episode(
                sim, encoder,
                agent_params=agent_params, agent_character=agent_character,
                agent_kind=agent_kind, opponent_policy=opponent,
                opponent_character=character, agent_seat=1 if ep % 2 == 0 else 2,
                seed=seed + ep, rng=rng, agent_delay=agent_delay, tau=tau,
            ))
        per_opponent[character] = float(np.mean(scores))
    overall = float(np.mean(list(per_opponent.values())))
    return {"mean_reward": overall, "per_opponent": per_opponent, "episodes": episodes}


def paired_mirror_rewards(sim: MeleeLite, encoder: ObservationEncoder, params,
                          character: str, *, ticks: int, seed: int,
                          kind: str = SOFTMAX_KIND) -> tuple:
    """Self-play episode plus its mirrored, seat-swapped action replay.

    The replay drives each seat with the other seat's mirrored recorded
    actions; by the simulator's reflection symmetry the two seat-1 rewards
    cancel exactly.
    """
    rng = np.random.default_rng(seed)
    policy = NetPolicy(params, kind, epsilon=0.0)
    session = GameSession(sim, encoder, character, character, seed)
    actions_p1, actions_p2 = [], []
    reward_a = 0.0
    for _ in range(ticks):
        a1, _ = policy.act(session.observe(1), rng)
        a2, _ = policy.act(session.observe(2), rng)
        events = session.step(a1, a2)
        actions_p1.append(a1)
        actions_p2.append(a2)
        reward_a += events.reward_p1

    replay = GameSession(sim, encoder, character, character, seed)
    reward_b = 0.0
    for a1, a2 in zip(actions_p1, actions_p2):
        events = replay.step(mirror_action(a2), mirror_action(a1))
        reward_b += events.reward_p1
    return reward_a, reward_b
