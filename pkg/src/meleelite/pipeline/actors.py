"""Experience-generating workers.

Each actor owns one continuing match (no resets; KOs respawn). It plays the
agent seat with the behavior policy, the other seat with a configured
opponent driver, cuts the stream into fixed-length segments, and ships them
to a sink. Snapshots are reloaded every ``refresh_period`` segments.
"""

import collections
import logging
import socket
import threading

import numpy as np

from ..errors import NotReady
from .experience import Experience, SCHEMA_VERSION, encode_experience
from .policies import NetPolicy, Q_KIND, SOFTMAX_KIND

logger = logging.getLogger(__name__)

EPISODE_TICKS = 600  # logging episode boundary: 20 seconds at 30Hz
DEFAULT_SEGMENT_LEN = 60


class TickCounter:
    """Shared budget across actors."""

    def __init__(self):
        self._value = 0
        self._lock = threading.Lock()

    def add(self, n: int) -> int:
        with self._lock:
            self._value += n
            return self._value

    @property
    def value(self) -> int:
        with self._lock:
            return self._value


class RewardMeter:
    """Thread-safe episode-reward history."""

    def __init__(self):
        self._episodes = []
        self._lock = threading.Lock()

    def add_episode(self, reward: float) -> None:
        with self._lock:
            self._episodes.append(float(reward))

    @property
    def count(self) -> int:
        with self._lock:
            return len(self._episodes)

    def rolling_mean(self, window: int):
        with self._lock:
            if not self._episodes:
                return None
            tail = self._episodes[-window:]
            return sum(tail) / len(tail)

    def all_episodes(self) -> list:
        with self._lock:
            return list(self._episodes)


class InProcessSink:
    """Pushes experiences straight into a trainer-side queue."""

    def __init__(self, queue):
        self.queue = queue

    def push(self, exp: Experience) -> None:
        self.queue.push(exp)


class SocketSink:
    """Ships encoded frames over a stream socket, buffering while unreachable.

    The buffer is bounded; when full the oldest pending frame is dropped and
    counted.
    """

    def __init__(self, address, buffer_limit: int = 256):
        self.address = address
        self._pending = collections.deque(maxlen=buffer_limit)
        self.dropped = 0
        self._sock = None

    def _connect(self):
        sock = socket.create_connection(self.address, timeout=5.0)
        sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        return sock

    def push(self, exp: Experience) -> None:
        if len(self._pending) == self._pending.maxlen:
            self.dropped += 1
        self._pending.append(encode_experience(exp))
        self._flush()

    def _flush(self) -> None:
        while self._pending:
            try:
                if self._sock is None:
                    self._sock = self._connect()
                self._sock.sendall(self._pending[0])
                self._pending.popleft()
            except OSError as exc:
                logger.debug("sink unreachable (%s); buffering %d frames", exc, len(self._pending))
                if self._sock is not None:
                    try:
                        self._sock.close()
                    except OSError:
                        pass
                    self._sock = None
                return

    def close(self) -> None:
        if self._sock is not None:
            try:
                self._sock.close()
            except OSError:
                pass
            self._sock = None


class Actor:
    """One environment worker.

    ``session_factory(opponent_character, seed)`` builds a fresh match; the
    actor rebuilds only when the opponent driver asks for a different
    character (otherwise the match runs as a continuing task).
    """

    def __init__(self, *, session_factory, agent_character: str, algo_kind: str,
                 hyper, store, sink, opponent, seed: int, initial_params,
                 segment_len: int = DEFAULT_SEGMENT_LEN, refresh_period: int = 2,
                 seat_mode: str = "alternate", meter: RewardMeter | None = None,
                 counter: TickCounter | None = None):
        self.session_factory = session_factory  # (p1_char, p2_char, seed) -> session
        self.agent_character = agent_character
        self.hyper = hyper
        self.store = store
        self.sink = sink
        self.opponent = opponent
        self.segment_len = segment_len
        self.refresh_period = refresh_period
        self.seat_mode = seat_mode
        self.meter = meter
        self.counter = counter
        self.rng = np.random.default_rng(seed)

        kind = Q_KIND if algo_kind in ("sarsa", "dqn-max") else SOFTMAX_KIND
        self.policy = NetPolicy(initial_params, kind, tau=hyper.tau, epsilon=hyper.epsilon)
        self.snapshot_version = 0
        self.agent_seat = 1
        self.segments_sent = 0
        self._episode_reward = 0.0
        self._episode_ticks = 0
        self._flip_pending = False
        self._rebuild_char = None
        self.session = None
        opp_char = self.opponent.episode_character(self.rng) or agent_character
        self._build_session(opp_char)
        self._refresh_params()

    def _build_session(self, opp_char: str) -> None:
        seed = int(self.rng.integers(0, 2**31))
        if self.agent_seat == 1:
            self.session = self.session_factory(self.agent_character, opp_char, seed)
        else:
            self.session = self.session_factory(opp_char, self.agent_character, seed)

    def _refresh_params(self) -> None:
        if self.store is None:
            return
        try:
            params, version = self.store.read()
        except NotReady:
            return
        self.policy.params = params
        self.snapshot_version = version

    def _on_episode_end(self) -> None:
        if self.meter is not None:
            self.meter.add_episode(self._episode_reward)
        self._episode_reward = 0.0
        self._episode_ticks = 0
        self.opponent.on_episode(self.rng)
        next_char = self.opponent.episode_character(self.rng)
        if next_char is not None and next_char != self.session.character(self._opp_seat()):
            self._rebuild_char = next_char
        if self.seat_mode == "alternate":
            # Applied at the next segment boundary so every experience keeps a
            # single perspective.
            self._flip_pending = True

    def _opp_seat(self) -> int:
        return 2 if self.agent_seat == 1 else 1

    def run_segment(self) -> Experience:
        """Advance segment_len ticks and return the resulting experience."""
        if self._flip_pending:
            self.agent_seat = 2 if self.agent_seat == 1 else 1
            self._flip_pending = False
            if self.session.character(self.agent_seat) != self.agent_character:
                # Mixed-character match: flipping seats requires a fresh game.
                self._rebuild_char = self._rebuild_char \
                    or self.session.character(self.agent_seat)
        if self._rebuild_char is not None:
            self._build_session(self._rebuild_char)
            self._rebuild_char = None
        L = self.segment_len
        seat = self.agent_seat
        opp_seat = 2 if seat == 1 else 1
        agent_char = self.session.character(seat)
        opp_char = self.session.character(opp_seat)
        first_obs = self.session.observe(seat)
        obs_buf = np.empty((L, first_obs.shape[0]), dtype=np.float32)
        act_buf = np.empty(L, dtype=np.uint16)
        rew_buf = np.empty(L, dtype=np.float32)
        prob_buf = np.empty(L, dtype=np.float32)

        for i in range(L):
            obs = first_obs if i == 0 else self.session.observe(seat)
            action, prob = self.policy.act(obs, self.rng)
            opp_action = self.opponent.act(self.session, opp_seat, self.rng)
            if seat == 1:
                events = self.session.step(action, opp_action)
                reward = events.reward_p1
            else:
                events = self.session.step(opp_action, action)
                reward = events.reward_p2
            obs_buf[i] = obs
            act_buf[i] = action
            rew_buf[i] = reward
            prob_buf[i] = prob
            self._episode_reward += reward
            self._episode_ticks += 1
            if self._episode_ticks >= EPISODE_TICKS:
                self._on_episode_end()

        if self.counter is not None:
            self.counter.add(L)
        exp = Experience(
            schema_version=SCHEMA_VERSION,
            agent_character=agent_char,
            opponent_character=opp_char,
            snapshot_version=self.snapshot_version,
            observations=obs_buf,
            actions=act_buf,
            rewards=rew_buf,
            behavior_probs=prob_buf,
        )
        self.segments_sent += 1
        if self.refresh_period and self.segments_sent % self.refresh_period == 0:
            self._refresh_params()
        return exp

    def run(self, stop_event: threading.Event, max_ticks=None) -> None:
        while not stop_event.is_set():
            if max_ticks is not None and self.counter is not None \
                    and self.counter.value >= max_ticks:
                break
            self.sink.push(self.run_segment())
