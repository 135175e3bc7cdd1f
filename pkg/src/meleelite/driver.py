"""Training-run orchestration.

Two execution modes:

  deterministic  one actor and the learner interleaved synchronously in a
                 single thread; identical (config, seed) pairs produce
                 bit-identical metrics files (wall clock is simulated time)
  threaded       N actor threads feeding the queue while the trainer free-runs

Actors and the trainer exchange experiences either through the in-process
queue or over the stream-socket wire (transport="socket"), which exercises
the same frame format out-of-process actors would use.
"""

import dataclasses
import logging
import os
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from .arena.curvelog import CurveLogger
from .arena.delay import DelayedSession
from .arena.selfplay import SelfPlayDriver
from .env.observe import ObservationEncoder
from .env.roster import default_roster, load_roster
from .env.session import GameSession
from .env.sim import MeleeLite
from .errors import ConfigError, NotReady
from .nn.snapshot import decode_params
from .pipeline.actors import Actor, EPISODE_TICKS, InProcessSink, RewardMeter, SocketSink, TickCounter
from .pipeline.policies import BenchmarkDriver, CpuDriver, IdleDriver, NetDriver, Q_KIND, SOFTMAX_KIND
from .pipeline.ring import CircularQueue
from .pipeline.server import ExperienceIngest
from .pipeline.snapshots import SnapshotStore
from .pipeline.trainer import TrainerStats, make_learner, train_step, trainer_loop
from .rl.hyper import Hyperparams

logger = logging.getLogger(__name__)

ALGORITHMS = ("sarsa", "ac", "ac-trpo", "dqn-max")


@dataclass
class RunConfig:
    algorithm: str = "ac"
    character: str = "falcon"
    opponent: str = "cpu"  # cpu | idle | snapshot:PATH | self-play | benchmark:DIR
    hyper: Hyperparams = field(default_factory=Hyperparams)
    delay: int = 0
    actors: int = 8
    budget: int = 60_000  # environment ticks
    seed: int = 0
    out_dir: str = "run"
    roster_path: str | None = None
    deterministic: bool = False
    transport: str = "memory"  # memory | socket
    listen_addr: str = "127.0.0.1:0"
    publish_period: int = 20
    queue_capacity: int = 4096
    batch_size: int = 8
    segment_len: int = 60
    refresh_period: int = 2
    seat_mode: str = "alternate"
    recent_bias: float = 0.5
    unstable_ok: bool = False
    hidden: tuple = (128, 128)
    init_snapshot: str | None = None
    run_id: str = "run"
    updates_per_segment: int = 1
    log_window: int = 50
    stop_at_reward: float | None = None
    stop_min_episodes: int = 5

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}")
        if self.algorithm == "dqn-max" and not self.unstable_ok:
            raise ConfigError(
                "dqn-max is far less stable than the default; pass --unstable-ok to run it"
            )
        if self.actors < 1 or self.budget < 1:
            raise ConfigError("actors and budget must be positive")
        if EPISODE_TICKS % self.segment_len != 0:
            raise ConfigError(
                f"segment length {self.segment_len} must divide the "
                f"{EPISODE_TICKS}-tick episode"
            )
        if self.delay > 0 and self.opponent.split(":")[0] in ("benchmark", "snapshot"):
            raise ConfigError("delayed training against fixed snapshots is not supported; "
                              "train against the cpu and evaluate with --delay instead")
        if self.transport not in ("memory", "socket"):
            raise ConfigError("transport must be memory or socket")

    def echo_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name == "hyper":
                for k, v in value.to_dict().items():
                    out[f"hyper.{k}"] = v
            else:
                out[f.name] = value
        return out


@dataclass
class TrainResult:
    out_dir: str
    metrics_path: str
    store: SnapshotStore
    learner: object
    meter: RewardMeter
    stats: TrainerStats
    steps: int
    episodes: int
    final_version: int
    steps_to_threshold: int | None = None

    def rolling_mean(self, window: int = 50):
        return self.meter.rolling_mean(window)


def _load_roster(config: RunConfig):
    return load_roster(config.roster_path) if config.roster_path else default_roster()


def _make_opponent(config: RunConfig, roster, store, algo_kind: str, rng):
    kind, _, payload = config.opponent.partition(":")
    if kind == "cpu":
        return CpuDriver(roster)
    if kind == "idle":
        return IdleDriver()
    if kind == "self-play":
        net_kind = Q_KIND if algo_kind in ("sarsa", "dqn-max") else SOFTMAX_KIND
        return SelfPlayDriver(store, recent_bias=config.recent_bias, kind=net_kind,
                              tau=config.hyper.tau)
    if kind == "snapshot":
        with open(payload, "rb") as fh:
            params = decode_params(fh.read())
        return NetDriver(params, SOFTMAX_KIND, tau=config.hyper.tau)
    if kind == "benchmark":
        from .arena.benchmark import BenchmarkSet

        bset = BenchmarkSet.from_dir(payload)
        return BenchmarkDriver(bset.members, kind=bset.kind, tau=config.hyper.tau)
    raise ConfigError(f"unknown opponent spec {config.opponent!r}")


def run_training(config: RunConfig) -> TrainResult:
    config.validate()
    roster = _load_roster(config)
    if config.character not in roster.characters:
        raise ConfigError(f"unknown character {config.character!r}")
    sim = MeleeLite(roster, damage_weight=config.hyper.damage_weight)
    encoder = ObservationEncoder(roster)

    def session_factory(p1_char, p2_char, seed):
        session = GameSession(sim, encoder, p1_char, p2_char, seed)
        if config.delay > 0:
            session = DelayedSession(session, config.delay, config.delay)
        return session

    obs_dim = encoder.dim
    if config.delay > 0:
        from .arena.delay import delayed_obs_dim

        obs_dim = delayed_obs_dim(encoder.dim, config.delay)

    ss = np.random.SeedSequence(config.seed)
    init_seed, sample_seed, *actor_seeds = ss.spawn(2 + config.actors)
    init_rng = np.random.default_rng(init_seed)
    sample_rng = np.random.default_rng(sample_seed)

    init_policy = None
    if config.init_snapshot:
        with open(config.init_snapshot, "rb") as fh:
            init_policy = decode_params(fh.read())
        if init_policy.layer_sizes[0] != obs_dim:
            raise ConfigError(
                f"init snapshot expects obs dim {init_policy.layer_sizes[0]}, run uses {obs_dim}"
            )

    from .env.actions import NUM_ACTIONS

    learner = make_learner(config.algorithm, obs_dim, NUM_ACTIONS, init_rng,
                           config.hyper, init_policy=init_policy, hidden=config.hidden)

    os.makedirs(config.out_dir, exist_ok=True)
    store = SnapshotStore(os.path.join(config.out_dir, "snapshots"))
    version = store.write(learner.acting_params)

    queue = CircularQueue(config.queue_capacity)
    meter = RewardMeter()
    counter = TickCounter()
    stats = TrainerStats()
    metrics_path = os.path.join(config.out_dir, "metrics.csv")
    curve = CurveLogger(metrics_path, config.run_id, config.echo_dict())

    ingest = None
    if config.transport == "socket" and not config.deterministic:
        host, _, port = config.listen_addr.partition(":")
        ingest = ExperienceIngest(host or "127.0.0.1", int(port or 0), queue).start()

    def make_actor(i: int) -> Actor:
        actor_rng_seed = int(np.random.default_rng(actor_seeds[i]).integers(0, 2**31))
        opponent = _make_opponent(config, roster, store, config.algorithm,
                                  np.random.default_rng(actor_seeds[i]))
        if ingest is not None:
            sink = SocketSink(ingest.address)
        else:
            sink = InProcessSink(queue)
        return Actor(
            session_factory=session_factory,
            agent_character=config.character,
            algo_kind=config.algorithm,
            hyper=config.hyper,
            store=store,
            sink=sink,
            opponent=opponent,
            seed=actor_rng_seed,
            initial_params=learner.acting_params,
            segment_len=config.segment_len,
            refresh_period=config.refresh_period,
            seat_mode=config.seat_mode,
            meter=meter,
            counter=counter,
        )

    start_time = time.monotonic()
    steps_to_threshold = None
    logged_episodes = 0

    def log_new_episodes() -> None:
        nonlocal logged_episodes, steps_to_threshold
        while meter.count > logged_episodes:
            logged_episodes += 1
            step = logged_episodes * EPISODE_TICKS if config.deterministic else counter.value
            wall = step / 30.0 if config.deterministic else time.monotonic() - start_time
            rolling = meter.rolling_mean(config.log_window)
            row = stats.snapshot()
            row.update(wall_clock_s=wall, mean_reward=rolling)
            curve.log(step, row)
            if (steps_to_threshold is None and config.stop_at_reward is not None
                    and logged_episodes >= config.stop_min_episodes
                    and rolling is not None and rolling >= config.stop_at_reward):
                steps_to_threshold = step

    if config.deterministic:
        actor = make_actor(0)
        updates = 0
        while counter.value < config.budget:
            actor.sink.push(actor.run_segment())
            for _ in range(config.updates_per_segment):
                try:
                    train_step(learner, queue, config.batch_size, sample_rng, stats, version)
                except NotReady:
                    break
                updates += 1
                if updates % config.publish_period == 0:
                    version = store.write(learner.acting_params)
            log_new_episodes()
            if steps_to_threshold is not None and config.stop_at_reward is not None:
                break
    else:
        stop = threading.Event()
        actors = [make_actor(i) for i in range(config.actors)]
        actor_threads = [
            threading.Thread(target=a.run, args=(stop, config.budget), daemon=True)
            for a in actors
        ]
        trainer_thread = threading.Thread(
            target=trainer_loop, args=(queue, learner, store),
            kwargs=dict(publish_period=config.publish_period, batch_size=config.batch_size,
                        rng=sample_rng, stop_event=stop, stats=stats, out_dir=config.out_dir),
            daemon=True,
        )
        for t in actor_threads:
            t.start()
        trainer_thread.start()
        try:
            while counter.value < config.budget and not stop.is_set():
                log_new_episodes()
                if steps_to_threshold is not None and config.stop_at_reward is not None:
                    break
                time.sleep(0.02)
        finally:
            stop.set()
            for t in actor_threads:
                t.join(timeout=10.0)
            trainer_thread.join(timeout=30.0)
            if ingest is not None:
                ingest.stop()
        log_new_episodes()

    final_version = store.write(learner.acting_params)
    log_new_episodes()
    return TrainResult(
        out_dir=config.out_dir,
        metrics_path=metrics_path,
        store=store,
        learner=learner,
        meter=meter,
        stats=stats,
        steps=counter.value,
        episodes=meter.count,
        final_version=final_version,
        steps_to_threshold=steps_to_threshold,
    )
