"""Training-cost measurement: steps until parity against the benchmark set."""

import csv
import os
from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from ..rl.hyper import Hyperparams

SCRATCH = "scratch"
THRESHOLD_WINDOW = 50
THRESHOLD_MIN_EPISODES = 5


@dataclass
class TransferResult:
    steps_to_threshold: int | None  # None = budget exhausted
    steps_run: int
    episodes: int
    final_rolling_mean: float | None


def transfer_experiment(target_character: str, init_snapshot: str | None,
                        benchmark_dir: str, budget: int, threshold: float = 0.0, *,
                        algorithm: str = "ac-trpo", hyper: Hyperparams | None = None,
                        seed: int = 0, out_dir: str, roster_path: str | None = None,
                        actors: int = 1, deterministic: bool = True) -> TransferResult:
    """Train ``target_character`` against the benchmark set and report the
    first step count at which the rolling mean episode reward reaches the
    threshold."""
    from ..driver import RunConfig, run_training  # deferred: driver imports this package

    config = RunConfig(
        algorithm=algorithm,
        character=target_character,
        opponent=f"benchmark:{benchmark_dir}",
        hyper=hyper or Hyperparams(),
        actors=actors,
        budget=budget,
        seed=seed,
        out_dir=out_dir,
        roster_path=roster_path,
        deterministic=deterministic,
        init_snapshot=init_snapshot,
        run_id=f"transfer-{target_character}-{'scratch' if init_snapshot is None else 'init'}",
        stop_at_reward=threshold,
        stop_min_episodes=THRESHOLD_MIN_EPISODES,
        log_window=THRESHOLD_WINDOW,
    )
    result = run_training(config)
    return TransferResult(
        steps_to_threshold=result.steps_to_threshold,
        steps_run=result.steps,
        episodes=result.episodes,
        final_rolling_mean=result.rolling_mean(THRESHOLD_WINDOW),
    )


class TransferMatrix:
    """Training costs: rows are target characters, columns are Scratch plus
    each source character. Same-source/target entries are 0 by convention."""

    def __init__(self, targets, sources, values):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (len(targets), len(sources)):
            raise InputError(f"matrix shape {values.shape} does not match labels")
        self.targets = list(targets)
        self.sources = list(sources)
        self.values = values

    def source_block(self) -> np.ndarray:
        """The square sub-matrix over source characters (Scratch dropped),
        ordered like ``targets``."""
        idx = [self.sources.index(t) for t in self.targets]
        return self.values[:, idx]

    def to_csv(self, path: str) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["target", *self.sources])
            for target, row in zip(self.targets, self.values):
                writer.writerow([target] + [("" if np.isnan(v) else repr(float(v))) for v in row])

    @classmethod
    def from_csv(cls, path: str) -> "TransferMatrix":
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = [r for r in csv.reader(fh) if r]
        header = rows[0]
        if not header or header[0] != "target":
            raise InputError("transfer matrix CSV must start with a 'target' header column")
        sources = header[1:]
        targets, values = [], []
        for row in rows[1:]:
            targets.append(row[0])
            values.append([float("nan") if c == "" else float(c) for c in row[1:]])
        return cls(targets, sources, values)
