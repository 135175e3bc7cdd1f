from .benchmark import BenchmarkSet, benchmark_eval, paired_mirror_rewards, play_scored_episode
from .cluster import Merge, cluster_characters, format_merges, symmetrize
from .curvelog import COLUMNS, CurveLogger, read_curve
from .delay import DelayedSession, delay_wrap, delayed_obs_dim
from .diagnostics import entropy_report
from .selfplay import SelfPlayDriver, self_play_opponent
from .transfer import (
    SCRATCH,
    THRESHOLD_WINDOW,
    TransferMatrix,
    TransferResult,
    transfer_experiment,
)

__all__ = [
    "BenchmarkSet", "benchmark_eval", "paired_mirror_rewards", "play_scored_episode",
    "Merge", "cluster_characters", "format_merges", "symmetrize", "COLUMNS",
    "CurveLogger", "read_curve", "DelayedSession", "delay_wrap", "delayed_obs_dim",
    "entropy_report", "SelfPlayDriver", "self_play_opponent", "SCRATCH",
    "THRESHOLD_WINDOW", "TransferMatrix", "TransferResult", "transfer_experiment",
]
