"""Truncated discounted-return targets."""

import numpy as np

from ..errors import InputError
from .trajectory import Trajectory


def n_step_sarsa_target(traj: Trajectory, t: int, q_bootstrap: float,
                        discount: float, n: int) -> float:
    """r_t + d*r_{t+1} + ... + d^(n-1)*r_{t+n-1} + d^n * bootstrap.

    The bootstrap is a plain number: treated as a constant by every gradient
    computed from these targets.
    """
    if t < 0 or t + n >= len(traj):
        raise InputError(f"horizon t={t}, n={n} exceeds trajectory length {len(traj)}")
    total = 0.0
    for i in range(n):
        total += (discount ** i) * float(traj.rewards[t + i])
    return total + (discount ** n) * float(q_bootstrap)


def n_step_return(traj: Trajectory, t: int, v_bootstrap: float,
                  discount: float, n: int) -> float:
    """Same sum with a state-value bootstrap."""
    return n_step_sarsa_target(traj, t, v_bootstrap, discount, n)


def dqn_max_target(reward: float, q_values_next: np.ndarray, discount: float) -> float:
    """One-step Bellman-max target: r + d * max_a Q(s', a)."""
    return float(reward) + discount * float(np.max(q_values_next))


def n_step_targets_batch(rewards: np.ndarray, bootstrap: np.ndarray,
                         discount: float, n: int) -> np.ndarray:
    """Vectorized targets for t = 0..L-1-n given bootstrap[t] = value at t+n."""
    L = len(rewards)
    num = L - n
    if num <= 0:
        raise InputError(f"trajectory of length {L} too short for n={n}")
    if len(bootstrap) != num:
        raise InputError("bootstrap length must equal the number of targets")
    powers = discount ** np.arange(n)
    targets = np.empty(num, dtype=np.float64)
    for t in range(num):
        targets[t] = np.dot(powers, rewards[t:t + n])
    return targets + (discount ** n) * np.asarray(bootstrap, dtype=np.float64)
