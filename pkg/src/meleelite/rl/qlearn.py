"""Action-value learning: Boltzmann exploration and squared-error gradients."""

import numpy as np

from ..errors import InputError
from ..nn import mlp
from .hyper import Hyperparams
from .returns import n_step_targets_batch
from .trajectory import Trajectory


def boltzmann_epsilon(q_values: np.ndarray, tau: float, epsilon: float, rng):
    """Sample from eps/K uniform + (1-eps) * softmax(tau * Q).

    Returns (action index, exact probability of that action).
    """
    q = np.asarray(q_values, dtype=np.float64)
    k = q.shape[0]
    probs = epsilon / k + (1.0 - epsilon) * mlp.softmax(tau * q)
    cdf = np.cumsum(probs)
    action = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    action = min(action, k - 1)
    return action, float(probs[action])


def mixed_policy_probs(q_or_logits: np.ndarray, tau: float, epsilon: float) -> np.ndarray:
    q = np.asarray(q_or_logits, dtype=np.float64)
    return epsilon / q.shape[0] + (1.0 - epsilon) * mlp.softmax(tau * q)


def _sarsa_pieces(qnet, traj: Trajectory, hyper: Hyperparams, bootstrap_net=None):
    n = hyper.n_step
    if len(traj) < n + 1:
        raise InputError(f"trajectory length {len(traj)} < n+1 = {n + 1}")
    num = len(traj) - n
    boot_net = qnet if bootstrap_net is None else bootstrap_net
    boot_q, _ = mlp.forward(boot_net, traj.observations[n:n + num])
    boot = boot_q[np.arange(num), traj.actions[n:n + num]]
    targets = n_step_targets_batch(traj.rewards, boot, hyper.discount, n)
    states = traj.observations[:num]
    actions = traj.actions[:num]
    return states, actions, targets


def q_grad_given_targets(qnet, states, actions, targets):
    """Gradient of mean (Q(s,a) - target)^2 over the batch; targets fixed."""
    num = len(actions)
    if num == 0:
        raise InputError("empty batch")
    q, trace = mlp.forward(qnet, states)
    taken = q[np.arange(num), actions]
    err = taken.astype(np.float64) - np.asarray(targets, dtype=np.float64)
    dy = np.zeros_like(q)
    dy[np.arange(num), actions] = (2.0 / num) * err
    grad = mlp.backward(qnet, trace, dy)
    loss = float(np.mean(err ** 2))
    return grad, loss


def q_loss_grad(qnet, traj: Trajectory, hyper: Hyperparams, bootstrap_net=None) -> np.ndarray:
    """Gradient of the truncated-return squared error; only the taken action's
    output receives error signal."""
    states, actions, targets = _sarsa_pieces(qnet, traj, hyper, bootstrap_net)
    grad, _ = q_grad_given_targets(qnet, states, actions, targets)
    return grad


def q_loss(qnet, traj: Trajectory, hyper: Hyperparams, bootstrap_net=None) -> float:
    states, actions, targets = _sarsa_pieces(qnet, traj, hyper, bootstrap_net)
    q, _ = mlp.forward(qnet, states)
    taken = q[np.arange(len(actions)), actions].astype(np.float64)
    return float(np.mean((taken - targets) ** 2))


def q_grad_batch(qnet, trajs, hyper: Hyperparams, max_target=False):
    """Pooled gradient over several trajectories (one forward/backward pass)."""
    if not trajs:
        raise InputError("empty batch")
    all_states, all_actions, all_targets = [], [], []
    for traj in trajs:
        if max_target:
            if len(traj) < 2:
                raise InputError("trajectory too short for one-step targets")
            num = len(traj) - 1
            next_q, _ = mlp.forward(qnet, traj.observations[1:1 + num])
            targets = traj.rewards[:num].astype(np.float64) \
                + hyper.discount * next_q.max(axis=1).astype(np.float64)
            states, actions = traj.observations[:num], traj.actions[:num]
        else:
            states, actions, targets = _sarsa_pieces(qnet, traj, hyper)
        all_states.append(states)
        all_actions.append(actions)
        all_targets.append(targets)
    states = np.concatenate(all_states)
    actions = np.concatenate(all_actions)
    targets = np.concatenate(all_targets)
    return q_grad_given_targets(qnet, states, actions, targets)
