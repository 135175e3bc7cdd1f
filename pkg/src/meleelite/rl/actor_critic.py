"""Policy-gradient learning with a state-value critic."""

import numpy as np

from ..errors import InputError, NumericalError
from ..nn import mlp
from .hyper import Hyperparams
from .returns import n_step_return, n_step_targets_batch
from .trajectory import Trajectory


def entropy(probs) -> float:
    """-sum p log p with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=np.float64)
    terms = np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)
    return float(-terms.sum())


def entropy_rows(probs: np.ndarray) -> np.ndarray:
    p = np.asarray(probs, dtype=np.float64)
    terms = np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=-1)


def variance_explained(returns, values):
    """1 - Var(R - V) / Var(R) with population variances; None when Var(R)=0."""
    r = np.asarray(returns, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    if r.shape != v.shape or r.size < 2:
        raise InputError("returns and values must be equal-length vectors of size >= 2")
    var_r = r.var()
    if var_r == 0.0:
        return None
    return float(1.0 - (r - v).var() / var_r)


def _return_pieces(vnet, traj: Trajectory, hyper: Hyperparams):
    n = hyper.n_step
    if len(traj) < n + 1:
        raise InputError(f"trajectory length {len(traj)} < n+1 = {n + 1}")
    num = len(traj) - n
    boot_v, _ = mlp.forward(vnet, traj.observations[n:n + num])
    returns = n_step_targets_batch(traj.rewards, boot_v[:, 0], hyper.discount, n)
    return traj.observations[:num], returns


def critic_grad(vnet, traj: Trajectory, hyper: Hyperparams) -> np.ndarray:
    """Gradient of mean (V(s_t) - return_t)^2; bootstrap treated as constant."""
    states, returns = _return_pieces(vnet, traj, hyper)
    grad, _ = critic_grad_given_returns(vnet, states, returns)
    return grad


def critic_grad_given_returns(vnet, states, returns):
    num = len(states)
    if num == 0:
        raise InputError("empty batch")
    v, trace = mlp.forward(vnet, states)
    err = v[:, 0].astype(np.float64) - np.asarray(returns, dtype=np.float64)
    dy = ((2.0 / num) * err)[:, None].astype(v.dtype)
    grad = mlp.backward(vnet, trace, dy)
    return grad, float(np.mean(err ** 2))


def advantage(traj: Trajectory, t: int, vnet, discount: float, n: int) -> float:
    """Truncated return from t minus the critic's value at t."""
    boot = float(mlp.forward_one(vnet, traj.observations[t + n])[0])
    ret = n_step_return(traj, t, boot, discount, n)
    return ret - float(mlp.forward_one(vnet, traj.observations[t])[0])


def advantages_batch(vnet, traj: Trajectory, hyper: Hyperparams):
    """(states, advantages, returns, values) for t = 0..L-1-n."""
    states, returns = _return_pieces(vnet, traj, hyper)
    values, _ = mlp.forward(vnet, states)
    values = values[:, 0].astype(np.float64)
    return states, returns - values, returns, values


def actor_grad(policy, traj_or_states, advantages, entropy_scale: float,
               actions=None, bonus_form: bool = False) -> np.ndarray:
    """Ascent direction: mean over samples of (A_t - h) * grad log pi(s_t, a_t).

    With ``bonus_form`` the shift h is replaced by the per-sample entropy
    bonus h * (-log pi(a_t)) added to the advantage.
    """
    if isinstance(traj_or_states, Trajectory):
        states = traj_or_states.observations[: len(advantages)]
        actions = traj_or_states.actions[: len(advantages)]
    else:
        states = traj_or_states
        if actions is None:
            raise InputError("actions required when not passing a Trajectory")
    num = len(advantages)
    if num == 0 or len(states) != num or len(actions) != num:
        raise InputError("advantages must align with states and actions")

    logits, trace = mlp.forward(policy, states)
    probs = mlp.softmax(logits.astype(np.float64))
    taken = probs[np.arange(num), actions]

    adv = np.asarray(advantages, dtype=np.float64)
    if bonus_form:
        # The log of the taken probability appears explicitly here, so an
        # exactly-zero probability is a hard error. The mixed behavior policy
        # keeps sampled actions above the floor; a zero can only mean the
        # softmax saturated against badly stale data.
        if np.any(taken <= 0.0):
            raise NumericalError("taken action has zero probability under the policy")
        coeff = adv + entropy_scale * (-np.log(taken))
    else:
        # (A - h) * (onehot - pi) needs neither log pi nor 1/pi; saturated
        # states contribute a well-defined gradient even at pi(a) == 0.
        coeff = adv - entropy_scale
    # d log pi(a) / d logits = onehot(a) - pi
    dlogits = -probs * coeff[:, None]
    dlogits[np.arange(num), actions] += coeff
    return mlp.backward(policy, trace, (dlogits / num).astype(logits.dtype))


def policy_probs(policy, states) -> np.ndarray:
    logits, _ = mlp.forward(policy, states)
    return mlp.softmax(logits.astype(np.float64))


def sample_policy_action(policy, obs, epsilon: float, rng):
    """Sample from eps/K + (1-eps) * softmax(logits); returns (action, prob)."""
    logits = mlp.forward_one(policy, obs).astype(np.float64)
    probs = epsilon / logits.shape[0] + (1.0 - epsilon) * mlp.softmax(logits)
    cdf = np.cumsum(probs)
    action = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    action = min(action, logits.shape[0] - 1)
    return action, float(probs[action])
