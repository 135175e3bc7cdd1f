"""Learners and the training consumer loop."""

import json
import logging
import os
import threading
import time

import numpy as np

from ..errors import NotReady, NumericalError
from ..nn import mlp
from ..rl import actor_critic as ac
from ..rl import trust_region
from ..rl.qlearn import q_grad_batch
from ..rl.trajectory import Trajectory
from .experience import Experience

logger = logging.getLogger(__name__)


def experience_to_trajectory(exp: Experience) -> Trajectory:
    return Trajectory(
        observations=exp.observations,
        actions=exp.actions.astype(np.int64),
        rewards=exp.rewards,
        behavior_probs=exp.behavior_probs,
    )


def mixed_policy_probs_rows(q_values: np.ndarray, tau: float, epsilon: float) -> np.ndarray:
    soft = mlp.softmax(tau * np.asarray(q_values, dtype=np.float64), axis=-1)
    return epsilon / q_values.shape[-1] + (1.0 - epsilon) * soft


class SarsaLearner:
    """Truncated-return action-value learning with plain SGD."""

    algo = "sarsa"

    def __init__(self, qnet, hyper, max_target: bool = False):
        self.qnet = qnet
        self.hyper = hyper
        self.max_target = max_target
        if max_target:
            self.algo = "dqn-max"

    @property
    def acting_params(self):
        return self.qnet

    def update(self, experiences) -> dict:
        trajs = [experience_to_trajectory(e) for e in experiences]
        grad, loss = q_grad_batch(self.qnet, trajs, self.hyper, max_target=self.max_target)
        self.qnet = mlp.sgd_step(self.qnet, grad, self.hyper.learning_rate)
        # Entropy diagnostics of the induced behavior distribution.
        q_values, _ = mlp.forward(self.qnet, trajs[0].observations)
        probs = mixed_policy_probs_rows(q_values, self.hyper.tau, self.hyper.epsilon)
        ent = ac.entropy_rows(probs)
        return {
            "loss": loss,
            "entropy_mean": float(ent.mean()),
            "entropy_min": float(ent.min()),
            "kl": None,
            "variance_explained": None,
            "cg_residual": None,
        }


class ActorCriticLearner:
    """Policy-gradient learning with an n-step critic; optional trust region.

    With ``kl_backtrack`` the applied trust-region step is halved until the
    realized policy change stays within twice the bound, protecting long desk
    runs from the quadratic model going bad in nearly-flat directions. The
    step itself always starts from the exact rescaled natural gradient.
    """

    def __init__(self, policy, critic, hyper, use_trpo: bool = False,
                 kl_backtrack: bool = True):
        self.policy = policy
        self.critic = critic
        self.hyper = hyper
        self.use_trpo = use_trpo
        self.kl_backtrack = kl_backtrack
        self.backtracks = 0
        self.algo = "ac-trpo" if use_trpo else "ac"

    def _safe_kl(self, old, new, states) -> float:
        try:
            return trust_region.avg_kl(old, new, states)
        except NumericalError:
            return float("inf")

    @property
    def acting_params(self):
        return self.policy

    def update(self, experiences) -> dict:
        hyper = self.hyper
        all_states, all_actions, all_adv = [], [], []
        all_returns, all_values = [], []
        critic_grad_sum = None
        critic_loss = 0.0
        trajs = [experience_to_trajectory(e) for e in experiences]
        for traj in trajs:
            states, advs, returns, values = ac.advantages_batch(self.critic, traj, hyper)
            grad, loss = ac.critic_grad_given_returns(self.critic, states, returns)
            critic_grad_sum = grad if critic_grad_sum is None else critic_grad_sum + grad
            critic_loss += loss
            all_states.append(states)
            all_actions.append(traj.actions[: len(states)])
            all_adv.append(advs)
            all_returns.append(returns)
            all_values.append(values)

        states = np.concatenate(all_states)
        actions = np.concatenate(all_actions)
        advantages = np.concatenate(all_adv)
        returns = np.concatenate(all_returns)
        values = np.concatenate(all_values)

        self.critic = mlp.sgd_step(
            self.critic, critic_grad_sum / len(trajs), hyper.learning_rate
        )

        ascent = ac.actor_grad(self.policy, states, advantages, hyper.entropy_scale,
                               actions=actions, bonus_form=hyper.entropy_bonus_form)
        # The curvature operator and KL metrics may run on a strided subsample
        # of the batch; the gradient always uses every state.
        if hyper.kl_state_cap and len(states) > hyper.kl_state_cap:
            stride = -(-len(states) // hyper.kl_state_cap)
            kl_states = states[::stride]
        else:
            kl_states = states

        stats: dict = {}
        old_policy = self.policy
        if self.use_trpo:
            delta = trust_region.trpo_step(self.policy, kl_states, ascent, hyper, stats=stats)
            candidate = mlp.add_delta(self.policy, delta.astype(self.policy.dtype))
            realized_kl = self._safe_kl(old_policy, candidate, kl_states)
            if self.kl_backtrack:
                for _ in range(12):
                    if realized_kl <= 2.0 * hyper.kl_bound:
                        break
                    delta = delta * 0.5
                    candidate = mlp.add_delta(self.policy, delta.astype(self.policy.dtype))
                    realized_kl = self._safe_kl(old_policy, candidate, kl_states)
                    self.backtracks += 1
            self.policy = candidate
        else:
            self.policy = mlp.sgd_step(self.policy, -ascent, hyper.learning_rate)
            realized_kl = self._safe_kl(old_policy, self.policy, kl_states)

        probs = ac.policy_probs(self.policy, states)
        ent = ac.entropy_rows(probs)
        return {
            "loss": critic_loss / len(trajs),
            "entropy_mean": float(ent.mean()),
            "entropy_min": float(ent.min()),
            "kl": realized_kl,
            "variance_explained": ac.variance_explained(returns, values),
            "cg_residual": stats.get("cg_residual"),
        }


def make_learner(algo: str, obs_dim: int, num_actions: int, rng, hyper,
                 init_policy=None, hidden=(128, 128)):
    """Build a learner; ``init_policy`` warm-starts the acting network."""
    dims = [obs_dim, *hidden, num_actions]
    if algo in ("sarsa", "dqn-max"):
        qnet = init_policy if init_policy is not None else mlp.init_params(dims, rng)
        return SarsaLearner(qnet, hyper, max_target=(algo == "dqn-max"))
    if algo in ("ac", "ac-trpo"):
        policy = init_policy if init_policy is not None else mlp.init_params(dims, rng)
        critic = mlp.init_params([obs_dim, *hidden, 1], rng)
        return ActorCriticLearner(policy, critic, hyper, use_trpo=(algo == "ac-trpo"))
    raise ValueError(f"unknown algorithm {algo!r}")


class TrainerStats:
    """Rolling view of the latest update metrics plus staleness."""

    def __init__(self):
        self.updates = 0
        self.last: dict = {}
        self.staleness = 0.0
        self._lock = threading.Lock()

    def record(self, metrics: dict, staleness: float) -> None:
        with self._lock:
            self.updates += 1
            self.last = dict(metrics)
            self.staleness = staleness

    def snapshot(self) -> dict:
        with self._lock:
            out = dict(self.last)
            out["updates"] = self.updates
            out["staleness"] = self.staleness
            return out


def _dump_diagnostics(out_dir, learner, metrics, err) -> str:
    path = os.path.join(out_dir or ".", "trainer_diagnostics.json")
    payload = {
        "error": str(err),
        "algo": learner.algo,
        "metrics": {k: (None if v is None else float(v)) for k, v in metrics.items()
                    if not isinstance(v, (list, dict))},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
    return path


def train_step(learner, queue, batch_size: int, rng, stats: TrainerStats,
               current_version: int) -> dict:
    """One sample+update cycle; raises NotReady while the queue is empty."""
    batch = queue.sample_batch(batch_size, rng)
    metrics = learner.update(batch)
    staleness = float(np.mean([current_version - e.snapshot_version for e in batch]))
    if staleness < 0:
        staleness = 0.0
    loss = metrics.get("loss")
    if loss is not None and not np.isfinite(loss):
        raise NumericalError(f"non-finite training loss {loss}")
    stats.record(metrics, staleness)
    return metrics


def trainer_loop(queue, learner, store, *, publish_period: int, batch_size: int,
                 rng, stop_event: threading.Event, stats: TrainerStats,
                 out_dir=None, max_updates=None) -> None:
    """Consume experiences until stopped; publish a snapshot every
    publish_period updates. A non-finite loss halts the loop after writing a
    diagnostics dump."""
    updates = 0
    version = store.latest_version() or 0
    while not stop_event.is_set():
        if max_updates is not None and updates >= max_updates:
            break
        try:
            metrics = train_step(learner, queue, batch_size, rng, stats, version)
        except NotReady:
            time.sleep(0.005)
            continue
        except NumericalError as err:
            path = _dump_diagnostics(out_dir, learner, stats.snapshot(), err)
            logger.error("training halted: %s (diagnostics at %s)", err, path)
            stop_event.set()
            raise
        updates += 1
        if updates % publish_period == 0:
            version = store.write(learner.acting_params)
            logger.info("published snapshot v%d after %d updates (loss %.4g)",
                        version, updates, metrics.get("loss") or float("nan"))
