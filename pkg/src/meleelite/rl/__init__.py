from .actor_critic import (
    actor_grad,
    advantage,
    advantages_batch,
    critic_grad,
    entropy,
    entropy_rows,
    policy_probs,
    sample_policy_action,
    variance_explained,
)
from .hyper import DEFAULT_DISCOUNT, Hyperparams, discount_from_halflife
from .qlearn import boltzmann_epsilon, mixed_policy_probs, q_loss, q_loss_grad
from .returns import dqn_max_target, n_step_return, n_step_sarsa_target
from .trajectory import Trajectory
from .trust_region import KlHvpOperator, avg_kl, conjugate_gradient, kl_hvp, trpo_step

__all__ = [
    "actor_grad", "advantage", "advantages_batch", "critic_grad", "entropy",
    "entropy_rows", "policy_probs", "sample_policy_action", "variance_explained",
    "DEFAULT_DISCOUNT", "Hyperparams", "discount_from_halflife",
    "boltzmann_epsilon", "mixed_policy_probs", "q_loss", "q_loss_grad",
    "dqn_max_target", "n_step_return", "n_step_sarsa_target", "Trajectory",
    "KlHvpOperator", "avg_kl", "conjugate_gradient", "kl_hvp", "trpo_step",
]
