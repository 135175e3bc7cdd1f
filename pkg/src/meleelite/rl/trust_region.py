"""Constrained policy steps: averaged KL, Hessian-vector products, conjugate
gradient, and the rescaled natural-gradient update.

All math here runs in float64 regardless of the network's training dtype; the
caller casts the returned step back when applying it.
"""

import logging

import numpy as np

from ..errors import InputError, NumericalError
from ..nn import mlp

logger = logging.getLogger(__name__)

_PROBE_SEED = 0x5EED


def avg_kl(params_old, params_new, states) -> float:
    """Mean over the batch of KL(pi_old(s) || pi_new(s))."""
    logits_old, _ = mlp.forward(params_old.astype(np.float64), states)
    logits_new, _ = mlp.forward(params_new.astype(np.float64), states)
    p_old = mlp.softmax(logits_old)
    p_new = mlp.softmax(logits_new)
    if np.any((p_new == 0.0) & (p_old > 0.0)):
        raise NumericalError("new policy assigns zero probability where old policy is positive")
    ratio = np.where(p_old > 0.0, p_old / np.where(p_new > 0.0, p_new, 1.0), 1.0)
    terms = np.where(p_old > 0.0, p_old * np.log(ratio), 0.0)
    return float(terms.sum(axis=1).mean())


class KlHvpOperator:
    """Products with the Hessian of the batch-averaged KL at the current
    parameters.

    At the expansion point the Hessian equals the Gauss-Newton form
    J^T (diag(pi) - pi pi^T) J per state, evaluated here with one forward-mode
    and one reverse-mode pass per product.
    """

    def __init__(self, params, states):
        self.params = params.astype(np.float64)
        self.states = np.asarray(states, dtype=np.float64)
        logits, self._trace = mlp.forward(self.params, self.states)
        self.probs = mlp.softmax(logits)
        self.dim = self.params.num_params
        self.batch = self.states.shape[0]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,):
            raise InputError(f"vector length {x.shape} does not match {self.dim} params")
        u = mlp.jvp(self.params, self._trace, x)  # (N, K) logit tangents
        pu = self.probs * u
        w = pu - self.probs * pu.sum(axis=1, keepdims=True)
        return mlp.backward(self.params, self._trace, w / self.batch)


def kl_hvp(policy, states, x: np.ndarray) -> np.ndarray:
    """One-off Hessian-vector product (build a KlHvpOperator for repeated use)."""
    return KlHvpOperator(policy, states)(x)


def conjugate_gradient(hvp, g: np.ndarray, iters: int, tol: float = 1e-10,
                       stats: dict | None = None) -> np.ndarray:
    """Approximately solve H x = g for a symmetric PSD operator.

    Stops after ``iters`` iterations or when the relative residual drops
    below ``tol``.
    """
    g = np.asarray(g, dtype=np.float64)
    g_norm = float(np.linalg.norm(g))
    if g_norm == 0.0:
        if stats is not None:
            stats.update(cg_residual=0.0, cg_iters=0)
        return np.zeros_like(g)

    x = np.zeros_like(g)
    r = g.copy()
    p = r.copy()
    rr = float(r @ r)
    used = 0
    for _ in range(iters):
        hp = hvp(p)
        denom = float(p @ hp)
        if not np.isfinite(denom):
            raise NumericalError(f"non-finite curvature in conjugate gradient (p.Hp={denom})")
        if denom <= 0.0:
            break  # hit a flat/negative direction; keep the current iterate
        alpha = rr / denom
        x += alpha * p
        r -= alpha * hp
        used += 1
        rr_new = float(r @ r)
        if not np.isfinite(rr_new):
            raise NumericalError("non-finite residual in conjugate gradient")
        if np.sqrt(rr_new) < tol * g_norm:
            rr = rr_new
            break
        p = r + (rr_new / rr) * p
        rr = rr_new
    if stats is not None:
        stats.update(cg_residual=float(np.sqrt(rr) / g_norm), cg_iters=used)
    return x


def trpo_step(policy, states, grad: np.ndarray, hyper, stats: dict | None = None) -> np.ndarray:
    """Natural-gradient step scaled so the quadratic KL model equals the bound.

    Solves (H + damping*I) x = g by conjugate gradient, then rescales x so
    that 0.5 * x^T H x matches ``hyper.kl_bound`` exactly. Returns the
    parameter delta (float64); falls back to a tiny plain-gradient step when
    the curvature estimate is not positive.
    """
    g = np.asarray(grad, dtype=np.float64)
    g_norm = float(np.linalg.norm(g))
    if g_norm == 0.0:
        raise InputError("policy gradient is zero; no step direction")

    op = KlHvpOperator(policy, states)

    probe_rng = np.random.default_rng(_PROBE_SEED)
    probe = probe_rng.integers(0, 2, size=op.dim).astype(np.float64) * 2.0 - 1.0
    mean_diag = float(probe @ op(probe)) / op.dim
    damping = hyper.cg_damping * max(mean_diag, 0.0)

    x = conjugate_gradient(lambda v: op(v) + damping * v, g, hyper.cg_iters, stats=stats)
    shs = float(x @ op(x))

    if not np.isfinite(shs) or shs <= 0.0:
        logger.warning("trust-region curvature %.3e not positive; plain-gradient fallback", shs)
        if stats is not None:
            stats["trpo_fallback"] = True
        return np.sqrt(2.0 * hyper.kl_bound) * g / g_norm

    scale = np.sqrt(2.0 * hyper.kl_bound / shs)
    if stats is not None:
        stats.update(trpo_scale=float(scale), trpo_quadratic_kl=0.5 * scale * scale * shs,
                     trpo_fallback=False)
    return scale * x
