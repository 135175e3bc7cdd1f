"""Policy entropy summaries over sampled states."""

import numpy as np

from ..errors import InputError
from ..nn import mlp
from ..rl.actor_critic import entropy_rows


def entropy_report(policy_params, states, bins: int = 20) -> dict:
    """Per-state policy entropies: mean, min, and a histogram."""
    states = np.asarray(states)
    if states.ndim != 2 or states.shape[0] == 0:
        raise InputError("states must be a non-empty (N, obs_dim) batch")
    logits, _ = mlp.forward(policy_params, states)
    ents = entropy_rows(mlp.softmax(logits.astype(np.float64)))
    counts, edges = np.histogram(ents, bins=bins,
                                 range=(0.0, float(np.log(logits.shape[1]))))
    return {
        "mean": float(ents.mean()),
        "min": float(ents.min()),
        "histogram": {"counts": counts.tolist(), "edges": edges.tolist()},
    }
