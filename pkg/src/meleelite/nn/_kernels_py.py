"""Pure NumPy activation kernels (fallback backend)."""

import numpy as np


def leaky_softplus(x, alpha=0.01):
    """log(exp(alpha*x) + exp(x)), overflow-safe via max factoring."""
    x = np.asarray(x)
    m = np.maximum(alpha * x, x)
    return m + np.log(np.exp(alpha * x - m) + np.exp(x - m))


def leaky_softplus_grad(x, alpha=0.01):
    """d/dx log(exp(alpha*x) + exp(x)), computed stably."""
    x = np.asarray(x)
    m = np.maximum(alpha * x, x)
    ea = np.exp(alpha * x - m)
    e = np.exp(x - m)
    return (alpha * ea + e) / (ea + e)
