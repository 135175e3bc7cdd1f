# cython: boundscheck=False, wraparound=False, cdivision=True
"""Fused activation kernels: single pass, no intermediate arrays."""

import numpy as np

cimport cython
from libc.math cimport exp, log

ctypedef fused floating:
    float
    double


@cython.boundscheck(False)
def _apply(floating[::1] x, floating[::1] out, double alpha, bint grad):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double xi, ax, m, ea, e
    for i in range(n):
        xi = x[i]
        ax = alpha * xi
        m = ax if ax > xi else xi
        ea = exp(ax - m)
        e = exp(xi - m)
        if grad:
            out[i] = <floating> ((alpha * ea + e) / (ea + e))
        else:
            out[i] = <floating> (m + log(ea + e))


def _run(x, double alpha, bint grad):
    scalar = np.ndim(x) == 0
    arr = np.ascontiguousarray(x)  # promotes 0-d input to 1-d
    if arr.dtype not in (np.float32, np.float64):
        arr = arr.astype(np.float64)
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    _apply(flat, out, alpha, grad)
    if scalar:
        return out[0]
    return out.reshape(arr.shape)


def leaky_softplus(x, alpha=0.01):
    """log(exp(alpha*x) + exp(x)), overflow-safe via max factoring."""
    return _run(x, alpha, False)


def leaky_softplus_grad(x, alpha=0.01):
    """d/dx log(exp(alpha*x) + exp(x)), computed stably."""
    return _run(x, alpha, True)
