"""Fully-connected network with exact reverse-mode gradients.

Hidden layers use the leaky-softplus activation; the output layer is linear.
Parameters flatten to a single vector (per layer: weights row-major, then
biases) for the natural-gradient algebra.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, InputError
from .backend import leaky_softplus, leaky_softplus_grad

DEFAULT_ALPHA = 0.01
BIAS_STDDEV = 0.1


@dataclass
class NetworkParams:
    weights: list  # W_l with shape (out, in)
    biases: list  # b_l with shape (out,)
    alpha: float = DEFAULT_ALPHA

    @property
    def layer_sizes(self) -> tuple:
        return (self.weights[0].shape[1],) + tuple(w.shape[0] for w in self.weights)

    @property
    def num_params(self) -> int:
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))

    @property
    def dtype(self):
        return self.weights[0].dtype

    def astype(self, dtype) -> "NetworkParams":
        return NetworkParams(
            [w.astype(dtype) for w in self.weights],
            [b.astype(dtype) for b in self.biases],
            self.alpha,
        )

    def copy(self) -> "NetworkParams":
        return NetworkParams([w.copy() for w in self.weights],
                             [b.copy() for b in self.biases], self.alpha)


@dataclass
class ForwardTrace:
    inputs: list  # activations entering each layer, inputs[0] is the batch
    preacts: list  # z_l per layer
    batch_size: int


def init_params(layer_sizes, rng, dtype=np.float32, alpha=DEFAULT_ALPHA) -> NetworkParams:
    """Weight columns are random directions of unit Euclidean norm; biases are
    zero-mean normal with standard deviation 0.1."""
    if len(layer_sizes) < 2 or any(int(s) <= 0 for s in layer_sizes):
        raise ConfigError(f"invalid layer sizes {layer_sizes}")
    weights = []
    biases = []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        w = rng.standard_normal((fan_out, fan_in))
        w /= np.linalg.norm(w, axis=0, keepdims=True)
        weights.append(w.astype(dtype))
        biases.append((rng.standard_normal(fan_out) * BIAS_STDDEV).astype(dtype))
    return NetworkParams(weights, biases, alpha)


def forward(params: NetworkParams, x) -> tuple:
    """Batched forward pass. Returns (outputs, trace) with x of shape (N, in)."""
    x = np.asarray(x, dtype=params.dtype)
    if x.ndim != 2 or x.shape[1] != params.layer_sizes[0]:
        raise InputError(
            f"input shape {x.shape} does not match network input dim {params.layer_sizes[0]}"
        )
    inputs = [x]
    preacts = []
    a = x
    last = len(params.weights) - 1
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        z = a @ w.T + b
        preacts.append(z)
        a = z if i == last else leaky_softplus(z, params.alpha)
        if i != last:
            inputs.append(a)
    return a, ForwardTrace(inputs, preacts, x.shape[0])


def forward_one(params: NetworkParams, x) -> np.ndarray:
    """Single-sample forward pass; returns the flat output vector."""
    y, _ = forward(params, np.asarray(x)[None, :])
    return y[0]


def _check_trace(params: NetworkParams, trace: ForwardTrace) -> None:
    if len(trace.preacts) != len(params.weights):
        raise InputError("trace does not match network depth")
    for z, w in zip(trace.preacts, params.weights):
        if z.shape[1] != w.shape[0]:
            raise InputError("trace does not match network layer sizes")


def backward(params: NetworkParams, trace: ForwardTrace, dy) -> np.ndarray:
    """Exact gradient of a scalar loss given d(loss)/d(outputs).

    Returns the flattened parameter gradient. The result is linear in ``dy``;
    callers choose sum vs mean semantics by scaling ``dy``.
    """
    dy = np.asarray(dy, dtype=params.dtype)
    if dy.shape != (trace.batch_size, params.layer_sizes[-1]):
        raise InputError(f"output gradient shape {dy.shape} does not match trace")
    _check_trace(params, trace)

    grads_w = [None] * len(params.weights)
    grads_b = [None] * len(params.biases)
    dz = dy
    for i in range(len(params.weights) - 1, -1, -1):
        grads_w[i] = dz.T @ trace.inputs[i]
        grads_b[i] = dz.sum(axis=0)
        if i > 0:
            da = dz @ params.weights[i]
            dz = da * leaky_softplus_grad(trace.preacts[i - 1], params.alpha)
    return flatten_arrays(grads_w, grads_b)


def jvp(params: NetworkParams, trace: ForwardTrace, tangent: np.ndarray) -> np.ndarray:
    """Directional derivative of the outputs along a parameter tangent.

    Forward-mode pass reusing a previous trace; returns shape (N, out).
    """
    _check_trace(params, trace)
    dws, dbs = unflatten_arrays(tangent, params)
    t = None
    last = len(params.weights) - 1
    for i, (w, b, dw, db) in enumerate(zip(params.weights, params.biases, dws, dbs)):
        u = trace.inputs[i] @ dw.T + db
        if t is not None:
            u = u + t @ w.T
        if i != last:
            t = u * leaky_softplus_grad(trace.preacts[i], params.alpha)
        else:
            t = u
    return t


def flatten_arrays(weights, biases) -> np.ndarray:
    chunks = []
    for w, b in zip(weights, biases):
        chunks.append(np.ravel(w))
        chunks.append(np.ravel(b))
    return np.concatenate(chunks)


def flatten(params: NetworkParams) -> np.ndarray:
    """Deterministic parameter vector: per layer, weights row-major then bias."""
    return flatten_arrays(params.weights, params.biases)


def unflatten_arrays(vec: np.ndarray, like: NetworkParams) -> tuple:
    vec = np.asarray(vec)
    if vec.ndim != 1 or vec.size != like.num_params:
        raise InputError(f"vector of length {vec.size} does not match {like.num_params} params")
    weights, biases, pos = [], [], 0
    for w, b in zip(like.weights, like.biases):
        weights.append(vec[pos:pos + w.size].reshape(w.shape))
        pos += w.size
        biases.append(vec[pos:pos + b.size])
        pos += b.size
    return weights, biases


def unflatten(vec: np.ndarray, like: NetworkParams) -> NetworkParams:
    weights, biases = unflatten_arrays(np.asarray(vec, dtype=like.dtype), like)
    return NetworkParams([w.copy() for w in weights], [b.copy() for b in biases], like.alpha)


def sgd_step(params: NetworkParams, grad: np.ndarray, learning_rate: float) -> NetworkParams:
    """Gradient-descent update theta - lr * grad (pass the negated direction
    for ascent objectives)."""
    return add_delta(params, -learning_rate * np.asarray(grad, dtype=params.dtype))


def add_delta(params: NetworkParams, delta: np.ndarray) -> NetworkParams:
    dws, dbs = unflatten_arrays(np.asarray(delta, dtype=params.dtype), params)
    return NetworkParams(
        [w + dw for w, dw in zip(params.weights, dws)],
        [b + db for b, db in zip(params.biases, dbs)],
        params.alpha,
    )


def softmax(logits, axis=-1) -> np.ndarray:
    z = np.asarray(logits)
    z = z - z.max(axis=axis, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=axis, keepdims=True)
