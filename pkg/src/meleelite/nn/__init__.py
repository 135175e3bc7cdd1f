from .backend import BACKEND, leaky_softplus, leaky_softplus_grad
from .mlp import (
    DEFAULT_ALPHA,
    ForwardTrace,
    NetworkParams,
    add_delta,
    backward,
    flatten,
    forward,
    forward_one,
    init_params,
    jvp,
    sgd_step,
    softmax,
    unflatten,
)
from .snapshot import decode_params, encode_params

__all__ = [
    "BACKEND", "leaky_softplus", "leaky_softplus_grad", "DEFAULT_ALPHA",
    "ForwardTrace", "NetworkParams", "add_delta", "backward", "flatten",
    "forward", "forward_one", "init_params", "jvp", "sgd_step", "softmax",
    "unflatten", "decode_params", "encode_params",
]
