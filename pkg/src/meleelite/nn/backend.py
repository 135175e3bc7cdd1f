"""Activation kernel backend selection.

The compiled Cython kernels are preferred when the extension built; the NumPy
implementation is the fallback. MELEELITE_BACKEND={auto,cy,py} overrides.
"""

import os

_requested = os.environ.get("MELEELITE_BACKEND", "auto")

if _requested not in ("auto", "cy", "py"):
    raise ValueError(f"MELEELITE_BACKEND must be auto, cy or py, not {_requested!r}")

if _requested == "py":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        if _requested == "cy":
            raise
        from . import _kernels_py as _impl

        BACKEND = "python"

leaky_softplus = _impl.leaky_softplus
leaky_softplus_grad = _impl.leaky_softplus_grad
