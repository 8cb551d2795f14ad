"""Hot-kernel backend selection.

The engine's non-BLAS inner loops (layer norm, GELU, causal softmax, the
AdamW update, embedding-gradient scatter) live behind this module. By default
the numba-jitted versions are used when numba imports cleanly; set

    LADDERLAB_BACKEND=numpy   force the pure-numpy reference kernels
    LADDERLAB_BACKEND=numba   require numba (ImportError if missing)

Matrix products always go through numpy's BLAS and are not selected here.
``python -m ladderlab.bench`` compares the two backends.
"""

import os

from ladderlab.kernels import reference

_choice = os.environ.get("LADDERLAB_BACKEND", "auto").lower()

if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"LADDERLAB_BACKEND must be auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    _impl = reference
    BACKEND = "numpy"
else:
    try:
        from ladderlab.kernels import jit as _impl

        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        _impl = reference
        BACKEND = "numpy"

layernorm_fwd = _impl.layernorm_fwd
layernorm_bwd = _impl.layernorm_bwd
gelu_fwd = _impl.gelu_fwd
gelu_bwd = _impl.gelu_bwd
causal_softmax_fwd = _impl.causal_softmax_fwd
causal_softmax_bwd = _impl.causal_softmax_bwd
adamw_update = _impl.adamw_update
embedding_grad = _impl.embedding_grad


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
