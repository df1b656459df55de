"""Kernel backend selection.

The compiled Cython backend is preferred when importable; otherwise the
NumPy fallback is used. ``DWPI_BACKEND=python`` or ``DWPI_BACKEND=cython``
forces a choice (forcing cython raises if the extension is missing).
"""
import os

_forced = os.environ.get("DWPI_BACKEND", "").lower()

if _forced == "python":
    from . import purepy as impl
    BACKEND = "python"
elif _forced == "cython":
    from . import _core as impl  # type: ignore[no-redef]
    BACKEND = "cython"
else:
    try:
        from . import _core as impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        from . import purepy as impl
        BACKEND = "python"

param_count = impl.param_count
mlp_forward = impl.mlp_forward
mlp_grad = impl.mlp_grad
adam_step = impl.adam_step
q_learning_sweep = impl.q_learning_sweep


def backend_name() -> str:
    return BACKEND
