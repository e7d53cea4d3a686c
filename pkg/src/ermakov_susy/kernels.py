"""Hot kernels, compiled when available.

``BACKEND`` is ``"compiled"`` when the Cython extension imported and
``"python"`` otherwise. Set ``ERMAKOV_SUSY_PURE_PYTHON=1`` to force the
fallback (used by the benchmark and by the backend-parity tests).
"""
import os

from . import _fallback

if os.environ.get("ERMAKOV_SUSY_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

erf = _impl.erf
hyp1f1 = _impl.hyp1f1
tridiag_eigvals = _impl.tridiag_eigvals

__all__ = ["BACKEND", "erf", "hyp1f1", "tridiag_eigvals"]
