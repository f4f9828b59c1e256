"""Kernel backend selection.

Imports the compiled extension when available, otherwise the numpy
fallback.  Set SPHEREMIN_KERNEL=python to force the fallback (used by
the benchmark and for debugging).
"""

import os

if os.environ.get("SPHEREMIN_KERNEL", "").lower() == "python":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
eval_product = _impl.eval_product
