"""Select the reduction kernels: compiled when available, pure Python otherwise.

Set ``NGIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("NGIT_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels_c as kernels
    except ImportError:  # extension not built
        kernels = _kernels_py

IMPLEMENTATION = kernels.IMPLEMENTATION

__all__ = ["kernels", "IMPLEMENTATION", "_kernels_py"]
