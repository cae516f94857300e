"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``SATCHOICE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("SATCHOICE_PURE_PYTHON"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:  # extension not built
        kernels = _pykernels
        BACKEND = "python"

MODE_UC = _pykernels.MODE_UC
MODE_BUC = _pykernels.MODE_BUC
MODE_SC = _pykernels.MODE_SC
MODE_BSC = _pykernels.MODE_BSC

STATUS_SUCCESS = _pykernels.STATUS_SUCCESS
STATUS_CONTRADICTION = _pykernels.STATUS_CONTRADICTION
STATUS_INCOMPLETE = _pykernels.STATUS_INCOMPLETE


def get(name: str):
    """Kernel module by name: ``"cython"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown backend {name!r}")
