"""Selects the row-reduction kernels at import time.

The compiled Cython module is preferred; setting ``EXCYCLES_PURE=1`` in the
environment forces the pure-Python kernels. ``KERNELS`` exposes every
available implementation by name for parity tests and the benchmark.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": (_kernels_py.rref_modp, _kernels_py.rref_obj)}
if _compiled is not None:
    KERNELS["cython"] = (_compiled.rref_modp, _compiled.rref_obj)

if _compiled is not None and os.environ.get("EXCYCLES_PURE", "") in ("", "0"):
    NAME = "cython"
else:
    NAME = "python"

rref_modp, rref_obj = KERNELS[NAME]
