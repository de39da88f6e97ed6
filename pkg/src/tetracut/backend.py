"""Kernel backend selection.

Set ``TETRACUT_BACKEND=numpy`` to force the pure-numpy kernels, or
``TETRACUT_BACKEND=numba`` to require the compiled ones.  The default is
numba when importable, numpy otherwise.
"""

from __future__ import annotations

import os

from . import kernels_numpy

_requested = os.environ.get("TETRACUT_BACKEND", "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise ValueError(f"TETRACUT_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    _impl = kernels_numpy
    BACKEND = "numpy"
else:
    try:
        from . import kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        _impl = kernels_numpy
        BACKEND = "numpy"

eval_chains = _impl.eval_chains
map_samples = _impl.map_samples

# the planar-target variant is cold-path; numpy only
eval_chains_planar = kernels_numpy.eval_chains_planar

N_SAMPLES = kernels_numpy.N_SAMPLES
