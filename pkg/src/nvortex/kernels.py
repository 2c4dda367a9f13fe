"""Backend selection for the pairwise interaction kernels.

The compiled extension is used when it imported cleanly; the numpy
implementation is the fallback. Set ``NVORTEX_PURE_PYTHON=1`` to force the
fallback (used by the benchmark to compare both).
"""

from __future__ import annotations

import os

from . import _reference

if os.environ.get("NVORTEX_PURE_PYTHON"):
    _impl = _reference
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _reference

BACKEND = _impl.BACKEND_NAME

hamiltonian = _impl.hamiltonian
gradient = _impl.gradient
hessian = _impl.hessian
min_pair_distance = _impl.min_pair_distance
