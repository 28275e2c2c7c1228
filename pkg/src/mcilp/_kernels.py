"""Kernel selection: compiled extension if importable, pure Python otherwise.

Set MCILP_PURE_PYTHON=1 to force the fallback (used by tests and benchmarks
to compare both implementations).  The compiled kernels work on C longs;
callers keep inputs inside the desk-scale guards (coordinates and row sums
well below 2^62), which every entry point enforces anyway, so the two
implementations are interchangeable.
"""

import os

if os.environ.get("MCILP_PURE_PYTHON"):
    from . import _core_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        from . import _core_py as _impl
        BACKEND = "python"

lattice_scan = _impl.lattice_scan
pareto_filter = _impl.pareto_filter
count_in_slab = _impl.count_in_slab
