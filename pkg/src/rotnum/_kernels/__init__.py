"""Kernel backend selection.

The hot inner loops have two interchangeable implementations: a
numba-jitted one and a pure NumPy one.  ``ROTNUM_BACKEND=numpy`` forces the
fallback; ``ROTNUM_BACKEND=numba`` requires numba; anything else (default
``auto``) uses numba when importable.  ``benchmarks/bench_kernels.py``
compares the two.
"""

import os

_choice = os.environ.get("ROTNUM_BACKEND", "auto").strip().lower()

if _choice in ("numpy", "0", "off", "false"):
    from . import numpy_impl as _impl

    BACKEND = "numpy"
elif _choice == "numba":
    from . import numba_impl as _impl

    BACKEND = "numba"
else:
    try:
        from . import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        from . import numpy_impl as _impl

        BACKEND = "numpy"

schrod_displacement_batch = _impl.schrod_displacement_batch
schrod_samples = _impl.schrod_samples
schrod_backward_samples = _impl.schrod_backward_samples
schrod_push_batch = _impl.schrod_push_batch
sturm_count_batch = _impl.sturm_count_batch
ms_pair_displacement_batch = _impl.ms_pair_displacement_batch
ms_pair_samples = _impl.ms_pair_samples
ms_pair_backward_samples = _impl.ms_pair_backward_samples


def backend_name():
    return BACKEND
