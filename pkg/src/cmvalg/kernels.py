"""Backend selection for the law-scan kernels.

The hot O(n^3) scans exist twice: jitted (numba) and pure numpy.  The
environment variable ``CMVALG_KERNELS`` picks the implementation:

* ``auto`` (default) -- numba when importable, else numpy;
* ``numba``          -- require numba, fail otherwise;
* ``numpy``          -- force the pure-numpy path.

Both backends return identical witnesses; ``benchmarks/bench_kernels.py``
compares their speed.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_ENV_VAR = "CMVALG_KERNELS"


def _load(choice: str):
    if choice == "numpy":
        return _kernels_numpy, "numpy"
    try:
        from . import _kernels_numba
        return _kernels_numba, "numba"
    except ImportError:
        if choice == "numba":
            raise
        return _kernels_numpy, "numpy"


_choice = os.environ.get(_ENV_VAR, "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"{_ENV_VAR} must be auto, numba or numpy, got {_choice!r}")
_impl, backend_name = _load(_choice)

assoc_witness = _impl.assoc_witness
right_compat_witness = _impl.right_compat_witness
residuation_witness = _impl.residuation_witness
le_right_monotone_witness = _impl.le_right_monotone_witness
least_upper_witness = _impl.least_upper_witness
greatest_lower_witness = _impl.greatest_lower_witness
left_compat_witness = _impl.left_compat_witness
