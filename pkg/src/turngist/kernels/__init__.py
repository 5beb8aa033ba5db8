"""Hot numeric kernels over int64 token-id arrays.

Two interchangeable backends: numba-compiled loops (`_numba`) and vectorized
numpy (`_numpy`). Selection happens once at import via the TURNGIST_BACKEND
env var: "numba", "numpy", or "auto" (default; numba when importable). Both
backends use the same integer arithmetic and the same float64 expression
trees, so every result is bit-identical; tests assert parity.
"""

import os

_choice = os.environ.get("TURNGIST_BACKEND", "auto").strip().lower() or "auto"
if _choice not in ("auto", "numba", "numpy"):
    raise ImportError(
        f"TURNGIST_BACKEND must be 'auto', 'numba' or 'numpy', got {_choice!r}"
    )

if _choice == "numpy":
    from . import _numpy as _impl

    BACKEND = "numpy"
elif _choice == "numba":
    from . import _numba as _impl

    BACKEND = "numba"
else:
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:
        from . import _numpy as _impl

        BACKEND = "numpy"

lcs_length = _impl.lcs_length
clipped_overlap = _impl.clipped_overlap
greedy_select = _impl.greedy_select
independent_scores = _impl.independent_scores

__all__ = [
    "BACKEND",
    "lcs_length",
    "clipped_overlap",
    "greedy_select",
    "independent_scores",
]
