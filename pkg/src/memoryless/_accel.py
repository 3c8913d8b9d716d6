"""Backend switch for the hot kernels.

The numba-compiled kernels are used when numba imports cleanly. Setting
``MEMORYLESS_BACKEND=numpy`` in the environment before import forces the
pure-numpy implementations instead; both paths compute identical results.
"""
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

BACKEND = os.environ.get("MEMORYLESS_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"MEMORYLESS_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

USE_NUMBA = HAVE_NUMBA and BACKEND == "numba"


def njit(func):
    """Compile ``func`` in nopython mode, or return it untouched without numba."""
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func
