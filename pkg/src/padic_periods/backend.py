"""Kernel backend selection.

The integer-heavy kernels ship in two flavors: numba-compiled loops and pure
numpy vector code.  The environment variable PADIC_PERIODS_BACKEND picks one
at import time:

- "auto" (default): numba when importable, numpy otherwise;
- "numba": require numba, fail loudly if missing;
- "numpy": force the pure numpy path.
"""

import os

REQUESTED = os.environ.get("PADIC_PERIODS_BACKEND", "auto").lower()

if REQUESTED not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        "PADIC_PERIODS_BACKEND must be auto, numba or numpy, got %r" % REQUESTED
    )

numba = None
if REQUESTED in ("auto", "numba"):
    try:
        import numba
    except ImportError:
        numba = None
    if REQUESTED == "numba" and numba is None:
        raise RuntimeError("PADIC_PERIODS_BACKEND=numba but numba is not importable")

ACTIVE_BACKEND = "numba" if numba is not None else "numpy"


def compile_loops(func):
    """njit-compile func when numba is available, else return it unchanged."""
    if numba is None:
        return func
    return numba.njit(cache=True)(func)
