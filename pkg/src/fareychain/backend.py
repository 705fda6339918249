"""Kernel backend selection and worker-thread control.

The hot enumeration loops exist twice: as numba ``@njit`` kernels and as
vectorized pure-numpy code.  The environment flag picks the implementation::

    FAREYCHAIN_BACKEND=numba   force the jit kernels (error if numba missing)
    FAREYCHAIN_BACKEND=numpy   force the pure-numpy path
    FAREYCHAIN_BACKEND=auto    numba when importable, else numpy (default)

Worker count never changes results: every kernel reduces over a block grid
fixed by problem size alone, so any thread count reproduces the same bytes.
"""

import os

ENV_BACKEND = "FAREYCHAIN_BACKEND"

try:
    import numba
except ImportError:  # pragma: no cover - depends on environment
    numba = None


def have_numba():
    return numba is not None


def requested_backend():
    value = os.environ.get(ENV_BACKEND, "auto").strip().lower() or "auto"
    if value not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{ENV_BACKEND} must be 'numba', 'numpy' or 'auto', got {value!r}"
        )
    return value


def active_backend():
    """Resolve the backend name actually used for kernel calls."""
    choice = requested_backend()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if numba is None:
            raise RuntimeError(f"{ENV_BACKEND}=numba but numba is not importable")
        return "numba"
    return "numba" if numba is not None else "numpy"


def max_threads():
    if active_backend() == "numba":
        return numba.config.NUMBA_NUM_THREADS
    return 1


def set_threads(requested):
    """Clamp and apply the worker count; returns the effective value.

    Requests beyond the launched numba thread pool are clamped, not errors:
    results are thread-count independent by construction, so the clamp is
    purely a scheduling matter.
    """
    requested = int(requested)
    if requested < 1:
        raise ValueError("thread count must be >= 1")
    if active_backend() != "numba":
        return 1
    effective = min(requested, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(effective)
    return effective
