"""Kernel backend selection.

The numeric kernels in :mod:`gaussmem.kernels` are compiled with numba
when available. Set the environment variable ``GAUSSMEM_BACKEND`` to
``numpy`` to force the pure-numpy fallback (same source, no JIT), or to
``numba`` to require the JIT (raises if numba is missing). The default
(``auto`` or unset) uses numba when importable.
"""

import os

ENV_VAR = "GAUSSMEM_BACKEND"


def _resolve() -> str:
    choice = os.environ.get(ENV_VAR, "auto").strip().lower()
    if choice in ("", "auto"):
        try:
            import numba  # noqa: F401
        except ImportError:
            return "numpy"
        return "numba"
    if choice == "numba":
        import numba  # noqa: F401  (import error is the intended failure mode)

        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(
        f"{ENV_VAR} must be 'numba', 'numpy' or 'auto', got {choice!r}"
    )


BACKEND = _resolve()


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND


def jit_if_enabled(fn):
    """Compile ``fn`` with numba under the numba backend, else return it unchanged."""
    if BACKEND == "numba":
        from numba import njit

        return njit(cache=True)(fn)
    return fn
