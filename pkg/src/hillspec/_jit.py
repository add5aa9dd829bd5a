"""numba ``njit`` when available, otherwise a no-op decorator."""

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    from warnings import warn

    warn("numba missing, inner loops run as plain Python")

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda func: func
