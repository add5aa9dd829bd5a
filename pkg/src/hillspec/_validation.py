"""Input validation helpers shared by the functional API and the estimators."""

import math
import numbers

import numpy as np

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class TruncationError(ValueError):
    """The requested basis is too small for the potential's harmonic content."""


class InvalidMatrixError(ValueError):
    """A matrix handed to the Hermitian eigensolver is not Hermitian."""


class IntegrationOverflowError(ArithmeticError):
    """The fundamental-system integration produced non-finite values."""


class SeparationWarning(UserWarning):
    """The root scan grid may be too coarse to separate neighbouring roots."""


def check_floquet_parameter(t):
    """Return ``t`` as a float, requiring ``0 <= t < 2*pi``."""
    if not isinstance(t, numbers.Real) or not math.isfinite(t):
        raise DomainError(f"Floquet parameter must be a finite real, got {t!r}")
    t = float(t)
    if not 0.0 <= t < TWO_PI:
        raise DomainError(f"Floquet parameter must lie in [0, 2*pi), got {t}")
    return t


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_tolerance(tol):
    if not isinstance(tol, numbers.Real) or not math.isfinite(tol) or tol < 0:
        raise DomainError(f"tolerance must be a finite non-negative real, got {tol!r}")
    return float(tol)


def check_ascending(values, name="eigenvalues"):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contain non-finite entries")
    if arr.size > 1 and np.any(np.diff(arr) < 0):
        raise DomainError(f"{name} must be sorted ascending")
    return arr


def check_square(matrix):
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidMatrixError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrixError("matrix has non-finite entries")
    return arr


def lower_branch(t):
    """True on the half-interval ``[0, pi)`` where the bottom of the band sits at t**2."""
    return t < math.pi


def band_bottom_free(t):
    """Lowest free eigenvalue of the quasi-periodic problem: t**2 or (2*pi - t)**2."""
    return t * t if lower_branch(t) else (TWO_PI - t) ** 2
