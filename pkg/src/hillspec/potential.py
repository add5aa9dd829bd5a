"""Real 1-periodic potentials and their integral functionals.

A potential is stored through its real Fourier expansion

    q(x) = a0 + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x),   k = 1..K,

whatever form it was built from. Grid samples are converted once, at
construction, to the band-limited trigonometric interpolant, so evaluation,
Fourier coefficients and Galerkin assembly all see the same function.
"""

import enum
import json
import math
import numbers
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._quadrature import integrate_doubling
from ._validation import DomainError

__all__ = [
    "Form",
    "Potential",
    "weighted_mean_antiperiodic",
    "load_potential",
    "potential_from_dict",
]

# FFT roundoff below this (relative to the largest coefficient) does not count as a harmonic.
_HARMONIC_CUTOFF = 1e-13


class Form(enum.Enum):
    CONSTANT = "Constant"
    TRIG_POLYNOMIAL = "TrigPolynomial"
    GRID_SAMPLES = "GridSamples"


def _as_real_tuple(values, name):
    arr = np.asarray(values if values is not None else (), dtype=float).ravel()
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contain non-finite values")
    return tuple(float(v) for v in arr)


@dataclass(frozen=True)
class Potential:
    """Immutable real potential on the unit circle.

    Use the constructors :meth:`constant`, :meth:`trig` and
    :meth:`from_samples` rather than calling the dataclass directly.
    """

    form: Form
    a0: float
    cos_coeffs: tuple = ()
    sin_coeffs: tuple = ()
    samples: tuple = None
    _cos: np.ndarray = field(init=False, repr=False, compare=False)
    _sin: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        K = max(len(self.cos_coeffs), len(self.sin_coeffs))
        cos = np.zeros(K)
        sin = np.zeros(K)
        cos[: len(self.cos_coeffs)] = self.cos_coeffs
        sin[: len(self.sin_coeffs)] = self.sin_coeffs
        cos.flags.writeable = False
        sin.flags.writeable = False
        object.__setattr__(self, "_cos", cos)
        object.__setattr__(self, "_sin", sin)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value):
        value = float(value)
        if not math.isfinite(value):
            raise DomainError("constant potential must be finite")
        return cls(Form.CONSTANT, value)

    @classmethod
    def trig(cls, a0=0.0, cos=(), sin=()):
        """Trigonometric polynomial; ``cos[k-1]`` multiplies cos(2 pi k x)."""
        a0 = float(a0)
        if not math.isfinite(a0):
            raise DomainError("a0 must be finite")
        return cls(
            Form.TRIG_POLYNOMIAL,
            a0,
            _as_real_tuple(cos, "cos coefficients"),
            _as_real_tuple(sin, "sin coefficients"),
        )

    @classmethod
    def from_samples(cls, samples):
        """Band-limited potential through values on the grid x_j = j/M."""
        values = np.asarray(samples, dtype=float).ravel()
        if values.size == 0:
            raise DomainError("at least one sample is required")
        if not np.all(np.isfinite(values)):
            raise DomainError("samples contain non-finite values")
        M = values.size
        c = np.fft.rfft(values) / M
        a0 = float(values.mean())
        cos = 2.0 * c[1:].real
        sin = -2.0 * c[1:].imag
        if M % 2 == 0:
            # Nyquist mode: split evenly between +-M/2 so the interpolant stays real.
            cos[-1] = c[-1].real
            sin[-1] = 0.0
        return cls(
            Form.GRID_SAMPLES,
            a0,
            tuple(float(v) for v in cos),
            tuple(float(v) for v in sin),
            tuple(float(v) for v in values),
        )

    @classmethod
    def sampled(cls, q, M):
        """Sample another potential on an M-point uniform grid."""
        x = np.arange(M) / M
        return cls.from_samples(q.values(x))

    # -- functionals --------------------------------------------------------

    @property
    def n_harmonics(self):
        """Highest harmonic k carrying a non-negligible coefficient (0 for constants)."""
        amp = np.hypot(self._cos, self._sin)
        if amp.size == 0:
            return 0
        cutoff = 0.0
        if self.form is Form.GRID_SAMPLES:
            cutoff = _HARMONIC_CUTOFF * max(float(amp.max()), abs(self.a0), 1.0)
        nonzero = np.flatnonzero(amp > cutoff)
        return int(nonzero[-1]) + 1 if nonzero.size else 0

    def values(self, x):
        """Vectorised evaluation with no domain check (the series is 1-periodic)."""
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, self.a0)
        if self._cos.size:
            k = np.arange(1, self._cos.size + 1)
            phase = 2.0 * np.pi * np.multiply.outer(x, k)
            out = out + np.cos(phase) @ self._cos + np.sin(phase) @ self._sin
        return out

    def eval(self, x):
        """Value q(x) for x in [0, 1]; accepts scalars or arrays."""
        arr = np.asarray(x, dtype=float)
        if not np.all((arr >= 0.0) & (arr <= 1.0)):
            raise DomainError(f"x must lie in [0, 1], got {x!r}")
        out = self.values(arr)
        return float(out) if out.ndim == 0 else out

    __call__ = eval

    def mean(self):
        """Integral of q over one period."""
        if self.form is Form.GRID_SAMPLES:
            return float(np.mean(self.samples))
        return self.a0

    def fourier_coeff(self, k):
        """Complex coefficient of exp(2 pi i k x); zero beyond the stored harmonics."""
        if isinstance(k, bool) or not isinstance(k, numbers.Integral):
            raise DomainError(f"harmonic index must be an integer, got {k!r}")
        k = int(k)
        if k == 0:
            return complex(self.mean())
        m = abs(k)
        if m > self._cos.size:
            return 0j
        c = 0.5 * complex(self._cos[m - 1], -self._sin[m - 1])
        return c if k > 0 else c.conjugate()

    def fourier_coeffs(self, kmax):
        """Array of coefficients for k = -kmax..kmax."""
        out = np.zeros(2 * kmax + 1, dtype=complex)
        out[kmax] = self.mean()
        K = min(kmax, self._cos.size)
        if K:
            c = 0.5 * (self._cos[:K] - 1j * self._sin[:K])
            out[kmax + 1 : kmax + 1 + K] = c
            out[kmax - K : kmax][::-1] = c.conj()
        return out

    def sup_norm_bound(self):
        """Upper bound for max |q| from the coefficient amplitudes."""
        if self.form is Form.GRID_SAMPLES:
            return float(np.max(np.abs(self.samples)) + np.sum(np.hypot(self._cos, self._sin)))
        return abs(self.a0) + float(np.sum(np.hypot(self._cos, self._sin)))

    def is_constant(self):
        return self.n_harmonics == 0

    # -- arithmetic ---------------------------------------------------------

    def shifted(self, c):
        """The potential q + c, in the same form."""
        c = float(c)
        if self.form is Form.GRID_SAMPLES:
            return Potential.from_samples(np.asarray(self.samples) + c)
        return Potential(self.form, self.a0 + c, self.cos_coeffs, self.sin_coeffs)

    def recentered(self):
        """The zero-mean potential q - mean(q)."""
        return self.shifted(-self.mean())

    # -- serialisation ------------------------------------------------------

    def to_dict(self):
        if self.form is Form.GRID_SAMPLES:
            return {"samples": list(self.samples)}
        if self.form is Form.CONSTANT:
            return {"a0": self.a0}
        return {"a0": self.a0, "cos": list(self.cos_coeffs), "sin": list(self.sin_coeffs)}

    def to_json(self):
        return json.dumps(self.to_dict())


def potential_from_dict(data):
    """Build a potential from the JSON object form used on disk."""
    if not isinstance(data, dict):
        raise DomainError("potential JSON must be an object")
    unknown = set(data) - {"a0", "cos", "sin", "samples"}
    if unknown:
        raise DomainError(f"unknown potential fields: {sorted(unknown)}")
    if "samples" in data:
        if set(data) != {"samples"}:
            raise DomainError("a 'samples' potential cannot also carry coefficients")
        return Potential.from_samples(data["samples"])
    if "a0" not in data and "cos" not in data and "sin" not in data:
        raise DomainError("potential JSON needs 'a0'/'cos'/'sin' or 'samples'")
    a0 = data.get("a0", 0.0)
    if "cos" not in data and "sin" not in data:
        return Potential.constant(a0)
    return Potential.trig(a0, data.get("cos", ()), data.get("sin", ()))


def load_potential(path):
    with open(Path(path), encoding="utf-8") as fh:
        return potential_from_dict(json.load(fh))


def weighted_mean_antiperiodic(q, alpha, beta):
    """(2/(alpha^2+beta^2)) * integral of q(x) (alpha sin(pi x) + beta cos(pi x))^2.

    This is the average of q against the lowest free anti-periodic
    eigenfunction pair; it reduces to the mean for constant q.
    """
    alpha = float(alpha)
    beta = float(beta)
    norm = alpha * alpha + beta * beta
    if norm == 0.0:
        raise DomainError("weights alpha and beta must not both vanish")

    def integrand(x, w):
        wave = alpha * np.sin(np.pi * x) + beta * np.cos(np.pi * x)
        return float(np.sum(w * q.values(x) * wave * wave))

    atol = 1e-15 * norm * max(q.sup_norm_bound(), 1.0)
    return 2.0 / norm * float(integrate_doubling(integrand, rtol=1e-10, atol=atol))
