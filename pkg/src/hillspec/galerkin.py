"""Truncated matrix representations of the quasi-periodic and Neumann problems.

Quasi-periodic: in the Floquet-Fourier basis exp(i(2 pi n + t)x), n = -N..N,
the operator -y'' + q y has entries (2 pi n + t)^2 delta_mn + qhat(m - n).

Neumann: in the orthonormal cosine basis 1, sqrt(2) cos(k pi x), k = 1..M,
entries are (k pi)^2 delta_jk + <q phi_j, phi_k>.
"""

from dataclasses import dataclass

import numpy as np

from ._quadrature import integrate_doubling
from ._validation import (
    TWO_PI,
    DomainError,
    TruncationError,
    check_floquet_parameter,
    check_positive_int,
)
from .eigensolver import hermitian_eigen

__all__ = [
    "DEFAULT_N_BASIS",
    "QuasiPeriodicProblem",
    "NeumannProblem",
    "assemble_quasiperiodic",
    "quasiperiodic_spectrum",
    "assemble_neumann",
    "neumann_spectrum",
]

DEFAULT_N_BASIS = 64


def _min_basis(q):
    return max(8, 2 * q.n_harmonics + 2)


@dataclass(frozen=True)
class QuasiPeriodicProblem:
    q: object
    t: float
    n_basis: int = DEFAULT_N_BASIS

    def __post_init__(self):
        object.__setattr__(self, "t", check_floquet_parameter(self.t))
        n = check_positive_int(self.n_basis, "n_basis")
        if n < _min_basis(self.q):
            raise TruncationError(
                f"n_basis={n} too small for a potential with {self.q.n_harmonics} "
                f"harmonics (need >= {_min_basis(self.q)})"
            )

    @property
    def dim(self):
        return 2 * self.n_basis + 1


@dataclass(frozen=True)
class NeumannProblem:
    q: object
    n_basis: int = DEFAULT_N_BASIS

    def __post_init__(self):
        n = check_positive_int(self.n_basis, "n_basis")
        if n < _min_basis(self.q):
            raise TruncationError(
                f"n_basis={n} too small for a potential with {self.q.n_harmonics} "
                f"harmonics (need >= {_min_basis(self.q)})"
            )

    @property
    def dim(self):
        return self.n_basis + 1


def assemble_quasiperiodic(p):
    """(2N+1) x (2N+1) Hermitian matrix, rows and columns ordered n = -N..N."""
    N = p.n_basis
    n = np.arange(-N, N + 1)
    coeffs = p.q.fourier_coeffs(2 * N)
    # H[m, n] = qhat(m - n); index shift 2N maps m - n onto the coefficient array
    H = coeffs[(n[:, None] - n[None, :]) + 2 * N].astype(complex)
    H[np.diag_indices_from(H)] = (TWO_PI * n + p.t) ** 2 + coeffs[2 * N].real
    return H


def _check_count(count, dim):
    count = check_positive_int(count, "count")
    if count > dim:
        raise DomainError(f"count={count} exceeds the basis dimension {dim}")
    return count


def quasiperiodic_spectrum(p, count):
    """The ``count`` smallest eigenvalues of the truncated quasi-periodic problem."""
    count = _check_count(count, p.dim)
    return hermitian_eigen(assemble_quasiperiodic(p)).values[:count]


def assemble_neumann(p):
    """Real symmetric (M+1) x (M+1) matrix in the orthonormal cosine basis."""
    M = p.n_basis
    k = np.arange(M + 1)
    norms = np.where(k == 0, 1.0, np.sqrt(2.0))

    def integrand(x, w):
        phi = norms[None, :] * np.cos(np.pi * np.multiply.outer(x, k))
        return phi.T @ ((w * p.q.values(x))[:, None] * phi)

    atol = 1e-15 * max(p.q.sup_norm_bound(), 1.0)
    coupling = integrate_doubling(integrand, rtol=1e-10, atol=atol)
    coupling = 0.5 * (coupling + coupling.T)
    H = coupling.copy()
    H[np.diag_indices_from(H)] += (np.pi * k) ** 2
    return H


def neumann_spectrum(p, count):
    """The ``count`` smallest eigenvalues of the truncated Neumann problem."""
    count = _check_count(count, p.dim)
    return hermitian_eigen(assemble_neumann(p)).values[:count]
