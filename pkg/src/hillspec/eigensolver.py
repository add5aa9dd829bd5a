"""Dense Hermitian eigensolver and a Sturm-sequence bisection oracle.

``hermitian_eigen`` reduces the matrix to a real symmetric tridiagonal by
Householder reflections plus a diagonal phase, then diagonalises that with
the implicit-shift QL iteration. ``sturm_bisection_oracle`` locates single
eigenvalues of a real symmetric tridiagonal by counting sign changes of the
LDL^T pivots; it shares no code with the QL path and is used to test it.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._jit import njit
from ._validation import DomainError, InvalidMatrixError, check_square

__all__ = [
    "EigenDecomposition",
    "hermitian_eigen",
    "tridiagonalize",
    "tridiagonal_eigen",
    "sturm_count",
    "sturm_bisection_oracle",
]

_EPS = np.finfo(float).eps
_SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray = None

    def __iter__(self):
        # allows ``w, v = hermitian_eigen(H, True)``
        return iter((self.values, self.vectors))


def _check_hermitian(H):
    H = check_square(H).astype(complex)
    scale = float(np.max(np.abs(H)))
    asym = float(np.max(np.abs(H - H.conj().T)))
    if asym > _SYMMETRY_RTOL * max(scale, np.finfo(float).tiny):
        raise InvalidMatrixError(f"matrix is not Hermitian (max |H - H^H| = {asym:.3e})")
    return 0.5 * (H + H.conj().T)


def tridiagonalize(H, want_transform=False):
    """Unitary reduction of a Hermitian matrix to real symmetric tridiagonal form.

    Returns ``(diag, offdiag, U)`` with ``U^H H U = T``; ``U`` is None unless
    requested.
    """
    A = _check_hermitian(H)
    n = A.shape[0]
    Q = np.eye(n, dtype=complex) if want_transform else None
    for k in range(n - 2):
        x = A[k + 1 :, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        xnorm = math.hypot(abs(x[0]), tail)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * xnorm
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        B = A[k + 1 :, k + 1 :]
        p = B @ v
        w = p - np.vdot(v, p).real * v
        B -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
        A[k + 1 :, k] = 0.0
        A[k + 1, k] = alpha
        A[k, k + 1 :] = 0.0
        A[k, k + 1] = np.conj(alpha)
        if Q is not None:
            Qs = Q[:, k + 1 :]
            Qs -= 2.0 * np.outer(Qs @ v, v.conj())

    diag = A.diagonal().real.copy()
    sub = A.diagonal(-1).copy()
    offdiag = np.abs(sub)
    U = None
    if want_transform:
        phases = np.ones(n, dtype=complex)
        for k in range(n - 1):
            phases[k + 1] = phases[k] * (sub[k] / offdiag[k] if offdiag[k] != 0 else 1.0)
        U = Q * phases[None, :]
    return diag, offdiag, U


@njit(cache=True)
def _ql_implicit(d, e, z):
    """In-place implicit QL with Wilkinson-type shift (rows of z are rotated too).

    ``e`` has length n with e[n-1] unused. Returns False if an eigenvalue
    failed to converge.
    """
    n = d.shape[0]
    eps = 2.220446049250313e-16
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > 60:
                return False
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(z.shape[0]):
                    f = z[k, i + 1]
                    z[k, i + 1] = s * z[k, i] + c * f
                    z[k, i] = c * z[k, i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return True


def tridiagonal_eigen(diag, offdiag, want_vectors=False):
    """Eigen-decomposition of a real symmetric tridiagonal matrix by implicit QL."""
    d = np.array(diag, dtype=float)
    n = d.size
    off = np.asarray(offdiag, dtype=float)
    if off.size != max(n - 1, 0):
        raise DomainError("offdiag must have length len(diag) - 1")
    e = np.zeros(n)
    e[: n - 1] = off
    z = np.eye(n) if want_vectors else np.zeros((0, n))
    if not _ql_implicit(d, e, z):
        raise ArithmeticError("implicit QL iteration did not converge")
    order = np.argsort(d, kind="stable")
    if want_vectors:
        return d[order], z[:, order]
    return d[order], None


def hermitian_eigen(H, want_vectors=False):
    """All eigenvalues of a Hermitian matrix in ascending order.

    Eigenvectors (columns, unit norm) are returned only when ``want_vectors``
    is set; degenerate subspaces get whatever basis the iteration produces.
    """
    diag, offdiag, U = tridiagonalize(H, want_transform=want_vectors)
    values, Z = tridiagonal_eigen(diag, offdiag, want_vectors=want_vectors)
    if not want_vectors:
        return EigenDecomposition(values)
    return EigenDecomposition(values, U @ Z)


def sturm_count(diag, offdiag, x):
    """Number of eigenvalues of the tridiagonal matrix strictly below ``x``."""
    count = 0
    pivot = 1.0
    tiny = np.finfo(float).tiny
    prev_e2 = 0.0
    for i, d in enumerate(diag):
        pivot = d - x - (prev_e2 / pivot if i else 0.0)
        if pivot == 0.0:
            pivot = -tiny
        if pivot < 0.0:
            count += 1
        if i < len(offdiag):
            prev_e2 = offdiag[i] * offdiag[i]
    return count


def sturm_bisection_oracle(diag, offdiag, index):
    """The ``index``-th smallest eigenvalue (0-based) by Sturm-count bisection."""
    diag = [float(v) for v in diag]
    offdiag = [float(v) for v in offdiag]
    n = len(diag)
    if len(offdiag) != n - 1:
        raise DomainError("offdiag must have length len(diag) - 1")
    if not 0 <= index < n:
        raise DomainError(f"index {index} out of range for dimension {n}")
    radius = [
        (abs(offdiag[i - 1]) if i > 0 else 0.0) + (abs(offdiag[i]) if i < n - 1 else 0.0)
        for i in range(n)
    ]
    lo = min(d - r for d, r in zip(diag, radius))
    hi = max(d + r for d, r in zip(diag, radius))
    norm = max(abs(lo), abs(hi))
    tol = 1e-12 * max(1.0, norm)
    lo -= tol
    hi += tol
    # run well past the contract tolerance so exact cases come out exact
    while hi - lo > 1e-3 * tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if sturm_count(diag, offdiag, mid) > index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
