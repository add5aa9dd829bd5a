"""Integer labeling of quasi-periodic spectra, band sweeps and asymptotic residuals."""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import (
    TWO_PI,
    DomainError,
    check_ascending,
    check_floquet_parameter,
    check_positive_int,
)
from .galerkin import DEFAULT_N_BASIS, QuasiPeriodicProblem, quasiperiodic_spectrum
from .monodromy import quasiperiodic_eigen_oracle

__all__ = [
    "Method",
    "LabeledSpectrum",
    "AsymptoticsReport",
    "free_eigenvalue",
    "label_spectrum",
    "compute_spectrum",
    "labeled_spectrum",
    "band_function",
    "asymptotic_residuals",
]

_TIE_RTOL = 1e-12


class Method(enum.Enum):
    GALERKIN = "galerkin"
    MONODROMY = "monodromy"


def free_eigenvalue(n, t):
    """(2 pi n + t)^2, the eigenvalue of exp(i(2 pi n + t)x) for q = 0."""
    return (TWO_PI * n + t) ** 2


@dataclass(frozen=True)
class LabeledSpectrum:
    """Eigenvalues lambda_n(t) keyed by the integer index n."""

    t: float
    entries: dict
    method: Method = Method.GALERKIN

    @property
    def indices(self):
        return sorted(self.entries)

    @property
    def first_eigenvalue(self):
        """Smallest eigenvalue; labeled 0 for t <= pi and -1 for t > pi."""
        return min(self.entries.values())

    def __getitem__(self, n):
        return self.entries[n]

    def __contains__(self, n):
        return n in self.entries

    def __len__(self):
        return len(self.entries)

    def values(self):
        """Eigenvalues in ascending order."""
        return np.sort(np.fromiter(self.entries.values(), dtype=float, count=len(self.entries)))


@dataclass(frozen=True)
class AsymptoticsReport:
    t: float
    q_mean: float
    residuals: dict
    bound_constants: dict
    n0: int
    max_constant: float
    lambdas: dict = field(default_factory=dict, repr=False)

    def rows(self):
        """(n, lambda, target, residual, normalized_constant) sorted by n."""
        out = []
        for n in sorted(self.residuals):
            lam = self.lambdas.get(n, math.nan)
            out.append(
                (
                    n,
                    lam,
                    free_eigenvalue(n, self.t) + self.q_mean,
                    self.residuals[n],
                    self.bound_constants.get(n, math.nan),
                )
            )
        return out


def _target_order(t, window):
    """Indices n in [-window, window] sorted by (2 pi n + t)^2 with the tie rule applied."""
    n = np.arange(-window, window + 1)
    vals = free_eigenvalue(n, t)
    order = list(np.argsort(vals, kind="stable"))
    # near-equal targets (t = 0 or pi) rank by |n|, then negative n first
    i = 0
    while i < len(order) - 1:
        j = i + 1
        while j < len(order) and vals[order[j]] - vals[order[i]] <= _TIE_RTOL * max(vals[order[i]], 1.0):
            j += 1
        if j - i > 1:
            order[i:j] = sorted(order[i:j], key=lambda k: (abs(n[k]), n[k]))
        i = j
    return n[order]


def label_spectrum(eigs, t, q_mean, method=Method.GALERKIN, window=None):
    """Attach integer labels to an ascending eigenvalue list.

    The k-th smallest eigenvalue is given the index of the k-th smallest
    target (2 pi n + t)^2 + q_mean, so the labeling is a bijection that
    preserves order. ``window`` bounds |n| of admissible targets.
    """
    eigs = check_ascending(eigs)
    t = check_floquet_parameter(t)
    if window is None:
        window = eigs.size
    window = check_positive_int(window, "window", minimum=0)
    if eigs.size > 2 * window + 1:
        raise DomainError(
            f"{eigs.size} eigenvalues but only {2 * window + 1} targets with |n| <= {window}"
        )
    labels = _target_order(t, window)[: eigs.size]
    entries = {int(n): float(lam) for n, lam in zip(labels, eigs)}
    return LabeledSpectrum(t, entries, Method(method))


def _monodromy_ceiling(q, t, count):
    # ordered eigenvalues move by at most sup|q| from the free ones
    free = np.sort(free_eigenvalue(np.arange(-count, count + 1), t))
    return float(free[count - 1]) + q.sup_norm_bound() + 1.0


def compute_spectrum(q, t, count, method=Method.GALERKIN, n_basis=DEFAULT_N_BASIS):
    """The ``count`` smallest eigenvalues of the quasi-periodic problem by either method."""
    method = Method(method)
    count = check_positive_int(count, "count")
    if method is Method.GALERKIN:
        return quasiperiodic_spectrum(QuasiPeriodicProblem(q, t, n_basis), count)
    roots = quasiperiodic_eigen_oracle(q, t, _monodromy_ceiling(q, t, count))
    if roots.size < count:
        raise ArithmeticError(f"oracle found {roots.size} eigenvalues, expected {count}")
    return roots[:count]


def labeled_spectrum(q, t, count, method=Method.GALERKIN, n_basis=DEFAULT_N_BASIS):
    eigs = compute_spectrum(q, t, count, method, n_basis)
    return label_spectrum(eigs, t, q.mean(), method)


def count_for_levels(max_abs_n):
    """Eigenvalue count guaranteeing every |n| <= max_abs_n is labeled."""
    return 2 * max_abs_n + 2


def band_function(q, t_grid, levels, method=Method.GALERKIN, n_basis=DEFAULT_N_BASIS):
    """Rows (t, n, lambda_n(t)) over ``t_grid`` for the indices in ``levels``."""
    levels = [int(n) for n in levels]
    if not levels:
        raise DomainError("levels must not be empty")
    count = count_for_levels(max(abs(n) for n in levels))
    n_basis = max(n_basis, count)
    rows = []
    for t in t_grid:
        spec = labeled_spectrum(q, t, count, method, n_basis)
        for n in levels:
            rows.append((spec.t, n, spec[n]))
    return rows


def asymptotic_residuals(s, q_mean, n0=2):
    """Residuals lambda_n - (2 pi n + t)^2 - q_mean and their n/ln n normalisation."""
    residuals = {n: lam - free_eigenvalue(n, s.t) - q_mean for n, lam in s.entries.items()}
    constants = {
        n: abs(r) * abs(n) / math.log(abs(n)) for n, r in residuals.items() if abs(n) >= 2
    }
    floor = max(2, int(n0))
    tail = [c for n, c in constants.items() if abs(n) >= floor]
    if not tail:
        raise DomainError(f"no labeled indices with |n| >= {floor}")
    return AsymptoticsReport(
        t=s.t,
        q_mean=float(q_mean),
        residuals=residuals,
        bound_constants=constants,
        n0=int(n0),
        max_constant=max(tail),
        lambdas=dict(s.entries),
    )
