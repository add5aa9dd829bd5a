"""scikit-learn compatible wrappers around the spectral solvers and theorem checkers.

The wrappers learn nothing in ``fit``; it validates hyper-parameters and
records input metadata, as stateless scikit-learn transformers do. Data
flows through ``transform``/``predict``:

* :class:`QuasiPeriodicSpectrum` and :class:`NeumannSpectrum` map a batch of
  potentials to their lowest eigenvalues,
* :class:`BandFunction` maps Floquet parameters t to lambda_n(t),
* :class:`TheoremChecker` scores potentials against one theorem's hypothesis.

A batch of potentials is either a sequence (``Potential`` objects, preset
names, potential dicts) or a 2-D array whose rows are grid samples.
"""

import numbers

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import DomainError, check_floquet_parameter, check_positive_int, check_tolerance
from .ambarzumyan import DEFAULT_TOL, Theorem, run_check
from .galerkin import DEFAULT_N_BASIS
from .potential import Potential, potential_from_dict
from .presets import PRESET_PREFIX, load_preset
from .spectral import Method, compute_spectrum, labeled_spectrum, count_for_levels
from . import galerkin, monodromy

__all__ = [
    "check_potential",
    "check_potentials",
    "check_t_values",
    "QuasiPeriodicSpectrum",
    "NeumannSpectrum",
    "BandFunction",
    "TheoremChecker",
]


def check_potential(q):
    """Coerce one potential-like value to a :class:`Potential`."""
    if isinstance(q, Potential):
        return q
    if isinstance(q, str):
        return load_preset(q[len(PRESET_PREFIX) :] if q.startswith(PRESET_PREFIX) else q)
    if isinstance(q, dict):
        return potential_from_dict(q)
    if isinstance(q, numbers.Real):
        return Potential.constant(q)
    samples = np.asarray(q, dtype=float)
    if samples.ndim == 1:
        return Potential.from_samples(samples)
    raise DomainError(f"cannot interpret {type(q).__name__} as a potential")


def check_potentials(X):
    """Coerce a batch to a list of potentials; 2-D numeric arrays are rows of samples."""
    if isinstance(X, np.ndarray) and X.dtype != object:
        X = check_array(X, dtype=float)
        return [Potential.from_samples(row) for row in X]
    if isinstance(X, (Potential, str, dict)):
        raise DomainError("expected a batch of potentials; wrap a single potential in a list")
    out = [check_potential(q) for q in X]
    if not out:
        raise DomainError("empty batch of potentials")
    return out


def check_t_values(T):
    """Floquet parameters from a 1-D sequence or an (n, 1) array."""
    arr = np.asarray(T, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    arr = check_array(arr, dtype=float)
    if arr.shape[1] != 1:
        raise DomainError(f"expected a single column of t values, got shape {arr.shape}")
    return np.array([check_floquet_parameter(float(t)) for t in arr[:, 0]])


def _check_method(method):
    try:
        return Method(method)
    except ValueError:
        raise DomainError(f"method must be one of {[m.value for m in Method]}, got {method!r}") from None


class QuasiPeriodicSpectrum(TransformerMixin, BaseEstimator):
    """Lowest ``n_eigenvalues`` eigenvalues of L_t(q) for each potential in a batch."""

    def __init__(self, t=0.0, n_eigenvalues=21, method="galerkin", n_basis=DEFAULT_N_BASIS):
        self.t = t
        self.n_eigenvalues = n_eigenvalues
        self.method = method
        self.n_basis = n_basis

    def _validate(self):
        self.t_ = check_floquet_parameter(self.t)
        self.method_ = _check_method(self.method)
        check_positive_int(self.n_eigenvalues, "n_eigenvalues")
        check_positive_int(self.n_basis, "n_basis")

    def fit(self, X=None, y=None):
        self._validate()
        if X is not None:
            self.n_samples_fit_ = len(check_potentials(X))
        return self

    def transform(self, X):
        check_is_fitted(self, "t_")
        qs = check_potentials(X)
        return np.vstack(
            [compute_spectrum(q, self.t_, self.n_eigenvalues, self.method_, self.n_basis) for q in qs]
        )

    def label(self, q):
        """Labeled spectrum of a single potential."""
        check_is_fitted(self, "t_")
        return labeled_spectrum(check_potential(q), self.t_, self.n_eigenvalues, self.method_, self.n_basis)


class NeumannSpectrum(TransformerMixin, BaseEstimator):
    """Lowest eigenvalues of -y'' + q y with y'(0) = y'(1) = 0 for each potential."""

    def __init__(self, n_eigenvalues=21, method="galerkin", n_basis=DEFAULT_N_BASIS):
        self.n_eigenvalues = n_eigenvalues
        self.method = method
        self.n_basis = n_basis

    def fit(self, X=None, y=None):
        self.method_ = _check_method(self.method)
        check_positive_int(self.n_eigenvalues, "n_eigenvalues")
        check_positive_int(self.n_basis, "n_basis")
        return self

    def transform(self, X):
        check_is_fitted(self, "method_")
        rows = []
        for q in check_potentials(X):
            if self.method_ is Method.GALERKIN:
                p = galerkin.NeumannProblem(q, max(self.n_basis, self.n_eigenvalues))
                rows.append(galerkin.neumann_spectrum(p, self.n_eigenvalues))
            else:
                rows.append(monodromy.neumann_eigen_oracle(q, self.n_eigenvalues))
        return np.vstack(rows)


class BandFunction(TransformerMixin, BaseEstimator):
    """Map Floquet parameters t to the band energies lambda_n(t), one column per level."""

    def __init__(self, potential="zero", levels=(-2, -1, 0, 1, 2), method="galerkin", n_basis=DEFAULT_N_BASIS):
        self.potential = potential
        self.levels = levels
        self.method = method
        self.n_basis = n_basis

    def fit(self, X=None, y=None):
        self.potential_ = check_potential(self.potential)
        self.levels_ = np.array([int(n) for n in self.levels])
        if self.levels_.size == 0:
            raise DomainError("levels must not be empty")
        self.method_ = _check_method(self.method)
        self.q_mean_ = self.potential_.mean()
        self.n_features_in_ = 1
        if X is not None:
            check_t_values(X)
        return self

    def transform(self, X):
        check_is_fitted(self, "potential_")
        ts = check_t_values(X)
        count = count_for_levels(int(np.abs(self.levels_).max()))
        n_basis = max(self.n_basis, count)
        out = np.empty((ts.size, self.levels_.size))
        for i, t in enumerate(ts):
            spec = labeled_spectrum(self.potential_, t, count, self.method_, n_basis)
            out[i] = [spec[int(n)] for n in self.levels_]
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "levels_")
        return np.array([f"lambda_{n}" for n in self.levels_], dtype=object)


class TheoremChecker(BaseEstimator):
    """Score potentials against one theorem's hypothesis.

    ``decision_function`` returns the signed margin, ``predict`` whether the
    hypothesis holds within ``tol``, and ``verdicts`` the full records.
    """

    def __init__(
        self,
        theorem="Quasi1a",
        t=None,
        method="galerkin",
        n0=5,
        n_max=20,
        alpha=1.0,
        beta=0.0,
        tol=DEFAULT_TOL,
        n_basis=DEFAULT_N_BASIS,
    ):
        self.theorem = theorem
        self.t = t
        self.method = method
        self.n0 = n0
        self.n_max = n_max
        self.alpha = alpha
        self.beta = beta
        self.tol = tol
        self.n_basis = n_basis

    def fit(self, X=None, y=None):
        self.theorem_ = Theorem(self.theorem)
        self.method_ = _check_method(self.method)
        self.tol_ = check_tolerance(self.tol)
        return self

    def verdicts(self, X):
        check_is_fitted(self, "theorem_")
        return [
            run_check(
                q,
                self.theorem_,
                t=self.t,
                method=self.method_,
                n0=self.n0,
                n_max=self.n_max,
                alpha=self.alpha,
                beta=self.beta,
                tol=self.tol_,
                n_basis=self.n_basis,
            )
            for q in check_potentials(X)
        ]

    def decision_function(self, X):
        return np.array([v.margin for v in self.verdicts(X)])

    def predict(self, X):
        return np.array([v.hypothesis_holds for v in self.verdicts(X)])
