"""Spectra of the Hill operator and checks of Ambarzumyan-type uniqueness theorems."""

from .ambarzumyan import (
    Branch,
    Theorem,
    TheoremVerdict,
    check_classic,
    check_neumann,
    check_quasi1,
    check_quasi2,
    check_yurko,
    rayleigh_quotient,
    run_check,
)
from .eigensolver import EigenDecomposition, hermitian_eigen, sturm_bisection_oracle
from .estimators import BandFunction, NeumannSpectrum, QuasiPeriodicSpectrum, TheoremChecker
from .galerkin import (
    NeumannProblem,
    QuasiPeriodicProblem,
    assemble_neumann,
    assemble_quasiperiodic,
    neumann_spectrum,
    quasiperiodic_spectrum,
)
from .monodromy import (
    discriminant,
    fundamental_solutions,
    neumann_eigen_oracle,
    neumann_shoot,
    quasiperiodic_eigen_oracle,
)
from .potential import Form, Potential, load_potential, weighted_mean_antiperiodic
from .presets import PRESETS, load_preset
from .spectral import (
    LabeledSpectrum,
    Method,
    asymptotic_residuals,
    band_function,
    label_spectrum,
    labeled_spectrum,
)

__version__ = "0.1.0"
