"""Checkers for the hypotheses of Ambarzumyan-type uniqueness theorems.

Each checker turns an exact (in)equality on spectral data into a signed
margin: non-negative slack means the hypothesis holds, and a verdict is
positive when ``margin >= -tol``. Equalities are scored as ``-|difference|``.
When a hypothesis holds, ``implied_constant`` is the constant the theorem
asserts q equals almost everywhere.
"""

import enum
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from ._validation import (
    TWO_PI,
    DomainError,
    band_bottom_free,
    check_floquet_parameter,
    check_tolerance,
    lower_branch,
)
from .galerkin import DEFAULT_N_BASIS, NeumannProblem, neumann_spectrum
from .monodromy import neumann_eigen_oracle
from .potential import weighted_mean_antiperiodic
from .spectral import Method, compute_spectrum, count_for_levels, free_eigenvalue, labeled_spectrum

__all__ = [
    "Theorem",
    "Branch",
    "TheoremVerdict",
    "DEFAULT_TOL",
    "rayleigh_quotient",
    "check_quasi1",
    "check_quasi2",
    "check_neumann",
    "check_yurko",
    "check_classic",
    "inferred_mean",
    "run_check",
]

DEFAULT_TOL = 1e-6


class Theorem(enum.Enum):
    CLASSIC = "Classic"
    YURKO1 = "Yurko1"
    YURKO_PERIODIC = "YurkoPeriodic"
    YURKO_ANTIPERIODIC = "YurkoAntiperiodic"
    QUASI1A = "Quasi1a"
    QUASI1B = "Quasi1b"
    QUASI2A = "Quasi2a"
    QUASI2B = "Quasi2b"
    NEUMANN_A = "Neumann_a"
    NEUMANN_B = "Neumann_b"


class Branch(enum.Enum):
    LOW = "Low"
    HIGH = "High"


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: Theorem
    hypothesis_holds: bool
    margin: float
    implied_constant: float = None
    tolerance: float = DEFAULT_TOL

    def to_dict(self):
        out = asdict(self)
        out["theorem"] = self.theorem.value
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=False)


def _verdict(theorem, margin, constant, tol):
    margin = float(margin)
    holds = bool(margin >= -tol)
    return TheoremVerdict(theorem, holds, margin, float(constant) if holds else None, tol)


def rayleigh_quotient(q, t, branch=Branch.LOW):
    """Quotient of the plane wave exp(i s x) with s = t (Low) or s = t - 2 pi (High).

    For such a wave |y| = 1 and -conj(y) y'' = s^2, so the quotient is
    s^2 + mean(q).
    """
    branch = Branch(branch)
    t = float(t)
    s = t if branch is Branch.LOW else t - TWO_PI
    return s * s + q.mean()


def check_quasi1(lambda0, t, q_mean, tol=DEFAULT_TOL):
    """lambda_0(t) >= t^2 + mean on [0, pi), or >= (2 pi - t)^2 + mean on [pi, 2 pi)."""
    t = check_floquet_parameter(t)
    tol = check_tolerance(tol)
    theorem = Theorem.QUASI1A if lower_branch(t) else Theorem.QUASI1B
    return _verdict(theorem, lambda0 - (band_bottom_free(t) + q_mean), q_mean, tol)


def _tail_residuals(s, t, n0, n_max, side):
    ns = range(n0 + 1, n_max + 1)
    wanted = {"positive": (1,), "negative": (-1,), "either": (1, -1)}[side]
    missing = [sign * n for n in ns for sign in wanted if sign * n not in s]
    if side != "either" and missing:
        raise DomainError(f"spectrum lacks indices {missing[:5]}")
    residuals = {}
    for n in ns:
        options = [abs(s[sign * n] - free_eigenvalue(sign * n, t)) for sign in wanted if sign * n in s]
        if not options:
            raise DomainError(f"spectrum lacks both indices {n} and {-n}")
        # either sign suffices, so take the better match
        residuals[n] = min(options)
    return residuals


def check_quasi2(s, t, n0, n_max, tol=DEFAULT_TOL, side="positive"):
    """First eigenvalue above the free band bottom and lambda_n(t) = (2 pi n + t)^2 for n0 < n <= n_max.

    ``side="negative"`` uses lambda_{-n}(t) = (2 pi n - t)^2 instead;
    ``side="either"`` accepts whichever of the two matches for each n.
    """
    t = check_floquet_parameter(t)
    tol = check_tolerance(tol)
    if side not in ("positive", "negative", "either"):
        raise DomainError(f"side must be positive, negative or either, got {side!r}")
    if not 0 <= n0 < n_max:
        raise DomainError(f"need 0 <= n0 < n_max, got n0={n0}, n_max={n_max}")
    if not len(s):
        raise DomainError("empty spectrum")
    theorem = Theorem.QUASI2A if lower_branch(t) else Theorem.QUASI2B
    first_slack = s.first_eigenvalue - band_bottom_free(t)
    tail = _tail_residuals(s, t, n0, n_max, side)
    return _verdict(theorem, min(first_slack, -max(tail.values())), 0.0, tol)


def inferred_mean(s, n0, n_max):
    """Average tail offset lambda_n - (2 pi n + t)^2 over n0 < n <= n_max; estimates mean(q)."""
    ns = [n for n in range(n0 + 1, n_max + 1) if n in s]
    if not ns:
        raise DomainError("no tail indices present")
    return float(np.mean([s[n] - free_eigenvalue(n, s.t) for n in ns]))


def check_neumann(lambda0, q_mean=None, tail=None, n0=0, tol=DEFAULT_TOL, variant="a"):
    """Variant a: lambda_0 >= mean. Variant b: lambda_0 >= 0 and lambda_n = (n pi)^2 for n > n0."""
    tol = check_tolerance(tol)
    if variant == "a":
        if q_mean is None:
            raise DomainError("variant a needs the potential mean")
        return _verdict(Theorem.NEUMANN_A, lambda0 - q_mean, q_mean, tol)
    if variant != "b":
        raise DomainError(f"variant must be 'a' or 'b', got {variant!r}")
    if not tail:
        raise DomainError("variant b needs a non-empty tail of eigenvalues")
    early = [n for n in tail if n <= n0]
    if early:
        raise DomainError(f"tail indices must exceed n0={n0}, got {sorted(early)[:5]}")
    worst = max(abs(lam - (n * math.pi) ** 2) for n, lam in tail.items())
    return _verdict(Theorem.NEUMANN_B, min(lambda0, -worst), 0.0, tol)


def check_yurko(lambda0, q, problem="periodic", alpha=1.0, beta=0.0, tol=DEFAULT_TOL):
    """Equality hypotheses on the first eigenvalue.

    ``problem`` is "neumann" (lambda_0 = mean), "periodic" (lambda_0(0) = mean) or
    "antiperiodic" (lambda_0(pi) = pi^2 + weighted mean for weights alpha, beta).
    """
    tol = check_tolerance(tol)
    if problem == "antiperiodic":
        constant = weighted_mean_antiperiodic(q, alpha, beta)
        target = math.pi**2 + constant
        theorem = Theorem.YURKO_ANTIPERIODIC
    elif problem in ("periodic", "neumann"):
        constant = q.mean()
        target = constant
        theorem = Theorem.YURKO_PERIODIC if problem == "periodic" else Theorem.YURKO1
    else:
        raise DomainError(f"unknown problem {problem!r}")
    return _verdict(theorem, -abs(lambda0 - target), constant, tol)


def check_classic(spectrum, tol=DEFAULT_TOL):
    """The whole listed Neumann spectrum equals (n pi)^2, n = 0..n_max."""
    tol = check_tolerance(tol)
    if not spectrum:
        raise DomainError("spectrum must not be empty")
    if 0 not in spectrum:
        raise DomainError("spectrum must be indexed from 0")
    worst = max(abs(lam - (n * math.pi) ** 2) for n, lam in spectrum.items())
    return _verdict(Theorem.CLASSIC, -worst, 0.0, tol)


# -- end-to-end checks from a potential ----------------------------------------


def _neumann_eigs(q, count, method, n_basis):
    if Method(method) is Method.GALERKIN:
        return neumann_spectrum(NeumannProblem(q, max(n_basis, count)), count)
    return neumann_eigen_oracle(q, count)


def run_check(
    q,
    theorem,
    t=None,
    method=Method.GALERKIN,
    n0=5,
    n_max=20,
    alpha=1.0,
    beta=0.0,
    tol=DEFAULT_TOL,
    n_basis=DEFAULT_N_BASIS,
    side="positive",
):
    """Compute the spectral data a theorem needs from ``q`` and run its checker.

    For the quasi-periodic theorems the a/b variant follows from ``t``; the
    periodic and anti-periodic checks fix t = 0 and t = pi. Galerkin bases
    grow as needed to keep the requested levels in the converged range.
    """
    theorem = Theorem(theorem)
    method = Method(method)
    if theorem in (Theorem.QUASI1A, Theorem.QUASI1B, Theorem.QUASI2A, Theorem.QUASI2B):
        if t is None:
            raise DomainError(f"{theorem.value} needs a Floquet parameter t")
        t = check_floquet_parameter(t)
        wants_low = theorem in (Theorem.QUASI1A, Theorem.QUASI2A)
        if wants_low != lower_branch(t):
            raise DomainError(f"{theorem.value} applies to t in {'[0, pi)' if wants_low else '[pi, 2 pi)'}")
    if theorem in (Theorem.QUASI1A, Theorem.QUASI1B):
        lam0 = compute_spectrum(q, t, 1, method, n_basis)[0]
        return check_quasi1(lam0, t, q.mean(), tol)
    if theorem in (Theorem.QUASI2A, Theorem.QUASI2B):
        count = count_for_levels(n_max)
        spec = labeled_spectrum(q, t, count, method, max(n_basis, count))
        return check_quasi2(spec, t, n0, n_max, tol, side)
    if theorem is Theorem.YURKO_PERIODIC:
        lam0 = compute_spectrum(q, 0.0, 1, method, n_basis)[0]
        return check_yurko(lam0, q, "periodic", tol=tol)
    if theorem is Theorem.YURKO_ANTIPERIODIC:
        lam0 = compute_spectrum(q, math.pi, 1, method, n_basis)[0]
        return check_yurko(lam0, q, "antiperiodic", alpha, beta, tol)
    if theorem is Theorem.YURKO1:
        return check_yurko(_neumann_eigs(q, 1, method, n_basis)[0], q, "neumann", tol=tol)
    if theorem is Theorem.NEUMANN_A:
        lam0 = _neumann_eigs(q, 1, method, n_basis)[0]
        return check_neumann(lam0, q.mean(), tol=tol, variant="a")
    if theorem is Theorem.NEUMANN_B:
        eigs = _neumann_eigs(q, n_max + 1, method, n_basis)
        tail = {n: float(eigs[n]) for n in range(n0 + 1, n_max + 1)}
        return check_neumann(float(eigs[0]), tail=tail, n0=n0, tol=tol, variant="b")
    eigs = _neumann_eigs(q, n_max + 1, method, n_basis)
    return check_classic({n: float(v) for n, v in enumerate(eigs)}, tol)
