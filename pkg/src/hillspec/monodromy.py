"""Fundamental system, monodromy matrix and Floquet discriminant.

Integrates u' = v, v' = (q(x) - lambda) u over one period from the initial
data (1, 0) and (0, 1) with classical fixed-step RK4, giving c(1), c'(1),
s(1), s'(1). Eigenvalues of the quasi-periodic problem are the roots of
D(lambda) - 2 cos t with D = c(1) + s'(1); Neumann eigenvalues are the roots
of c'(1, lambda). These root finders are an oracle independent of the
Galerkin matrices.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._jit import njit
from ._validation import (
    DomainError,
    IntegrationOverflowError,
    SeparationWarning,
    check_floquet_parameter,
    check_positive_int,
)

__all__ = [
    "MonodromyMatrix",
    "DiscriminantSample",
    "step_count",
    "fundamental_solutions",
    "discriminant",
    "quasiperiodic_eigen_oracle",
    "neumann_shoot",
    "neumann_eigen_oracle",
]

MIN_STEPS = 2048
STEP_BUCKET = 1024
GRID_STEP = 0.25 * min(1.0, math.pi**2)
ROOT_TOL = 1e-10
DOUBLE_ROOT_TOL = 1e-8
# |f| at a refined extremum below this is integration noise, not a resolved split
SPLIT_FLOOR = 1e-20
_CHUNK = 256


@dataclass(frozen=True)
class MonodromyMatrix:
    c1: float
    s1: float
    c1p: float
    s1p: float
    lam: float

    @property
    def det(self):
        return self.c1 * self.s1p - self.s1 * self.c1p

    @property
    def trace(self):
        return self.c1 + self.s1p

    def as_array(self):
        return np.array([[self.c1, self.s1], [self.c1p, self.s1p]])


@dataclass(frozen=True)
class DiscriminantSample:
    lam: float
    d: float


def step_count(lam):
    """RK4 steps for [0, 1]: at least 40*64 steps per local wavelength, rounded up to a bucket."""
    n = max(MIN_STEPS, math.ceil(40.0 * math.sqrt(max(lam, 1.0)) / (2.0 * math.pi) * 64))
    return -(-n // STEP_BUCKET) * STEP_BUCKET


@lru_cache(maxsize=256)
def _q_table(q, n_steps):
    # q at every half step x = j h / 2, j = 0..2n
    x = np.arange(2 * n_steps + 1) / (2.0 * n_steps)
    table = q.values(x)
    table.flags.writeable = False
    return table


@njit(cache=True)
def _integrate(qtab, n_steps, lams, out, with_derivative):
    h = 1.0 / n_steps
    h2 = 0.5 * h
    h6 = h / 6.0
    for idx in range(lams.shape[0]):
        lam = lams[idx]
        # columns: c (1, 0) and s (0, 1); d* are lambda-derivatives
        cu, cv, su, sv = 1.0, 0.0, 0.0, 1.0
        dcu, dcv, dsu, dsv = 0.0, 0.0, 0.0, 0.0
        for j in range(n_steps):
            a0 = qtab[2 * j] - lam
            am = qtab[2 * j + 1] - lam
            a1 = qtab[2 * j + 2] - lam

            k1u = cv
            k1v = a0 * cu
            k2u = cv + h2 * k1v
            k2v = am * (cu + h2 * k1u)
            k3u = cv + h2 * k2v
            k3v = am * (cu + h2 * k2u)
            k4u = cv + h * k3v
            k4v = a1 * (cu + h * k3u)
            if with_derivative:
                # variational system: du' = dv, dv' = a du - u
                l1u = dcv
                l1v = a0 * dcu - cu
                l2u = dcv + h2 * l1v
                l2v = am * (dcu + h2 * l1u) - (cu + h2 * k1u)
                l3u = dcv + h2 * l2v
                l3v = am * (dcu + h2 * l2u) - (cu + h2 * k2u)
                l4u = dcv + h * l3v
                l4v = a1 * (dcu + h * l3u) - (cu + h * k3u)
                dcu += h6 * (l1u + 2.0 * l2u + 2.0 * l3u + l4u)
                dcv += h6 * (l1v + 2.0 * l2v + 2.0 * l3v + l4v)
            cu += h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            cv += h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)

            k1u = sv
            k1v = a0 * su
            k2u = sv + h2 * k1v
            k2v = am * (su + h2 * k1u)
            k3u = sv + h2 * k2v
            k3v = am * (su + h2 * k2u)
            k4u = sv + h * k3v
            k4v = a1 * (su + h * k3u)
            if with_derivative:
                l1u = dsv
                l1v = a0 * dsu - su
                l2u = dsv + h2 * l1v
                l2v = am * (dsu + h2 * l1u) - (su + h2 * k1u)
                l3u = dsv + h2 * l2v
                l3v = am * (dsu + h2 * l2u) - (su + h2 * k2u)
                l4u = dsv + h * l3v
                l4v = a1 * (dsu + h * l3u) - (su + h * k3u)
                dsu += h6 * (l1u + 2.0 * l2u + 2.0 * l3u + l4u)
                dsv += h6 * (l1v + 2.0 * l2v + 2.0 * l3v + l4v)
            su += h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            sv += h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        out[idx, 0] = cu
        out[idx, 1] = su
        out[idx, 2] = cv
        out[idx, 3] = sv
        out[idx, 4] = dcu
        out[idx, 5] = dsu
        out[idx, 6] = dcv
        out[idx, 7] = dsv


def _monodromy_batch(q, lams, with_derivative=False, n_steps=None):
    """Rows (c1, s1, c1', s1', and their lambda-derivatives) for each lambda.

    Each lambda is integrated with its own step count, so a value never
    depends on which other lambdas share the batch.
    """
    lams = np.ascontiguousarray(lams, dtype=float).ravel()
    out = np.zeros((lams.size, 8))
    steps = np.array([n_steps or step_count(lam) for lam in lams], dtype=np.int64)
    for n in np.unique(steps):
        sel = np.flatnonzero(steps == n)
        block = np.zeros((sel.size, 8))
        _integrate(_q_table(q, int(n)), int(n), lams[sel], block, with_derivative)
        out[sel] = block
    if not np.all(np.isfinite(out)):
        bad = lams[~np.all(np.isfinite(out), axis=1)]
        raise IntegrationOverflowError(f"non-finite fundamental solutions at lambda={bad[:3]}")
    return out


def fundamental_solutions(q, lam, n_steps=None):
    """Monodromy matrix [[c(1), s(1)], [c'(1), s'(1)]] at spectral parameter ``lam``."""
    if n_steps is not None:
        n_steps = check_positive_int(n_steps, "n_steps")
    row = _monodromy_batch(q, [float(lam)], n_steps=n_steps)[0]
    return MonodromyMatrix(row[0], row[1], row[2], row[3], float(lam))


def discriminant(q, lam, n_steps=None):
    m = fundamental_solutions(q, lam, n_steps=n_steps)
    return DiscriminantSample(float(lam), m.trace)


def neumann_shoot(q, lam):
    """y'(1) for the solution with y(0) = 1, y'(0) = 0."""
    return fundamental_solutions(q, lam).c1p


# -- root finding -------------------------------------------------------------


def _scan_start(q):
    return q.mean() - q.sup_norm_bound() - 1.0


@lru_cache(maxsize=4096)
def _scan_chunk(q, start, chunk):
    lams = start + GRID_STEP * (chunk * _CHUNK + np.arange(_CHUNK))
    rows = _monodromy_batch(q, lams)
    rows.flags.writeable = False
    return lams, rows


def _scan(q, start, lam_max):
    """Grid samples of the monodromy entries from ``start`` through ``lam_max``."""
    n_chunks = int((lam_max - start) / (GRID_STEP * _CHUNK)) + 1
    parts = [_scan_chunk(q, start, c) for c in range(n_chunks)]
    lams = np.concatenate([p[0] for p in parts])
    rows = np.concatenate([p[1] for p in parts])
    keep = np.searchsorted(lams, lam_max, side="right") + 1
    return lams[:keep], rows[:keep]


def _bisect(func, lo, hi, flo, tol=ROOT_TOL):
    """Vectorised bisection for sign changes; ``flo`` is func at ``lo``."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    flo = np.array(flo, dtype=float)
    if lo.size == 0:
        return lo
    while True:
        active = (hi - lo) > tol
        if not np.any(active):
            break
        mid = 0.5 * (lo + hi)
        fmid = np.zeros_like(mid)
        fmid[active] = func(mid[active])
        left = active & (np.sign(fmid) == np.sign(flo))
        right = active & ~left
        lo = np.where(left, mid, lo)
        flo = np.where(left, fmid, flo)
        hi = np.where(right, mid, hi)
    return 0.5 * (lo + hi)


def _sign_change_roots(lams, f, func):
    """Roots at exact grid zeros and inside sign-changing grid intervals."""
    exact = list(lams[:-1][f[:-1] == 0.0])
    idx = np.flatnonzero((f[:-1] * f[1:] < 0.0))
    return exact + list(_bisect(func, lams[idx], lams[idx + 1], f[idx]))


def _tangency_roots(q, lams, f, t):
    """Roots hidden at local extrema of f = D - 2 cos t that do not change sign on the grid.

    The extremum is located by bisection on D'(lambda). A sign flip at the
    extremum means two nearby simple roots; |f| under the double-root
    threshold means a double root, emitted twice.
    """
    if f.size < 3:
        return []
    mid = f[1:-1]
    same_sign = (np.sign(f[:-2]) == np.sign(mid)) & (np.sign(f[2:]) == np.sign(mid)) & (mid != 0)
    extremum = (mid - f[:-2]) * (f[2:] - mid) <= 0.0
    curvature = np.abs(f[:-2] - 2.0 * mid + f[2:])
    near_zero = np.abs(mid) < 1.0 + curvature
    cand = np.flatnonzero(same_sign & extremum & near_zero) + 1
    if cand.size == 0:
        return []

    def dprime(x):
        r = _monodromy_batch(q, x, with_derivative=True)
        return r[:, 4] + r[:, 7]

    lo = lams[cand - 1]
    hi = lams[cand + 1]
    dlo = dprime(lo)
    dhi = dprime(hi)
    bracketed = np.sign(dlo) != np.sign(dhi)
    if not np.all(bracketed):
        warnings.warn(
            f"scan grid too coarse near lambda={lams[cand[~bracketed]]}: "
            "several extrema of the discriminant share one grid cell",
            SeparationWarning,
            stacklevel=3,
        )
    cand, lo, hi, dlo = cand[bracketed], lo[bracketed], hi[bracketed], dlo[bracketed]
    star = _bisect(dprime, lo, hi, dlo, tol=1e-12 * max(1.0, float(np.max(np.abs(hi), initial=1.0))))
    func = _residual_func(q, t)
    fstar = func(star)

    roots = []
    split = (np.sign(fstar) != np.sign(f[cand])) & (np.abs(fstar) > SPLIT_FLOOR)
    double = ~split & (np.abs(fstar) < DOUBLE_ROOT_TOL)
    if np.any(split):
        roots += list(_bisect(func, lo[split], star[split], f[cand - 1][split]))
        roots += list(_bisect(func, star[split], hi[split], fstar[split]))
    for s in star[double]:
        roots += [s, s]
    return roots


def _floquet_residual(rows, t):
    """D(lambda) - 2 cos t, written to stay accurate where |D| is close to 2.

    With det M = 1, D^2 - 4 = (c1 - s1')^2 + 4 s1 c1', whose terms all vanish
    at a band edge instead of cancelling there, so
    D - 2 = (D^2 - 4) / (D + 2) and D + 2 = (D^2 - 4) / (D - 2).
    """
    c1, s1, c1p, s1p = rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3]
    d = c1 + s1p
    disc = (c1 - s1p) ** 2 + 4.0 * s1 * c1p
    up = d >= 0.0
    out = np.empty_like(d)
    out[up] = disc[up] / (d[up] + 2.0) + 4.0 * math.sin(0.5 * t) ** 2
    out[~up] = disc[~up] / (d[~up] - 2.0) - 4.0 * math.cos(0.5 * t) ** 2
    return out


def _residual_func(q, t):
    def func(x):
        return _floquet_residual(_monodromy_batch(q, x), t)

    return func


def quasiperiodic_eigen_oracle(q, t, lambda_max):
    """All eigenvalues of the quasi-periodic problem up to ``lambda_max``, ascending.

    Double eigenvalues (band edges touching at t = 0 or pi) appear twice.
    """
    t = check_floquet_parameter(t)
    lambda_max = float(lambda_max)
    if not lambda_max > q.mean() - q.sup_norm_bound():
        raise DomainError("lambda_max lies below the spectrum's lower bound")
    lams, rows = _scan(q, _scan_start(q), lambda_max)
    f = _floquet_residual(rows, t)
    roots = _sign_change_roots(lams, f, _residual_func(q, t))
    roots += _tangency_roots(q, lams, f, t)
    roots = np.sort(np.asarray(roots, dtype=float))
    return roots[roots <= lambda_max]


def neumann_eigen_oracle(q, count):
    """The ``count`` smallest Neumann eigenvalues as roots of c'(1, lambda)."""
    count = check_positive_int(count, "count")
    start = _scan_start(q)
    # (n pi)^2 + mean + bound comfortably covers the count-th eigenvalue
    lam_max = (count * math.pi) ** 2 + q.mean() + q.sup_norm_bound() + 1.0

    def func(x):
        return _monodromy_batch(q, x)[:, 2]

    while True:
        lams, rows = _scan(q, start, lam_max)
        roots = np.sort(np.asarray(_sign_change_roots(lams, rows[:, 2], func)))
        if roots.size >= count:
            return roots[:count]
        lam_max *= 2.0
