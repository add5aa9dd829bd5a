import math
import warnings

import numpy as np
import pytest

from hillspec import (
    Potential,
    discriminant,
    fundamental_solutions,
    load_preset,
    neumann_eigen_oracle,
    neumann_shoot,
    quasiperiodic_eigen_oracle,
)
from hillspec._validation import DomainError, SeparationWarning
from hillspec.monodromy import MIN_STEPS, STEP_BUCKET, step_count

ZERO = Potential.constant(0.0)
TWO_PI = 2 * math.pi


def free_roots(t, lam_max):
    n = np.arange(-30, 31)
    vals = np.sort((TWO_PI * n + t) ** 2)
    return vals[vals <= lam_max]


@pytest.mark.parametrize("lam", [0.3, 1.0, 10.0, 97.5, 480.0])
def test_free_fundamental_solutions(lam):
    m = fundamental_solutions(ZERO, lam)
    k = math.sqrt(lam)
    assert m.c1 == pytest.approx(math.cos(k), abs=1e-9)
    assert m.s1 == pytest.approx(math.sin(k) / k, abs=1e-9)
    assert m.c1p == pytest.approx(-k * math.sin(k), abs=1e-9 * max(1, k))
    assert m.s1p == pytest.approx(math.cos(k), abs=1e-9)


def test_free_negative_lambda():
    m = fundamental_solutions(ZERO, -4.0)
    assert m.c1 == pytest.approx(math.cosh(2.0), rel=1e-10)
    assert m.s1 == pytest.approx(math.sinh(2.0) / 2.0, rel=1e-10)


def test_free_at_pi_squared():
    m = fundamental_solutions(ZERO, math.pi**2)
    assert m.c1 == pytest.approx(-1.0, abs=1e-9)
    assert m.s1p == pytest.approx(-1.0, abs=1e-9)


def test_wronskian_cos1():
    assert fundamental_solutions(load_preset("cos1"), 10.0).det == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize(
    "lam, expected", [(0.0, 2.0), (math.pi**2, -2.0), ((math.pi / 2) ** 2, 0.0)]
)
def test_discriminant_examples(lam, expected):
    assert discriminant(ZERO, lam).d == pytest.approx(expected, abs=1e-9)


def test_free_discriminant_on_range():
    lams = np.linspace(0.0, 500.0, 41)
    worst = max(abs(discriminant(ZERO, lam).d - 2 * math.cos(math.sqrt(lam))) for lam in lams)
    assert worst <= 1e-9


@pytest.mark.parametrize("lam", [3.0, 120.0, 500.0])
def test_step_halving(lam):
    q = load_preset("mix")
    n = step_count(lam)
    coarse = discriminant(q, lam, n_steps=n).d
    fine = discriminant(q, lam, n_steps=2 * n).d
    assert abs(coarse - fine) <= 1e-10


def test_step_count_formula():
    assert step_count(0.0) == MIN_STEPS
    assert step_count(1e4) % STEP_BUCKET == 0
    assert step_count(1e4) >= math.ceil(40 * 100 / TWO_PI * 64)


def test_neumann_shoot_examples():
    assert neumann_shoot(ZERO, math.pi**2) == pytest.approx(0.0, abs=1e-9)
    assert neumann_shoot(ZERO, (math.pi / 2) ** 2) == pytest.approx(-math.pi / 2, abs=1e-8)
    assert neumann_shoot(Potential.constant(5.0), 5.0) == pytest.approx(0.0, abs=1e-8)


def test_free_oracle():
    roots = quasiperiodic_eigen_oracle(ZERO, 1.2, 200.0)
    expected = free_roots(1.2, 200.0)
    assert roots.shape == expected.shape
    assert np.max(np.abs(roots - expected)) <= 1e-8


@pytest.mark.parametrize("t", [0.0, math.pi])
def test_free_oracle_double_roots(t):
    roots = quasiperiodic_eigen_oracle(ZERO, t, 400.0)
    expected = free_roots(t, 400.0)
    assert roots.shape == expected.shape
    assert np.max(np.abs(roots - expected)) <= 1e-7


def test_oracle_constant_shift():
    a = quasiperiodic_eigen_oracle(ZERO, 2.2, 150.0)
    b = quasiperiodic_eigen_oracle(Potential.constant(3.0), 2.2, 153.0)
    assert np.max(np.abs(b - a - 3.0)) <= 1e-8


def test_oracle_sorted_and_deterministic():
    q = load_preset("cos1")
    a = quasiperiodic_eigen_oracle(q, math.pi / 2, 300.0)
    b = quasiperiodic_eigen_oracle(q, math.pi / 2, 300.0)
    assert np.all(np.diff(a) >= 0)
    assert np.array_equal(a, b)


def test_oracle_bad_ceiling():
    with pytest.raises(DomainError):
        quasiperiodic_eigen_oracle(load_preset("cos1"), 1.0, -10.0)


def test_neumann_oracle_examples():
    pi2 = math.pi**2
    assert np.allclose(neumann_eigen_oracle(ZERO, 4), [0, pi2, 4 * pi2, 9 * pi2], atol=1e-8)
    assert np.allclose(neumann_eigen_oracle(Potential.constant(-2.0), 3), [-2, pi2 - 2, 4 * pi2 - 2], atol=1e-8)


def test_no_separation_warning_on_presets():
    with warnings.catch_warnings():
        warnings.simplefilter("error", SeparationWarning)
        for name in ["cos1", "sin1", "mix"]:
            quasiperiodic_eigen_oracle(load_preset(name), 0.0, 200.0)
