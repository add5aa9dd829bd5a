"""Composite Gauss-Legendre quadrature on [0, 1] with panel doubling."""

import numpy as np

_ORDER = 8
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)


def panel_rule(panels):
    """Nodes and weights of the composite rule with ``panels`` equal panels on [0, 1]."""
    h = 1.0 / panels
    left = np.arange(panels) * h
    nodes = (left[:, None] + 0.5 * h * (_GL_NODES[None, :] + 1.0)).ravel()
    weights = np.tile(0.5 * h * _GL_WEIGHTS, panels)
    return nodes, weights


def integrate_doubling(integrand, rtol=1e-10, atol=0.0, start_panels=8, max_panels=1 << 14):
    """Integrate over [0, 1], doubling the panel count until successive results agree.

    ``integrand(x, w)`` receives nodes and weights and returns the weighted sum
    (a scalar or an array of any shape). Convergence is declared when the
    largest change is below ``rtol`` times the largest magnitude or below
    ``atol``, whichever is looser; ``atol`` keeps integrals that cancel to
    roundoff from running to ``max_panels``.
    """
    panels = start_panels
    x, w = panel_rule(panels)
    previous = np.asarray(integrand(x, w))
    while panels < max_panels:
        panels *= 2
        x, w = panel_rule(panels)
        current = np.asarray(integrand(x, w))
        scale = max(float(np.max(np.abs(current), initial=0.0)), 1e-300)
        change = float(np.max(np.abs(current - previous), initial=0.0))
        if change <= rtol * scale or change <= atol:
            return current
        previous = current
    raise ArithmeticError(f"quadrature did not converge with {max_panels} panels")
