"""Logarithmic fundamental solution and its boundary kernels.

Sign convention (pinned here and nowhere else): Gamma(x) = +ln|x| / (2 pi).
With this choice the single-layer quadratic form over a curve of diameter
below one is negative definite, which the Galerkin system relies on, and the
assembled disk solution matches the analytic transmission solution.  All
tests of the convention live next to these functions.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi

# pairs closer than this fraction of the local panel size fall back to the
# coincident-point rules
NEAR_DIAGONAL_FACTOR = 1e-3


class SingularPointError(ValueError):
    """Kernel evaluated at a coincident point pair."""


def _diff(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    r2 = (d * d).sum(axis=-1)
    if np.any(r2 == 0.0):
        raise SingularPointError("kernel evaluated at coincident points")
    return d, r2


def gamma(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Fundamental solution ln|x - y| / (2 pi)."""
    _, r2 = _diff(x, y)
    return np.log(r2) / (2.0 * TWO_PI)


def dgamma_dnux(x: np.ndarray, nu_x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Directional derivative of Gamma(x - y) along nu at the target x."""
    d, r2 = _diff(x, y)
    return (d * np.asarray(nu_x, dtype=float)).sum(axis=-1) / (TWO_PI * r2)


def dgamma_dnuy(x: np.ndarray, y: np.ndarray, nu_y: np.ndarray) -> np.ndarray:
    """Directional derivative of Gamma(x - y) along nu at the source y."""
    d, r2 = _diff(x, y)
    return -(d * np.asarray(nu_y, dtype=float)).sum(axis=-1) / (TWO_PI * r2)


def diagonal_double_layer(curvature: float) -> float:
    """Coincident-point limit of dgamma_dnux along a C^2 curve.

    Taylor-expanding the boundary gives (x - y).nu_x = kappa s^2 / 2 + O(s^3)
    and |x - y|^2 = s^2 + O(s^4), so the limit is kappa / (4 pi).  On a ccw
    circle this equals the constant off-diagonal value 1/(4 pi r); flipping
    the orientation flips kappa and hence the sign.
    """
    return curvature / (2.0 * TWO_PI)


def diagonal_log_panel(panel_length: float) -> float:
    """Analytic integral of Gamma over a straight self-panel of length h.

    int_{-h/2}^{h/2} ln|t| dt / (2 pi) = h (ln(h/2) - 1) / (2 pi).
    """
    h = panel_length
    return h * (np.log(0.5 * h) - 1.0) / TWO_PI


def diagonal_log_weight(panel_length: float) -> float:
    """Self-panel weight used by the assembly: h ln(h / 2 pi) / (2 pi).

    This is `diagonal_log_panel` shifted by h (ln pi - 1) / (2 pi), the
    universal leading error of the punctured midpoint rule on the remaining
    panels (equispaced-in-arclength panels, log kernel).  The shift follows
    from prod_{j=1}^{n-1} 2 sin(pi j / n) = n: with this weight the
    single-layer quadrature of a constant density on a circle of any radius
    is exact, and smooth-curve matrix entries gain roughly two orders of
    convergence over the bare panel integral (first order -> second/third).
    """
    h = panel_length
    return h * np.log(h / TWO_PI) / TWO_PI
