"""Analytic reference tensors for disks and ellipses, plus error metrics.

The disk tensor is diagonal with entries 2 pi m (k-1)/(k+1) r^(2m).  The
ellipse tensor is built from first principles: the transmission problem
decouples mode-by-mode in elliptic coordinates (the metric factor cancels
from both the flux jump and the extraction integrand), giving closed-form
boundary data that is integrated with a trigonometrically exact quadrature.
The construction is validated against the classical degree-1 polarization
tensor and the disk limit before it is used to grade the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import basis
from .curve import FrameTransform
from .gpt import ContractedGPT, rotate_tensor


class ZeroTensorError(ValueError):
    """Relative error is undefined against an identically zero tensor."""


@dataclass(frozen=True)
class ErrorReport:
    """Error measures between an approximate and an exact tensor."""

    max_relative: float
    abs_diff: np.ndarray
    l1: float
    l2: float
    linf: float

    @property
    def lp_norms(self) -> dict:
        return {1: self.l1, 2: self.l2, "inf": self.linf}


def exact_disk_gpt(radius: float, contrast: float, order: int) -> ContractedGPT:
    """Diagonal disk tensor: entry 2 pi m (k-1)/(k+1) radius^(2m) at degree m."""
    if radius <= 0 or contrast <= 0:
        raise ValueError("radius and contrast must be positive")
    k = contrast
    m = np.arange(1, order + 1)
    diag = np.repeat(2.0 * np.pi * m * (k - 1.0) / (k + 1.0) * radius ** (2 * m), 2)
    return ContractedGPT(
        order=order,
        entries=np.diag(diag),
        contrast=contrast,
        frame=FrameTransform.identity(),
        bounding_radius=radius,
    )


def _ellipse_mode_coefficients(A: float, B: float, order: int) -> np.ndarray:
    """G[n, m]: stable expansion coefficients of z^n in elliptic harmonics.

    z^n = gamma_n0 + sum_m gamma_nm T_m(z/c) with T_m the Chebyshev
    polynomial; G folds the focal half-distance c and exp(m rho0) together
    as G_nm = 2^(1-n) C(n, (n-m)/2) c^(n-m) (A+B)^m, which stays finite for
    all eccentricities including the circle (c -> 0).
    """
    c = np.float64(np.sqrt(max(A * A - B * B, 0.0)))
    D = np.float64(A + B)
    G = np.zeros((order + 1, order + 1))
    with np.errstate(over="ignore"):  # overflow becomes inf, caught by caller
        for n in range(1, order + 1):
            for m in range(n % 2 if n % 2 else 2, n + 1, 2):
                G[n, m] = 2.0 ** (1 - n) * comb(n, (n - m) // 2) * c ** (n - m) * D**m
    return G


def _ellipse_axis_aligned(A: float, B: float, k: float, order: int) -> np.ndarray:
    """Tensor entries for a major-axis-on-x ellipse via mode-wise solve."""
    lam = (A - B) / (A + B)
    G = _ellipse_mode_coefficients(A, B, order)
    n2 = 2 * order

    # trig-exact trapezoid in the elliptic angle
    n_t = 8 * (order + 1)
    t = np.arange(n_t) * 2.0 * np.pi / n_t
    dt = 2.0 * np.pi / n_t
    pts = np.stack([A * np.cos(t), B * np.sin(t)], axis=1)

    m = np.arange(1, order + 1)
    lam_m = lam**m
    # radial derivative of (source + (k-1) interior potential) per mode:
    # the shared metric factor cancels against the surface measure
    gain_a = m * (1.0 - lam_m) * 2.0 / ((1.0 + k) + (1.0 - k) * lam_m)
    gain_b = m * (1.0 + lam_m) * 2.0 / ((1.0 + k) - (1.0 - k) * lam_m)
    cos_mt = np.cos(np.outer(m, t))
    sin_mt = np.sin(np.outer(m, t))

    bracket = np.empty((n2, n_t))
    with np.errstate(over="ignore", invalid="ignore"):
        trace_vals = basis.trace_table(order, pts)  # P_i on the boundary
        bracket[0::2] = (G[1:, 1:] * gain_a) @ cos_mt * 0.5
        bracket[1::2] = (G[1:, 1:] * gain_b) @ sin_mt * 0.5
        entries = (k - 1.0) * (trace_vals * dt) @ bracket.T
    if not np.all(np.isfinite(entries)):
        raise ValueError("ellipse tensor overflow: eccentricity/order too extreme")
    return entries


def exact_ellipse_gpt(
    a: float, b: float, contrast: float, order: int, tilt: float = 0.0
) -> ContractedGPT:
    """Ellipse tensor for semiaxes (a, b) and tilt about the centroid."""
    if a <= 0 or b <= 0 or contrast <= 0:
        raise ValueError("semiaxes and contrast must be positive")
    angle = tilt
    A, B = a, b
    if a < b:  # solve with the major axis on x, rotate back
        A, B = b, a
        angle += 0.5 * np.pi
    entries = _ellipse_axis_aligned(A, B, contrast, order)
    if angle != 0.0:
        entries = rotate_tensor(entries, angle)
    return ContractedGPT(
        order=order,
        entries=entries,
        contrast=contrast,
        frame=FrameTransform.identity(),
        bounding_radius=max(a, b),
    )


def relative_error(M_approx: np.ndarray, M_exact: np.ndarray) -> ErrorReport:
    """Scaled maximal entrywise error plus L^p norms of the difference.

    Entry (i, j) is scaled by the largest exact entry in the trailing block
    with both indices >= min(i, j); this compensates the rapid decay of
    high-degree entries.
    """
    Ma = np.asarray(M_approx, dtype=float)
    Me = np.asarray(M_exact, dtype=float)
    if Ma.shape != Me.shape:
        raise ValueError("tensor shapes differ")
    if np.max(np.abs(Me)) == 0.0:
        raise ZeroTensorError("exact tensor is identically zero")

    n = Me.shape[0]
    suffix = np.empty(n)
    running = 0.0
    for i in range(n - 1, -1, -1):
        running = max(running, np.max(np.abs(Me[i:, i])), np.max(np.abs(Me[i, i:])))
        suffix[i] = running
    idx = np.minimum(np.arange(n)[:, None], np.arange(n)[None, :])
    diff = np.abs(Ma - Me)
    eps = float(np.max(diff / suffix[idx]))
    return ErrorReport(
        max_relative=eps,
        abs_diff=diff,
        l1=float(diff.sum()),
        l2=float(np.sqrt((diff**2).sum())),
        linf=float(diff.max()),
    )
