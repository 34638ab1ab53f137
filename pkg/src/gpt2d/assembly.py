"""Galerkin system assembly over a normalized boundary curve.

The variational transmission problem restricted to harmonic polynomial
traces (2*N1 functions) and fluxes (2*N2 normal derivatives) yields the
block system

    M = [[(k+1) P,  2k N ],        B = [[ S/2 - N ],
         [ -2 N^T, (k+1) Q ]]           [   -Q     ]]

with P the single layer against tangential derivatives of the traces, Q the
single layer against the fluxes, N the double layer coupling fluxes to
traces, and S the mass matrix between traces and fluxes.  Column j of B (and
of the solution) corresponds to the j-th flux polynomial as the source.
All integrals use the double midpoint rule with the coincident-point
corrections from :mod:`gpt2d.kernel` / :mod:`gpt2d._accel`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel, basis
from .curve import BoundaryCurve, FrameTransform


class NormalizationError(ValueError):
    """Curve does not satisfy the perimeter condition required for assembly."""


@dataclass(frozen=True)
class GalerkinSystem:
    """Assembled block matrix and right-hand side.

    n_trace = 2*N1 trace functions, n_flux = 2*N2 flux functions; `matrix`
    is (n_trace+n_flux) square and `rhs` has one column per flux source.
    """

    n_trace: int
    n_flux: int
    contrast: float
    matrix: np.ndarray
    rhs: np.ndarray
    frame: FrameTransform

    @property
    def size(self) -> int:
        return self.n_trace + self.n_flux


def _check_normalized(curve: BoundaryCurve) -> None:
    if curve.perimeter >= 2.0:
        raise NormalizationError(
            f"perimeter {curve.perimeter:.3g} >= 2; normalize the curve first"
        )


def _blocks(curve: BoundaryCurve, n_pairs_trace: int, n_pairs_flux: int):
    """All quadrature blocks in one pass: (P, N, Q, S) plus basis tables."""
    _check_normalized(curve)
    w = curve.weights
    trace_vals = basis.trace_table(n_pairs_trace, curve.nodes)
    dtau_all, dnu_all = basis.derivative_tables(
        max(n_pairs_trace, n_pairs_flux), curve.nodes, curve.tangents, curve.normals
    )
    dtau_tr = dtau_all[: 2 * n_pairs_trace]
    flux_vals = dnu_all[: 2 * n_pairs_flux]
    P, Q, N = _accel.layer_products(
        curve.nodes, curve.normals, w, curve.curvature, dtau_tr, flux_vals, trace_vals
    )
    S = (trace_vals * w) @ flux_vals.T
    return P, N, Q, S


def assemble_P(curve: BoundaryCurve, n_pairs: int, symmetrize: bool = True) -> np.ndarray:
    """Single-layer block over tangential derivatives of the trace basis."""
    P, _, _, _ = _blocks(curve, n_pairs, 1)
    return 0.5 * (P + P.T) if symmetrize else P


def assemble_Q(curve: BoundaryCurve, n_pairs: int, symmetrize: bool = True) -> np.ndarray:
    """Single-layer block over the flux basis."""
    _, _, Q, _ = _blocks(curve, 1, n_pairs)
    return 0.5 * (Q + Q.T) if symmetrize else Q


def assemble_N(curve: BoundaryCurve, n_pairs_trace: int, n_pairs_flux: int) -> np.ndarray:
    """Double-layer coupling block, trace rows by flux columns."""
    _, N, _, _ = _blocks(curve, n_pairs_trace, n_pairs_flux)
    return N


def assemble_B(curve: BoundaryCurve, n_pairs_trace: int, n_pairs_flux: int) -> np.ndarray:
    """Right-hand side, one column per flux source polynomial."""
    _, N, Q, S = _blocks(curve, n_pairs_trace, n_pairs_flux)
    Q = 0.5 * (Q + Q.T)
    return np.vstack([0.5 * S - N, -Q])


def assemble_system(
    curve: BoundaryCurve,
    contrast: float,
    n_pairs_trace: int,
    n_pairs_flux: int | None = None,
    frame: FrameTransform | None = None,
) -> GalerkinSystem:
    """Assemble the full block system for a given conductivity contrast."""
    if contrast <= 0:
        raise ValueError("contrast must be positive")
    if n_pairs_flux is None:
        n_pairs_flux = n_pairs_trace
    P, N, Q, S = _blocks(curve, n_pairs_trace, n_pairs_flux)
    P = 0.5 * (P + P.T)
    Q = 0.5 * (Q + Q.T)
    k = contrast
    n_p, n_q = 2 * n_pairs_trace, 2 * n_pairs_flux
    matrix = np.empty((n_p + n_q, n_p + n_q))
    matrix[:n_p, :n_p] = (k + 1.0) * P
    matrix[:n_p, n_p:] = 2.0 * k * N
    matrix[n_p:, :n_p] = -2.0 * N.T
    matrix[n_p:, n_p:] = (k + 1.0) * Q
    rhs = np.empty((n_p + n_q, n_q))
    rhs[:n_p] = 0.5 * S - N
    rhs[n_p:] = -Q
    return GalerkinSystem(
        n_trace=2 * n_pairs_trace,
        n_flux=2 * n_pairs_flux,
        contrast=contrast,
        matrix=matrix,
        rhs=rhs,
        frame=frame if frame is not None else FrameTransform.identity(),
    )


def dump_system(system: GalerkinSystem, path: str) -> None:
    """Debug dump: dense row-major CSV of the matrix followed by the rhs."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# matrix {system.size}x{system.size}\n")
        for row in system.matrix:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
        fh.write(f"# rhs {system.size}x{system.n_flux}\n")
        for row in system.rhs:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
