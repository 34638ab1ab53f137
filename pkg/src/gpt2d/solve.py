"""Direct solve of the Galerkin system with conditioning diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assembly import GalerkinSystem

# a backward-stable LU solve of a consistent system leaves a relative
# residual near machine epsilon regardless of conditioning; anything above
# this means the sampled basis is rank deficient (too few boundary points
# for the polynomial degree)
RESIDUAL_LIMIT = 1e-8


class IllConditionedError(RuntimeError):
    """Solve failed or is numerically meaningless; carries cond_estimate."""

    def __init__(self, message: str, cond_estimate: float):
        super().__init__(message)
        self.cond_estimate = cond_estimate


@dataclass(frozen=True)
class BoundarySolution:
    """Coefficient matrix of boundary traces and fluxes for all sources.

    Column j holds the solution driven by the j-th flux polynomial: rows
    0..n_trace-1 are trace coefficients in the interleaved polynomial basis,
    rows n_trace.. are flux coefficients in the flux basis.
    """

    coefficients: np.ndarray
    n_trace: int
    n_flux: int
    cond_estimate: float
    residual: float

    @property
    def trace_coefficients(self) -> np.ndarray:
        return self.coefficients[: self.n_trace]

    @property
    def flux_coefficients(self) -> np.ndarray:
        return self.coefficients[self.n_trace :]


def solve_system(system: GalerkinSystem) -> BoundarySolution:
    """Solve M X = B by dense LU with partial pivoting.

    Raises IllConditionedError when the factorization fails, produces
    non-finite values, or leaves a residual beyond RESIDUAL_LIMIT (the
    signature of an under-sampled, rank-deficient basis).
    """
    M, B = system.matrix, system.rhs
    try:
        cond = float(np.linalg.cond(M, 1))
    except np.linalg.LinAlgError:
        cond = float("inf")
    if not np.isfinite(cond):
        cond = float("inf")
    cond = max(cond, 1.0)

    try:
        X = np.linalg.solve(M, B)
    except np.linalg.LinAlgError as exc:
        raise IllConditionedError(f"singular system: {exc}", cond) from exc
    if not np.all(np.isfinite(X)):
        raise IllConditionedError("solve produced non-finite coefficients", cond)

    residual = float(np.linalg.norm(M @ X - B) / np.linalg.norm(B))
    if residual > RESIDUAL_LIMIT:
        raise IllConditionedError(
            f"solve residual {residual:.3g} indicates a numerically singular "
            f"system (cond ~ {cond:.3g}); increase the point count",
            cond,
        )
    return BoundarySolution(
        coefficients=X,
        n_trace=system.n_trace,
        n_flux=system.n_flux,
        cond_estimate=cond,
        residual=residual,
    )
