"""Dense kernel-matrix assembly backends.

The O(n^2) pairwise kernel evaluation is the hot loop of the whole engine.
Two interchangeable implementations are provided: numba-compiled loops
(default when numba imports) and pure-numpy broadcasting.  Set the
environment variable ``GPT2D_DISABLE_NUMBA=1`` before import to force the
numpy path.  Both produce the same matrices to the last few ulps; bitwise
determinism is guaranteed per backend.

Matrix conventions (weights folded in):
  single layer   S[i, j] = w_i w_j Gamma(x_i - x_j),
                 S[i, i] = w_i * (h_i ln(h_i / 2pi) / 2pi)
  double layer   D[i, j] = w_i w_j ((x_i - x_j) . nu_i) / (2 pi |x_i - x_j|^2),
                 D[i, i] = w_i^2 kappa_i / (4 pi)
"""

from __future__ import annotations

import math
import os

import numpy as np

from .kernel import NEAR_DIAGONAL_FACTOR, TWO_PI


def _numba_enabled() -> bool:
    if os.environ.get("GPT2D_DISABLE_NUMBA"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _numba_enabled()


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _np_single_layer_weighted(nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    dx = nodes[:, 0, None] - nodes[None, :, 0]
    dy = nodes[:, 1, None] - nodes[None, :, 1]
    r2 = dx * dx + dy * dy
    np.fill_diagonal(r2, 1.0)
    near = 0.5 * NEAR_DIAGONAL_FACTOR * (weights[:, None] + weights[None, :])
    out = np.log(r2) / (2.0 * TWO_PI) * weights[:, None] * weights[None, :]
    diag = weights * (weights * np.log(weights / TWO_PI) / TWO_PI)
    # off-diagonal pairs inside the near-singular threshold get the
    # symmetrized coincident-point rule
    mask = r2 < near * near
    np.fill_diagonal(mask, False)
    if np.any(mask):
        sub = 0.5 * (diag[:, None] + diag[None, :])
        out[mask] = sub[mask]
    np.fill_diagonal(out, diag)
    return out


def _np_double_layer_weighted(
    nodes: np.ndarray, normals: np.ndarray, weights: np.ndarray, curvature: np.ndarray
) -> np.ndarray:
    dx = nodes[:, 0, None] - nodes[None, :, 0]
    dy = nodes[:, 1, None] - nodes[None, :, 1]
    r2 = dx * dx + dy * dy
    np.fill_diagonal(r2, 1.0)
    near = 0.5 * NEAR_DIAGONAL_FACTOR * (weights[:, None] + weights[None, :])
    out = (dx * normals[:, 0, None] + dy * normals[:, 1, None]) / (TWO_PI * r2)
    diag_kernel = curvature / (2.0 * TWO_PI)
    mask = r2 < near * near
    np.fill_diagonal(mask, False)
    if np.any(mask):
        out[mask] = np.broadcast_to(diag_kernel[:, None], out.shape)[mask]
    out *= weights[:, None] * weights[None, :]
    np.fill_diagonal(out, weights * weights * diag_kernel)
    return out


def _np_single_layer_rows(nodes, weights, row_start, row_stop, out):
    rows = slice(row_start, row_stop)
    dx = nodes[rows, 0, None] - nodes[None, :, 0]
    dy = nodes[rows, 1, None] - nodes[None, :, 1]
    r2 = dx * dx + dy * dy
    idx = np.arange(row_start, row_stop)
    r2[idx - row_start, idx] = 1.0
    near = 0.5 * NEAR_DIAGONAL_FACTOR * (weights[rows, None] + weights[None, :])
    np.multiply(np.log(r2), weights[rows, None] * weights[None, :] / (2.0 * TWO_PI), out=out)
    diag = weights * (weights * np.log(weights / TWO_PI) / TWO_PI)
    mask = r2 < near * near
    mask[idx - row_start, idx] = False
    if np.any(mask):
        sub = 0.5 * (diag[rows, None] + diag[None, :])
        out[mask] = sub[mask]
    out[idx - row_start, idx] = diag[rows]
    return out


def _np_double_layer_rows(nodes, normals, weights, curvature, row_start, row_stop, out):
    rows = slice(row_start, row_stop)
    dx = nodes[rows, 0, None] - nodes[None, :, 0]
    dy = nodes[rows, 1, None] - nodes[None, :, 1]
    r2 = dx * dx + dy * dy
    idx = np.arange(row_start, row_stop)
    r2[idx - row_start, idx] = 1.0
    near = 0.5 * NEAR_DIAGONAL_FACTOR * (weights[rows, None] + weights[None, :])
    np.divide(
        dx * normals[rows, 0, None] + dy * normals[rows, 1, None], TWO_PI * r2, out=out
    )
    diag_kernel = curvature / (2.0 * TWO_PI)
    mask = r2 < near * near
    mask[idx - row_start, idx] = False
    if np.any(mask):
        out[mask] = np.broadcast_to(diag_kernel[rows, None], out.shape)[mask]
    out[idx - row_start, idx] = diag_kernel[rows]
    out *= weights[rows, None] * weights[None, :]
    return out


if USE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _nb_single_layer_rows(nodes, weights, row_start, row_stop, out):  # pragma: no cover
        n = nodes.shape[0]
        for i in range(row_start, row_stop):
            r = i - row_start
            w_i = weights[i]
            diag_i = w_i * (w_i * math.log(w_i / TWO_PI) / TWO_PI)
            for j in range(n):
                if i == j:
                    out[r, j] = diag_i
                    continue
                dx = nodes[i, 0] - nodes[j, 0]
                dy = nodes[i, 1] - nodes[j, 1]
                r2 = dx * dx + dy * dy
                near = 0.5 * NEAR_DIAGONAL_FACTOR * (w_i + weights[j])
                if r2 < near * near:
                    w_j = weights[j]
                    diag_j = w_j * (w_j * math.log(w_j / TWO_PI) / TWO_PI)
                    out[r, j] = 0.5 * (diag_i + diag_j)
                else:
                    out[r, j] = w_i * weights[j] * 0.5 * math.log(r2) / TWO_PI
        return out

    @njit(cache=True)
    def _nb_double_layer_rows(
        nodes, normals, weights, curvature, row_start, row_stop, out
    ):  # pragma: no cover
        n = nodes.shape[0]
        for i in range(row_start, row_stop):
            r = i - row_start
            w_i = weights[i]
            diag_kernel = curvature[i] / (2.0 * TWO_PI)
            for j in range(n):
                if i == j:
                    out[r, j] = w_i * w_i * diag_kernel
                    continue
                dx = nodes[i, 0] - nodes[j, 0]
                dy = nodes[i, 1] - nodes[j, 1]
                r2 = dx * dx + dy * dy
                near = 0.5 * NEAR_DIAGONAL_FACTOR * (w_i + weights[j])
                if r2 < near * near:
                    k = diag_kernel
                else:
                    k = (dx * normals[i, 0] + dy * normals[i, 1]) / (TWO_PI * r2)
                out[r, j] = w_i * weights[j] * k
        return out

    _single_layer_rows = _nb_single_layer_rows
    _double_layer_rows = _nb_double_layer_rows
else:
    _single_layer_rows = _np_single_layer_rows
    _double_layer_rows = _np_double_layer_rows


# row-block size: keep block buffers and basis tables inside private caches
# at any resolution so the quadratic work dominates the wall time
_TILE_DOUBLES = 32768


def _tile_rows(n: int) -> int:
    return max(16, min(n, _TILE_DOUBLES // max(n, 1)))


def single_layer_weighted(nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Full weighted single-layer matrix (tests and diagnostics)."""
    nodes = np.ascontiguousarray(nodes)
    weights = np.ascontiguousarray(weights)
    n = len(weights)
    out = np.empty((n, n))
    _single_layer_rows(nodes, weights, 0, n, out)
    return out


def double_layer_weighted(
    nodes: np.ndarray, normals: np.ndarray, weights: np.ndarray, curvature: np.ndarray
) -> np.ndarray:
    """Full weighted double-layer matrix (tests and diagnostics)."""
    nodes = np.ascontiguousarray(nodes)
    normals = np.ascontiguousarray(normals)
    weights = np.ascontiguousarray(weights)
    curvature = np.ascontiguousarray(curvature)
    n = len(weights)
    out = np.empty((n, n))
    _double_layer_rows(nodes, normals, weights, curvature, 0, n, out)
    return out


def layer_products(
    nodes: np.ndarray,
    normals: np.ndarray,
    weights: np.ndarray,
    curvature: np.ndarray,
    dtau: np.ndarray,
    flux: np.ndarray,
    trace: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cache-tiled Galerkin products without materializing the n^2 kernels.

    Returns (P, Q, N) with P = dtau G dtau^T, Q = flux G flux^T and
    N = trace K flux^T, accumulated over row blocks of the single-layer
    matrix G and double-layer matrix K while each block is cache-hot.
    """
    nodes = np.ascontiguousarray(nodes)
    normals = np.ascontiguousarray(normals)
    weights = np.ascontiguousarray(weights)
    curvature = np.ascontiguousarray(curvature)
    n = len(weights)
    tile = _tile_rows(n)
    block = np.empty((tile, n))
    P = np.zeros((dtau.shape[0], dtau.shape[0]))
    Q = np.zeros((flux.shape[0], flux.shape[0]))
    N = np.zeros((trace.shape[0], flux.shape[0]))
    flux_T = np.ascontiguousarray(flux.T)
    for start in range(0, n, tile):
        stop = min(start + tile, n)
        view = block[: stop - start]
        _single_layer_rows(nodes, weights, start, stop, view)
        P += dtau[:, start:stop] @ (view @ dtau.T)
        Q += flux[:, start:stop] @ (view @ flux_T)
        _double_layer_rows(nodes, normals, weights, curvature, start, stop, view)
        N += trace[:, start:stop] @ (view @ flux_T)
    return P, Q, N
