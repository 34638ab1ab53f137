"""Harmonic polynomial basis: real and imaginary parts of (x1 + i x2)^m.

Basis functions are indexed 1-based and interleaved by parity: odd index i
is the real part of z^m ("cosine" type) and even index i the imaginary part
("sine" type), with degree m = ceil(i/2).  Powers are evaluated by iterative
complex multiplication, which keeps the homogeneity and rotation identities
exact to roundoff.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

MAX_DEGREE = 64  # beyond this, |x|^m under/overflow makes results meaningless


class BasisIndex(NamedTuple):
    """1-based interleaved index: odd -> real part, even -> imaginary part."""

    i: int

    @property
    def degree(self) -> int:
        return (self.i + 1) // 2

    @property
    def parity(self) -> str:
        return "a" if self.i % 2 == 1 else "b"


def _check_index(i: int) -> tuple[int, bool]:
    if i < 1:
        raise ValueError("basis index is 1-based")
    m = (i + 1) // 2
    if m > MAX_DEGREE:
        raise ValueError(f"degree {m} exceeds the supported cap {MAX_DEGREE}")
    return m, i % 2 == 1


def _zpow(x: np.ndarray, m: int) -> np.ndarray:
    z = x[..., 0] + 1j * x[..., 1]
    out = np.ones_like(z)
    for _ in range(m):
        out = out * z
    return out


def eval_P(i: int, x: np.ndarray) -> np.ndarray:
    """Value of the i-th harmonic polynomial at points x (shape (..., 2))."""
    m, is_a = _check_index(i)
    zm = _zpow(np.asarray(x, dtype=float), m)
    return zm.real if is_a else zm.imag


def eval_grad(i: int, x: np.ndarray) -> np.ndarray:
    """Gradient of the i-th harmonic polynomial, shape (..., 2).

    From the Cauchy-Riemann identities: grad Re z^m = m (Re, -Im) z^(m-1)
    and grad Im z^m = m (Im, Re) z^(m-1).
    """
    m, is_a = _check_index(i)
    zm1 = m * _zpow(np.asarray(x, dtype=float), m - 1)
    if is_a:
        return np.stack([zm1.real, -zm1.imag], axis=-1)
    return np.stack([zm1.imag, zm1.real], axis=-1)


def eval_Q(i: int, x: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Normal derivative: grad of the i-th polynomial dotted with nu."""
    return (eval_grad(i, x) * np.asarray(nu, dtype=float)).sum(axis=-1)


def eval_dtau(i: int, x: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """Tangential derivative: grad of the i-th polynomial dotted with tau."""
    return (eval_grad(i, x) * np.asarray(tau, dtype=float)).sum(axis=-1)


def _power_ladder(z: np.ndarray, n_pairs: int) -> np.ndarray:
    """Rows z^1 .. z^N by cumulative multiplication, shape (N, n)."""
    return np.multiply.accumulate(np.broadcast_to(z, (n_pairs, len(z))), axis=0)


def trace_table(n_pairs: int, nodes: np.ndarray) -> np.ndarray:
    """Values of basis functions 1..2*n_pairs at the nodes, shape (2N, n)."""
    if n_pairs > MAX_DEGREE:
        raise ValueError(f"degree {n_pairs} exceeds the supported cap {MAX_DEGREE}")
    zp = _power_ladder(nodes[:, 0] + 1j * nodes[:, 1], n_pairs)
    out = np.empty((2 * n_pairs, len(nodes)))
    out[0::2] = zp.real
    out[1::2] = zp.imag
    return out


def derivative_tables(
    n_pairs: int, nodes: np.ndarray, tangents: np.ndarray, normals: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Tangential and normal derivative tables, each of shape (2N, n)."""
    if n_pairs > MAX_DEGREE:
        raise ValueError(f"degree {n_pairs} exceeds the supported cap {MAX_DEGREE}")
    z = nodes[:, 0] + 1j * nodes[:, 1]
    m = np.arange(1, n_pairs + 1)[:, None]
    zm1 = np.empty((n_pairs, len(z)), dtype=complex)
    zm1[0] = 1.0
    if n_pairs > 1:
        zm1[1:] = _power_ladder(z, n_pairs - 1)
    gx, gy = m * zm1.real, -(m * zm1.imag)  # grad of the "a" polynomials
    dtau = np.empty((2 * n_pairs, len(z)))
    dnu = np.empty((2 * n_pairs, len(z)))
    dtau[0::2] = gx * tangents[:, 0] + gy * tangents[:, 1]
    dnu[0::2] = gx * normals[:, 0] + gy * normals[:, 1]
    # grad of the "b" polynomial is the quarter-turn: (-gy, gx)
    dtau[1::2] = -gy * tangents[:, 0] + gx * tangents[:, 1]
    dnu[1::2] = -gy * normals[:, 0] + gx * normals[:, 1]
    return dtau, dnu
