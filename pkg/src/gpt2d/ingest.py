"""Bitmap import: threshold, clean up, and trace a filled shape boundary.

Pixels darker than mid-gray are the shape.  After keeping the largest
connected component and filling holes, the boundary is traced at sub-pixel
resolution by marching squares, resampled to equal arclength, and lightly
smoothed (pixel staircases have unbounded discrete curvature, which the
double-layer diagonal rule cannot tolerate).
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage
from skimage.measure import find_contours

from .curve import BoundaryCurve, Contour, ShapeError, discretize

LUMINANCE_THRESHOLD = 0.5  # fraction of full scale; below = shape
MIN_SHAPE_PIXELS = 16


class MaskError(ValueError):
    """Image did not yield a usable single-component mask."""


@dataclass(frozen=True)
class BinaryMask:
    """Row-major boolean grid, True on the shape."""

    bits: np.ndarray

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def area(self) -> int:
        return int(self.bits.sum())


def load_mask(data: bytes) -> BinaryMask:
    """Decode image bytes into a cleaned single-component mask.

    Keeps the largest connected component (warning if others are dropped),
    fills interior holes, and rejects empty masks and shapes touching the
    image border.
    """
    try:
        img = Image.open(io.BytesIO(data))
        gray = np.asarray(img.convert("L"), dtype=float)
    except (UnidentifiedImageError, OSError) as exc:
        raise MaskError(f"cannot decode image: {exc}") from exc

    bits = gray < LUMINANCE_THRESHOLD * 255.0
    if not bits.any():
        raise MaskError("empty shape: no pixels below the luminance threshold")

    labels, count = ndimage.label(bits)
    if count > 1:
        sizes = ndimage.sum_labels(bits, labels, index=np.arange(1, count + 1))
        keep = int(np.argmax(sizes)) + 1
        warnings.warn(
            f"image contains {count} components; keeping the largest "
            f"({int(sizes.max())} px)",
            stacklevel=2,
        )
        bits = labels == keep
    bits = ndimage.binary_fill_holes(bits)

    if bits[0, :].any() or bits[-1, :].any() or bits[:, 0].any() or bits[:, -1].any():
        raise MaskError("shape touches the image border")
    if bits.sum() < MIN_SHAPE_PIXELS:
        raise MaskError("shape is too small to trace")
    return BinaryMask(bits=bits)


def _raw_contour(mask: BinaryMask) -> np.ndarray:
    """Sub-pixel marching-squares boundary in (x, y) with y pointing up."""
    contours = find_contours(mask.bits.astype(float), 0.5)
    if not contours:
        raise MaskError("no contour found")
    rc = max(contours, key=len)
    if len(rc) < 8:
        raise MaskError("degenerate shape: contour too short")
    # rows grow downward in image space; flip to a y-up frame
    pts = np.stack([rc[:, 1], (mask.height - 1) - rc[:, 0]], axis=1)
    if np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    return pts


def _smooth_periodic(pts: np.ndarray, window: int) -> np.ndarray:
    kernel = np.ones(window) / window
    pad = window // 2
    ext = np.concatenate([pts[-pad:], pts, pts[:pad]])
    out = np.empty_like(pts)
    for axis in range(2):
        out[:, axis] = np.convolve(ext[:, axis], kernel, mode="valid")
    return out


def trace_contour(mask: BinaryMask, n_points: int) -> BoundaryCurve:
    """Boundary curve of the mask: marching squares, resample, smooth."""
    pts = _raw_contour(mask)
    x, y = pts[:, 0], pts[:, 1]
    loop_area = 0.5 * abs(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    seg = np.roll(pts, -1, axis=0) - pts
    cum = np.concatenate([[0.0], np.cumsum(np.linalg.norm(seg, axis=1))])
    # mean thickness below ~2 px means the trace follows a thread, not a shape
    if cum[-1] < 4.0 or loop_area / (0.5 * cum[-1]) < 2.0:
        raise MaskError("degenerate shape: thread-thin or near-empty trace")
    s_new = np.arange(n_points) * cum[-1] / n_points
    idx = np.clip(np.searchsorted(cum, s_new, side="right") - 1, 0, len(pts) - 1)
    seglen = np.linalg.norm(seg, axis=1)
    frac = (s_new - cum[idx]) / seglen[idx]
    resampled = pts[idx] + frac[:, None] * seg[idx]

    window = max(3, n_points // 128)
    window += 1 - window % 2  # keep it odd and centered
    smoothed = _smooth_periodic(resampled, window)
    try:
        return discretize(Contour(points=tuple(map(tuple, smoothed))), n_points)
    except ShapeError as exc:
        raise MaskError(f"traced contour unusable: {exc}") from exc
