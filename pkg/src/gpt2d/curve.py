"""Closed boundary curves: shape descriptions, discretization, normalization.

A :class:`BoundaryCurve` is a midpoint-rule discretization of a simply
connected, counterclockwise boundary: nodes sit at panel midpoints, the
weight of a node is the arclength of its panel, and tangent/normal/curvature
are sampled at the nodes.  The outward normal is the tangent rotated by
-pi/2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Union

import numpy as np
from shapely.geometry import Polygon as _ShapelyPolygon

TWO_PI = 2.0 * np.pi

MIN_POINTS = 8


class ShapeError(ValueError):
    """Invalid shape description or discretization request."""


@dataclass(frozen=True)
class Disk:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ShapeError("disk radius must be positive")


@dataclass(frozen=True)
class Ellipse:
    center: tuple[float, float]
    semiaxis_a: float
    semiaxis_b: float
    tilt: float = 0.0

    def __post_init__(self):
        if not (self.semiaxis_a > 0 and self.semiaxis_b > 0):
            raise ShapeError("ellipse semiaxes must be positive")


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        _check_simple_loop(np.asarray(self.vertices, dtype=float), "polygon")


@dataclass(frozen=True)
class Contour:
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        _check_simple_loop(np.asarray(self.points, dtype=float), "contour")


ShapeSpec = Union[Disk, Ellipse, Polygon, Contour]


def _check_simple_loop(pts: np.ndarray, what: str) -> None:
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise ShapeError(f"{what} needs at least 3 planar vertices")
    if not np.all(np.isfinite(pts)):
        raise ShapeError(f"{what} has non-finite vertices")
    poly = _ShapelyPolygon(pts)
    if not poly.is_valid or poly.area == 0.0:
        raise ShapeError(f"{what} must be simple (non-self-intersecting)")


def shape_to_dict(spec: ShapeSpec) -> dict:
    """Serialize a shape to the document schema used by the CLI and service."""
    if isinstance(spec, Disk):
        return {"type": "disk", "center": list(spec.center), "radius": spec.radius}
    if isinstance(spec, Ellipse):
        return {
            "type": "ellipse",
            "center": list(spec.center),
            "a": spec.semiaxis_a,
            "b": spec.semiaxis_b,
            "tilt": spec.tilt,
        }
    if isinstance(spec, Polygon):
        return {"type": "polygon", "vertices": [list(v) for v in spec.vertices]}
    if isinstance(spec, Contour):
        return {"type": "contour", "points": [list(p) for p in spec.points]}
    raise ShapeError(f"unknown shape {spec!r}")


def shape_from_dict(doc: dict) -> ShapeSpec:
    """Parse the shape document schema; raises ShapeError on malformed input."""
    try:
        kind = doc["type"]
        if kind == "disk":
            return Disk(center=tuple(doc.get("center", (0.0, 0.0))), radius=float(doc["radius"]))
        if kind == "ellipse":
            return Ellipse(
                center=tuple(doc.get("center", (0.0, 0.0))),
                semiaxis_a=float(doc["a"]),
                semiaxis_b=float(doc["b"]),
                tilt=float(doc.get("tilt", 0.0)),
            )
        if kind == "polygon":
            return Polygon(vertices=tuple(tuple(map(float, v)) for v in doc["vertices"]))
        if kind == "contour":
            return Contour(points=tuple(tuple(map(float, p)) for p in doc["points"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed shape document: {exc}") from exc
    raise ShapeError(f"unknown shape type {kind!r}")


def load_shape(path: str) -> ShapeSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return shape_from_dict(json.load(fh))


def rotate_shape(spec: ShapeSpec, angle: float) -> ShapeSpec:
    """Rotate a shape about the origin by `angle` (radians, counterclockwise)."""
    c, s = np.cos(angle), np.sin(angle)

    def rot(p):
        return (c * p[0] - s * p[1], s * p[0] + c * p[1])

    if isinstance(spec, Disk):
        return Disk(center=rot(spec.center), radius=spec.radius)
    if isinstance(spec, Ellipse):
        return Ellipse(
            center=rot(spec.center),
            semiaxis_a=spec.semiaxis_a,
            semiaxis_b=spec.semiaxis_b,
            tilt=spec.tilt + angle,
        )
    if isinstance(spec, Polygon):
        return Polygon(vertices=tuple(rot(v) for v in spec.vertices))
    return Contour(points=tuple(rot(p) for p in spec.points))


@dataclass(frozen=True)
class FrameTransform:
    """Similarity x -> (x - shift) * scale applied during normalization."""

    scale: float
    shift: np.ndarray

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("frame scale must be positive")
        object.__setattr__(self, "shift", np.asarray(self.shift, dtype=float))

    @classmethod
    def identity(cls) -> "FrameTransform":
        return cls(scale=1.0, shift=np.zeros(2))

    @property
    def is_identity(self) -> bool:
        return self.scale == 1.0 and not np.any(self.shift)

    def apply(self, points: np.ndarray) -> np.ndarray:
        return (np.asarray(points, dtype=float) - self.shift) * self.scale

    def invert(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) / self.scale + self.shift


@dataclass(frozen=True)
class BoundaryCurve:
    """Discretized closed boundary, counterclockwise with outward normals."""

    nodes: np.ndarray      # (n, 2) panel midpoints
    tangents: np.ndarray   # (n, 2) unit tangents along the orientation
    normals: np.ndarray    # (n, 2) unit outward normals (tangent rotated -pi/2)
    weights: np.ndarray    # (n,)  panel arclengths
    curvature: np.ndarray  # (n,)  signed curvature, positive for a ccw circle
    perimeter: float
    centroid: np.ndarray   # (2,)  area centroid

    orientation = "counterclockwise"

    @property
    def n(self) -> int:
        return len(self.nodes)

    def validate(self, tol: float = 1e-9) -> None:
        """Check the structural invariants; raises ShapeError on violation."""
        tau, nu = self.tangents, self.normals
        if np.max(np.abs(np.linalg.norm(tau, axis=1) - 1.0)) > tol:
            raise ShapeError("tangents are not unit vectors")
        if np.max(np.abs(np.linalg.norm(nu, axis=1) - 1.0)) > tol:
            raise ShapeError("normals are not unit vectors")
        if np.max(np.abs((tau * nu).sum(axis=1))) > tol:
            raise ShapeError("tangent/normal frame is not orthogonal")
        if np.max(np.abs(nu[:, 0] - tau[:, 1])) > tol or np.max(np.abs(nu[:, 1] + tau[:, 0])) > tol:
            raise ShapeError("normal is not the tangent rotated by -pi/2")
        if abs(self.weights.sum() - self.perimeter) > 1e-12 * self.perimeter:
            raise ShapeError("panel weights do not sum to the perimeter")
        if signed_area(self) <= 0:
            raise ShapeError("curve is not counterclockwise")


def signed_area(curve: BoundaryCurve) -> float:
    """Signed enclosed area via Green's theorem with the panel quadrature."""
    x = curve.nodes
    return 0.5 * float(np.sum(curve.weights * (x * curve.normals).sum(axis=1)))


def _polygon_centroid(pts: np.ndarray) -> np.ndarray:
    """Exact area centroid of a closed polygon (counterclockwise)."""
    nxt = np.roll(pts, -1, axis=0)
    cross = pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]
    area = 0.5 * cross.sum()
    cx = np.sum((pts[:, 0] + nxt[:, 0]) * cross) / (6.0 * area)
    cy = np.sum((pts[:, 1] + nxt[:, 1]) * cross) / (6.0 * area)
    return np.array([cx, cy])


def _frames_from_tangents(tangents: np.ndarray) -> np.ndarray:
    # outward normal for a ccw curve: rotate tangent by -pi/2
    return np.stack([tangents[:, 1], -tangents[:, 0]], axis=1)


_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def _panel_arclengths(speed, t_edges: np.ndarray) -> np.ndarray:
    """Exact-to-roundoff panel arclengths by 16-point Gauss-Legendre."""
    t0, t1 = t_edges[:-1], t_edges[1:]
    half = 0.5 * (t1 - t0)
    tt = t0[:, None] + half[:, None] * (_GL_X[None, :] + 1.0)
    return (speed(tt) * _GL_W[None, :]).sum(axis=1) * half


def _build(nodes, tangents, weights, curvature, centroid) -> BoundaryCurve:
    normals = _frames_from_tangents(tangents)
    curve = BoundaryCurve(
        nodes=nodes,
        tangents=tangents,
        normals=normals,
        weights=weights,
        curvature=curvature,
        perimeter=float(weights.sum()),
        centroid=np.asarray(centroid, dtype=float),
    )
    curve.validate()
    return curve


def _discretize_ellipse(center, a, b, tilt, n: int) -> BoundaryCurve:
    # equal-parameter panels; nodes at parameter midpoints
    t_mid = (np.arange(n) + 0.5) * TWO_PI / n
    t_edges = np.arange(n + 1) * TWO_PI / n
    ct, st = np.cos(tilt), np.sin(tilt)
    rot = np.array([[ct, -st], [st, ct]])

    base = np.stack([a * np.cos(t_mid), b * np.sin(t_mid)], axis=1)
    nodes = base @ rot.T + np.asarray(center, dtype=float)
    deriv = np.stack([-a * np.sin(t_mid), b * np.cos(t_mid)], axis=1) @ rot.T
    speed_mid = np.linalg.norm(deriv, axis=1)
    tangents = deriv / speed_mid[:, None]
    curvature = a * b / speed_mid**3
    weights = _panel_arclengths(
        lambda tt: np.sqrt((a * np.sin(tt)) ** 2 + (b * np.cos(tt)) ** 2), t_edges
    )
    # the area centroid of a disk/ellipse is its center, exactly
    return _build(nodes, tangents, weights, curvature, center)


def _close_loop(pts: np.ndarray) -> np.ndarray:
    if np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    if len(pts) < 3:
        raise ShapeError("closed loop needs at least 3 distinct vertices")
    return pts


def _ensure_ccw(pts: np.ndarray) -> np.ndarray:
    x, y = pts[:, 0], pts[:, 1]
    area2 = np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
    return pts[::-1].copy() if area2 < 0 else pts


def _discretize_polygon(vertices: np.ndarray, n: int) -> BoundaryCurve:
    """Per-edge equal panels, panel boundaries aligned with the vertices.

    Corner alignment keeps every node strictly inside an edge, so tangents
    are exact and Green's-theorem quantities are exact for polygons.
    """
    verts = _ensure_ccw(_close_loop(vertices))
    edges = np.roll(verts, -1, axis=0) - verts
    lens = np.linalg.norm(edges, axis=1)
    if np.any(lens == 0):
        raise ShapeError("polygon has a zero-length edge")
    if n < len(verts):
        raise ShapeError(f"n_points={n} is too small for {len(verts)} edges")

    # largest-remainder allocation of n panels proportional to edge length
    quota = n * lens / lens.sum()
    counts = np.floor(quota).astype(int)
    counts = np.maximum(counts, 1)
    while counts.sum() > n:
        counts[np.argmax(counts - quota)] -= 1
    rem = n - counts.sum()
    if rem > 0:
        order = np.argsort(quota - counts)[::-1]
        counts[order[:rem]] += 1

    nodes, tangents, weights = [], [], []
    for v, e, ln, c in zip(verts, edges, lens, counts):
        frac = (np.arange(c) + 0.5) / c
        nodes.append(v + frac[:, None] * e)
        tangents.append(np.tile(e / ln, (c, 1)))
        weights.append(np.full(c, ln / c))
    nodes = np.concatenate(nodes)
    tangents = np.concatenate(tangents)
    weights = np.concatenate(weights)
    curvature = np.zeros(len(nodes))  # edges are straight; corners carry no node
    return _build(nodes, tangents, weights, curvature, _polygon_centroid(verts))


def _resample_closed(pts: np.ndarray, n: int) -> tuple[np.ndarray, float]:
    """Resample a closed polyline to n points equally spaced in arclength."""
    pts = _ensure_ccw(_close_loop(pts))
    seg = np.roll(pts, -1, axis=0) - pts
    seglen = np.linalg.norm(seg, axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seglen)])
    total = cum[-1]
    s_new = (np.arange(n) + 0.5) * total / n
    idx = np.searchsorted(cum, s_new, side="right") - 1
    idx = np.clip(idx, 0, len(pts) - 1)
    frac = (s_new - cum[idx]) / seglen[idx]
    return pts[idx] + frac[:, None] * seg[idx], total


def _discretize_contour(points: np.ndarray, n: int) -> BoundaryCurve:
    """Equal-arclength resampling with periodic finite-difference frames."""
    nodes, total = _resample_closed(points, n)
    h = total / n
    fwd = np.roll(nodes, -1, axis=0)
    bwd = np.roll(nodes, 1, axis=0)
    d1 = (fwd - bwd) / (2.0 * h)
    d2 = (fwd - 2.0 * nodes + bwd) / h**2
    speed = np.linalg.norm(d1, axis=1)
    tangents = d1 / speed[:, None]
    curvature = (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / speed**3
    weights = np.full(n, h)
    centroid = _polygon_centroid(_ensure_ccw(_close_loop(points)))
    return _build(nodes, tangents, weights, curvature, centroid)


def discretize(spec: ShapeSpec, n_points: int) -> BoundaryCurve:
    """Discretize a shape boundary into an n_points midpoint-rule curve.

    Analytic shapes use equal-parameter panels with frames from the
    parameterization; polygons and contours are resampled by arclength.
    """
    if n_points < MIN_POINTS:
        raise ShapeError(f"n_points must be at least {MIN_POINTS}")
    if isinstance(spec, Disk):
        return _discretize_ellipse(spec.center, spec.radius, spec.radius, 0.0, n_points)
    if isinstance(spec, Ellipse):
        return _discretize_ellipse(
            spec.center, spec.semiaxis_a, spec.semiaxis_b, spec.tilt, n_points
        )
    if isinstance(spec, Polygon):
        return _discretize_polygon(np.asarray(spec.vertices, dtype=float), n_points)
    if isinstance(spec, Contour):
        return _discretize_contour(np.asarray(spec.points, dtype=float), n_points)
    raise ShapeError(f"unknown shape {spec!r}")


def normalize(curve: BoundaryCurve, kappa: float = 0.5) -> tuple[BoundaryCurve, FrameTransform]:
    """Recenter to the area centroid and rescale to perimeter <= 2*kappa.

    Returns the transformed curve and the frame (scale, shift) with
    new = (old - shift) * scale.  Compliant, centered input is returned
    unchanged with the identity frame.
    """
    if not 0.0 < kappa < 1.0:
        raise ValueError("kappa must lie in (0, 1)")
    coord_scale = float(np.max(np.abs(curve.nodes))) or 1.0
    compliant = curve.perimeter <= 2.0 * kappa
    centered = float(np.max(np.abs(curve.centroid))) <= 1e-13 * coord_scale
    if compliant and centered:
        return curve, FrameTransform.identity()

    s = 1.0 if compliant else 2.0 * kappa / curve.perimeter
    shift = curve.centroid.copy()
    out = BoundaryCurve(
        nodes=(curve.nodes - shift) * s,
        tangents=curve.tangents,
        normals=curve.normals,
        weights=curve.weights * s,
        curvature=curve.curvature / s,
        perimeter=curve.perimeter * s,
        centroid=np.zeros(2),
    )
    return out, FrameTransform(scale=s, shift=shift)
