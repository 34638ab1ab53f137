import numpy as np
import pytest
from scipy.integrate import quad

from gpt2d import (
    Contour,
    Disk,
    Ellipse,
    Polygon,
    ShapeError,
    discretize,
    normalize,
    rotate_shape,
    shape_from_dict,
    shape_to_dict,
    signed_area,
)


def test_disk_perimeter_and_curvature():
    curve = discretize(Disk(center=(0.0, 0.0), radius=0.5), 256)
    assert abs(curve.perimeter - np.pi) < 1e-10
    assert np.allclose(curve.curvature, 2.0, atol=1e-12)


def test_degenerate_ellipse_matches_disk():
    d = discretize(Disk(center=(0.0, 0.0), radius=0.5), 128)
    e = discretize(Ellipse(center=(0.0, 0.0), semiaxis_a=0.5, semiaxis_b=0.5), 128)
    assert np.allclose(d.nodes, e.nodes, atol=1e-14)
    assert np.allclose(d.weights, e.weights, atol=1e-16)


def test_thin_ellipse_perimeter_vs_adaptive_quadrature():
    a, b = 0.01, 1.0
    curve = discretize(Ellipse(center=(0.0, 0.0), semiaxis_a=a, semiaxis_b=b), 512)
    # independent oracle: adaptive quadrature of the arclength integrand
    exact, err = quad(
        lambda t: np.hypot(a * np.sin(t), b * np.cos(t)), 0.0, 2.0 * np.pi, limit=200
    )
    assert err < 1e-7  # oracle uncertainty well below the comparison tolerance
    assert abs(curve.perimeter - exact) / exact < 1e-6


@pytest.mark.parametrize(
    "spec",
    [
        Disk(center=(1.0, -2.0), radius=0.7),
        Ellipse(center=(0.5, 0.5), semiaxis_a=0.8, semiaxis_b=0.2, tilt=0.7),
        Polygon(vertices=((0, 0), (2, 0), (2, 1), (0.5, 1.5))),
        Contour(points=tuple((np.cos(t) * (1 + 0.2 * np.sin(3 * t)),
                              np.sin(t) * (1 + 0.2 * np.sin(3 * t)))
                             for t in np.linspace(0, 2 * np.pi, 200, endpoint=False))),
    ],
)
def test_structural_invariants(spec):
    curve = discretize(spec, 128)
    curve.validate()
    assert abs(curve.weights.sum() - curve.perimeter) <= 1e-12 * curve.perimeter
    assert signed_area(curve) > 0
    # closed: cyclic ordering without endpoint duplication
    assert np.linalg.norm(curve.nodes[0] - curve.nodes[-1]) > 0


def test_perimeter_exact_at_all_resolutions():
    # panel arclengths come from per-panel Gauss quadrature, so the perimeter
    # is exact to roundoff at any point count (stronger than second-order
    # midpoint convergence)
    a, b = 1.0, 0.4
    exact, _ = quad(lambda t: np.hypot(a * np.sin(t), b * np.cos(t)), 0, 2 * np.pi, limit=200)
    for n in (16, 32, 64, 128):
        curve = discretize(Ellipse(center=(0.0, 0.0), semiaxis_a=a, semiaxis_b=b), n)
        assert abs(curve.perimeter - exact) / exact < 1e-12


def test_normalize_unit_disk():
    curve = discretize(Disk(center=(0.0, 0.0), radius=1.0), 128)
    out, frame = normalize(curve, kappa=0.5)
    assert abs(frame.scale - 1.0 / (2.0 * np.pi)) < 1e-14
    assert abs(out.perimeter - 1.0) < 1e-12
    assert np.max(np.abs(out.centroid)) < 1e-12


def test_normalize_identity_on_compliant_curve():
    curve = discretize(Disk(center=(0.0, 0.0), radius=0.1), 64)
    out, frame = normalize(curve, kappa=0.5)
    assert frame.is_identity
    assert out is curve


def test_normalize_recenters_offcenter_disk():
    curve = discretize(Disk(center=(3.0, 4.0), radius=0.05), 128)
    out, frame = normalize(curve, kappa=0.5)
    assert np.max(np.abs(out.centroid)) < 1e-10
    assert np.allclose(frame.shift, [3.0, 4.0], atol=1e-10)


def test_normalize_idempotent():
    curve = discretize(Ellipse(center=(2.0, -1.0), semiaxis_a=3.0, semiaxis_b=1.0), 128)
    once, frame = normalize(curve, kappa=0.5)
    twice, frame2 = normalize(once, kappa=0.5)
    assert frame2.is_identity
    assert twice is once
    assert not frame.is_identity


def test_normalize_kappa_range():
    curve = discretize(Disk(center=(0.0, 0.0), radius=0.1), 64)
    with pytest.raises(ValueError):
        normalize(curve, kappa=1.5)


def test_signed_area_disk():
    curve = discretize(Disk(center=(0.0, 0.0), radius=0.5), 256)
    assert abs(signed_area(curve) - np.pi / 4.0) < 1e-10


def test_signed_area_unit_square():
    square = Polygon(vertices=((0, 0), (1, 0), (1, 1), (0, 1)))
    curve = discretize(square, 128)
    assert abs(signed_area(curve) - 1.0) < 1e-12


def test_signed_area_thin_ellipse():
    # the panel rule needs ~1k points to resolve the high-curvature tips
    curve = discretize(Ellipse(center=(0.0, 0.0), semiaxis_a=0.01, semiaxis_b=1.0), 1024)
    exact = np.pi * 0.01 * 1.0
    assert abs(signed_area(curve) - exact) / exact < 1e-4


def test_quarter_turn_rotation_covariance_disk():
    n = 64
    spec = Disk(center=(0.0, 0.0), radius=0.5)
    nodes = discretize(spec, n).nodes
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])  # +90 degrees
    rotated_nodes = nodes @ rot.T
    assert np.allclose(rotated_nodes, np.roll(nodes, -n // 4, axis=0), atol=1e-12)


def test_rotation_covariance_ellipse():
    spec = Ellipse(center=(0.0, 0.0), semiaxis_a=0.8, semiaxis_b=0.3, tilt=0.2)
    phi = 0.3
    base = discretize(spec, 96)
    rotated = discretize(rotate_shape(spec, phi), 96)
    c, s = np.cos(phi), np.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    assert np.allclose(rotated.nodes, base.nodes @ rot.T, atol=1e-12)
    assert np.allclose(rotated.tangents, base.tangents @ rot.T, atol=1e-12)
    assert np.allclose(rotated.normals, base.normals @ rot.T, atol=1e-12)


def test_self_intersecting_polygon_rejected():
    bowtie = ((0, 0), (1, 1), (1, 0), (0, 1))
    with pytest.raises(ShapeError):
        Polygon(vertices=bowtie)


def test_too_few_points_rejected():
    with pytest.raises(ShapeError):
        discretize(Disk(center=(0.0, 0.0), radius=1.0), 4)


def test_invalid_shape_parameters_rejected():
    with pytest.raises(ShapeError):
        Disk(center=(0.0, 0.0), radius=-1.0)
    with pytest.raises(ShapeError):
        Ellipse(center=(0.0, 0.0), semiaxis_a=0.0, semiaxis_b=1.0)
    with pytest.raises(ShapeError):
        Polygon(vertices=((0, 0), (1, 1)))
    with pytest.raises(ShapeError):
        Contour(points=((0, 0), (1, 0), (2, 0)))  # zero area


def test_shape_roundtrip_through_documents():
    specs = [
        Disk(center=(1.0, 2.0), radius=0.5),
        Ellipse(center=(0.0, 0.0), semiaxis_a=2.0, semiaxis_b=1.0, tilt=0.3),
        Polygon(vertices=((0, 0), (1, 0), (1, 1))),
        Contour(points=((0, 0), (1, 0), (1, 1), (0, 1))),
    ]
    for spec in specs:
        assert shape_from_dict(shape_to_dict(spec)) == spec
    with pytest.raises(ShapeError):
        shape_from_dict({"type": "pentagon"})
