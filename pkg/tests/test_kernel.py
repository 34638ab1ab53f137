import numpy as np
import pytest

from gpt2d import Disk, Ellipse, discretize, normalize
from gpt2d._accel import single_layer_weighted
from gpt2d.kernel import (
    SingularPointError,
    dgamma_dnux,
    dgamma_dnuy,
    diagonal_double_layer,
    diagonal_log_panel,
    diagonal_log_weight,
    gamma,
)

TWO_PI = 2.0 * np.pi


def test_gamma_reference_values():
    assert gamma(np.array([1.0, 0.0]), np.array([0.0, 0.0])) == pytest.approx(0.0)
    assert gamma(np.array([np.e, 0.0]), np.array([0.0, 0.0])) == pytest.approx(1.0 / TWO_PI)


def test_gamma_symmetry():
    rng = np.random.default_rng(2)
    for _ in range(10):
        x, y = rng.normal(size=2), rng.normal(size=2)
        assert gamma(x, y) == pytest.approx(gamma(y, x), rel=1e-15)


def test_gamma_singular_point():
    x = np.array([0.3, 0.4])
    with pytest.raises(SingularPointError):
        gamma(x, x)
    with pytest.raises(SingularPointError):
        dgamma_dnux(x, np.array([1.0, 0.0]), x)


def test_double_layer_constant_on_circle():
    # on a circle (x-y).nu_x = |x-y|^2 / (2r), so the kernel is 1/(4 pi r)
    r = 0.8
    rng = np.random.default_rng(4)
    for _ in range(20):
        t1, t2 = rng.uniform(0, TWO_PI, size=2)
        if abs(t1 - t2) < 1e-9:
            continue
        x = r * np.array([np.cos(t1), np.sin(t1)])
        y = r * np.array([np.cos(t2), np.sin(t2)])
        nu_x = x / r
        nu_y = y / r
        assert dgamma_dnux(x, nu_x, y) == pytest.approx(1.0 / (4 * np.pi * r), rel=1e-12)
        assert dgamma_dnuy(x, y, nu_y) == pytest.approx(1.0 / (4 * np.pi * r), rel=1e-12)


def test_double_layer_orthogonal_normal():
    x, y = np.array([1.0, 1.0]), np.array([0.0, 0.0])
    nu = np.array([1.0, -1.0]) / np.sqrt(2.0)
    assert dgamma_dnux(x, nu, y) == pytest.approx(0.0, abs=1e-15)


def test_diagonal_double_layer_continuity_on_circle():
    # the coincident limit must continue the (constant) circle kernel value;
    # the pair is symmetric about angle zero so x - y is evaluated without
    # catastrophic cancellation
    r = 0.7
    half = 0.5e-6 / r
    x = r * np.array([np.cos(-half), np.sin(-half)])
    y = r * np.array([np.cos(half), np.sin(half)])
    near = dgamma_dnux(x, x / r, y)
    limit = diagonal_double_layer(1.0 / r)
    assert limit == pytest.approx(near, rel=1e-6)
    assert limit == pytest.approx(1.0 / (4 * np.pi * r), rel=1e-12)


def test_diagonal_double_layer_straight_and_orientation():
    assert diagonal_double_layer(0.0) == 0.0
    assert diagonal_double_layer(-2.0) == -diagonal_double_layer(2.0)


def test_diagonal_log_panel_values():
    assert diagonal_log_panel(2.0) == pytest.approx(-1.0 / np.pi, rel=1e-15)
    # ln(h/2) = 1 makes the panel integral vanish
    assert diagonal_log_panel(2.0 * np.e) == pytest.approx(0.0, abs=1e-15)


def _circle_single_layer_error(n: int, r: float, diag_fn) -> float:
    theta = (np.arange(n) + 0.5) * TWO_PI / n
    nodes = r * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    h = TWO_PI * r / n
    dx = nodes[:, 0, None] - nodes[None, :, 0]
    dy = nodes[:, 1, None] - nodes[None, :, 1]
    r2 = dx**2 + dy**2
    np.fill_diagonal(r2, 1.0)
    G = np.log(r2) / (2 * TWO_PI) * h
    np.fill_diagonal(G, diag_fn(h))
    values = G @ np.ones(n)  # single layer of the constant density
    return float(np.max(np.abs(values - r * np.log(r))))


def test_log_weight_makes_circle_single_layer_exact():
    # the locally corrected weight integrates constant densities on circles
    # exactly; error is pure roundoff at every resolution (far better than
    # first order)
    for r in (1.0, 0.7):
        for n in (64, 256):
            assert _circle_single_layer_error(n, r, diagonal_log_weight) < 1e-13


def test_log_panel_alone_is_first_order():
    # derived envelope: with the bare straight-panel integral the remaining
    # punctured-midpoint error is exactly r (ln pi - 1) / n
    for r in (1.0, 0.7):
        for n in (64, 256):
            err = _circle_single_layer_error(n, r, diagonal_log_panel)
            assert err == pytest.approx(r * (np.log(np.pi) - 1.0) / n, rel=1e-6)


def test_log_weight_is_shifted_panel_integral():
    for h in (0.01, 0.3, 1.5):
        shift = h * (np.log(np.pi) - 1.0) / TWO_PI
        assert diagonal_log_weight(h) == pytest.approx(diagonal_log_panel(h) - shift, rel=1e-14)


@pytest.mark.parametrize(
    "spec",
    [
        Disk(center=(0.0, 0.0), radius=0.4),
        Ellipse(center=(0.0, 0.0), semiaxis_a=1.0, semiaxis_b=0.3),
    ],
)
def test_single_layer_negative_definite_on_normalized_curves(spec):
    curve, _ = normalize(discretize(spec, 128), kappa=0.5)
    G = single_layer_weighted(curve.nodes, curve.weights)
    eigs = np.linalg.eigvalsh(0.5 * (G + G.T))
    assert np.max(eigs) < 0.0


def test_gamma_harmonic_away_from_singularity():
    h = 1e-4
    y = np.array([0.0, 0.0])
    rng = np.random.default_rng(8)
    for _ in range(5):
        x = rng.normal(size=2)
        if np.linalg.norm(x - y) < 0.3:
            x = x + 0.5
        lap = (
            gamma(x + [h, 0], y) + gamma(x - [h, 0], y)
            + gamma(x + [0, h], y) + gamma(x - [0, h], y)
            - 4.0 * gamma(x, y)
        ) / h**2
        assert abs(lap) < 1e-6


def test_mean_value_property():
    # average of gamma(., y) over a small circle equals the center value
    y = np.array([2.0, 1.0])
    center = np.array([0.2, -0.3])
    rho = 0.5
    t = np.linspace(0, TWO_PI, 512, endpoint=False)
    ring = center + rho * np.stack([np.cos(t), np.sin(t)], axis=1)
    avg = np.mean([gamma(p, y) for p in ring])
    assert avg == pytest.approx(gamma(center, y), abs=1e-10)
