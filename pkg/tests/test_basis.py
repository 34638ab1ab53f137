import numpy as np
import pytest

from gpt2d import BasisIndex, eval_P, eval_Q, eval_dtau, eval_grad
from gpt2d.basis import MAX_DEGREE, derivative_tables, trace_table


def test_index_bijection():
    seen = set()
    for i in range(1, 21):
        idx = BasisIndex(i)
        assert idx.degree == (i + 1) // 2
        assert idx.parity == ("a" if i % 2 else "b")
        seen.add((idx.degree, idx.parity))
    assert len(seen) == 20


def test_eval_P_low_degree_values():
    assert eval_P(1, np.array([0.3, 0.7])) == pytest.approx(0.3)
    assert eval_P(4, np.array([1.0, 1.0])) == pytest.approx(2.0)   # Im (1+i)^2
    assert eval_P(3, np.array([1.0, 1.0])) == pytest.approx(0.0)   # Re (1+i)^2


def test_eval_grad_values():
    # index 5 is the degree-3 cosine polynomial: d/dz z^3 = 3 z^2
    assert np.allclose(eval_grad(5, np.array([1.0, 0.0])), [3.0, 0.0])
    for x in np.random.default_rng(1).normal(size=(5, 2)):
        assert np.allclose(eval_grad(1, x), [1.0, 0.0])


def test_eval_grad_matches_finite_differences():
    # independent oracle: central differences of eval_P
    rng = np.random.default_rng(7)
    h = 1e-6
    for i in (2, 4, 5, 8, 11):
        x = rng.normal(scale=0.5, size=2)
        fd = np.array([
            (eval_P(i, x + [h, 0]) - eval_P(i, x - [h, 0])) / (2 * h),
            (eval_P(i, x + [0, h]) - eval_P(i, x - [0, h])) / (2 * h),
        ])
        assert np.allclose(eval_grad(i, x), fd, atol=1e-8)


def test_eval_Q_on_circle():
    r = 0.8
    theta = np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
    x = r * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    nu = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    assert np.allclose(eval_Q(1, x, nu), np.cos(theta), atol=1e-14)
    assert np.allclose(eval_Q(2, x, nu), np.sin(theta), atol=1e-14)
    # radial derivative of r^m cos(m theta) is m r^(m-1) cos(m theta)
    for m in (2, 3, 5):
        expect = m * r ** (m - 1) * np.cos(m * theta)
        assert np.allclose(eval_Q(2 * m - 1, x, nu), expect, atol=1e-12)


def test_eval_dtau_on_circle():
    r = 0.8
    theta = np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
    x = r * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    tau = np.stack([-np.sin(theta), np.cos(theta)], axis=1)
    assert np.allclose(eval_dtau(1, x, tau), -np.sin(theta), atol=1e-14)
    for m in (2, 4):
        # angular derivative: -m r^(m-1) sin(m theta) for the cosine family
        assert np.allclose(eval_dtau(2 * m - 1, x, tau),
                           -m * r ** (m - 1) * np.sin(m * theta), atol=1e-12)
        assert np.allclose(eval_dtau(2 * m, x, tau),
                           m * r ** (m - 1) * np.cos(m * theta), atol=1e-12)


def test_frame_decomposition_recovers_gradient():
    rng = np.random.default_rng(3)
    x = rng.normal(size=2)
    ang = rng.uniform(0, 2 * np.pi)
    tau = np.array([np.cos(ang), np.sin(ang)])
    nu = np.array([tau[1], -tau[0]])
    for i in (1, 2, 5, 6, 9):
        g = eval_dtau(i, x, tau) * tau + eval_Q(i, x, nu) * nu
        assert np.allclose(g, eval_grad(i, x), atol=1e-12)


def test_discrete_harmonicity():
    h = 1e-4
    rng = np.random.default_rng(11)
    for i in (3, 6, 9, 12):
        x = rng.normal(scale=0.8, size=2)
        lap = (
            eval_P(i, x + [h, 0]) + eval_P(i, x - [h, 0])
            + eval_P(i, x + [0, h]) + eval_P(i, x - [0, h])
            - 4.0 * eval_P(i, x)
        ) / h**2
        assert abs(lap) < 1e-5


def test_degree_homogeneity():
    rng = np.random.default_rng(5)
    for i in (1, 4, 7, 12):
        m = BasisIndex(i).degree
        x = rng.normal(size=2)
        for s in (0.25, 2.0, 7.5):
            lhs = eval_P(i, s * x)
            rhs = s**m * eval_P(i, x)
            assert abs(lhs - rhs) <= 1e-12 * max(abs(rhs), 1e-30)


def test_quarter_turn_rotation_identity():
    # composing with a quarter turn multiplies z^m by i^m
    rng = np.random.default_rng(9)
    rot90 = np.array([[0.0, -1.0], [1.0, 0.0]])
    for m in (1, 2, 3, 5):
        x = rng.normal(size=2)
        z = complex(x[0], x[1])
        expect = ((1j**m) * z**m).real
        assert eval_P(2 * m - 1, rot90 @ x) == pytest.approx(expect, abs=1e-12)


def test_degree_cap():
    with pytest.raises(ValueError):
        eval_P(2 * (MAX_DEGREE + 1) - 1, np.array([0.5, 0.5]))
    with pytest.raises(ValueError):
        trace_table(MAX_DEGREE + 1, np.zeros((4, 2)))


def test_tables_match_pointwise_evaluation():
    rng = np.random.default_rng(13)
    nodes = rng.normal(scale=0.5, size=(20, 2))
    ang = rng.uniform(0, 2 * np.pi, size=20)
    tau = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    nu = np.stack([tau[:, 1], -tau[:, 0]], axis=1)
    P = trace_table(4, nodes)
    DT, Q = derivative_tables(4, nodes, tau, nu)
    for i in range(1, 9):
        assert np.allclose(P[i - 1], eval_P(i, nodes), atol=1e-13)
        assert np.allclose(DT[i - 1], eval_dtau(i, nodes, tau), atol=1e-13)
        assert np.allclose(Q[i - 1], eval_Q(i, nodes, nu), atol=1e-13)
