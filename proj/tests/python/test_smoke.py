import numpy as np
import pytest

import tvwasserstein as tvw


def test_grid_and_ball():
    g = tvw.make_grid(64, (-1.0, -1.0), 2.0)
    assert g.spacing == pytest.approx(2.0 / 64)
    rho = tvw.rasterize_ball(g, (0.0, 0.0), 0.5)
    assert rho.shape == (64, 64)
    assert tvw.mass(g, rho) == pytest.approx(1.0)


def test_tv_and_prox():
    g = tvw.make_grid(32, (0.0, 0.0), 1.0)
    u = np.zeros((32, 32))
    u[10, 12] = 1.0
    assert tvw.tv_value(g, u) == pytest.approx((2 + np.sqrt(2)) / 32)
    rng = np.random.default_rng(0)
    data = rng.uniform(-1, 1, (32, 32))
    out = tvw.prox_tv(g, data, 0.05)
    assert out["converged"]
    assert tvw.tv_value(g, out["u"]) < tvw.tv_value(g, data)
    assert np.all(tvw.rof_nonneg(g, data, 0.05) >= 0)


def test_transport():
    g = tvw.make_grid(32, (-1.0, -1.0), 2.0)
    a = tvw.rasterize_ball(g, (0.0, 0.0), 0.6)
    b = tvw.rasterize_ball(g, (0.0, 0.0), 0.3)
    w = tvw.w2_entropic(g, a, b, eps_final=1e-4 * 8)
    assert w == pytest.approx(tvw.w2_concentric_balls(0.6, 0.3, 2), rel=0.1)
    c = tvw.make_grid(4, (0.0, 0.0), 1.0)
    mu = np.zeros((4, 4))
    nu = np.zeros((4, 4))
    mu[0, 0] = mu[0, 1] = 8.0
    nu[2, 0] = nu[2, 1] = 8.0
    assert tvw.w2_exact(c, mu, nu) == pytest.approx(0.25)


def test_ball_oracle_and_halpern():
    assert tvw.optimal_radius(1.0, 0.2) == pytest.approx(1.405167, rel=1e-6)
    assert tvw.halpern_beta(1, 0.0) == 0.5
    assert tvw.halpern_beta(2, 0.5) == 0.625


def test_solve_tvw_small():
    g = tvw.make_grid(16, (-1.0, -1.0), 2.0)
    rho0 = tvw.rasterize_ball(g, (0.0, 0.0), 0.5)
    out = tvw.solve_tvw(g, rho0, tau=0.05, fp_tol=1e-3, max_outer=200)
    assert out["rho1"].shape == (16, 16)
    assert out["rho1"].min() >= 0
    assert out["rho1"].sum() * g.spacing ** 2 == pytest.approx(1.0, abs=1e-6)
    assert "r_nonneg" in out["el"]


def test_dither():
    bits = tvw.floyd_steinberg(np.full((64, 64), 0.5))
    assert abs(int(bits.sum()) - 2048) <= 1
