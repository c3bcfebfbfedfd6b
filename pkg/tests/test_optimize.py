import math

import numpy as np
import pytest

from ulab import measures, optimize, states
from ulab.errors import OutOfRange

SQ2 = math.sqrt(2)


def test_optimizer_deterministic_bit_for_bit():
    a = optimize.maximize_lqu_separable_x(n_starts=6, seed=3)
    b = optimize.maximize_lqu_separable_x(n_starts=6, seed=3)
    assert a.to_json() == b.to_json()


def test_optimizer_reaches_half_with_few_starts():
    res = optimize.maximize_lqu_separable_x(n_starts=4, seed=7)
    assert abs(res.best_value - 0.5) < 1e-6
    assert res.feasible
    assert res.max_violation <= 1e-9
    assert res.n_starts == 4
    assert len(res.trace) == 4
    assert res.extras["active_w"] in ("w11", "w22", "w33")
    assert abs(res.extras["closed_form_value"] - res.best_value) < 1e-9


def test_optimizer_argmax_is_extremal_state():
    res = optimize.maximize_lqu_separable_x(n_starts=4, seed=7)
    target = states.rho_star_params().as_dict()
    for key, val in target.items():
        assert abs(res.best_params[key] - val) < 1e-6


def test_optimizer_never_below_reduced_family():
    red = optimize.solve_reduced_family()
    res = optimize.maximize_lqu_separable_x(n_starts=2, seed=1)
    assert res.best_value >= red.best_value - 1e-9


def test_optimizer_params_stay_feasible():
    res = optimize.maximize_lqu_separable_x(n_starts=5, seed=99)
    p = states.XStateParams(**res.best_params)
    p.validate()
    assert p.ppt()


def test_center_start_escapes_zero():
    center = states.XStateParams(0.25, 0.25, 0.25, 0.25, 0.0, 0.0)
    res = optimize.maximize_lqu_separable_x(n_starts=1, seed=5, initial=center)
    assert res.n_starts == 1
    assert res.best_value > 0.0


def test_solve_reduced_family_exact():
    res = optimize.solve_reduced_family()
    assert res.best_params["a11"] == (SQ2 + 1) / (4 * SQ2)
    assert abs(res.best_params["a33"] - (SQ2 - 1) / (4 * SQ2)) < 1e-16
    assert abs(res.extras["w_sigma_x"] - 0.5) < 1e-12
    assert abs(res.extras["w_sigma_z"] - 0.5) < 1e-12
    assert abs(res.best_value - 0.5) < 1e-12
    assert abs(res.extras["numeric_value"] - 0.5) < 1e-9
    assert res.feasible


def test_gd_optimizer_matches_lqu_argmax():
    res = optimize.maximize_gd_separable_x(n_starts=4, seed=7)
    assert abs(res.best_value - 0.125) < 1e-6
    target = states.rho_star_params().as_dict()
    for key, val in target.items():
        assert abs(res.best_params[key] - val) < 1e-3
    assert abs(res.extras["lqu_at_optimum"] - 0.5) < 1e-6


def test_bell_diagonal_separable_maximum():
    res = optimize.maximize_lqu_bell_diagonal_separable(grid=11, seed=7)
    assert abs(res.best_value - 1 / 3) < 1e-4
    assert res.feasible
    t = sorted(abs(res.best_params[k]) for k in ("t1", "t2", "t3"))
    assert all(abs(x - 1 / 3) < 1e-3 for x in t)
    w = res.extras["bell_weights"]
    assert abs(sum(w) - 1.0) < 1e-12
    with pytest.raises(OutOfRange):
        optimize.maximize_lqu_bell_diagonal_separable(grid=1)


def test_region_sweep_shape_and_endpoints():
    table = optimize.region_sweep(101)
    assert table.columns == ["a11", "w11", "w33", "lambda_max"]
    assert len(table.rows) == 101
    a11_0 = table.rows[0]
    assert abs(a11_0[1] - 1.0) < 1e-12 and abs(a11_0[2]) < 1e-12
    mid = table.rows[50]  # a11 = 0.25
    assert abs(mid[1]) < 1e-12 and abs(mid[2] - 1.0) < 1e-12
    with pytest.raises(OutOfRange):
        optimize.region_sweep(2)


def test_region_sweep_minimum_near_analytic_points():
    table = optimize.region_sweep(501)
    step = 0.5 / 500
    opt = table.meta["analytic_a11"]
    mirror = table.meta["analytic_a11_mirror"]
    argmin = table.meta["argmin_a11"]
    assert min(abs(argmin - opt), abs(argmin - mirror)) <= step / 2 + 1e-12
    # the kink has slope ~5.66, so the grid minimum sits within 3 steps of 1/2
    assert 0.5 - 1e-12 <= table.meta["min_lambda_max"] <= 0.5 + 3 * step


def test_region_sweep_agrees_with_closed_form():
    table = optimize.region_sweep(41)
    for row in table.rows:
        u, _, _, lam = row
        v = 0.5 - u
        c = math.sqrt(max(u * v, 0.0))
        p = states.XStateParams(u, u, v, v, c, c)
        assert abs((1.0 - lam) - measures.lqu_xstate_closed_form(p)) < 1e-8


def test_chi_sweep_contract():
    table = optimize.chi_sweep(21)
    assert tuple(table.columns) == optimize.UNCERTAINTY_COLUMNS
    assert len(table.rows) == 21
    gap = [r[6] for r in table.rows]
    neg = [r[7] for r in table.rows]
    assert abs(gap[0]) < 1e-8
    assert abs(neg[0] - 1.0) < 1e-10
    assert all(b - a >= -1e-8 for a, b in zip(gap, gap[1:]))
    assert all(b - a <= 1e-10 for a, b in zip(neg, neg[1:]))
    assert table.meta["gap_max_eps"] == 1.0
    assert abs(table.meta["crossing_eps"] - 0.714) < 0.01
    with pytest.raises(OutOfRange):
        optimize.chi_sweep(10)


def test_noisy_sweep_contract():
    table = optimize.noisy_sweep(21)
    assert tuple(table.columns) == optimize.UNCERTAINTY_COLUMNS
    assert table.meta["all_separable"] is True
    assert table.meta["gap_max_eps"] == 1.0
    assert max(r[7] for r in table.rows) < 1e-10
    with pytest.raises(OutOfRange):
        optimize.noisy_sweep(10)


def test_sweep_csv_header_exact():
    table = optimize.chi_sweep(11)
    first = table.to_csv().splitlines()[0]
    assert first == "eps,s_pb,s_qb,c,berta,pati,gap,negativity"


def test_bisect_crossing_needs_sign_change():
    with pytest.raises(ArithmeticError):
        optimize._bisect_crossing(lambda x: 1.0, 0.0, 1.0)
    root = optimize._bisect_crossing(lambda x: x - 0.3, 0.0, 1.0, tol=1e-6)
    assert abs(root - 0.3) < 1e-5


def test_conjecture_probe_deterministic():
    a = optimize.conjecture_probe(samples=40, k_max=4, seed=5)
    b = optimize.conjecture_probe(samples=40, k_max=4, seed=5)
    assert a == b
    assert a["max_lqu"] < 0.5
    assert a["violations"] == 0
    assert a["all_below_half"] is True


def test_conjecture_probe_pure_products_have_zero_lqu():
    out = optimize.conjecture_probe(samples=50, k_max=1, seed=2)
    assert out["max_lqu"] < 1e-8


def test_conjecture_probe_with_extremal_state():
    out = optimize.conjecture_probe(samples=20, k_max=4, seed=5, include_rho_star=True)
    assert out["samples"] == 21
    assert abs(out["max_lqu"] - 0.5) < 1e-12


def test_conjecture_probe_rejects_bad_args():
    with pytest.raises(OutOfRange):
        optimize.conjecture_probe(samples=0)
    with pytest.raises(OutOfRange):
        optimize.conjecture_probe(samples=10, k_max=0)


def test_parallel_map_env_handling(monkeypatch):
    monkeypatch.delenv("ULAB_THREADS", raising=False)
    assert optimize.parallel_map(lambda x: x * x, range(5)) == [0, 1, 4, 9, 16]
    monkeypatch.setenv("ULAB_THREADS", "2")
    assert optimize.parallel_map(lambda x: x * x, range(5)) == [0, 1, 4, 9, 16]
    monkeypatch.setenv("ULAB_THREADS", "abc")
    with pytest.raises(OutOfRange):
        optimize.parallel_map(lambda x: x, [1, 2])
    monkeypatch.setenv("ULAB_THREADS", "-1")
    with pytest.raises(OutOfRange):
        optimize.parallel_map(lambda x: x, [1, 2])


def test_threaded_sweep_matches_serial(monkeypatch):
    monkeypatch.delenv("ULAB_THREADS", raising=False)
    serial = optimize.chi_sweep(11).to_json()
    monkeypatch.setenv("ULAB_THREADS", "2")
    threaded = optimize.chi_sweep(11).to_json()
    assert serial == threaded
