import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eprbell import (
    CRITERIA_CSV_COLUMNS,
    EprParams,
    classify,
    conditional_variances,
    duan_sum,
    fidelity,
    make_state,
    mu_opt,
    mu_variances,
    nbar_threshold,
    report_to_csv,
    report_to_json,
    second_moments,
)

LN2_HALF = math.log(2.0) / 2.0

params_st = st.builds(
    EprParams,
    r=st.floats(0.0, 3.0),
    eta=st.floats(0.01, 1.0),
    nbar=st.floats(0.0, 2.0),
)


def state(r, eta, nbar=0.0):
    return make_state(EprParams(r=r, eta=eta, nbar=nbar))


def test_duan_sum_vacuum_boundary():
    s = state(0.0, 1.0)
    assert duan_sum(s) == 1.0
    assert not classify(s).duan_nonseparable  # strict inequality at the boundary


def test_duan_sum_three_db():
    assert duan_sum(state(LN2_HALF, 1.0)) == pytest.approx(0.5, abs=1e-15)


def test_duan_sum_equals_sigma_minus_sq():
    for r in np.linspace(0.0, 3.0, 20):
        for eta in np.linspace(0.05, 1.0, 20):
            s = state(float(r), float(eta), 0.3)
            assert duan_sum(s) == pytest.approx(s.sigma_minus_sq, abs=1e-12)


def test_duan_sum_at_thermal_threshold_is_one():
    for r, eta in [(0.3, 0.4), (1.0, 0.5), (2.0, 0.9), (0.07, 0.2)]:
        nbar = nbar_threshold(r, eta)
        assert duan_sum(state(r, eta, nbar)) == pytest.approx(1.0, abs=1e-12)


def test_nbar_threshold_values():
    assert nbar_threshold(0.0, 0.5) == 0.0
    assert nbar_threshold(0.0, 1.0) == 0.0  # no squeezing: never entangled
    assert nbar_threshold(1.5, 1.0) == math.inf
    assert nbar_threshold(1.0, 0.5) == pytest.approx(0.43233235838169365, abs=1e-12)
    assert nbar_threshold(1.0, 0.5) == pytest.approx(0.5 * (1 - math.exp(-2)) / 1.0, rel=1e-15)


def test_nbar_threshold_validation():
    with pytest.raises(ValueError, match="r"):
        nbar_threshold(-1.0, 0.5)
    with pytest.raises(ValueError, match="eta"):
        nbar_threshold(1.0, 1.5)


def test_mu_variances_mu_zero_is_single_mode_variance():
    s = state(0.8, 0.7, 0.1)
    m = second_moments(s)
    dx, dp = mu_variances(s, 0.0)
    assert dx == pytest.approx(m.var_x, rel=1e-15)
    assert dp == pytest.approx(m.var_p, rel=1e-15)


def test_mu_variances_mu_one_matches_duan_sum():
    for r, eta, nbar in [(0.0, 1.0, 0.0), (LN2_HALF, 1.0, 0.0), (1.2, 0.6, 0.5)]:
        s = state(r, eta, nbar)
        dx, dp = mu_variances(s, 1.0)
        assert dx == dp
        assert dx + dp == pytest.approx(duan_sum(s), abs=1e-15)
        assert dx == pytest.approx(s.sigma_minus_sq / 2.0, rel=1e-14)


def test_mu_variances_vacuum():
    s = state(0.0, 1.0)
    # mu = 0: the bare vacuum variances, product exactly on the 1/16 floor
    dx0, dp0 = mu_variances(s, 0.0)
    assert (dx0, dp0) == (0.25, 0.25)
    assert dx0 * dp0 == 1.0 / 16.0
    # mu = 1: the summed-quadrature variances
    dx1, dp1 = mu_variances(s, 1.0)
    assert (dx1, dp1) == (0.5, 0.5)


@settings(deadline=None, max_examples=80)
@given(params_st, st.floats(-2.0, 2.0))
def test_mu_variances_positive_and_match_moment_form(params, mu):
    s = make_state(params)
    m = second_moments(s)
    dx, dp = mu_variances(s, mu)
    assert dx > 0.0 and dp > 0.0
    naive = m.var_x * (1.0 + mu * mu) - 2.0 * mu * m.cov_xx
    assert dx == pytest.approx(naive, rel=1e-12, abs=1e-13)


def test_mu_variances_rejects_non_finite_mu():
    with pytest.raises(ValueError, match="mu"):
        mu_variances(state(0.5, 0.9), math.nan)


def test_conditional_variances_vacuum():
    assert conditional_variances(state(0.0, 1.0)) == (0.25, 0.25)


def test_conditional_variances_lossless_closed_form():
    # 1/(4 cosh 2r) per sector; product dips below the 1/16 floor for any r > 0
    for r in (0.1, LN2_HALF, 1.0, 2.5):
        cx, cp = conditional_variances(state(r, 1.0))
        assert cx == pytest.approx(1.0 / (4.0 * math.cosh(2 * r)), rel=1e-12)
        assert cx == cp
        assert cx * cp < 1.0 / 16.0


def test_conditional_variances_equal_optimal_mu_variances():
    for r in np.linspace(0.0, 3.0, 25):
        for eta in np.linspace(0.05, 1.0, 25):
            s = state(float(r), float(eta))
            cx, cp = conditional_variances(s)
            dx, dp = mu_variances(s, mu_opt(s))
            assert cx == pytest.approx(dx, abs=1e-12)
            assert cp == pytest.approx(dp, abs=1e-12)


def test_classify_three_db_lossless():
    rep = classify(state(LN2_HALF, 1.0))
    assert rep.duan_sum == pytest.approx(0.5, abs=1e-15)
    assert rep.duan_nonseparable
    assert rep.mu == pytest.approx(0.6, abs=1e-15)
    assert rep.dx_mu_sq == pytest.approx(0.2, abs=1e-14)
    assert rep.cond_var_x == pytest.approx(0.2, abs=1e-14)
    assert rep.gg_product == pytest.approx(0.04, abs=1e-14)
    assert rep.gg_hi_satisfied
    assert rep.gg_sum_satisfied
    assert rep.simon_mu_nonseparable
    assert rep.nbar_threshold == math.inf
    # at unit gain the sum sits exactly on the 1/2 boundary: not satisfied
    assert rep.gg_sum_mu1 == pytest.approx(0.5, abs=1e-15)
    assert not rep.gg_sum_satisfied_mu1
    assert not rep.gg_hi_satisfied_mu1


def test_classify_mu_override_recorded():
    rep = classify(state(LN2_HALF, 1.0), mu=1.0)
    assert rep.mu == 1.0
    assert rep.dx_mu_sq == pytest.approx(0.25, abs=1e-15)
    assert rep.cond_var_x == pytest.approx(0.2, abs=1e-14)  # still optimal inference


def test_gg_hi_needs_transmission_above_half():
    for r in np.linspace(0.01, 10.0, 200):
        assert not classify(state(float(r), 0.3)).gg_hi_satisfied
        # eta = 1/2 pins the product exactly on the 1/16 floor for every r
        assert classify(state(float(r), 0.5)).gg_product == pytest.approx(1.0 / 16.0, abs=1e-12)
    assert any(
        classify(state(float(r), 0.8)).gg_hi_satisfied for r in np.linspace(0.01, 10.0, 200)
    )


def test_mu_criterion_family_detects_all_squeezed_states():
    # the mu = 1 member of the weighted-sum criterion family is the plain sum
    # criterion, which detects every lossy squeezed state at nbar = 0
    for r in np.linspace(0.01, 6.0, 40):
        for eta in np.linspace(0.02, 1.0, 40):
            assert classify(state(float(r), float(eta))).duan_nonseparable


def test_simon_mu_nonseparable_at_optimal_gain():
    # the mu_opt slice detects throughout the moderate-loss region...
    for r in np.linspace(0.1, 6.0, 30):
        for eta in np.linspace(0.3, 1.0, 30):
            assert classify(state(float(r), float(eta))).simon_mu_nonseparable
    # ...but loses power against barely-nonseparable high-loss states, where
    # only the mu = 1 member still detects
    rep = classify(state(0.01, 0.02))
    assert not rep.simon_mu_nonseparable
    assert rep.duan_nonseparable


@settings(deadline=None, max_examples=100)
@given(params_st)
def test_classify_predicate_consistency(params):
    rep = classify(make_state(params))
    assert rep.duan_nonseparable == (rep.duan_sum < 1.0)
    assert rep.gg_hi_satisfied == (rep.gg_product < 1.0 / 16.0)
    assert rep.cond_var_x == rep.cond_var_p
    if rep.gg_hi_satisfied:
        assert rep.simon_mu_nonseparable
    if rep.gg_sum_satisfied_mu1:
        assert rep.duan_nonseparable


def test_duan_fidelity_boundary_coincidence():
    for r in np.linspace(0.0, 3.0, 50):
        for eta in np.linspace(0.05, 1.0, 50):
            s = state(float(r), float(eta), 0.4)
            assert (duan_sum(s) < 1.0) == (fidelity(s).fidelity > 0.5)


def test_duan_monotonicity():
    etas = 0.75
    sums_r = [duan_sum(state(float(r), etas, 0.2)) for r in np.linspace(0, 4, 40)]
    assert all(a >= b for a, b in zip(sums_r, sums_r[1:]))
    sums_n = [duan_sum(state(0.8, etas, float(n))) for n in np.linspace(0, 3, 40)]
    assert all(a <= b for a, b in zip(sums_n, sums_n[1:]))


def test_csv_row_layout():
    rep = classify(state(0.4, 0.9, 0.1))
    text = report_to_csv(rep)
    header, row = text.strip().split("\n")
    assert header == ",".join(CRITERIA_CSV_COLUMNS)
    cells = row.split(",")
    assert len(cells) == len(CRITERIA_CSV_COLUMNS)
    assert float(cells[0]) == 0.4
    assert cells[CRITERIA_CSV_COLUMNS.index("duan_nonseparable")] in ("true", "false")


def test_csv_unbounded_threshold_renders_inf():
    rep = classify(state(0.4, 1.0))
    row = report_to_csv(rep, header=False).strip().split(",")
    assert row[CRITERIA_CSV_COLUMNS.index("nbar_threshold")] == "inf"


def test_json_round_trip():
    rep = classify(state(0.4, 1.0))
    obj = json.loads(report_to_json(rep))
    assert obj["nbar_threshold"] == "inf"
    assert obj["duan_nonseparable"] is True
    assert obj["duan_sum"] == rep.duan_sum
    assert obj["gg_sum_mu1"] == rep.gg_sum_mu1
