"""Fisher information, Cramer-Rao machinery, radius estimation and the
critical-dimension gap analysis."""

import json
import math

import numpy as np
import pytest

from hyperchord import inference, sampling, specfun
from hyperchord.chord import ChordDistribution, c_n
from conftest import golden_section_argmin

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------- fisher closed


def test_fisher_closed_values():
    assert inference.fisher_closed(5, 1.0) == 80.0
    assert inference.fisher_closed(7, 1.0) == 56.0
    assert inference.fisher_closed(8, 1.0) == 56.0
    # 4*5*6/2 / r^2 at r=2
    assert inference.fisher_closed(6, 2.0) == pytest.approx(15.0, rel=1e-15)


def test_fisher_closed_domain():
    for n in (2, 3, 4):
        with pytest.raises(ValueError):
            inference.fisher_closed(n, 1.0)
    with pytest.raises(ValueError):
        inference.fisher_closed(10, 0.0)


def test_fisher_closed_asymptote():
    # I(r) ~ 4n/r^2 for large dimension
    assert inference.fisher_closed(10**4, 1.0) / (4.0 * 10**4) == pytest.approx(1.0, abs=0.01)


# ---------------------------------------------------------------- fisher numeric


def test_fisher_numeric_matches_closed():
    res = inference.fisher_numeric(10, 1.0)
    assert res.converged
    assert res.value == pytest.approx(60.0, rel=1e-8)
    res = inference.fisher_numeric(5, 3.0)
    assert res.value == pytest.approx(80.0 / 9.0, rel=1e-8)


def test_fisher_numeric_radius_scaling():
    vals = [inference.fisher_numeric(9, r).value * r * r for r in (0.5, 1.0, 10.0)]
    for v in vals[1:]:
        assert v == pytest.approx(vals[0], rel=1e-9)


def test_fisher_numeric_n2_constant_score():
    # for n=2 the score is identically -2/r, so the information is 4/r^2
    res = inference.fisher_numeric(2, 1.0)
    assert res.converged
    assert res.value == pytest.approx(4.0, rel=1e-10)
    res = inference.fisher_numeric(2, 2.0)
    assert res.value == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("n", [3, 4])
def test_fisher_numeric_divergent_low_dimensions(n):
    # the integrand behaves like (pi - theta)^(n-5) at the antipodal end, so
    # the estimate keeps growing with the subdivision budget
    estimates = [
        inference.fisher_numeric(n, 1.0, specfun.QuadratureSpec(1e-10, 1e-8, budget)).value
        for budget in (50, 500, 5000)
    ]
    assert estimates[0] < estimates[1] < estimates[2]


def test_fisher_numeric_zero_mean_score():
    # regularity: the score integrates to zero against the density
    for n in (5, 9, 17, 30):
        dist = ChordDistribution(n, 1.0)
        norm = sampling.angular_norm(n)

        def integrand(theta, n=n):
            half_sq = np.cos(0.5 * theta) ** 2
            score_r = -2.0 - (n - 2) * np.cos(theta) / half_sq
            return norm * np.sin(theta) ** (n - 1) * score_r

        res = specfun.integrate(integrand, 0.0, math.pi, specfun.QuadratureSpec(1e-12, 1e-12, 8000))
        assert abs(res.value) <= 1e-9
        # the same integral in chord-length coordinates
        res_x = specfun.integrate(
            lambda x: dist.pdf(x) * dist.score(x), 1e-12, 2.0 - 1e-12,
            specfun.QuadratureSpec(1e-11, 1e-11, 8000),
        )
        assert abs(res_x.value) <= 1e-9


# ---------------------------------------------------------------- argmin


def test_fisher_argmin_continuous():
    result = inference.fisher_argmin()
    assert result.continuous == pytest.approx(4.0 + 2.0 * math.sqrt(3.0), abs=1e-15)
    # verified independently by golden-section search on the dimension profile
    located = golden_section_argmin(lambda x: x * (x - 1.0) / (x - 4.0), 4.5, 30.0, tol=1e-12)
    assert abs(located - result.continuous) <= 1e-6


def test_fisher_argmin_integer_tie():
    result = inference.fisher_argmin()
    assert result.integers == (7, 8)
    assert result.value_at_integers == 56.0
    table = {m: inference.fisher_closed(m, 1.0) for m in range(5, 31)}
    assert min(table.values()) == 56.0
    assert sorted(m for m, v in table.items() if v == 56.0) == [7, 8]


# ---------------------------------------------------------------- crlb / estimator variance


def test_crlb_values():
    assert inference.crlb(5, 1.0, 1) == pytest.approx(0.0125, rel=1e-15)
    assert inference.crlb(5, 1.0, 100) == pytest.approx(1.25e-4, rel=1e-15)
    assert inference.crlb(8, 2.0, 1) == pytest.approx(4.0 / 56.0, rel=1e-15)


def test_crlb_domain():
    with pytest.raises(ValueError):
        inference.crlb(4, 1.0, 10)
    with pytest.raises(ValueError):
        inference.crlb(10, 1.0, 0)


def test_estimator_variance_closed_values():
    # c_2 = 4/3: (2 - 16/9)/(16/9) = 1/8
    assert inference.estimator_variance_closed(2, 1.0, 1) == pytest.approx(0.125, rel=1e-12)
    v1 = inference.estimator_variance_closed(9, 3.0, 1)
    v10 = inference.estimator_variance_closed(9, 3.0, 10)
    assert v10 == pytest.approx(v1 / 10.0, rel=1e-15)


def test_variance_bound_ratio_tends_to_one():
    # c_n = sqrt(2)(1 - 1/(8n)) gives 2 - c_n^2 ~ 1/(2n), so the mean-based
    # estimator is asymptotically efficient: Var/CRLB -> 1
    ratio = inference.estimator_variance_closed(1000, 1.0, 1) / inference.crlb(1000, 1.0, 1)
    assert ratio == pytest.approx(1.0031, abs=2e-4)
    ratios = [
        inference.estimator_variance_closed(n, 1.0, 1) / inference.crlb(n, 1.0, 1)
        for n in (10, 100, 1000, 10000)
    ]
    assert ratios[0] > ratios[1] > ratios[2] > ratios[3] > 1.0


def test_cramer_rao_inequality_strict():
    for n in range(5, 201):
        var = inference.estimator_variance_closed(n, 1.0, 7)
        bound = inference.crlb(n, 1.0, 7)
        assert var > bound


# ---------------------------------------------------------------- estimate_radius


def test_estimate_radius_concentrated_batch():
    # every value at the median; at n=200 the mean ratio is within 1e-3 of
    # sqrt(2) so the estimate lands next to the true radius
    values = np.full(64, SQRT2 * 3.0)
    batch = sampling.SampleBatch(200, 3.0, "beta_transform", 0, 0, values)
    report = inference.estimate_radius(batch, r_true=3.0)
    assert abs(report.r_hat - 3.0) <= 3.0 * 1e-3
    assert not report.plug_in


def test_estimate_radius_plug_in_flag():
    batch = sampling.sample_chords_beta_transform(10, 2.0, 5000, sampling.RngState(1, 0))
    oracle = inference.estimate_radius(batch, r_true=2.0)
    plug = inference.estimate_radius(batch)
    assert not oracle.plug_in
    assert plug.plug_in
    assert oracle.var_closed_form == pytest.approx(
        inference.estimator_variance_closed(10, 2.0, 5000), rel=1e-15
    )
    assert plug.var_closed_form == pytest.approx(
        inference.estimator_variance_closed(10, plug.r_hat, 5000), rel=1e-15
    )
    assert 0.0 < oracle.efficiency <= 1.0


def test_estimate_radius_low_dimension_flag():
    batch = sampling.sample_chords_beta_transform(3, 1.0, 1000, sampling.RngState(2, 0))
    report = inference.estimate_radius(batch, r_true=1.0)
    assert report.crlb is None
    assert report.efficiency is None
    assert "n > 4" in report.note
    assert report.var_closed_form > 0.0


def test_estimation_report_serializes():
    batch = sampling.sample_chords_beta_transform(8, 1.0, 100, sampling.RngState(3, 0))
    report = inference.estimate_radius(batch, r_true=1.0)
    payload = json.dumps(report.to_dict())
    back = json.loads(payload)
    assert back["n"] == 8
    assert back["sample_count"] == 100
    assert set(back) >= {"r_hat", "var_closed_form", "crlb", "efficiency", "plug_in"}


def test_replicate_estimates_unbiased():
    reports, summary = inference.replicate_estimates(10, 2.0, 10000, 30, seed=5)
    assert len(reports) == 30
    assert abs(summary.bias) <= 4.0 * summary.bias_se
    assert summary.crlb < summary.var_closed_form
    # deterministic aggregation
    _, summary2 = inference.replicate_estimates(10, 2.0, 10000, 30, seed=5)
    assert summary2 == summary


# ---------------------------------------------------------------- gap analysis


def test_gap_table_monotone():
    rows = inference.gap_table(2, 200)
    assert rows[0].n == 2 and rows[-1].n == 200
    gaps = [row.gap for row in rows]
    assert all(g > 0.0 for g in gaps)
    assert all(g1 > g2 for g1, g2 in zip(gaps, gaps[1:]))


def test_gap_asymptotic_oracle():
    rows = {row.n: row for row in inference.gap_table(2, 200)}
    for n in (19, 60, 200):
        oracle = 1.0 / (4.0 * SQRT2 * n)
        assert rows[n].gap == pytest.approx(oracle, rel=0.05)


def test_gap_equivalent_forms():
    for row in inference.gap_table(2, 200):
        direct = row.gap**2 / (2.0 - row.c_n**2)
        factored = row.gap / (SQRT2 + row.c_n)
        assert direct == pytest.approx(factored, rel=1e-12)


def test_detect_saturation_default():
    table = inference.gap_table(2, 60)
    assert inference.detect_saturation(table) == 19
    eps = inference.default_saturation_epsilon()
    rows = {row.n: row for row in table}
    assert rows[18].gap > eps > rows[19].gap


def test_detect_saturation_custom_epsilon():
    table = inference.gap_table(2, 60)
    assert inference.detect_saturation(table, epsilon=1.0) == 2
    assert inference.detect_saturation(table, epsilon=1e-12) is None
    assert inference.detect_saturation(table, epsilon=rows_gap(table, 30)) == 31


def rows_gap(table, n):
    return next(row.gap for row in table if row.n == n)


def test_gap_row_serializes():
    row = inference.gap_table(19, 19)[0]
    payload = row.to_dict()
    assert payload["n"] == 19
    assert payload["c_n"] == pytest.approx(1.4049475047439225, rel=1e-12)
    assert payload["gap"] == pytest.approx(9.266058e-3, rel=1e-5)


def test_gap_table_validation():
    with pytest.raises(ValueError):
        inference.gap_table(1, 10)
    with pytest.raises(ValueError):
        inference.gap_table(10, 5)
