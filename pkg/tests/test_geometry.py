"""Unit-sphere volume and surface-area facts."""

import math

import pytest

from hyperchord import geometry


def test_volume_values():
    assert geometry.volume(2) == pytest.approx(math.pi, rel=1e-13)
    assert geometry.volume(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-13)
    # pi^2.5 / Gamma(3.5) with Gamma(3.5) = 15 sqrt(pi)/8
    assert geometry.volume(5) == pytest.approx(
        math.pi**2.5 / (15.0 * math.sqrt(math.pi) / 8.0), rel=1e-13
    )
    assert geometry.volume(5) == pytest.approx(5.263789013914325, rel=1e-12)


def test_surface_area_values():
    assert geometry.surface_area(1) == pytest.approx(2.0 * math.pi, rel=1e-13)
    assert geometry.surface_area(2) == pytest.approx(4.0 * math.pi, rel=1e-13)
    assert geometry.surface_area(6) == pytest.approx(
        2.0 * math.pi**3.5 / (15.0 * math.sqrt(math.pi) / 8.0), rel=1e-13
    )
    assert geometry.surface_area(6) == pytest.approx(33.07336179231981, rel=1e-12)


def test_against_direct_gamma_evaluation():
    # independent route through the libm gamma instead of the Lanczos kernel
    for n in range(1, 31):
        direct_v = math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)
        direct_a = 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)
        assert geometry.volume(n) == pytest.approx(direct_v, rel=1e-12)
        assert geometry.surface_area(n) == pytest.approx(direct_a, rel=1e-12)


def test_argmax_volume_and_surface():
    vol_n, vol_table = geometry.argmax_over(1, 20, "volume")
    assert vol_n == 5
    assert len(vol_table) == 20
    surf_n, _ = geometry.argmax_over(1, 20, "surface_area")
    assert surf_n == 6
    single_n, single_table = geometry.argmax_over(7, 7, "volume")
    assert single_n == 7
    assert len(single_table) == 1


def test_argmax_validation():
    with pytest.raises(ValueError):
        geometry.argmax_over(5, 3, "volume")
    with pytest.raises(ValueError):
        geometry.argmax_over(1, 10, "girth")


def test_unimodal_rise_fall():
    for metric in ("volume", "surface_area"):
        vals = [getattr(row, metric) for row in geometry.metrics_table(1, 100)]
        peak = vals.index(max(vals))
        assert all(v1 < v2 for v1, v2 in zip(vals[: peak + 1], vals[1 : peak + 1]))
        assert all(v1 > v2 for v1, v2 in zip(vals[peak:], vals[peak + 1 :]))


def test_volume_recurrence():
    # V(n)/V(n-2) = 2 pi / n
    for n in range(3, 31):
        ratio = geometry.volume(n) / geometry.volume(n - 2)
        assert ratio == pytest.approx(2.0 * math.pi / n, rel=1e-12)


def test_metrics_positive():
    for row in geometry.metrics_table(1, 50):
        assert row.volume > 0.0
        assert row.surface_area > 0.0
