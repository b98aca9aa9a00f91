import cmath
import math

import pytest

hw = pytest.importorskip("hardwall")


def fig4(n):
    return hw.ModelParams.from_fractions(1.3, 1.26, 0.42, 0.67, n)


def test_closed_form_kernel():
    p = hw.ModelParams(1.0, 0.0, 0.3, 0.7, 1)
    h1 = 1 - math.exp(-0.09) + math.exp(-0.49)
    assert math.isclose(hw.log_hj(p, 1), math.log(h1), rel_tol=1e-14)
    k = hw.kernel_eval(p, (0.2, 0.1), (0.8, 1.0))
    assert math.isclose(k.real, math.exp(-0.02 - 0.32) / h1, rel_tol=1e-13)


def test_hermitian_and_trace():
    p = fig4(512)
    z, w = (0.95 * p.r1, 0.3), (1.1 * p.r2, -0.4)
    assert abs(hw.kernel_eval(p, z, w) - hw.kernel_eval(p, w, z).conjugate()) <= 1e-12 * abs(hw.kernel_eval(p, z, w))
    assert abs(hw.expected_count_in_disk(p, math.inf) - 512) <= 1e-9 * 512


def test_integrals():
    v = hw.integrals()
    assert -0.81372 <= v["I"] <= -0.81362
    assert abs(v["I1"] - math.log(2 * math.sqrt(math.pi)) / 2) <= 1e-9
    assert 0.49 < hw.density_profile_rho(6.0) < 0.51


def test_prediction_breakdown_sums():
    pr = hw.predict("1.1", fig4(4096), 0.21, 0.45)
    assert pr["theorem"] == "1.1"
    assert pr["error_order"] == "O(n^{2/5})"
    total = sum(v for _, v in pr["breakdown"])
    assert cmath.isclose(total, pr["value"], rel_tol=1e-15)


def test_invalid_params_raise():
    with pytest.raises(hw.InvalidParams):
        hw.ModelParams(1.0, 0.0, 0.7, 0.3, 4)
    with pytest.raises(hw.Error):
        hw.log_hj(fig4(8), 9)


def test_sample():
    p = fig4(256)
    a = hw.sample(p, 7)
    assert a.shape == (256, 2)
    assert ((a[:, 0] <= p.r1) | (a[:, 0] >= p.r2)).all()
    assert (hw.sample(p, 7) == a).all()


def test_figure_rows():
    rows = hw.figure_diag("fig4-left", [256, 512])
    assert [r["n"] for r in rows] == [256, 512]
    assert all(r["wall_time_ms"] > 0 for r in rows)
