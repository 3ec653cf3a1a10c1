import math

import mpmath as mp
import pytest

from conftest import sphere_breakdown
from condcasimir.constants import HBAR_C_EV_NM
from condcasimir.sphere import (SumConfig, branch_log_inv, branch_log_ratio,
                                critical_eta, q_te_sphere_as, q_te_sphere_num,
                                q_tm_sphere_as, q_tm_sphere_num, sphere_energy)


def test_branch_log_ratio_values():
    assert branch_log_ratio(1.0) == 1.0
    assert branch_log_ratio(2.0) == pytest.approx(
        math.log(2.0 + math.sqrt(3.0)) / math.sqrt(3.0), rel=1e-14)
    assert branch_log_ratio(0.5) == pytest.approx(
        (math.pi / 3.0) / (math.sqrt(3.0) / 2.0), rel=1e-14)


def test_branch_log_inv_values():
    assert branch_log_inv(1.0) == 1.0
    assert branch_log_inv(0.5) == pytest.approx(
        math.log((1.0 + math.sqrt(0.75)) / 0.5) / math.sqrt(0.75), rel=1e-14)
    assert branch_log_inv(2.0) == pytest.approx(
        (math.pi / 3.0) / math.sqrt(3.0), rel=1e-14)


def test_branch_helpers_domain():
    for fn in (branch_log_ratio, branch_log_inv):
        with pytest.raises(ValueError):
            fn(0.0)
        with pytest.raises(ValueError):
            fn(-2.0)
        with pytest.raises(ValueError):
            fn(math.inf)


def test_branch_helpers_continuity():
    # across eta = 1 (series window) and across the window edge itself
    for fn in (branch_log_ratio, branch_log_inv):
        assert fn(1.0 - 1e-9) == pytest.approx(fn(1.0), abs=1e-9)
        assert fn(1.0 + 1e-9) == pytest.approx(fn(1.0), abs=1e-9)
        for edge in (1.0 - 1e-4, 1.0 + 1e-4):
            assert fn(edge * (1.0 - 1e-12)) == pytest.approx(
                fn(edge * (1.0 + 1e-12)), abs=1e-10)


def test_te_as_limits():
    assert q_te_sphere_as(math.inf) == 17.0 / 128.0
    assert q_te_sphere_as(1e-3) == pytest.approx(1e-3 / (4.0 * math.pi),
                                                 rel=1e-2)
    assert q_te_sphere_as(0.0) == 0.0


def test_tm_as_limits():
    assert q_tm_sphere_as(math.inf) == -11.0 / 128.0
    assert q_tm_sphere_as(1e-3) == pytest.approx(-5e-3 / (12.0 * math.pi),
                                                 rel=1e-2)
    assert q_tm_sphere_as(0.0) == 0.0


def test_as_continuity_at_one():
    # second difference cancels the slope, leaving genuine branch jumps
    for fn in (q_te_sphere_as, q_tm_sphere_as):
        eps = 1e-6
        jump = fn(1.0 + eps) + fn(1.0 - eps) - 2.0 * fn(1.0)
        assert abs(jump) < 1e-8


def test_as_series_switch_points():
    # the small-eta TE series and the large-eta TM series must join
    # their direct formulas seamlessly; the straddle step itself moves
    # the value by slope * d_eta ~ 2e-11, so allow a little above that
    assert q_te_sphere_as(0.12 * (1 - 1e-9)) == pytest.approx(
        q_te_sphere_as(0.12 * (1 + 1e-9)), abs=1e-10)
    assert q_tm_sphere_as(4.0 * (1 - 1e-9)) == pytest.approx(
        q_tm_sphere_as(4.0 * (1 + 1e-9)), abs=1e-10)


def test_as_against_extended_precision():
    """Both closed forms vs a 50-digit evaluation of the raw formulas."""
    with mp.workdps(50):
        for eta in (0.05, 0.3, 0.9, 1.1, 2.0, 5.0, 20.0, 100.0):
            e = mp.mpf(eta)
            if e < 1:
                lr = mp.acos(e) / mp.sqrt(1 - e * e)
                li = mp.log((1 + mp.sqrt(1 - e * e)) / e) / mp.sqrt(1 - e * e)
            else:
                lr = mp.log(e + mp.sqrt(e * e - 1)) / mp.sqrt(e * e - 1)
                li = mp.acos(1 / e) / mp.sqrt(e * e - 1)
            te = (mp.mpf(17) / 128 - 1 / (12 * mp.pi * e) + 3 / (32 * e**2)
                  + 5 / (8 * mp.pi * e**3) - 5 / (16 * e**4)
                  + (5 - 4 * e**2 - 2 * e**4) / (8 * mp.pi * e**4) * lr)
            tm = (-(e / (96 * mp.pi))
                  * (4 * (10 - 21 * e * e) - 3 * mp.pi * e * (9 - 14 * e * e))
                  - (e**3 / (8 * mp.pi)) * (8 - 7 * e * e) * li)
            assert q_te_sphere_as(eta) == pytest.approx(float(te), rel=5e-13)
            assert q_tm_sphere_as(eta) == pytest.approx(float(tm), rel=5e-13)


def test_num_zero_eta():
    assert q_te_sphere_num(0.0).value == 0.0
    assert q_tm_sphere_num(0.0).value == 0.0


def test_num_summand_decay():
    # the subtracted summand must fall at least as fast as nu^-2,
    # otherwise the uniform-asymptotic subtraction is wrong
    bd = sphere_breakdown("inf")
    q = q_te_sphere_num(math.inf, SumConfig(l_max=30))
    assert q.diagnostics["tail_decay"] >= 1.8
    q = q_tm_sphere_num(math.inf, SumConfig(l_max=30))
    assert q.diagnostics["tail_decay"] >= 1.8
    assert bd.total == pytest.approx(0.046, abs=1e-3)


def test_num_l_max_stability():
    # doubling l_max moves each numeric part by less than its error bar
    for fn in (q_te_sphere_num, q_tm_sphere_num):
        a = fn(1.0, SumConfig(l_max=40))
        b = fn(1.0, SumConfig(l_max=80))
        assert abs(a.value - b.value) < 1e-5
        assert abs(a.value - b.value) <= a.abs_error + b.abs_error


SIGN_GRID = (0.01, 0.1, 0.5, 1.0, 1.578, 2.0, 5.0, 10.0, "inf")


def test_sign_structure_and_num_smallness():
    for key in SIGN_GRID:
        bd = sphere_breakdown(key)
        assert bd.te > 0.0, key
        assert bd.tm < 0.0, key
        assert abs(bd.te_num) <= 0.1 * abs(bd.te_as), key
        assert abs(bd.tm_num) <= 0.1 * abs(bd.tm_as), key
        assert bd.total == pytest.approx(
            bd.te_as + bd.te_num + bd.tm_as + bd.tm_num, abs=1e-15)


def test_sum_config_validation():
    with pytest.raises(ValueError):
        SumConfig(l_max=4)
    with pytest.raises(ValueError):
        SumConfig(target_tol=0.0)
    with pytest.raises(ValueError):
        SumConfig(l_max=10, tail_points=10)


def test_critical_requires_sign_change():
    with pytest.raises(ValueError):
        critical_eta(SumConfig(l_max=20), bracket=(0.1, 0.5))


def test_sphere_energy():
    ev = sphere_energy(0.0, 50.0, unit="eV")
    assert ev.energy == 0.0
    cfg = SumConfig(l_max=20)
    nat = sphere_energy(2.0, 50.0, unit="natural", cfg=cfg)
    econ = sphere_energy(2.0, 50.0, unit="eV", cfg=cfg)
    assert econ.energy == pytest.approx(HBAR_C_EV_NM * nat.q.value / 50.0,
                                        rel=1e-12)
    with pytest.raises(ValueError):
        sphere_energy(1.0, 0.0)
    with pytest.raises(ValueError):
        sphere_energy(1.0, 10.0, unit="erg")
