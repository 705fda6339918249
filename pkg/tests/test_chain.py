"""Spin-chain thermodynamics: spec examples, symmetries, fluctuation formulas."""

import math
import random
from fractions import Fraction

import pytest

from fareychain.chain import (
    EnsembleParams,
    config_energy,
    correlation,
    correlation_profile,
    direct_log_partition,
    free_energy_sequence,
    log_partition,
    reassemble_log_z_from_traces,
    thermo_point,
)
from fareychain.errors import EnumerationCapExceededError
from oracle import moments_brute, z_exact_rational

LN2 = math.log(2.0)


def test_config_energy_examples():
    assert config_energy("00", 0.0) == pytest.approx(LN2, abs=1e-15)
    assert config_energy("11", 0.3) == pytest.approx(LN2 + 0.6, abs=1e-15)
    assert config_energy("01", 0.0) == pytest.approx(math.log(3.0), abs=1e-15)


def test_log_partition_exact_rationals():
    assert log_partition(EnsembleParams(1, 2.0, 0.0)).log_z == pytest.approx(
        math.log(0.5), abs=1e-15
    )
    assert log_partition(EnsembleParams(2, 2.0, 0.0)).log_z == pytest.approx(
        math.log(13.0 / 18.0), abs=1e-15
    )
    # N = 3 from the exact rational oracle: 2/2^3 + 6/4^3 at beta = 3
    z3 = z_exact_rational(3, 3)
    assert z3 == Fraction(2, 8) + Fraction(6, 64)
    assert log_partition(EnsembleParams(3, 3.0, 0.0)).log_z == pytest.approx(
        math.log(float(z3)), rel=1e-15
    )


def test_partition_split_identity():
    for n, beta, h in [(6, 2.0, 0.4), (10, 0.5, -1.0), (12, 3.5, 0.0)]:
        res = log_partition(EnsembleParams(n, beta, h))
        z = math.exp(res.log_z_a) + math.exp(res.log_z_b)
        assert math.exp(res.log_z) == pytest.approx(z, rel=1e-13)


def test_excited_split():
    # both N=1 states are ground states: the excited sum is empty
    assert log_partition(EnsembleParams(1, 2.0, 0.3)).log_z_excited == -math.inf
    res = log_partition(EnsembleParams(8, 2.5, 0.2))
    ground = math.exp(-2.5 * (LN2 - 0.2 * 8)) + math.exp(-2.5 * (LN2 + 0.2 * 8))
    total = ground + math.exp(res.log_z_excited)
    assert math.exp(res.log_z) == pytest.approx(total, rel=1e-13)


def test_field_sign_symmetry():
    for n in (1, 4, 9, 16):
        for beta in (0.5, 1.0, 2.0, 3.0):
            for h in (0.1, 0.7, 2.0):
                plus = log_partition(EnsembleParams(n, beta, h))
                minus = log_partition(EnsembleParams(n, beta, -h))
                assert plus.log_z == pytest.approx(minus.log_z, rel=1e-13)
                # Lemma-1 bijection under the same summation order: exact
                assert plus.log_z_b == minus.log_z_a
                assert plus.log_z_a == minus.log_z_b


def test_direct_route_field_symmetry_tolerance():
    for n in (3, 8, 13):
        plus = direct_log_partition(EnsembleParams(n, 2.5, 0.7)).log_z
        minus = direct_log_partition(EnsembleParams(n, 2.5, -0.7)).log_z
        assert plus == pytest.approx(minus, rel=1e-13)


def test_thermo_m_zero_by_symmetry():
    assert thermo_point(EnsembleParams(2, 2.0, 0.0)).m == 0.0
    assert thermo_point(EnsembleParams(11, 3.0, 0.0)).m == 0.0


def test_thermo_n1_tanh():
    for beta in (0.5, 2.0, 3.7):
        for h in (-1.0, 0.2, 0.9):
            point = thermo_point(EnsembleParams(1, beta, h))
            assert point.m == pytest.approx(math.tanh(beta * h), rel=1e-14)


def test_thermo_vs_exact_rational_n2_beta3():
    z = z_exact_rational(2, 3)  # 2/8 + 2/27
    assert z == Fraction(35, 108)
    point = thermo_point(EnsembleParams(2, 3.0, 0.0))
    f = -math.log(float(z)) / (3.0 * 2)
    u = (2 * (1 / 8) * LN2 + 2 * (1 / 27) * math.log(3.0)) / float(z) / 2
    assert point.f == pytest.approx(f, rel=1e-14)
    assert point.u == pytest.approx(u, rel=1e-14)
    assert point.s == pytest.approx(3.0 * (u - f), rel=1e-13)


def test_thermo_moments_vs_brute():
    for n, beta, h in [(7, 1.5, 0.25), (10, 3.0, -0.6)]:
        point = thermo_point(EnsembleParams(n, beta, h))
        ref = moments_brute(n, beta, h)
        assert point.u == pytest.approx(ref["e_mean"] / n, rel=1e-12)
        assert point.m == pytest.approx(ref["mag_mean"] / n, rel=1e-12)
        var = ref["mag2_mean"] - ref["mag_mean"] ** 2
        assert point.chi == pytest.approx(beta / n * var, rel=1e-10, abs=1e-12)


def test_m_matches_free_energy_derivative():
    # m = -df/dh through the fluctuation formula, checked by central difference
    delta = 1e-4
    for n, beta, h in [(12, 2.5, 0.3), (9, 1.0, -0.2)]:
        point = thermo_point(EnsembleParams(n, beta, h))
        fp = thermo_point(EnsembleParams(n, beta, h + delta)).f
        fm = thermo_point(EnsembleParams(n, beta, h - delta)).f
        assert point.m == pytest.approx(-(fp - fm) / (2 * delta), abs=1e-6)
        chi_fd = -(fp - 2 * point.f + fm) / delta**2
        assert point.chi == pytest.approx(chi_fd, abs=1e-6)


def test_entropy_su_chi_m_ranges():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 14)
        beta = rng.uniform(0.0, 4.0)
        h = rng.uniform(-2.0, 2.0)
        point = thermo_point(EnsembleParams(n, beta, h))
        assert point.chi >= 0.0
        assert -1.0 <= point.m <= 1.0
        if beta > 0:
            assert point.s >= -1e-12


def test_beta_zero_behavior():
    point = thermo_point(EnsembleParams(8, 0.0, 0.7))
    assert math.isnan(point.f) and math.isnan(point.s)
    assert point.m == 0.0  # uniform measure
    assert point.chi == 0.0
    assert math.isfinite(point.u)
    res = log_partition(EnsembleParams(8, 0.0, 0.7))
    assert res.log_z == pytest.approx(8 * LN2, rel=1e-14)


def test_correlation_examples():
    assert correlation(EnsembleParams(6, 2.0, 0.3), 1) == 1.0
    assert correlation(EnsembleParams(2, 2.0, 0.0), 2) == pytest.approx(5.0 / 13.0, rel=1e-14)
    for j in (2, 5):
        assert correlation(EnsembleParams(6, 0.0, 0.0), j) == pytest.approx(0.0, abs=1e-15)
    profile = correlation_profile(EnsembleParams(9, 2.0, 0.0))
    assert len(profile) == 9
    assert profile[0] == 1.0


def test_correlation_positivity_zero_field():
    for n in (2, 6, 10, 14):
        for beta in (0.0, 0.5, 2.0, 4.0):
            profile = correlation_profile(EnsembleParams(n, beta, 0.0))
            assert profile.min() >= -1e-12


def test_free_energy_sequence_trends():
    seq = free_energy_sequence(18, 3.0, 0.5, n_min=2)
    values = [f for _, f in seq]
    assert all(v > -0.5 for v in values)  # approaches -|h| from above
    assert values[-1] - (-0.5) < values[0] - (-0.5)
    mirror = free_energy_sequence(18, 3.0, -0.5, n_min=2)
    assert [f for _, f in mirror] == values  # field-sign symmetry, exact
    # at h=0 the sandwich pins f_N between 0 and (beta-1) ln2 / (beta N)
    for n, f in free_energy_sequence(16, 3.0, 0.0):
        assert 0.0 < f < (3.0 - 1.0) * LN2 / (3.0 * n)


def test_cross_oracle_trace_reassembly():
    for n in (6, 12, 14):
        lz = reassemble_log_z_from_traces(n, 2.5, 0.3)
        ref = direct_log_partition(EnsembleParams(n, 2.5, 0.3)).log_z
        assert abs(math.expm1(lz - ref)) <= 1e-12


def test_cross_oracle_trace_reassembly_full_range():
    # exact-integer stream + Lemma-1 image vs direct enumeration at N = 20
    lz = reassemble_log_z_from_traces(20, 2.0, 0.5)
    ref = direct_log_partition(EnsembleParams(20, 2.0, 0.5)).log_z
    assert abs(math.expm1(lz - ref)) <= 1e-12


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceededError):
        log_partition(EnsembleParams(12, 1.0, 0.0), cap=10)
    log_partition(EnsembleParams(10, 1.0, 0.0), cap=10)  # at the cap is fine


def test_enumeration_cap_env(monkeypatch):
    monkeypatch.setenv("FAREYCHAIN_ENUM_CAP", "9")
    with pytest.raises(EnumerationCapExceededError):
        thermo_point(EnsembleParams(10, 1.0, 0.0))
    monkeypatch.delenv("FAREYCHAIN_ENUM_CAP")
    thermo_point(EnsembleParams(10, 1.0, 0.0))


def test_params_validation():
    with pytest.raises(ValueError):
        EnsembleParams(0, 1.0, 0.0)
    with pytest.raises(ValueError):
        EnsembleParams(3, -1.0, 0.0)
    with pytest.raises(ValueError):
        EnsembleParams(3, 1.0, math.inf)
