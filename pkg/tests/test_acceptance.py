"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with `pytest -s tests/test_acceptance.py` to see the PASS/FAIL lines.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from fareychain import analysis, cli, kernels, rg
from fareychain.chain import (
    EnsembleParams,
    correlation_profile,
    free_energy_sequence,
    log_partition,
)
from fareychain.kdp import (
    KdpParams,
    KdpVariant,
    kdp_discontinuities,
    kdp_free_energy,
    kdp_log_partition,
    kdp_phase_boundary,
    kdp_site_boundary_series,
)

LN2 = math.log(2.0)


def _report(num, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {num} {label}: {status}{suffix}")
    assert ok, f"criterion {num} failed: {label}{suffix}"


def test_criterion_1_oracle_equivalence():
    start = time.perf_counter()
    worst = 0.0
    for n in range(1, 19):
        for beta in (0.5, 2.0, 3.5):
            for h in (0.0, 0.5):
                a = log_partition(EnsembleParams(n, beta, h), route="chain").log_z
                b = log_partition(EnsembleParams(n, beta, h), route="direct").log_z
                worst = max(worst, abs(math.expm1(a - b)))
    elapsed = time.perf_counter() - start
    _report(
        1,
        "oracle equivalence N<=18",
        worst <= 1e-12 and elapsed <= 120.0,
        f"worst rel {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_2_theorem_suites():
    n_max = 16
    report = analysis.verify_bounds(n_max)
    bounds_ok = report.passed

    lemma_ok = True
    for n in range(1, n_max + 1):
        for beta in (0.5, 2.0, 3.5):
            for h in (0.0, 0.5):
                plus = log_partition(EnsembleParams(n, beta, h))
                minus = log_partition(EnsembleParams(n, beta, -h))
                if plus.log_z_b != minus.log_z_a:
                    lemma_ok = False

    spectrum_ok = True
    for n in range(2, n_max + 1):
        traces, _ = kernels.direct_spectrum(n)
        if int(np.count_nonzero(traces == 2)) != 2:
            spectrum_ok = False
        if int(traces[traces > 2].min()) < n:  # E >= ln N
            spectrum_ok = False
    _report(
        2,
        "theorem suites (sandwich, ratio, Lemma-1, spectrum) N<=16",
        bounds_ok and lemma_ok and spectrum_ok,
        f"{report.n_checks} bound checks, {len(report.violations)} violations",
    )


def test_criterion_3_low_temperature_free_energy():
    start = time.perf_counter()
    f_half, _ = analysis.extrapolate_f(free_energy_sequence(24, 3.0, 0.5, n_min=8))
    f_zero, _ = analysis.extrapolate_f(free_energy_sequence(24, 3.0, 0.0, n_min=8))
    elapsed = time.perf_counter() - start
    _report(
        3,
        "extrapolated f at beta=3 (N=8..24)",
        abs(f_half + 0.5) <= 0.02 and abs(f_zero) <= 0.02 and elapsed <= 600.0,
        f"f(h=0.5)={f_half:.5f}, f(h=0)={f_zero:.5f}, {elapsed:.1f}s",
    )


def test_criterion_4_kdp_closed_forms():
    endpoint = KdpParams(1.0, KdpVariant.ENDPOINT_FIELD)
    site = KdpParams(1.0, KdpVariant.SITE_FIELD)
    # f = 0 for beta*eps > ln 2 at h = 0, exact
    ordered_ok = all(
        kdp_free_energy(beta, 0.0, params).f == 0.0
        for beta in (0.8, 1.5, 5.0)
        for params in (endpoint, site)
    )
    jumps_ok = kdp_discontinuities(0.0, endpoint) == (1.0, LN2) and kdp_discontinuities(
        0.0, site
    ) == (1.0, LN2)
    root = kdp_phase_boundary(0.05, site)
    series_ok = abs(root - kdp_site_boundary_series(0.05, 1.0)) <= 5e-4
    finite_ok = True
    for params, beta, h in [
        (endpoint, 1.5, 0.2),
        (endpoint, 0.5, 0.1),
        (site, 1.5, -0.3),
        (site, 0.45, 0.05),
    ]:
        f_inf = kdp_free_energy(beta, h, params).f
        for n in (10, 100, 1000, 10000):
            f_n = -kdp_log_partition(n, beta, h, params) / (beta * n)
            if abs(f_n - f_inf) > 10.0 / n:
                finite_ok = False
    _report(
        4,
        "KDP closed forms",
        ordered_ok and jumps_ok and series_ok and finite_ok,
        f"boundary-series diff {abs(root - kdp_site_boundary_series(0.05, 1.0)):.2e}",
    )


def test_criterion_5_rg_engine():
    rgc = rg.RGConstants.from_dimension()
    mf = rg.MeanFieldConstants()
    worst = 0.0
    for t0p in (0.5, 1.0, 2.0):
        for h0p in (0.0, 0.5, 1.0):
            for u0 in (0.25, 0.5, 1.0):
                state = rg.RGState(t=t0p, h=h0p, u=u0)
                num = rg.flow_integrate(state, 10.0, 1e-3, rgc)
                ref = rg.flow_closed_form(state, 10.0, rgc)
                worst = max(worst, abs(num.t - ref.t) / abs(ref.t), abs(num.u - ref.u) / ref.u)
                if h0p:
                    worst = max(worst, abs(num.h - ref.h) / abs(ref.h))
    flow_ok = worst <= 1e-8

    prods = [
        rg.susceptibility_high(t, mf, rgc) * rg.singular_f_high(t, 0.0, mf, rgc)
        for t in np.geomspace(1e-6, 1e-2, 13)
    ]
    chi_ok = (max(prods) - min(prods)) / abs(np.mean(prods)) <= 1e-10

    mf_deg = rg.MeanFieldConstants(a=-4.0 / 3.0, b=1.0, u=0.5, g=1.0)
    dm, ds = rg.discontinuities_ffsc(1e-3, mf_deg, rgc)
    degen_ok = abs(dm) <= 1e-10 and abs(ds) <= 1e-10

    boundary = rg.phase_boundary_ffsc(1e-4, mf, rgc)
    ratio_ok = abs(boundary.h_star / boundary.asymptote - 1.0) <= 0.02
    _report(
        5,
        "RG engine (flow, chi*f, degenerate jumps, boundary asymptote)",
        flow_ok and chi_ok and degen_ok and ratio_ok,
        f"flow worst {worst:.2e}, dm={dm:.1e}, ds={ds:.1e}",
    )


def test_criterion_6_mean_field():
    c = rg.MeanFieldConstants(a=0.0, b=1.0, u=1.0, g=1.0)
    m0 = rg.minimize_mean_field(1.0, 0.01, c)
    grad = abs(2.0 * m0 + 4.0 * m0**3 - 0.01)
    hs = np.geomspace(1e-6, 1e-2, 9)
    m0s = [rg.minimize_mean_field(0.0, h, rg.MeanFieldConstants()) for h in hs]
    slope = float(np.polyfit(np.log(hs), np.log(m0s), 1)[0])
    _report(
        6,
        "mean-field minimizer",
        grad <= 1e-8 and abs(slope - 1.0 / 3.0) <= 0.01,
        f"gradient {grad:.1e}, log-log slope {slope:.4f}",
    )


def test_criterion_7_correlation_positivity():
    worst = math.inf
    for n in range(1, 15):
        for beta in (0.5, 1.0, 2.0, 3.0):
            profile = correlation_profile(EnsembleParams(n, beta, 0.0))
            worst = min(worst, float(profile.min()))
    _report(
        7,
        "correlation positivity <s1 sj> (N<=14, h=0)",
        worst >= -1e-12,
        f"minimum {worst:.3e}",
    )


def test_criterion_8_farey_moments():
    ones_ok = all(analysis.farey_moments(level, 1).sum == 1.0 for level in range(0, 21))
    hand_ok = analysis.farey_moments(1, 2).sum == 0.5 and analysis.farey_moments(
        2, 2
    ).sum == pytest.approx(float(Fraction(5, 18)), abs=1e-16)
    rows = analysis.moment_scaling_report(14, (2, 3))
    report_ok = len(rows) == 2 and all(math.isfinite(r.power_level) for r in rows)
    _report(
        8,
        "Farey moments (m=1 exact to level 20, hand values, diagnostic report)",
        ones_ok and hand_ok and report_ok,
        f"report powers {[round(r.power_level, 3) for r in rows]} (no asserted target)",
    )


def test_criterion_9_thermo_determinism(capsys):
    outputs = set()
    for threads in ("1", "2", "8"):
        code = cli.main(
            [
                "thermo",
                "--n",
                "16",
                "--beta-range",
                "0.5:3.5:0.5",
                "--h-range",
                "0:0.6:0.3",
                "--threads",
                threads,
            ]
        )
        captured = capsys.readouterr()
        assert code == 0
        outputs.add(captured.out.encode())
    ok = len(outputs) == 1
    with capsys.disabled():
        _report(9, "cmd_thermo byte-identical across 1/2/8 workers", ok)
