"""Named verification suites behind `fareychain verify`.

Each suite aggregates the module-level invariants into line-oriented checks:
one (name, ok, detail) triple per check.  Zero failures is the pass
condition; a violation is data to report, never an exception.
"""

from __future__ import annotations

import math

import numpy as np

from . import analysis, kernels, rg
from .chain import EnsembleParams, log_partition, reassemble_log_z_from_traces
from .farey import complement, tilde, word_matrix

LN2 = math.log(2.0)
PHI = (1.0 + math.sqrt(5.0)) / 2.0

SUITE_NAMES = ("bounds", "symmetry", "spectrum", "oracle", "rg")


def _rel(a, b):
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def suite_bounds(n_max=12, cap=None):
    report = analysis.verify_bounds(n_max, cap=cap)
    checks = [
        (
            f"sandwich + ratio bounds, N <= {n_max}",
            report.passed,
            f"{report.n_checks} inequality checks on beta={analysis.DEFAULT_BETA_GRID} "
            f"h={analysis.DEFAULT_H_GRID}, {len(report.violations)} violations",
        )
    ]
    for v in report.violations:
        checks.append(
            (f"violation {v.check}", False, f"N={v.n} beta={v.beta} h={v.h} margin={v.margin:.3e}")
        )
    return checks


def suite_symmetry(n_max=16, cap=None):
    checks = []
    betas = (0.5, 1.0, 2.0, 3.0)
    hs = (0.1, 0.7, 2.0)
    worst = 0.0
    worst_direct = 0.0
    ab_exact = True
    for n in range(1, n_max + 1):
        for beta in betas:
            for h in hs:
                plus = log_partition(EnsembleParams(n, beta, h), cap=cap)
                minus = log_partition(EnsembleParams(n, beta, -h), cap=cap)
                worst = max(worst, abs(plus.log_z - minus.log_z) / max(1.0, abs(plus.log_z)))
                if plus.log_z_b != minus.log_z_a or plus.log_z_a != minus.log_z_b:
                    ab_exact = False
    # the chain route is symmetric by construction; the direct word-product
    # order is not, so it carries the real 1e-13 content of the check
    for n in (4, 9, 13, min(n_max, 16)):
        for beta in betas:
            for h in hs:
                dp = log_partition(EnsembleParams(n, beta, h), cap=cap, route="direct")
                dm = log_partition(EnsembleParams(n, beta, -h), cap=cap, route="direct")
                worst_direct = max(
                    worst_direct, abs(dp.log_z - dm.log_z) / max(1.0, abs(dp.log_z))
                )
    checks.append(
        ("field-sign symmetry Z(h)=Z(-h)", worst <= 1e-13, f"worst relative {worst:.3e} (tol 1e-13)")
    )
    checks.append(
        (
            "field-sign symmetry, direct route",
            worst_direct <= 1e-13,
            f"worst relative {worst_direct:.3e} (tol 1e-13)",
        )
    )
    checks.append(
        ("A/B swap Z^B(h) = Z^A(-h) bitwise", ab_exact, "same summation order, exact equality")
    )
    tilde_ok = True
    for n in range(1, 11):
        for c in range(1 << n):
            bits = tuple((c >> (n - 1 - i)) & 1 for i in range(n))
            if tilde(word_matrix(bits)) != word_matrix(complement(bits)):
                tilde_ok = False
    checks.append(("tilde(word) = word(complement), N <= 10 exhaustive", tilde_ok, "Lemma-1 involution"))
    return checks


def suite_spectrum(n_max=18, cap=None):
    checks = []
    count_ok = True
    excited_ok = True
    upper_ok = True
    growth = 0.0
    for n in range(2, n_max + 1):
        traces, _ = kernels.chain_spectrum(n)
        # the all-A chain is the single trace-2 A-chain; its complement image
        # (all-B) doubles the count over the full ensemble
        if int(np.count_nonzero(traces == 2)) != 1:
            count_ok = False
        full, _ = kernels.direct_spectrum(n)
        if int(np.count_nonzero(full == 2)) != 2:
            count_ok = False
        excited_min = int(traces[traces > 2].min())
        if not excited_min >= n:  # E >= ln N
            excited_ok = False
        emax = math.log(float(traces.max()))
        growth = max(growth, emax / n)
        if not emax <= n * math.log(PHI**2) + 1.0:
            upper_ok = False
    checks.append(
        ("exactly two ground states at E = ln 2 (h=0)", count_ok, f"exhaustive over all 2^N words, N <= {n_max}")
    )
    checks.append(
        ("excited energies E >= ln N", excited_ok, f"min excited trace is N+1, N <= {n_max}")
    )
    checks.append(
        (
            "excited energies E <= N ln(phi^2) + 1",
            upper_ok,
            f"measured growth max ln(trace)/N = {growth:.6f} (ln phi = {math.log(PHI):.6f})",
        )
    )
    return checks


def suite_oracle(n_max=14, cap=None):
    checks = []
    worst = 0.0
    for n in range(1, n_max + 1):
        for beta in (0.5, 2.0, 3.5):
            for h in (0.0, 0.5):
                a = log_partition(EnsembleParams(n, beta, h), cap=cap, route="chain")
                b = log_partition(EnsembleParams(n, beta, h), cap=cap, route="direct")
                worst = max(worst, abs(math.expm1(a.log_z - b.log_z)))
    checks.append(
        (
            f"direct enumeration vs Farey recursion, N <= {n_max}",
            worst <= 1e-12,
            f"worst relative Z difference {worst:.3e} (tol 1e-12)",
        )
    )
    z1 = log_partition(EnsembleParams(1, 2.0, 0.0), cap=cap).log_z
    z2 = log_partition(EnsembleParams(2, 2.0, 0.0), cap=cap).log_z
    exact_ok = abs(z1 - math.log(0.5)) < 1e-14 and abs(z2 - math.log(13.0 / 18.0)) < 1e-14
    checks.append(("exact rational values Z_1 = 1/2, Z_2 = 13/18 at beta=2", exact_ok, "hand oracle"))
    multiset_ok = True
    for n in range(1, min(n_max, 16) + 1):
        ct, cb = kernels.chain_spectrum(n)
        dt, db = kernels.direct_spectrum(n)
        half = 1 << (n - 1)
        a_sorted = np.lexsort((cb, ct))
        d_sorted = np.lexsort((db[:half], dt[:half]))
        if not (
            np.array_equal(ct[a_sorted], dt[:half][d_sorted])
            and np.array_equal(cb[a_sorted], db[:half][d_sorted])
        ):
            multiset_ok = False
    checks.append(
        ("trace/b-count multisets agree (A-chains)", multiset_ok, f"N <= {min(n_max, 16)}")
    )
    n_re = min(n_max, 12)
    lz = reassemble_log_z_from_traces(n_re, 2.5, 0.3)
    ref = log_partition(EnsembleParams(n_re, 2.5, 0.3), cap=cap, route="direct").log_z
    checks.append(
        (
            "pure-Python trace-stream reassembly vs direct route",
            abs(math.expm1(lz - ref)) <= 1e-12,
            f"N = {n_re}, relative {abs(math.expm1(lz - ref)):.3e}",
        )
    )
    return checks


def suite_rg(cap=None):
    checks = []
    rgc = rg.RGConstants.from_dimension()
    mf = rg.MeanFieldConstants()
    worst = 0.0
    for t0p in (0.5, 1.0, 2.0):
        for h0p in (0.0, 0.5, 1.0):
            for u0 in (0.25, 0.5, 1.0):
                state = rg.RGState(t=t0p, h=h0p, u=u0)
                num = rg.flow_integrate(state, 10.0, 1e-3, rgc)
                ref = rg.flow_closed_form(state, 10.0, rgc)
                worst = max(worst, _rel(num.t, ref.t), _rel(num.u, ref.u))
                if h0p != 0.0:
                    worst = max(worst, _rel(num.h, ref.h))
                elif num.h != 0.0:
                    worst = max(worst, abs(num.h))
    checks.append(
        ("RK4 flow vs closed form at ell=10 (3x3x3 grid)", worst <= 1e-8, f"worst relative {worst:.3e}")
    )
    mf_deg = rg.MeanFieldConstants(a=-4.0 * 1.0 * rgc.t0 / 3.0, b=1.0, u=0.5, g=1.0)
    dm, ds = rg.discontinuities_ffsc(1e-3, mf_deg, rgc)
    checks.append(
        ("degenerate point: delta_m = delta_s = 0", abs(dm) <= 1e-10 and abs(ds) <= 1e-10,
         f"dm={dm:.3e} ds={ds:.3e} at 3ag^2/(4bt0) = -1")
    )
    prods = [
        rg.susceptibility_high(t, mf, rgc) * rg.singular_f_high(t, 0.0, mf, rgc)
        for t in np.geomspace(1e-6, 1e-2, 9)
    ]
    spread = (max(prods) - min(prods)) / abs(np.mean(prods))
    checks.append(
        ("chi(t) * f_s(t,0) constant in t", spread <= 1e-10, f"spread {spread:.3e} over [1e-6,1e-2]")
    )
    bd = rg.phase_boundary_ffsc(1e-4, mf, rgc)
    ratio = bd.h_star / bd.asymptote
    checks.append(
        ("boundary root approaches closed asymptote", abs(ratio - 1.0) <= 0.02, f"ratio {ratio:.6f} at t=1e-4")
    )
    dm1, _ = rg.discontinuities_ffsc(1e-4, mf, rgc)
    dm2 = rg.delta_m_via_magnetization(1e-4, mf, rgc)
    checks.append(
        ("delta_m closed form vs magnetization route", abs(dm1 - dm2) <= 1e-8, f"|diff| = {abs(dm1 - dm2):.3e}")
    )
    expo_ok = all(
        abs(rg.RGConstants.from_dimension(d=d, x=x).h_term_exponent - 2.0) <= 1e-12
        for d in (1.0, 2.0, 3.0)
        for x in (0.5, 1.0)
    )
    checks.append(("exponent bookkeeping d/y_h + y_t/y_h = 2", expo_ok, "constructor-derived constraints"))
    m0 = rg.minimize_mean_field(1.0, 0.01, rg.MeanFieldConstants(a=0.0, b=1.0, u=1.0, g=1.0))
    grad = abs(2.0 * 1.0 * m0 + 4.0 * m0**3 - 0.01)
    checks.append(("mean-field minimizer gradient", grad <= 1e-8, f"|df/dM| = {grad:.3e}"))
    hs = np.geomspace(1e-6, 1e-2, 9)
    m0s = [rg.minimize_mean_field(0.0, h, mf) for h in hs]
    slope = np.polyfit(np.log(hs), np.log(m0s), 1)[0]
    checks.append(
        ("M0 ~ h^(1/3) at t=0", abs(slope - 1.0 / 3.0) <= 0.01, f"log-log slope {slope:.6f}")
    )
    return checks


_SUITES = {
    "bounds": suite_bounds,
    "symmetry": suite_symmetry,
    "spectrum": suite_spectrum,
    "oracle": suite_oracle,
    "rg": suite_rg,
}


def run_suite(name, n_max=None, cap=None):
    """Run one named suite; returns (lines, ok)."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    fn = _SUITES[name]
    kwargs = {"cap": cap}
    if name != "rg" and n_max is not None:
        kwargs["n_max"] = n_max
    checks = fn(**kwargs)
    lines = [
        f"{'PASS' if ok else 'FAIL'}: {label} -- {detail}" for label, ok, detail in checks
    ]
    return lines, all(ok for _, ok, _ in checks)
