"""Exact finite-N thermodynamics of the Farey fraction spin chain in a field.

Configuration energy: E = ln(Tr M) + h*(2*sum(sigma) - N), with M the
left-to-right product of A (bit 0) and B (bit 1).  The partition function is
the exact sum over all 2^N configurations, accumulated in the log domain
with a global shift and compensated summation (terms span e^{-beta ln 2}
down to e^{-beta N c}; naive summation loses the excited spectrum at large
beta).

The production route enumerates only the 2^(N-1) chains starting with A via
the Farey pair recursion and obtains the B-chains through the bit-complement
bijection (trace preserved, field term sign-flipped).  The independent
direct route multiplies every word out; both are exposed so the dual-route
check stays meaningful.

All functions are pure over immutable inputs; internal parallelism follows
the deterministic block-reduction contract in :mod:`fareychain.kernels`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from . import kernels
from .errors import EnumerationCapExceededError
from .farey import parse_config, word_matrix

DEFAULT_ENUM_CAP = 34
ENV_ENUM_CAP = "FAREYCHAIN_ENUM_CAP"

#: Inverse critical temperature of the zero-field chain (exact).
BETA_C = 2.0


def resolve_cap(cap=None):
    if cap is not None:
        return int(cap)
    env = os.environ.get(ENV_ENUM_CAP)
    if env:
        return int(env)
    return DEFAULT_ENUM_CAP


def _check_cap(n, cap):
    limit = resolve_cap(cap)
    if n > limit:
        raise EnumerationCapExceededError(n, limit)


@dataclass(frozen=True)
class EnsembleParams:
    """Chain length, inverse temperature and external field."""

    n: int
    beta: float
    h: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (self.beta >= 0.0) or math.isinf(self.beta):
            raise ValueError("beta must be finite and >= 0")
        if not math.isfinite(self.h):
            raise ValueError("h must be finite")


@dataclass(frozen=True)
class PartitionResult:
    """Log partition function with the A-start/B-start/excited splits.

    log_z_excited sums every state except the two h=0 ground states
    (all-A and all-B, trace 2).
    """

    params: EnsembleParams
    log_z: float
    log_z_a: float
    log_z_b: float
    log_z_excited: float


@dataclass(frozen=True)
class ThermoPoint:
    """Per-site observables at one (N, beta, h) point.

    f = -ln(Z)/(beta N), u = <E>/N, m = <N - 2 sum(sigma)>/N (= -df/dh
    exactly), s = beta*(u - f), chi = (beta/N) Var(2 sum(sigma) - N).
    At beta = 0 the free energy and entropy are undefined and reported as
    NaN; m, u and chi remain valid.
    """

    params: EnsembleParams
    f: float
    u: float
    m: float
    s: float
    chi: float


def config_energy(config, h):
    """ln(Tr M) + h*(2*sum(sigma) - N), exact trace via Python integers."""
    bits = parse_config(config)
    trace = word_matrix(bits).trace
    return math.log(trace) + h * (2 * sum(bits) - len(bits))


def _log_or_ninf(x):
    return math.log(x) if x > 0.0 else -math.inf


def log_partition(params: EnsembleParams, cap=None, route="chain") -> PartitionResult:
    """Exact log-domain sum over all 2^N configurations.

    route="chain" (default) is the Farey-recursion production path;
    route="direct" is the independent word-product oracle.
    """
    _check_cap(params.n, cap)
    shift, sums = kernels.partition_sums(params.n, params.beta, params.h, route=route)
    wa = sums[kernels.COL_WA]
    wb = sums[kernels.COL_WB]
    return PartitionResult(
        params=params,
        log_z=shift + _log_or_ninf(wa + wb),
        log_z_a=shift + _log_or_ninf(wa),
        log_z_b=shift + _log_or_ninf(wb),
        log_z_excited=shift + _log_or_ninf(sums[kernels.COL_WEXC]),
    )


def direct_log_partition(params: EnsembleParams, cap=None) -> PartitionResult:
    return log_partition(params, cap=cap, route="direct")


def thermo_point(params: EnsembleParams, cap=None, route="chain") -> ThermoPoint:
    """All fluctuation-formula observables from a single enumeration pass."""
    _check_cap(params.n, cap)
    n = params.n
    beta = params.beta
    shift, sums = kernels.partition_sums(n, beta, params.h, route=route)
    w = sums[kernels.COL_WA] + sums[kernels.COL_WB]
    log_z = shift + _log_or_ninf(w)
    e_mean = sums[kernels.COL_WE] / w
    mag_mean = sums[kernels.COL_WMAG] / w
    mag_var = sums[kernels.COL_WMAG2] / w - mag_mean * mag_mean
    u = e_mean / n
    if beta > 0.0:
        f = -log_z / (beta * n)
        s = beta * (u - f)
    else:
        f = math.nan
        s = math.nan
    return ThermoPoint(
        params=params,
        f=f,
        u=u,
        m=mag_mean / n + 0.0,
        s=s,
        chi=beta / n * max(mag_var, 0.0),
    )


def correlation_profile(params: EnsembleParams, cap=None):
    """<s_1 s_j> for j = 1..N as a float array (s_i = 2 sigma_i - 1)."""
    _check_cap(params.n, cap)
    sums = kernels.correlation_sums(params.n, params.beta, params.h)
    return sums[1:] / sums[0]


def correlation(params: EnsembleParams, j: int, cap=None) -> float:
    """Thermal average <s_1 s_j> under the weights e^{-beta E}."""
    if not 1 <= j <= params.n:
        raise ValueError(f"site index j={j} outside 1..{params.n}")
    return float(correlation_profile(params, cap=cap)[j - 1])


def free_energy_sequence(n_max, beta, h, n_min=1, cap=None):
    """[(N, f_N)] for N = n_min..n_max, deterministic order."""
    if n_min < 1 or n_max < n_min:
        raise ValueError("need 1 <= n_min <= n_max")
    out = []
    for n in range(n_min, n_max + 1):
        point = thermo_point(EnsembleParams(n, beta, h), cap=cap)
        out.append((n, point.f))
    return out


def reassemble_log_z_from_traces(n, beta, h):
    """Float reassembly of ln Z from the exact (trace, b_count) stream.

    Sums the A-chain terms and their Lemma-1 images term by term from
    :func:`fareychain.farey.chain_traces_via_farey`; used as a slow
    cross-oracle against the compiled routes (pure Python, exact integers).
    """
    from .farey import chain_traces_via_farey

    shift = kernels.energy_shift(n, beta, h)
    total = 0.0
    comp = 0.0
    for trace, b in chain_traces_via_farey(n):
        logt = math.log(trace)
        mag = float(n - 2 * b)
        for e in (logt - h * mag, logt + h * mag):
            y = math.exp(-beta * e - shift) - comp
            t = total + y
            comp = (t - total) - y
            total = t
    return shift + math.log(total)
