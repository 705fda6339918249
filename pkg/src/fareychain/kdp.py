"""Closed-form 1-D KDP chain (Nagle) in both field couplings.

Finite-N partition functions, the analytic N -> infinity free energies, the
first-order phase boundary and the discontinuities across it.  Two field
variants exist: ENDPOINT couples the field to the total magnetization only
through the two frozen configurations, Z_N = 2 cosh(beta N h)
+ 2^N e^{-beta N eps}; SITE couples it per cell, Z_N = e^{beta N h}
+ e^{-beta N h} + e^{-beta eps N} (2 cosh beta h)^N.

Everything here is pure, stateless and cheap.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import NoRealRootError

LN2 = math.log(2.0)

# Free energies equal to within this are labeled Boundary.
BOUNDARY_TOL = 1e-12


class KdpVariant(enum.Enum):
    ENDPOINT_FIELD = "endpoint"
    SITE_FIELD = "site"


class KdpPhase(enum.Enum):
    ORDERED = "ordered"
    HIGH_TEMPERATURE = "high-temperature"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class KdpParams:
    epsilon: float
    variant: KdpVariant = KdpVariant.ENDPOINT_FIELD

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be > 0")

    @property
    def beta_c(self):
        return LN2 / self.epsilon


@dataclass(frozen=True)
class KdpThermo:
    """Reduced temperature t = beta_c/beta - 1 plus per-site f, m, s and phase.

    On the boundary the high-temperature-side m and s are reported; the
    discontinuity functions provide both one-sided limits.
    """

    t: float
    f: float
    m: float
    s: float
    phase: KdpPhase


def _logsumexp(terms):
    m = max(terms)
    return m + math.log(math.fsum(math.exp(x - m) for x in terms))


def _log2cosh(x):
    # ln(2 cosh x), safe for large |x|
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax))


def kdp_log_partition(n, beta, h, params: KdpParams) -> float:
    """ln Z_N for either variant, via log-sum-exp."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not beta > 0.0:
        raise ValueError("beta must be > 0")
    if params.variant is KdpVariant.ENDPOINT_FIELD:
        terms = (beta * n * h, -beta * n * h, n * LN2 - beta * n * params.epsilon)
    else:
        terms = (
            beta * n * h,
            -beta * n * h,
            -beta * params.epsilon * n + n * _log2cosh(beta * h),
        )
    return _logsumexp(terms)


def _high_t_free_energy(beta, h, params):
    if params.variant is KdpVariant.ENDPOINT_FIELD:
        return params.epsilon - LN2 / beta
    return params.epsilon - _log2cosh(beta * h) / beta


def kdp_free_energy(beta, h, params: KdpParams) -> KdpThermo:
    """Analytic N -> infinity limit: f is the smaller of the two branch values.

    Ordered branch: f = -|h|, m = +-1, s = 0.  High-temperature branch:
    f = eps - ln2/beta (endpoint, field-independent, m = 0) or
    f = eps - ln(2 cosh beta h)/beta (site, m = tanh(beta h),
    s = ln(2 cosh beta h) - beta h tanh(beta h)); s = ln 2 at h = 0 either way.
    """
    if not beta > 0.0:
        raise ValueError("beta must be > 0")
    t = params.beta_c / beta - 1.0
    f_ord = -abs(h)
    f_high = _high_t_free_energy(beta, h, params)
    if abs(f_ord - f_high) <= BOUNDARY_TOL:
        phase = KdpPhase.BOUNDARY
    elif f_ord < f_high:
        phase = KdpPhase.ORDERED
    else:
        phase = KdpPhase.HIGH_TEMPERATURE
    if phase is KdpPhase.ORDERED:
        return KdpThermo(t=t, f=f_ord, m=math.copysign(1.0, h), s=0.0, phase=phase)
    if params.variant is KdpVariant.ENDPOINT_FIELD:
        m = 0.0
        s = LN2
    else:
        bh = beta * h
        m = math.tanh(bh)
        s = _log2cosh(bh) - bh * math.tanh(bh)
    return KdpThermo(t=t, f=f_high, m=m, s=s, phase=phase)


def _beta_of_t(t, params):
    return params.beta_c / (1.0 + t)


def kdp_phase_boundary(t, params: KdpParams) -> float:
    """Field h*(t) > 0 where the ordered and high-temperature f coincide.

    Endpoint variant: h* = eps*t exactly.  Site variant: solves
    beta h = ln(2 cosh beta h) - beta eps by bisection to 1e-12 absolute
    (g(h) = ln(2 cosh beta h) - beta eps - beta h is strictly decreasing with
    g(0) = ln2 - beta eps > 0 for t > 0, so the root is unique).
    """
    if not t > 0.0:
        raise NoRealRootError("phase boundary needs t > 0 (high-temperature side)")
    if params.variant is KdpVariant.ENDPOINT_FIELD:
        return params.epsilon * t
    beta = _beta_of_t(t, params)

    def g(h):
        return _log2cosh(beta * h) - beta * params.epsilon - beta * h

    lo = 0.0
    hi = 2.0 * params.epsilon * (t + 1.0)
    while g(hi) > 0.0:  # expand; g -> -beta*eps < 0 as h grows
        hi *= 2.0
        if hi > 1e12:
            raise NoRealRootError("no sign change found for the site-field boundary")
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def kdp_site_boundary_series(t, epsilon) -> float:
    """Small-t expansion of the site-field boundary: eps*t + (eps ln2/2) t^2."""
    return epsilon * t + 0.5 * epsilon * LN2 * t * t


def kdp_discontinuities(t, params: KdpParams):
    """(delta_m, delta_s) across the boundary at reduced temperature t >= 0.

    Endpoint: (1, ln 2) everywhere.  Site: (1 - t ln2,
    ln2 (1 - (ln2/2) t^2)), the closed forms near the critical point.
    """
    if t < 0.0:
        raise ValueError("the boundary exists for t >= 0")
    if params.variant is KdpVariant.ENDPOINT_FIELD:
        return 1.0, LN2
    return 1.0 - t * LN2, LN2 * (1.0 - 0.5 * LN2 * t * t)


def kdp_boundary_limits(t, params: KdpParams):
    """One-sided (delta_m, delta_s) computed directly at the solved boundary.

    High-temperature m and s are evaluated at h*(t); ordered side has
    m = 1, s = 0.  Independent route against the closed forms above.
    """
    h_star = kdp_phase_boundary(t, params)
    beta = _beta_of_t(t, params)
    if params.variant is KdpVariant.ENDPOINT_FIELD:
        return 1.0, LN2
    bh = beta * h_star
    m_high = math.tanh(bh)
    s_high = _log2cosh(bh) - bh * m_high
    return 1.0 - m_high, s_high
