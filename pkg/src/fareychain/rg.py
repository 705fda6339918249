"""Mean-field minimization and the marginal-field renormalization flow.

Implements the quartic free-energy ansatz f = a + b t M^2 + u M^4 - g h M,
the truncated flow du/dl = -x u^2, dt/dl = (y_t - z_t u) t,
dh/dl = (y_h - z_h u) h together with its closed-form solution, the matching
scale where a relevant field reaches order one, the singular high-temperature
free energy, the first-order phase boundary and the discontinuities across
it.

The exponent constraints y_t = y_h = d, z_t = x, z_h = 0 are derived by
:meth:`RGConstants.from_dimension`; constructing RGConstants directly leaves
them free for experimentation.  The constants carry documented defaults
(a=-0.1, b=1, u=0.5, g=1, x=1, t0=1, h0=1, d=1): only the exponent relations
are fixed by the theory, not the values.

Pure, stateless, thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import NoRealRootError, PoleError

#: Matching threshold: the flow stops where a relevant field is of order one.
DEFAULT_THRESHOLD = 1.0

#: |1 + 3 a g^2 / (4 b t0)| below this counts as the degenerate double root.
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class MeanFieldConstants:
    """Quartic coefficients; u doubles as the marginal coupling's start value.

    Stability needs u > 0; the high-temperature phase has b > 0, g >= 0 and
    (from the sign of f) a < 0.  Only u > 0 is enforced here.
    """

    a: float = -0.1
    b: float = 1.0
    u: float = 0.5
    g: float = 1.0

    def __post_init__(self):
        if not self.u > 0.0:
            raise ValueError("u > 0 is required for stability")


@dataclass(frozen=True)
class RGConstants:
    """Flow coefficients, reference scales and dimensionality."""

    x: float = 1.0
    y_t: float = 1.0
    y_h: float = 1.0
    z_t: float = 1.0
    z_h: float = 0.0
    t0: float = 1.0
    h0: float = 1.0
    d: float = 1.0

    def __post_init__(self):
        if not (self.t0 > 0.0 and self.h0 > 0.0):
            raise ValueError("t0 and h0 must be > 0")

    @classmethod
    def from_dimension(cls, d=1.0, x=1.0, t0=1.0, h0=1.0):
        """Derive y_t = y_h = d, z_t = x, z_h = 0 from (d, x).

        The h-exponent of the field term, d/y_h + y_t/y_h, must come out as
        exactly 2 under these constraints; asserted here once per construction.
        """
        rg = cls(x=x, y_t=d, y_h=d, z_t=x, z_h=0.0, t0=t0, h0=h0, d=d)
        if abs(rg.h_term_exponent - 2.0) > 1e-12:
            raise AssertionError("exponent bookkeeping broke: d/y_h + y_t/y_h != 2")
        return rg

    @property
    def h_term_exponent(self):
        return self.d / self.y_h + self.y_t / self.y_h


@dataclass(frozen=True)
class RGState:
    """Flowing fields at scale ell: reduced temperature, field, marginal u."""

    t: float
    h: float
    u: float
    ell: float = 0.0


class FfscBoundary(NamedTuple):
    """Solved boundary field, its closed asymptote, and the double-root flag."""

    h_star: float
    asymptote: float
    degenerate: bool


# ----------------------------------------------------------------- mean field


def mean_field_f(m, t, h, c: MeanFieldConstants) -> float:
    """a + b t M^2 + u M^4 - g h M."""
    m2 = m * m
    return c.a + c.b * t * m2 + c.u * m2 * m2 - c.g * h * m


def _stationary_roots(t, h, c):
    # stationarity 2 b t M + 4 u M^3 = g h, as depressed cubic M^3 + pM + q = 0
    p = c.b * t / (2.0 * c.u)
    q = -c.g * h / (4.0 * c.u)
    if p == 0.0 and q == 0.0:
        return [0.0]
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0.0:
        r = math.sqrt(disc)
        roots = [_cbrt(-q / 2.0 + r) + _cbrt(-q / 2.0 - r)]
    elif disc == 0.0:
        if p == 0.0:
            roots = [0.0]
        else:
            roots = [3.0 * q / p, -3.0 * q / (2.0 * p)]
    else:
        # three real roots (p < 0 here)
        rho = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg)
        roots = [rho * math.cos(theta / 3.0 - 2.0 * math.pi * k / 3.0) for k in range(3)]
    # Newton polish against the raw stationarity condition
    polished = []
    for m in roots:
        for _ in range(3):
            grad = 2.0 * c.b * t * m + 4.0 * c.u * m**3 - c.g * h
            curv = 2.0 * c.b * t + 12.0 * c.u * m * m
            if curv != 0.0:
                m -= grad / curv
        polished.append(m)
    return polished


def _cbrt(x):
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def minimize_mean_field(t, h, c: MeanFieldConstants) -> float:
    """Global minimizer of the quartic in M.

    Solves the cubic stationarity condition in closed form and returns the
    real root with the smallest f.  For h = 0, t < 0 the two minima are
    symmetric; the non-negative one is returned.
    """
    roots = _stationary_roots(t, h, c)
    best = min(roots, key=lambda m: (mean_field_f(m, t, h, c), -m))
    return best + 0.0


# ------------------------------------------------------------------- the flow


def _pole_guard(x, u0, ell):
    lam = 1.0 + x * u0 * ell
    if lam <= 0.0:
        raise PoleError(f"flow pole: 1 + x*u0*ell = {lam} <= 0 at ell = {ell}")
    return lam


def flow_closed_form(state: RGState, ell, rg: RGConstants) -> RGState:
    """Exact solution of the truncated flow, advanced by ell.

    u(l) = u0/(1 + x u0 l); ln(t(l)/t0') = y_t l - (z_t/x) ln(1 + x u0 l),
    and the same shape for h with (y_h, z_h).  For x = 0 the bracket
    degenerates to the pure exponential exp(-z u0 l).
    """
    if ell < 0.0:
        raise ValueError("ell must be >= 0")
    u0 = state.u
    x = rg.x
    if x == 0.0:
        u_new = u0
        log_bracket = u0 * ell  # limit of ln(1 + x u0 l)/x
        t_new = state.t * math.exp(rg.y_t * ell - rg.z_t * log_bracket)
        h_new = state.h * math.exp(rg.y_h * ell - rg.z_h * log_bracket)
    else:
        lam = _pole_guard(x, u0, ell)
        u_new = u0 / lam
        t_new = state.t * math.exp(rg.y_t * ell - (rg.z_t / x) * math.log(lam))
        h_new = state.h * math.exp(rg.y_h * ell - (rg.z_h / x) * math.log(lam))
    return RGState(t=t_new, h=h_new, u=u_new, ell=state.ell + ell)


def flow_integrate(state: RGState, ell, step, rg: RGConstants) -> RGState:
    """Fourth-order Runge-Kutta integration of the truncated flow."""
    if step <= 0.0:
        raise ValueError("step must be > 0")
    if ell < 0.0:
        raise ValueError("ell must be >= 0")
    if rg.x != 0.0:
        _pole_guard(rg.x, state.u, ell)
    nsteps = max(1, math.ceil(ell / step)) if ell > 0.0 else 0
    dl = ell / nsteps if nsteps else 0.0

    def deriv(y):
        u, t, h = y
        return (
            -rg.x * u * u,
            (rg.y_t - rg.z_t * u) * t,
            (rg.y_h - rg.z_h * u) * h,
        )

    y = (state.u, state.t, state.h)
    for _ in range(nsteps):
        k1 = deriv(y)
        k2 = deriv(tuple(y[i] + 0.5 * dl * k1[i] for i in range(3)))
        k3 = deriv(tuple(y[i] + 0.5 * dl * k2[i] for i in range(3)))
        k4 = deriv(tuple(y[i] + dl * k3[i] for i in range(3)))
        y = tuple(
            y[i] + dl / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            for i in range(3)
        )
    return RGState(t=y[1], h=y[2], u=y[0], ell=state.ell + ell)


def matching_scale(state: RGState, rg: RGConstants, threshold=DEFAULT_THRESHOLD) -> float:
    """Smallest ell where max(|t(ell)|, |h(ell)|) reaches the threshold.

    Coarse forward scan (step 1/4) locates the first crossing, then bisection
    pins it to full double precision.
    """
    if threshold <= 0.0:
        raise ValueError("threshold must be > 0")
    start = max(abs(state.t), abs(state.h))
    if start == 0.0:
        raise ValueError("both fields vanish; the flow never reaches the threshold")
    if start >= threshold:
        raise ValueError("fields already at or beyond the threshold")

    def g(ell):
        flowed = flow_closed_form(state, ell, rg)
        return max(abs(flowed.t), abs(flowed.h)) - threshold

    lo = 0.0
    hi = 0.25
    while g(hi) < 0.0:
        lo = hi
        hi += 0.25
        if hi > 4000.0:
            raise NoRealRootError("flow never reached the threshold (ell > 4000)")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def matching_scale_estimate(state: RGState, rg: RGConstants, threshold=DEFAULT_THRESHOLD) -> float:
    """The closed approximation for the t-driven matching scale.

    ell0 ~ (1/y_t) ln(theta/t) + (z_t/(x y_t)) ln[1 + (x/y_t) u ln(theta/t)];
    valid for theta/|t| >> 1 and x > 0.
    """
    if rg.x == 0.0:
        raise ValueError("the logarithmic estimate needs x > 0")
    big_l = math.log(threshold / abs(state.t))
    return big_l / rg.y_t + rg.z_t / (rg.x * rg.y_t) * math.log(
        1.0 + (rg.x / rg.y_t) * state.u * big_l
    )


# --------------------------------------------------- singular free energy etc.


def _log_ratio(t, rg):
    if not t > 0.0:
        raise ValueError("the high-temperature forms need t > 0")
    val = math.log(rg.t0 / t)
    if val <= 0.0:
        raise ValueError("need t < t0 so that ln(t0/t) > 0")
    return val


def _bracket(t, mf, rg):
    # (x/y_t) u ln(t0/t): the slowly-varying marginal factor
    return (rg.x / rg.y_t) * mf.u * _log_ratio(t, rg)


def singular_f_high(t, h, mf: MeanFieldConstants, rg: RGConstants) -> float:
    """Asymptotic high-temperature free energy.

    f = |t/t0| [L]^-1 a - (h^2/t) [L] (3 g^2 / 16 b) with
    L = (x/y_t) u ln(t0/t).  Valid for 0 < t < t0 and |h| below the boundary.
    """
    big_l = _bracket(t, mf, rg)
    return (t / rg.t0) * mf.a / big_l - (h * h / t) * big_l * (
        3.0 * mf.g**2 / (16.0 * mf.b)
    )


def susceptibility_high(t, mf: MeanFieldConstants, rg: RGConstants) -> float:
    """chi(t) = -d^2 f/dh^2 = (3 g^2 / 8 b t) (x/y_t) u ln(t0/t)."""
    return 3.0 * mf.g**2 / (8.0 * mf.b * t) * _bracket(t, mf, rg)


def magnetization_high(t, h, mf: MeanFieldConstants, rg: RGConstants) -> float:
    """m = -df/dh = (h/t) L (3 g^2 / 8 b) in the high-temperature phase."""
    return (h / t) * _bracket(t, mf, rg) * (3.0 * mf.g**2 / (8.0 * mf.b))


def ordered_f(h) -> float:
    """Free energy of the saturated ordered phase: exactly -|h|."""
    return -abs(h)


def scaled_free_energy_via_flow(
    t, h, mf: MeanFieldConstants, rg: RGConstants, threshold=DEFAULT_THRESHOLD
) -> float:
    """High-temperature f by flowing to the matching scale explicitly.

    Evaluates e^{-d ell0} (a - 3 (g h(ell0))^2 / (16 b t(ell0))) with ell0
    from bisection; the independent route against singular_f_high.
    """
    state = RGState(t=t, h=h, u=mf.u)
    ell0 = matching_scale(state, rg, threshold)
    flowed = flow_closed_form(state, ell0, rg)
    matched = mf.a - 3.0 * (mf.g * flowed.h) ** 2 / (16.0 * mf.b * flowed.t)
    return math.exp(-rg.d * ell0) * matched


# --------------------------------------------------------------- the boundary


def _radicand(mf, rg):
    return 1.0 + 3.0 * mf.a * mf.g**2 / (4.0 * mf.b * rg.t0)


def boundary_amplitude(mf: MeanFieldConstants, rg: RGConstants) -> float:
    """k in |h| ~ k t / ln(t0/t): (8 b y_t / 3 x u g^2)(1 - sqrt(1 + 3ag^2/4bt0))."""
    rad = _radicand(mf, rg)
    if rad < -DEGENERATE_TOL:
        raise NoRealRootError("1 + 3 a g^2/(4 b t0) < 0: no real boundary")
    rad = max(rad, 0.0)
    return (8.0 * mf.b * rg.y_t / (3.0 * rg.x * mf.u * mf.g**2)) * (1.0 - math.sqrt(rad))


def phase_boundary_ffsc(t, mf: MeanFieldConstants, rg: RGConstants) -> FfscBoundary:
    """Boundary field from continuity -h = f_high(t, h), a quadratic in h.

    With A = f_high(t, 0) and B the h^2 coefficient, the roots are
    h = (1 -+ sqrt(1 + 3ag^2/4bt0)) / 2B; the larger one implies m > 1 and is
    discarded.  Also reports the closed asymptote k t / ln(t0/t) (the same
    algebra arranged independently) and flags the degenerate double root.
    """
    big_l = _bracket(t, mf, rg)
    rad = _radicand(mf, rg)
    if rad < -DEGENERATE_TOL:
        raise NoRealRootError("1 + 3 a g^2/(4 b t0) < 0: no real boundary")
    degenerate = abs(rad) <= DEGENERATE_TOL
    rad = max(rad, 0.0)
    b_coef = big_l * 3.0 * mf.g**2 / (16.0 * mf.b * t)
    h_star = (1.0 - math.sqrt(rad)) / (2.0 * b_coef)
    asymptote = boundary_amplitude(mf, rg) * t / _log_ratio(t, rg)
    return FfscBoundary(h_star=h_star, asymptote=asymptote, degenerate=degenerate)


def discontinuities_ffsc(t, mf: MeanFieldConstants, rg: RGConstants):
    """(delta_m, delta_s) across the boundary at reduced temperature t.

    delta_m = sqrt(1 + 3ag^2/4bt0); delta_s = -2 L^{-1} (a/t0 +
    (4b/3g^2)(1 - sqrt(...))).  Both vanish together at the degenerate point.
    """
    rad = _radicand(mf, rg)
    if rad < -DEGENERATE_TOL:
        raise NoRealRootError("1 + 3 a g^2/(4 b t0) < 0: no real boundary")
    rad = max(rad, 0.0)
    root = math.sqrt(rad)
    delta_m = root
    big_l = _bracket(t, mf, rg)
    delta_s = -2.0 / big_l * (
        mf.a / rg.t0 + 4.0 * mf.b / (3.0 * mf.g**2) * (1.0 - root)
    )
    return delta_m, delta_s


def delta_m_via_magnetization(t, mf: MeanFieldConstants, rg: RGConstants) -> float:
    """delta_m recomputed as 1 - m_high(h*) -- the independent route."""
    boundary = phase_boundary_ffsc(t, mf, rg)
    return 1.0 - magnetization_high(t, boundary.h_star, mf, rg)
