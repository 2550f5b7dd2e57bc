r"""Late-time (:math:`\tau\to\infty`) dispersions for arctan switching.

In this limit the switching enters only through :math:`2e^{-2\tau_s\omega}/\omega^2`,
so each thermal image contributes through the decay length
:math:`b_l = 2\tau_s + l\beta = 2x\alpha_l`, with
:math:`\alpha_l = \tau_s/x + l\beta/2x`.

The pure thermal part is

.. math::
    \frac{2}{\pi x^{D-1}}\sum_{l\ge1}\left[
    \left(\frac{mx}{4\pi\alpha_l}\right)^{\frac{D-1}{2}} K_{\frac{D-1}{2}}(2mx\alpha_l)
    - \frac{\alpha_l (mx)^D}{2^{D-1}\pi^{D/2-1}\Gamma(D/2+1)}\, I(D, 2mx\alpha_l)\right],

in which ``x`` is an arbitrary length that drops out.  Each wall-parallel image
term is written in terms of :math:`W = \sqrt{b^2 + R^2}`, :math:`R = 2x`, as

.. math::
    -2(2\pi)^{-D/2}\left[\sqrt{2/\pi}\,(m/W)^{\frac{D-1}{2}}K_{\frac{D-1}{2}}(mW)
    - b R^{-D/2} m^{D/2}\, U\right],\quad
    U = \int_1^\infty du\,\frac{(u^2-1)^{D/4}}{u}\, e^{-mbu}\,
        J_{D/2}\!\left(mR\sqrt{u^2-1}\right),

which equals the form with prefactor :math:`2/(\pi x^{D-1})` and arguments
:math:`2mx\sqrt{1+\alpha_l^2}`; it is used because it stays finite as
:math:`x \to 0`.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate
from scipy import special as sp

from . import series
from .dispersions import Scenario, thermal_f1
from .errors import (
    ConvergenceError,
    DivergenceError,
    DivisionError,
    DomainError,
    ExtrapolationError,
    PoleError,
    RangeError,
)
from .propagators import FieldSpec
from .specfun import bessel_j, gamma_fn, hyp1f2, scaled_k

HYPERGEOMETRIC_MAX_Y = 2.0
RICHARDSON_EPS = 1e-3
X_INDEPENDENCE_TOL = 1e-10
NEAR_WALL_X = (1e-2, 5e-3, 2.5e-3)
NEAR_WALL_MAX_X = 0.05

_GL32 = np.polynomial.legendre.leggauss(32)
_GL16 = np.polynomial.legendre.leggauss(16)
_U_TAIL = 40.0


# ---------------------------------------------------------------- I(D, y)


def _i_hypergeometric(D: float, y: float) -> float:
    z = 0.25 * y * y
    a = -0.5 * math.pi / math.sin(0.5 * math.pi * D)
    b = (
        -y
        / (2 * math.sqrt(math.pi))
        * gamma_fn(-0.5 * D - 0.5)
        * gamma_fn(0.5 * D + 1)
        * hyp1f2(0.5, 1.5, 0.5 * (D + 3), z)
    )
    c = y ** (-D) * gamma_fn(D) * hyp1f2(-0.5 * D, 0.5 * (1 - D), 1 - 0.5 * D, z)
    return a + b + c


def _i_quadrature(D: float, y: float) -> float:
    """I(D, y) from its integral with t = sinh s; the factor e^{-y} is pulled out."""

    def f(s):
        return math.sinh(s) ** (D + 1) / math.cosh(s) * math.exp(-y * (math.cosh(s) - 1))

    s_hi = 1.0
    while y * (math.cosh(s_hi) - 1) - (D + 1) * s_hi < _U_TAIL:
        s_hi *= 1.5
    val, _ = integrate.quad(f, 0.0, s_hi, epsabs=0.0, epsrel=1e-13, limit=200)
    return val * math.exp(-y)


def _symmetric(D: float, y: float, eps: float) -> float:
    return 0.5 * (_i_hypergeometric(D + eps, y) + _i_hypergeometric(D - eps, y))


def i_func(D: int, y: float) -> float:
    r"""The combination :math:`I(D, y) = \int_0^\infty dt\,\frac{t^{D+1}}{t^2+1}e^{-y\sqrt{t^2+1}}`.

    For ``y <= 2`` it is summed from the hypergeometric representation

    .. math::
        -\frac{\pi}{2}\csc\frac{\pi D}{2}
        - \frac{y}{2\sqrt\pi}\Gamma\!\left(-\frac{D+1}{2}\right)\Gamma\!\left(\frac D2+1\right)
          {}_1F_2\!\left(\tfrac12; \tfrac32, \tfrac{D+3}{2}; \tfrac{y^2}{4}\right)
        + \frac{\Gamma(D)}{y^D}\,{}_1F_2\!\left(-\tfrac D2; \tfrac{1-D}{2}, 1-\tfrac D2; \tfrac{y^2}{4}\right).

    At integer ``D`` two singular terms cancel, so the value is the symmetric
    limit over ``D +- eps`` with one Richardson step, checked against the
    integral.  For ``y > 2`` the series cancel catastrophically and the
    integral is evaluated directly.

    Raises
    ------
    PoleError
        If the integer-``D`` limit disagrees with the integral by more than 1e-6.
    """
    if not y > 0:
        raise DomainError("I(D, y) needs y > 0")
    if D < 1:
        raise DomainError("I(D, y) needs D >= 1")
    if y > HYPERGEOMETRIC_MAX_Y:
        return _i_quadrature(D, y)
    if float(D).is_integer():
        e = RICHARDSON_EPS
        val = (4 * _symmetric(D, y, 0.5 * e) - _symmetric(D, y, e)) / 3
        ref = _i_quadrature(D, y)
        if abs(val - ref) > 1e-6 * abs(ref):
            raise PoleError(f"integer-D limit of I({D}, {y}) failed its consistency check")
        return val
    return _i_hypergeometric(D, y)


# ---------------------------------------------------------------- thermal


def _require_tau_s(tau_s: float):
    if tau_s < 0:
        raise ValueError("tau_s must be non-negative")


def _thermal_terms(field: FieldSpec, x: float, alpha: np.ndarray) -> np.ndarray:
    m, D = field.m, field.D
    mu = 0.5 * (D - 1)
    kterm = (x * x / (2 * math.pi)) ** mu * np.real(scaled_k(mu, m, 2 * x * alpha))
    coef = (m * x) ** D / (2 ** (D - 1) * math.pi ** (D / 2 - 1) * gamma_fn(D / 2 + 1))
    iterm = np.array([a * coef * i_func(D, 2 * m * x * a) for a in alpha])
    return 2 / (math.pi * x ** (D - 1)) * (kterm - iterm)


def thermal_f2_latetime_at(
    field: FieldSpec,
    beta: float,
    tau_s: float,
    x: float,
    l_max: int = series.DEFAULT_L_MAX,
) -> float:
    """The late-time thermal sum evaluated with an explicit auxiliary length ``x``."""
    _require_tau_s(tau_s)
    if not math.isfinite(beta):
        return 0.0
    if field.m == 0:
        return _thermal_massless(field, beta, tau_s)

    def term(ls):
        return _thermal_terms(field, x, tau_s / x + ls * beta / (2 * x))

    return float(series.image_sum(term, l_max=l_max))


def _thermal_massless(field: FieldSpec, beta: float, tau_s: float) -> float:
    D = field.D
    if D <= 2:
        raise DivergenceError("massless late-time thermal sum diverges for D <= 2: no thermal equilibrium")
    c_d = 1.0 / (2**D * math.pi ** (D / 2) * math.gamma(D / 2 + 1))
    return 2 * c_d * math.gamma(D - 1) * beta ** (1 - D) * float(sp.zeta(D - 1, 1 + 2 * tau_s / beta))


def thermal_f2_latetime(
    field: FieldSpec,
    beta: float,
    tau_s: float,
    l_max: int = series.DEFAULT_L_MAX,
) -> float:
    """Late-time thermal dispersion, identical for every velocity component.

    The sum is evaluated at two auxiliary lengths, which must agree to 1e-10.

    Raises
    ------
    DivergenceError
        For the massless field in D = 2.
    """
    if field.m == 0:
        return thermal_f2_latetime_at(field, beta, tau_s, 1.0)
    if not math.isfinite(beta):
        return 0.0
    first = thermal_f2_latetime_at(field, beta, tau_s, beta, l_max)
    second = thermal_f2_latetime_at(field, beta, tau_s, 0.37 * beta, l_max)
    if abs(first - second) > X_INDEPENDENCE_TOL * max(abs(first), abs(second)):
        raise ConvergenceError(
            f"late-time thermal sum depends on the auxiliary length: {first!r} vs {second!r}"
        )
    return first


def latetime_j(field: FieldSpec, b: float) -> float:
    r""":math:`\int_0^\infty dk\, k^{D+1}\omega^{-3} e^{-b\omega}`, the kernel of the thermal sum."""
    if not b > 0:
        raise DomainError("decay length must be positive")
    D = field.D
    if field.m == 0:
        if D <= 1:
            raise DivergenceError("massless kernel diverges for D <= 1")
        return math.gamma(D - 1) * b ** (1 - D)
    c_d = 1.0 / (2**D * math.pi ** (D / 2) * math.gamma(D / 2 + 1))
    # one thermal term at x = b/2 (alpha = 1) equals 2 C_D J(b)
    return float(_thermal_terms(field, 0.5 * b, np.array([1.0]))[0]) / (2 * c_d)


# ---------------------------------------------------------------- wall terms


def u_integral(D: int, c: float, q: float) -> float:
    r"""Scaled :math:`e^{c}\int_1^\infty du\,(u^2-1)^{D/4}u^{-1}e^{-cu}J_{D/2}(q\sqrt{u^2-1})`.

    With :math:`u = \cosh s` the integrand is split into panels at the zeros
    spacing of the Bessel factor, :math:`q\sinh s_k = k\pi`, and each panel is
    integrated with 32-point Gauss-Legendre; a 16-point rule on the same panel
    provides the error estimate.  The estimate is measured against the integral
    of the absolute integrand, so when ``q >> c`` the small result is only
    accurate in the absolute sense.
    """
    if not c > 0 or q < 0:
        raise DomainError("u-integral needs c > 0 and q >= 0")
    p = 0.5 * D + 1

    def bound(s):
        return c * (math.cosh(s) - 1) - p * s

    # the bound is convex in s, so past its first crossing it stays above the cut
    s_hi = 1.0
    while bound(s_hi) < _U_TAIL:
        s_hi *= 1.25
    if q > 0:
        k_hi = int(q * math.sinh(s_hi) / math.pi)
        breaks = [math.asinh(k * math.pi / q) for k in range(1, k_hi + 1)]
    else:
        breaks = []
    edges = np.array([0.0] + [b for b in breaks if b < s_hi] + [s_hi])
    # keep panels short where the exponential varies quickly
    fine = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        npanel = max(1, int(math.ceil((hi - lo) * max(1.0, c * math.sinh(hi)) / 4)))
        fine.extend(np.linspace(lo, hi, npanel + 1)[:-1].tolist())
    fine.append(s_hi)
    edges = np.array(fine)

    def f(s):
        sh = np.sinh(s)
        return sh ** (p) / np.cosh(s) * np.exp(-c * (np.cosh(s) - 1)) * bessel_j(0.5 * D, q * sh)

    lo, hi = edges[:-1, None], edges[1:, None]
    half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
    x32, w32 = _GL32
    x16, w16 = _GL16
    v32 = (half * f(mid + half * x32) * w32).sum()
    v16 = (half * f(mid + half * x16) * w16).sum()
    scale = (half * np.abs(f(mid + half * x32)) * w32).sum()
    if abs(v32 - v16) > 1e-9 * max(scale, 1e-300):
        raise ConvergenceError("u-integral panels did not resolve the integrand")
    return float(v32)


def _wall_term(field: FieldSpec, b: float, R: float) -> float:
    """One wall-parallel image term at decay length b and image distance R."""
    m, D = field.m, field.D
    mu = 0.5 * (D - 1)
    W = math.hypot(b, R)
    if m == 0:
        first = math.sqrt(2 / math.pi) * 2 ** (mu - 1) * math.gamma(mu) * W ** (-2 * mu)
        theta0 = math.atan2(b, R)
        integral = 0.5 * sp.beta(0.5 * D, 0.5) * sp.betainc(0.5 * D, 0.5, math.cos(theta0) ** 2)
        n_val = (2 * R) ** (0.5 * D) * math.gamma(0.5 * (D + 1)) / math.sqrt(math.pi) * R ** (-D) * integral
    else:
        first = math.sqrt(2 / math.pi) * float(np.real(scaled_k(mu, m, W)))
        n_val = m ** (0.5 * D) * u_integral(D, m * b, m * R) * math.exp(-m * b)
    return -2 * (2 * math.pi) ** (-0.5 * D) * (first - b * R ** (-0.5 * D) * n_val)


def _require_wall(x: float, tau_s: float, vacuum: bool):
    if not x > 0:
        raise DomainError("wall distance must be positive")
    _require_tau_s(tau_s)
    if vacuum and tau_s == 0:
        raise DomainError("the vacuum wall term needs tau_s > 0 (sudden switching is singular)")


def mixed_parallel_f2_latetime(
    field: FieldSpec,
    beta: float,
    x: float,
    tau_s: float,
    l_max: int = series.DEFAULT_L_MAX,
) -> float:
    """Late-time mixed (wall-thermal) dispersion for a wall-parallel component."""
    _require_wall(x, tau_s, vacuum=False)
    if not math.isfinite(beta):
        return 0.0

    def term(l):
        return _wall_term(field, 2 * tau_s + l * beta, 2 * x)

    if field.m == 0:
        return _power_law_sum(term)
    return float(series.image_sum(lambda ls: np.array([term(l) for l in ls]), l_max=l_max))


def _power_law_sum(f, head: int = 128) -> float:
    """Sum f(l), l >= 1, for a smooth term decaying only as a power of l.

    The first ``head`` terms are added directly; the rest is the midpoint
    Euler-Maclaurin tail, integral from head + 1/2 plus f'(head + 1/2)/24.
    """
    direct = math.fsum(f(l) for l in range(1, head + 1))
    a = head + 0.5
    tail, _ = integrate.quad(f, a, math.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    h = 1e-2 * a
    slope = (f(a + h) - f(a - h)) / (2 * h)
    return direct + tail + slope / 24


def vacuum_parallel_f2_latetime(field: FieldSpec, x: float, tau_s: float) -> float:
    """Late-time modified-vacuum dispersion: half the l = 0 image term."""
    _require_wall(x, tau_s, vacuum=True)
    return 0.5 * _wall_term(field, 2 * tau_s, 2 * x)


def _lift(field: FieldSpec) -> FieldSpec:
    return FieldSpec(m=field.m, D=field.D + 2)


def mixed_perp_f2_latetime(
    field: FieldSpec,
    beta: float,
    x: float,
    tau_s: float,
    l_max: int = series.DEFAULT_L_MAX,
) -> float:
    """Late-time mixed term normal to the wall via the D -> D+2 relation."""
    return -mixed_parallel_f2_latetime(field, beta, x, tau_s, l_max) + 8 * math.pi * x * x * (
        mixed_parallel_f2_latetime(_lift(field), beta, x, tau_s, l_max)
    )


def vacuum_perp_f2_latetime(field: FieldSpec, x: float, tau_s: float) -> float:
    """Late-time modified-vacuum term normal to the wall."""
    return -vacuum_parallel_f2_latetime(field, x, tau_s) + 8 * math.pi * x * x * (
        vacuum_parallel_f2_latetime(_lift(field), x, tau_s)
    )


def components_f2_latetime(field: FieldSpec, beta: float, x: float, tau_s: float) -> dict:
    """All late-time pieces at one point, keyed ``thermal``, ``vacuum_parallel`` etc."""
    return {
        "thermal": thermal_f2_latetime(field, beta, tau_s),
        "vacuum_parallel": vacuum_parallel_f2_latetime(field, x, tau_s),
        "mixed_parallel": mixed_parallel_f2_latetime(field, beta, x, tau_s),
        "vacuum_perp": vacuum_perp_f2_latetime(field, x, tau_s),
        "mixed_perp": mixed_perp_f2_latetime(field, beta, x, tau_s),
    }


# ---------------------------------------------------------------- dominance


def _eta_from(parts: dict, D: int) -> float:
    vac = (D - 1) * parts["vacuum_parallel"] + parts["vacuum_perp"]
    if vac == 0:
        raise DivisionError("zero-temperature mean squared velocity vanishes")
    excess = D * parts["thermal"] + (D - 1) * parts["mixed_parallel"] + parts["mixed_perp"]
    return abs(excess / vac)


def eta(field: FieldSpec, beta: float, x: float, tau_s: float) -> float:
    r"""Thermal-versus-vacuum dominance :math:`|\langle v^2\rangle_\beta - \langle v^2\rangle_\infty| / |\langle v^2\rangle_\infty|`.

    :math:`\langle v^2\rangle` sums the ``D - 1`` parallel components and the
    normal one; the zero-temperature value keeps only the vacuum wall terms.
    """
    if not math.isfinite(beta):
        return 0.0
    return _eta_from(components_f2_latetime(field, beta, x, tau_s), field.D)


def eta_wall_limit(field: FieldSpec, beta: float, tau_s: float) -> float:
    r"""Analytic :math:`x\to0` value :math:`4\sum_{l\ge1}J(2\tau_s+l\beta) / [(D-2)J(2\tau_s)]`."""
    if field.D == 2:
        return math.inf
    num = series.image_sum(
        lambda ls: np.array([latetime_j(field, 2 * tau_s + l * beta) for l in ls])
    )
    return 4 * num / ((field.D - 2) * latetime_j(field, 2 * tau_s))


def eta_near_wall(field: FieldSpec, beta: float, tau_s: float) -> float:
    """Dominance parameter on the wall, extrapolated from small distances.

    ``eta`` is evaluated at x/L = 1e-2, 5e-3, 2.5e-3, with L the shortest of
    ``beta``, ``tau_s`` and ``1/m``, and extrapolated in x^2.  For D = 2 the vacuum terms cancel on the wall and ``math.inf`` is
    returned.

    Raises
    ------
    ExtrapolationError
        If the two extrapolants disagree, or disagree with the analytic limit.
    """
    if field.D < 2:
        raise DomainError("eta_near_wall needs D >= 2")
    if field.D == 2:
        return math.inf
    if not tau_s > 0:
        return 0.0
    # the wall expansion is in x over the shortest of tau_s, beta and 1/m
    length = min(beta, tau_s, 1 / field.m if field.m > 0 else math.inf)
    h = [eta(field, beta, xb * length, tau_s) for xb in NEAR_WALL_X]
    r1 = (4 * h[1] - h[0]) / 3
    r2 = (4 * h[2] - h[1]) / 3
    if abs(r1 - r2) > 1e-6 * abs(r2) + 1e-14:
        raise ExtrapolationError(f"near-wall extrapolation not settled: {r1!r} vs {r2!r}")
    exact = eta_wall_limit(field, beta, tau_s)
    if abs(r2 - exact) > 1e-6 * abs(exact) + 1e-14:
        raise ExtrapolationError(f"near-wall extrapolant {r2!r} misses the wall limit {exact!r}")
    return r2


def near_wall_mixed_approx(
    scenario: Scenario,
    n: int,
    tau: float,
    l_max: int = series.DEFAULT_L_MAX,
) -> tuple[float, float]:
    r"""Near-wall approximation of the F1 mixed terms, :math:`(1-\gamma_l^2)^{1/2}\simeq(-\gamma_l^2)^{1/2}`.

    Returns ``(parallel, perpendicular)`` = ``(-thermal, thermal - 8 pi x^2 thermal(D+2))``.
    """
    if not scenario.boundary:
        raise DomainError("near-wall approximation needs a wall")
    if not scenario.x / scenario.beta < NEAR_WALL_MAX_X:
        raise RangeError(f"near-wall approximation needs x/beta < {NEAR_WALL_MAX_X}")
    th = thermal_f1(scenario, n, tau, l_max=l_max)
    th2 = thermal_f1(scenario.with_dimension(scenario.field.D + 2), n, tau, l_max=l_max)
    return -th, th - 8 * math.pi * scenario.x**2 * th2
