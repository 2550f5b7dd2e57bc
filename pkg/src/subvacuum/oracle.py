r"""Brute-force momentum-space quadrature of the dispersion functional.

After the spatial derivatives and the coincidence limit are taken
analytically, every contribution reduces to a single radial integral

.. math::
    \frac{\langle(\Delta v)^2\rangle}{g^2} = \int_0^\infty dk\,
    \frac{k^{D+1}}{\omega}\,|\hat F(\omega)|^2\, W(\omega)\,\kappa(kR),
    \qquad \omega = \sqrt{k^2+m^2},\; R = 2x,

with the occupation weight :math:`W = n_B(\omega) = 1/(e^{\beta\omega}-1)` for
the thermal and mixed parts and :math:`W = 1/2` for the modified vacuum.  The
angular kernels are

* thermal: :math:`\kappa = [2^D\pi^{D/2}\Gamma(D/2+1)]^{-1}`;
* wall-parallel image term: :math:`\kappa = -(2\pi)^{-D/2} z^{-D/2}J_{D/2}(z)`;
* wall-normal image term:
  :math:`\kappa = (2\pi)^{-D/2}[z^{-D/2}J_{D/2}(z) - z^{1-D/2}J_{D/2+1}(z)]`.

The image kernels are the angular averages of :math:`k_\parallel^2 e^{i\mathbf k\cdot\mathbf R}`
and :math:`-k_\perp^2 e^{i\mathbf k\cdot\mathbf R}`, i.e. :math:`A'(z)/z` and
:math:`-A''(z)` of the spherical mean :math:`A(z)` of a plane wave.  Nothing in
this module uses the closed forms, so it serves as an independent check of them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate
from scipy import special as sp

from .dispersions import Direction, Scenario
from .errors import DomainError, QuadratureError
from .propagators import FieldSpec
from .switching import Arctan, Lorentzian, Sudden

_TAIL_LOG = 40.0  # integrand tail cut at e^-40 of its envelope peak
_MAX_DOUBLINGS = 7
ERROR_BUDGET = 1e-8


class Contribution(str, Enum):
    THERMAL = "thermal"
    MIXED = "mixed"
    VACUUM = "vacuum"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for the panel-wise adaptive quadrature.

    ``k_max = None`` picks the cutoff from the damping of the integrand.
    """

    rel_tol: float = 1e-11
    abs_tol: float = 0.0
    max_subdivisions: int = 200
    k_max: float | None = None

    def __post_init__(self):
        if self.rel_tol < 1e-12:
            raise ValueError("rel_tol below 1e-12 is not attainable by the panel quadrature")


@dataclass(frozen=True)
class LateTimeArctan:
    r"""The :math:`\tau\to\infty` limit of the arctan spectrum, :math:`2e^{-2\tau_s\omega}/\omega^2`.

    The oscillating :math:`\cos\omega\tau` part has been dropped, which is the
    limit the late-time closed forms describe.
    """

    tau_s: float

    def power_spectrum(self, omega):
        w = np.asarray(omega, dtype=float)
        return 2 * np.exp(-2 * self.tau_s * w) / (w * w)

    def damping_rate(self) -> float:
        return 2 * self.tau_s


def _power_z_j(nu: float, z: np.ndarray, shift: int = 0) -> np.ndarray:
    """z^(shift - nu) J_nu(z), with the small-z series near the origin."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = z < 1e-3
    zs = z[small]
    lead = 1.0 / (2**nu * math.gamma(nu + 1))
    out[small] = (
        zs**shift
        * lead
        * (1 - zs**2 / (4 * (nu + 1)) + zs**4 / (32 * (nu + 1) * (nu + 2)))
    )
    zb = z[~small]
    out[~small] = zb ** (shift - nu) * sp.jv(nu, zb)
    return out


def angular_kernel(D: int, contribution, direction, z):
    """The angular factor kappa(z) of the reduced integrand (see module docstring)."""
    contribution = Contribution(contribution)
    direction = Direction.parse(direction)
    z = np.asarray(z, dtype=float)
    if contribution is Contribution.THERMAL:
        return np.full_like(z, 1.0 / (2**D * math.pi ** (D / 2) * math.gamma(D / 2 + 1)))
    c = (2 * math.pi) ** (-D / 2)
    nu = D / 2
    head = _power_z_j(nu, z)
    if direction is Direction.PARALLEL:
        return -c * head
    # z^{1-D/2} J_{D/2+1}(z) = z^2 * z^{-(D/2+1)} J_{D/2+1}(z)
    tail = _power_z_j(nu + 1, z, shift=2)
    return c * (head - tail)


def _occupation(beta: float, contribution: Contribution):
    if contribution is Contribution.VACUUM:
        return lambda w: 0.5
    return lambda w: 1.0 / math.expm1(beta * w)


def _panel_width(switching, R: float) -> float:
    scales = []
    tau = getattr(switching, "tau", None)
    if tau is not None:
        scales.append(math.pi / tau)
    if R > 0:
        scales.append(math.pi / R)
    tau_s = getattr(switching, "tau_s", 0.0)
    if tau_s > 0:
        scales.append(1.0 / tau_s)
    return min(scales) if scales else 1.0


def _cutoff(D: int, rate: float) -> float:
    """Smallest k where (k rate/D)^D e^{-(k rate - D)} drops below e^-TAIL_LOG."""
    p = D + 1
    k = max(p / rate, 1e-12)
    while rate * k - p - p * math.log(rate * k / p) < _TAIL_LOG:
        k *= 1.25
    return k


def _integrate(f, a: float, b: float, width: float, quad: QuadratureSpec) -> tuple[float, float]:
    edges = np.arange(a, b, width).tolist() + [b]
    total = 0.0
    err_sum = 0.0
    with warnings.catch_warnings():
        # QUADPACK warns when a panel sits at roundoff level; the summed
        # error estimate below decides instead
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi <= lo:
                continue
            val, err = integrate.quad(
                f, lo, hi, epsabs=quad.abs_tol, epsrel=quad.rel_tol, limit=quad.max_subdivisions
            )
            if not math.isfinite(val):
                raise QuadratureError(f"non-finite panel value on [{lo}, {hi}]")
            total += val
            err_sum += err
    return total, err_sum


def _checked(total: float, err: float, quad: QuadratureSpec) -> float:
    if err > max(quad.abs_tol, ERROR_BUDGET * abs(total)):
        raise QuadratureError(f"quadrature error estimate {err:.3g} exceeds budget for {total:.6g}")
    return total


def _radial(scenario: Scenario, switching, direction, contribution, quad: QuadratureSpec) -> float:
    contribution = Contribution(contribution)
    m, D, beta = scenario.field.m, scenario.field.D, scenario.beta
    if contribution is not Contribution.THERMAL and not scenario.boundary:
        raise DomainError(f"{contribution.value} contribution needs a wall")
    if contribution is not Contribution.VACUUM and not math.isfinite(beta):
        return 0.0
    R = 2 * scenario.x if contribution is not Contribution.THERMAL else 0.0
    occ = _occupation(beta, contribution)

    def f(k):
        w = math.sqrt(k * k + m * m)
        if w == 0.0:
            return 0.0
        spec = float(switching.power_spectrum(w))
        kern = float(angular_kernel(D, contribution, direction, np.array([k * R]))[0])
        return k ** (D + 1) / w * spec * occ(w) * kern

    width = _panel_width(switching, R)
    rate = switching.damping_rate() + (beta if contribution is not Contribution.VACUUM else 0.0)
    if quad.k_max is not None:
        return _checked(*_integrate(f, 0.0, quad.k_max, width, quad), quad)
    if rate > 0:
        return _checked(*_integrate(f, 0.0, _cutoff(D, rate), width, quad), quad)
    # no exponential damping (sudden switching, vacuum): grow the cutoff until the result settles
    k_hi = 64 * width
    total, err = _integrate(f, 0.0, k_hi, width, quad)
    for _ in range(_MAX_DOUBLINGS):
        extra, e = _integrate(f, k_hi, 2 * k_hi, width, quad)
        k_hi *= 2
        total += extra
        err += e
        if abs(extra) <= 10 * quad.rel_tol * abs(total):
            return _checked(total, err, quad)
    raise QuadratureError(
        f"momentum integral did not settle up to k = {k_hi:.3g}; the dispersion is likely divergent"
    )


def dispersion_quadrature(
    scenario: Scenario,
    switching: Sudden | Lorentzian | Arctan | LateTimeArctan,
    direction=Direction.PARALLEL,
    contribution=Contribution.THERMAL,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Dispersion per unit g^2 for any switching, by direct k-quadrature.

    The thermal part ignores ``direction`` (the bath is isotropic).

    Raises
    ------
    QuadratureError
        If the momentum integral does not settle, as for sudden switching at
        ``tau == 2 * x``.
    """
    return _radial(scenario, switching, direction, contribution, quad)


def latetime_quadrature(
    scenario: Scenario,
    tau_s: float,
    tau: float,
    direction=Direction.PARALLEL,
    contribution=Contribution.THERMAL,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Arctan-switched dispersion at finite ``tau``, keeping the ``1 - cos(omega tau)`` factor.

    ``tau = math.inf`` uses :class:`LateTimeArctan` instead.
    """
    if math.isinf(tau):
        switching = LateTimeArctan(tau_s)
    else:
        switching = Arctan(tau_s, tau)
    if tau_s == 0 and contribution != Contribution.THERMAL:
        raise DomainError("boundary terms need tau_s > 0")
    return _radial(scenario, switching, direction, contribution, quad)


def hadamard_thermal_quadrature(field: FieldSpec, beta: float, dt: float, r: float) -> float:
    r"""Thermal part of the free Hadamard function from its mode sum.

    .. math::
        2\int\frac{d^Dk}{(2\pi)^D\,\omega}\cos(\omega\Delta t)\,
        e^{i\mathbf k\cdot\mathbf r}\,n_B(\omega)
    """
    m, D = field.m, field.D
    pref = 2 * (2 * math.pi) ** (-D / 2)

    def f(k):
        w = math.sqrt(k * k + m * m)
        if w == 0.0:
            return 0.0
        ang = k ** (D - 1) * float(_power_z_j(D / 2 - 1, np.array([k * r]))[0])
        return ang * math.cos(w * dt) / (w * math.expm1(beta * w))

    scales = [math.pi / max(abs(dt), 1e-300), math.pi / max(r, 1e-300), 1.0 / beta]
    quad = QuadratureSpec()
    return pref * _checked(*_integrate(f, 0.0, _cutoff(D, beta), min(scales), quad), quad)
