r"""Velocity dispersions for the generalised Lorentzian switching.

All results are :math:`\langle(\Delta v_i)^2\rangle / g^2`.  Lengths are in
whatever unit the caller uses for ``beta``, ``x`` and ``tau``; the figure
generators set either ``beta = 1`` or ``x = 1``.

The switching enters through the residue sum of its Fourier transform, so
every closed form is a double sum over the phases
:math:`\psi_{n,p}, \psi_{n,q}` (``n**2`` pairs) of a single thermal image sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import series
from .errors import ConvergenceError, DomainError
from .propagators import FieldSpec
from .specfun import polygamma2, scaled_k
from .switching import lorentzian_cn, psi_array

REALITY_TOL = 1e-10


class Direction(str, Enum):
    PARALLEL = "parallel"
    PERPENDICULAR = "perpendicular"

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        v = str(value).lower()
        if v in ("perp", "perpendicular"):
            return cls.PERPENDICULAR
        if v in ("par", "parallel"):
            return cls.PARALLEL
        raise ValueError(f"unknown direction {value!r}")


@dataclass(frozen=True)
class Scenario:
    """Field, inverse temperature and (optional) distance to a Dirichlet wall.

    ``beta = math.inf`` is the zero-temperature vacuum and ``x = None`` means
    no wall.
    """

    field: FieldSpec
    beta: float = math.inf
    x: float | None = None

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive (use math.inf for zero temperature)")
        if self.x is not None and not self.x > 0:
            raise ValueError("wall distance must be positive")

    @classmethod
    def make(cls, D: int, m: float, beta: float = math.inf, x: float | None = None) -> "Scenario":
        return cls(FieldSpec(m=m, D=D), beta=beta, x=x)

    @property
    def boundary(self) -> bool:
        return self.x is not None

    @property
    def zero_temperature(self) -> bool:
        return not math.isfinite(self.beta)

    def with_dimension(self, D: int) -> "Scenario":
        return replace(self, field=FieldSpec(m=self.field.m, D=D))


@dataclass(frozen=True)
class DispersionBreakdown:
    """Vacuum, thermal and mixed parts of one velocity component."""

    vacuum: float
    thermal: float
    mixed: float
    direction: Direction

    @property
    def boundary(self) -> float:
        return self.vacuum + self.mixed

    @property
    def total(self) -> float:
        return self.vacuum + self.thermal + self.mixed


def _pairs(n: int):
    ps = psi_array(n)
    weight = np.multiply.outer(ps, ps.conj())
    diff = np.subtract.outer(ps, ps.conj())
    return weight, diff


def _real_part(value: complex, scale: float) -> float:
    if abs(value.imag) > REALITY_TOL * max(scale, abs(value.real)) and scale > 0:
        raise ConvergenceError(
            f"psi double sum is not real: residue {value.imag:.3e} vs scale {scale:.3e}"
        )
    return float(value.real)


def _require_tau(n: int, tau: float):
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not tau > 0:
        raise ValueError("tau must be positive")


def _principal_root(z):
    r = np.sqrt(z)
    return r


def aux_a(n: int, tau: float, beta: float, l):
    r"""Auxiliary :math:`a_l = (\tau/2\beta)(\psi_{n,p} - \psi^*_{n,q}) - i l` on the (p,q) grid."""
    _, diff = _pairs(n)
    l = np.asarray(l, dtype=float)
    return (tau / (2 * beta)) * diff - 1j * l[..., None, None]


def thermal_f1(
    scenario: Scenario,
    n: int,
    tau: float,
    l_max: int = series.DEFAULT_L_MAX,
    tol: float = series.DEFAULT_TOL,
) -> float:
    r"""Pure thermal dispersion, the same for every velocity component.

    .. math::
        \frac{2}{\beta^{D-1}}\left[\frac{(\tau/\beta)\pi c_n}{2n}\right]^2
        \sum_{p,q}\psi_{n,p}\psi^*_{n,q}\sum_{l\ge1}
        \left(\frac{m\beta}{2\pi\sqrt{-a_l^2}}\right)^{\frac{D+1}{2}}
        K_{\frac{D+1}{2}}\left(m\beta\sqrt{-a_l^2}\right)

    For the massless field in ``D = 2`` the polygamma form of
    :func:`thermal_f1_d2_massless` is used instead of the slowly converging
    power-law image sum.
    """
    _require_tau(n, tau)
    if scenario.zero_temperature:
        return 0.0
    m, D, beta = scenario.field.m, scenario.field.D, scenario.beta
    if m == 0 and D == 2:
        return thermal_f1_d2_massless(n, tau, beta)
    nu = (D + 1) / 2
    weight, diff = _pairs(n)
    scale_acc = [0.0]

    def term(ls):
        a = (tau / (2 * beta)) * diff[None] - 1j * ls[:, None, None]
        root = _principal_root(-(a * a))
        t = weight * (2 * math.pi) ** (-nu) * beta ** (2 * nu) * scaled_k(nu, m, beta * root)
        scale_acc[0] += float(np.abs(t).sum())
        return t.sum(axis=(1, 2))

    total = series.image_sum(term, tol=tol, l_max=l_max)
    pref = 2 / beta ** (D - 1) * ((tau / beta) * math.pi * lorentzian_cn(n) / (2 * n)) ** 2
    return pref * _real_part(complex(total), scale_acc[0])


def thermal_f1_d2_massless(n: int, tau: float, beta: float) -> float:
    r"""Massless ``D = 2`` thermal dispersion in closed form.

    .. math::
        -\frac{\pi}{\beta}\left(\frac{\tau c_n}{4\beta n}\right)^2
        \sum_{p,q}\psi_{n,p}\psi^*_{n,q}\,\psi^{(2)}(1 + i a_0)
    """
    _require_tau(n, tau)
    if not math.isfinite(beta):
        return 0.0
    weight, diff = _pairs(n)
    a0 = (tau / (2 * beta)) * diff
    t = weight * polygamma2(1 + 1j * a0)
    total = complex(t.sum())
    pref = -(math.pi / beta) * (tau * lorentzian_cn(n) / (4 * beta * n)) ** 2
    return pref * _real_part(total, float(np.abs(t).sum()))


def _boundary_terms(scenario: Scenario, n: int, tau: float, ls):
    """Summed (p,q) contributions of image index l to the mixed/vacuum sums."""
    m, D, beta, x = scenario.field.m, scenario.field.D, scenario.beta, scenario.x
    nu = (D + 1) / 2
    weight, diff = _pairs(n)
    ls = np.asarray(ls, dtype=float)
    if math.isfinite(beta):
        a = (tau / (2 * beta)) * diff[None] - 1j * ls[:, None, None]
        gamma = (beta / (2 * x)) * a
    else:
        gamma = np.broadcast_to((tau / (4 * x)) * diff, (len(ls),) + diff.shape)
    root = _principal_root(1 - gamma * gamma)
    t = weight * (x * x / (2 * math.pi)) ** nu * scaled_k(nu, m, 2 * x * root)
    return t.sum(axis=(1, 2)), np.abs(t).sum(axis=(1, 2))


def _boundary_prefactor(scenario: Scenario, n: int, tau: float) -> float:
    D, x = scenario.field.D, scenario.x
    return -2 / x ** (D - 1) * ((tau / x) * math.pi * lorentzian_cn(n) / (2 * n)) ** 2


def _require_boundary(scenario: Scenario):
    if not scenario.boundary:
        raise DomainError("boundary contribution requested for a scenario without a wall")


def mixed_parallel_f1(
    scenario: Scenario,
    n: int,
    tau: float,
    l_max: int = series.DEFAULT_L_MAX,
    tol: float = series.DEFAULT_TOL,
) -> float:
    r"""Boundary-thermal interference term for a wall-parallel component.

    .. math::
        -\frac{2}{x^{D-1}}\left[\frac{(\tau/x)\pi c_n}{2n}\right]^2
        \sum_{p,q}\psi_{n,p}\psi^*_{n,q}\sum_{l\ge1}
        \left(\frac{mx}{4\pi\sqrt{1-\gamma_l^2}}\right)^{\frac{D+1}{2}}
        K_{\frac{D+1}{2}}\left(2mx\sqrt{1-\gamma_l^2}\right),
        \quad \gamma_l = \frac{\beta}{2x} a_l
    """
    _require_tau(n, tau)
    _require_boundary(scenario)
    if scenario.zero_temperature:
        return 0.0
    scale_acc = [0.0]

    def term(ls):
        s, a = _boundary_terms(scenario, n, tau, ls)
        scale_acc[0] += float(a.sum())
        return s

    total = series.image_sum(term, tol=tol, l_max=l_max)
    return _boundary_prefactor(scenario, n, tau) * _real_part(complex(total), scale_acc[0])


def vacuum_parallel_f1(scenario: Scenario, n: int, tau: float) -> float:
    """Modified-vacuum term: half of the l = 0 member of the mixed sum."""
    _require_tau(n, tau)
    _require_boundary(scenario)
    s, a = _boundary_terms(scenario, n, tau, [0])
    return 0.5 * _boundary_prefactor(scenario, n, tau) * _real_part(complex(s[0]), float(a[0]))


def _perpendicular(parallel, scenario: Scenario, *args, **kwargs) -> float:
    x, D = scenario.x, scenario.field.D
    lifted = scenario.with_dimension(D + 2)
    return -parallel(scenario, *args, **kwargs) + 8 * math.pi * x * x * parallel(lifted, *args, **kwargs)


def mixed_perp_f1(
    scenario: Scenario,
    n: int,
    tau: float,
    l_max: int = series.DEFAULT_L_MAX,
    tol: float = series.DEFAULT_TOL,
) -> float:
    """Mixed term normal to the wall, -parallel(D) + 8 pi x^2 parallel(D+2)."""
    _require_boundary(scenario)
    return _perpendicular(mixed_parallel_f1, scenario, n, tau, l_max=l_max, tol=tol)


def vacuum_perp_f1(scenario: Scenario, n: int, tau: float) -> float:
    """Modified-vacuum term normal to the wall."""
    _require_boundary(scenario)
    return _perpendicular(vacuum_parallel_f1, scenario, n, tau)


def breakdown_f1(
    scenario: Scenario,
    n: int,
    tau: float,
    direction=Direction.PARALLEL,
    l_max: int = series.DEFAULT_L_MAX,
) -> DispersionBreakdown:
    """All three contributions for one direction; without a wall vacuum = mixed = 0."""
    direction = Direction.parse(direction)
    thermal = thermal_f1(scenario, n, tau, l_max=l_max)
    if not scenario.boundary:
        return DispersionBreakdown(0.0, thermal, 0.0, direction)
    if direction is Direction.PARALLEL:
        vac = vacuum_parallel_f1(scenario, n, tau)
        mix = mixed_parallel_f1(scenario, n, tau, l_max=l_max)
    else:
        vac = vacuum_perp_f1(scenario, n, tau)
        mix = mixed_perp_f1(scenario, n, tau, l_max=l_max)
    return DispersionBreakdown(vac, thermal, mix, direction)


def correlation_thermal(
    field: FieldSpec,
    beta: float,
    dt: float,
    l_max: int = series.DEFAULT_L_MAX,
    tol: float = series.DEFAULT_TOL,
) -> float:
    r"""Thermal force correlation :math:`C_D(\Delta t)` (per unit :math:`g^2`).

    .. math::
        \frac{2}{\beta^{D+1}}\mathrm{Re}\sum_{l\ge1}
        \left[\frac{m\beta}{2\pi\sqrt{-(\Delta t/\beta + il)^2}}\right]^{\frac{D+1}{2}}
        K_{\frac{D+1}{2}}\left[m\beta\sqrt{-(\Delta t/\beta + il)^2}\right]
    """
    if not math.isfinite(beta):
        return 0.0
    m, D = field.m, field.D
    nu = (D + 1) / 2
    u = dt / beta

    def term(ls):
        root = _principal_root(-((u + 1j * ls) ** 2))
        return np.real((2 * math.pi) ** (-nu) * beta ** (2 * nu) * scaled_k(nu, m, beta * root))

    return 2 / beta ** (D + 1) * float(series.image_sum(term, tol=tol, l_max=l_max))
