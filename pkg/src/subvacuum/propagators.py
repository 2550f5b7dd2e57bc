r"""Finite-temperature Hadamard functions of a massive scalar field in D+1 dimensions.

Each thermal image :math:`l` contributes a term built from

.. math::
    w_l = \sqrt{|\Delta\mathbf{x}|^2 - (\Delta t - i\beta l)^2}, \qquad
    B_l = \frac{1}{\pi}\,\mathrm{Re}\left[\left(\frac{m}{2\pi w_l}\right)^{\frac{D-1}{2}}
          K_{\frac{D-1}{2}}(m w_l)\right],

where :math:`w_l = i\sigma_l` is taken on the branch with non-negative real
part so that the Bessel function decays.  The free thermal Hadamard function
is :math:`B_0 + 2\sum_{l\ge1} B_l`; a Dirichlet wall at :math:`x_1 = 0` is
implemented by subtracting the same terms at the mirror separation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from . import series
from .errors import DivergenceError, DomainError
from .specfun import scaled_k


@dataclass(frozen=True)
class FieldSpec:
    """Field mass ``m`` (inverse length) and number of spatial dimensions ``D``."""

    m: float
    D: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("field mass must be non-negative")
        if int(self.D) != self.D or self.D < 1:
            raise ValueError("D must be a positive integer")

    @property
    def nu(self) -> float:
        """Order (D-1)/2 of the propagator Bessel function."""
        return (self.D - 1) / 2


@dataclass(frozen=True)
class IntervalArgs:
    """Separation of the two spacetime points.

    ``dt`` may be complex, which is used to shift along imaginary time.
    ``dx_image`` is the separation after reflecting the primed point in the wall.
    """

    dt: complex
    dx: float
    dx_image: float | None = None
    l: int = 0

    def __post_init__(self):
        if self.dx < 0 or (self.dx_image is not None and self.dx_image < 0):
            raise ValueError("separations must be non-negative")
        if self.l < 0:
            raise ValueError("thermal image index must be non-negative")


@dataclass(frozen=True)
class HadamardSplit:
    """Vacuum / thermal / mixed pieces of the renormalised Hadamard function."""

    vacuum: float
    thermal: float
    mixed: float

    @property
    def total(self) -> float:
        return self.vacuum + self.thermal + self.mixed


def sigma(args: IntervalArgs, beta: float, image: bool = False) -> complex:
    r"""Principal square root of :math:`(\Delta t - i\beta l)^2 - r^2`."""
    r = _separation(args, image)
    shift = 0.0 if args.l == 0 else beta * args.l
    return complex(np.sqrt(complex((args.dt - 1j * shift) ** 2 - r * r)))


def _separation(args: IntervalArgs, image: bool) -> float:
    if not image:
        return args.dx
    if args.dx_image is None:
        raise ValueError("image separation required")
    return args.dx_image


def decay_root(dt, r: float, beta: float, l):
    r"""The branch :math:`w_l = i\sigma_l` with :math:`\mathrm{Re}\,w_l \ge 0`.

    For ``l = 0`` and a real timelike interval the lightcone prescription
    :math:`\Delta t \to \Delta t - i\epsilon` fixes the sign of the purely
    imaginary root.
    """
    l = np.asarray(l)
    shift = np.where(l == 0, 0.0, beta * l) if math.isfinite(beta) else 0.0
    w2 = r * r - (dt - 1j * shift) ** 2
    w = np.sqrt(np.asarray(w2, dtype=complex))
    dt_real = np.real(dt)
    on_cut = (l == 0) & (np.imag(w2) == 0) & (np.real(w2) < 0)
    if np.any(on_cut):
        w = np.where(on_cut, 1j * np.sign(dt_real) * np.sqrt(np.abs(np.real(w2))), w)
    return w


def image_term(field: FieldSpec, beta: float, dt, r: float, l):
    """The single term B_l of the image sum (unit weight, see module docstring)."""
    w = decay_root(dt, r, beta, l)
    if np.any(w == 0):
        raise DomainError("coincident (null) points: the l = 0 term is distributional")
    nu = field.nu
    val = scaled_k(nu, field.m, w) * (2 * math.pi) ** (-nu)
    return np.real(val) / math.pi


def _thermal_sum(field, beta, dt, r, tol, l_max):
    if not math.isfinite(beta):
        return 0.0
    if field.m == 0 and field.D <= 2:
        raise DivergenceError("massless thermal sum diverges for D <= 2")
    return 2.0 * series.image_sum(
        lambda ls: image_term(field, beta, dt, r, ls), tol=tol, l_max=l_max
    )


def hadamard_thermal(
    field: FieldSpec,
    beta: float,
    args: IntervalArgs,
    l_max: int = series.HARD_L_MAX,
    tol: float = series.DEFAULT_TOL,
) -> float:
    """Free-space Hadamard function at inverse temperature ``beta``.

    ``beta = math.inf`` gives the zero-temperature function.
    """
    vac = float(image_term(field, beta, args.dt, args.dx, 0))
    return vac + _thermal_sum(field, beta, args.dt, args.dx, tol, l_max)


def hadamard_boundary_renormalized(
    field: FieldSpec,
    beta: float,
    args: IntervalArgs,
    l_max: int = series.HARD_L_MAX,
    tol: float = series.DEFAULT_TOL,
) -> HadamardSplit:
    """Hadamard function with a Dirichlet wall, free vacuum subtracted.

    Returns the modified-vacuum, pure thermal and mixed pieces separately.
    """
    r_img = _separation(args, True)
    vacuum = -float(image_term(field, beta, args.dt, r_img, 0))
    thermal = _thermal_sum(field, beta, args.dt, args.dx, tol, l_max)
    mixed = -_thermal_sum(field, beta, args.dt, r_img, tol, l_max)
    return HadamardSplit(vacuum=vacuum, thermal=thermal, mixed=mixed)


def phi_squared_thermal_massless(field: FieldSpec, beta: float) -> float:
    r"""Thermal part of :math:`\langle\phi^2\rangle` for a massless field.

    Equals :math:`\Gamma(\frac{D-1}{2})\zeta(D-1) / (2\beta^{D-1}\pi^{(D+1)/2})`;
    the zeta sum diverges for :math:`D \le 2`, where no equilibrium exists.
    """
    if field.m != 0:
        raise ValueError("closed form holds for the massless field only")
    if field.D <= 2:
        raise DivergenceError("thermal <phi^2> diverges for D <= 2: no thermal equilibrium")
    D = field.D
    return (
        math.gamma((D - 1) / 2)
        * float(_sp.zeta(D - 1))
        / (2 * beta ** (D - 1) * math.pi ** ((D + 1) / 2))
    )
