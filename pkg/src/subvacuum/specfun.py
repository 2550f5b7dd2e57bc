r"""Complex-argument special functions used by the closed-form dispersions.

Only the orders that actually occur are supported: Bessel orders with
:math:`2\nu \in \mathbb{N}`.  Every routine works in double precision and
accepts NumPy arrays where that is useful for vectorised parameter sums.

Half-integer :math:`K_\nu` uses the terminating closed form

.. math::
    K_{n+1/2}(z) = \sqrt{\frac{\pi}{2z}} e^{-z}
        \sum_{k=0}^{n} \frac{(n+k)!}{k!\,(n-k)!\,(2z)^k},

integer orders use the ascending series with digamma coefficients for
:math:`|z| \le 2` and Steed's continued fraction (Temme's CF2) beyond, both
for :math:`K_0, K_1`, followed by upward recurrence.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

from .errors import ConvergenceError, DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061

_SERIES_RADIUS = 2.0
_SERIES_TERMS = 30
_CF_MAXIT = 20000
_EPS = 1e-16


def twice_order(nu) -> int:
    """Return ``2*nu`` as an int, rejecting orders that are not multiples of 1/2."""
    t = round(2 * float(nu))
    if abs(2 * float(nu) - t) > 1e-12 or t < 0:
        raise DomainError(f"unsupported Bessel order {nu!r}; need 2*nu a non-negative integer")
    return int(t)


def _k_half_integer(n: int, z: np.ndarray) -> np.ndarray:
    """K_{n+1/2}(z) from the finite closed form."""
    s = np.ones_like(z)
    w = 1.0 / (2.0 * z)
    p = np.ones_like(z)
    for k in range(1, n + 1):
        p = p * w
        s = s + math.factorial(n + k) / (math.factorial(k) * math.factorial(n - k)) * p
    return np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) * s


def _k01_series(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = 0.25 * z * z
    log_half = np.log(0.5 * z)
    i0 = np.zeros_like(z)
    i1 = np.zeros_like(z)
    s0 = np.zeros_like(z)
    s1 = np.zeros_like(z)
    t0 = np.ones_like(z)  # q^k / (k!)^2
    t1 = np.ones_like(z)  # q^k / (k! (k+1)!)
    psi_k1 = -EULER_GAMMA  # psi(k+1)
    for k in range(_SERIES_TERMS):
        psi_k2 = psi_k1 + 1.0 / (k + 1)  # psi(k+2)
        i0 = i0 + t0
        i1 = i1 + t1
        s0 = s0 + psi_k1 * t0
        s1 = s1 + (psi_k1 + psi_k2) * t1
        t0 = t0 * q / ((k + 1) * (k + 1))
        t1 = t1 * q / ((k + 1) * (k + 2))
        psi_k1 = psi_k2
    k0 = -log_half * i0 + s0
    k1 = 1.0 / z + log_half * (0.5 * z * i1) - 0.25 * z * s1
    return k0, k1


def _k01_cf2(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Steed's algorithm for Temme's CF2 at mu = 0 (vectorised)."""
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(z)
    q2 = np.ones_like(z)
    a1 = 0.25
    q = np.full_like(z, a1)
    c = np.full_like(z, a1)
    a = -a1
    s = 1.0 + q * delh
    active = np.ones(z.shape, dtype=bool)
    for i in range(2, _CF_MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = np.where(active, h + delh, h)
        dels = q * delh
        s = np.where(active, s + dels, s)
        active &= np.abs(dels) >= _EPS * np.abs(s)
        if not active.any():
            break
        # keep the auxiliary recurrences bounded without changing their ratios
        scale = np.abs(q2)
        big = scale > 1e100
        if big.any():
            q1 = np.where(big, q1 / scale, q1)
            q2 = np.where(big, q2 / scale, q2)
    else:
        raise ConvergenceError("continued fraction for K_0/K_1 did not converge")
    h = a1 * h
    k0 = np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) / s
    k1 = k0 * (z + 0.5 - h) / z
    return k0, k1


def _k01(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    k0 = np.empty_like(z)
    k1 = np.empty_like(z)
    small = np.abs(z) <= _SERIES_RADIUS
    if small.any():
        k0[small], k1[small] = _k01_series(z[small])
    if (~small).any():
        k0[~small], k1[~small] = _k01_cf2(z[~small])
    return k0, k1


def mod_bessel_k(nu, z):
    r"""Modified Bessel function of the second kind :math:`K_\nu(z)`.

    Parameters
    ----------
    nu : float
        Order; ``2*nu`` must be a non-negative integer.
    z : complex or array_like
        Argument, away from the negative real axis and from zero.

    Returns
    -------
    complex or ndarray of complex
    """
    tn = twice_order(nu)
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz)
    if np.any(zz == 0):
        raise DomainError("K_nu(z) is singular at z = 0")
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        if tn % 2:
            out = _k_half_integer(tn // 2, zz)
        else:
            n = tn // 2
            k0, k1 = _k01(zz)
            if n == 0:
                out = k0
            else:
                km, kc = k0, k1
                for j in range(1, n):
                    km, kc = kc, km + (2.0 * j / zz) * kc
                out = kc
    if not np.all(np.isfinite(out)):
        raise OverflowError("K_nu(z) overflowed the double range")
    return complex(out[0]) if scalar else out


_MASSLESS_Z = 1e-16


def _massless_scaled_k(nu: float, w):
    return 2.0 ** (nu - 1.0) * math.gamma(nu) * w ** (-2.0 * nu)


def scaled_k(nu, m: float, w):
    r"""The combination :math:`(m/w)^\nu K_\nu(m w)` appearing in every closed form.

    For ``m == 0`` the analytic limit :math:`2^{\nu-1}\Gamma(\nu) w^{-2\nu}` is
    returned, which avoids evaluating :math:`K` at vanishing argument.  The
    same limit is used wherever :math:`|mw| < 10^{-16}`, where its relative
    correction is below double precision for :math:`\nu \ge 1/2`.
    ``w`` must have positive real part.
    """
    tn = twice_order(nu)
    nu = tn / 2.0
    ww = np.asarray(w, dtype=complex)
    if m == 0.0:
        if tn == 0:
            raise DomainError("massless limit of K_0 is logarithmically singular")
        return _massless_scaled_k(nu, ww)
    z = m * ww
    tiny = np.abs(z) < _MASSLESS_Z
    if tn == 0 or not tiny.any():
        return m ** (2.0 * nu) * z ** (-nu) * mod_bessel_k(nu, z)
    out = _massless_scaled_k(nu, ww)
    if not tiny.all():
        zb = z[~tiny]
        out[~tiny] = m ** (2.0 * nu) * zb ** (-nu) * mod_bessel_k(nu, zb)
    return out if out.ndim else complex(out)


def bessel_j(nu, x):
    r"""Bessel function of the first kind :math:`J_\nu(x)` for real ``x >= 0``."""
    twice_order(nu)
    xx = np.asarray(x, dtype=float)
    if np.any(xx < 0):
        raise DomainError("bessel_j is defined here for x >= 0 only")
    out = _sp.jv(float(nu), xx)
    return float(out) if out.ndim == 0 else out


_POLYGAMMA_ASYMPTOTIC = (
    # coefficients c_j of z^{-(2j+2)} for j >= 1 in psi''(z) ~ -1/z^2 - 1/z^3 + ...
    -0.5, 1.0 / 6.0, -1.0 / 6.0, 3.0 / 10.0, -5.0 / 6.0, 691.0 / 210.0, -35.0 / 2.0,
)


def polygamma2(z):
    r"""Tetragamma :math:`\psi^{(2)}(z)` for complex ``z``.

    The argument is shifted upward with
    :math:`\psi^{(2)}(z) = \psi^{(2)}(z+N) - 2\sum_{k<N}(z+k)^{-3}` until
    :math:`\mathrm{Re}\,z \ge 15`, where the Bernoulli asymptotic series is
    accurate to double precision.
    """
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz).copy()
    near_int = np.abs(zz - np.round(zz.real)) == 0
    if np.any(near_int & (zz.real <= 0)):
        raise PoleError("polygamma has poles at non-positive integers")
    acc = np.zeros_like(zz)
    while True:
        low = zz.real < 15.0
        if not low.any():
            break
        acc = np.where(low, acc - 2.0 / zz**3, acc)
        zz = np.where(low, zz + 1.0, zz)
    inv = 1.0 / zz
    inv2 = inv * inv
    series = np.zeros_like(zz)
    p = inv2 * inv2
    for c in _POLYGAMMA_ASYMPTOTIC:
        series = series + c * p
        p = p * inv2
    out = acc - inv2 - inv2 * inv + series
    return complex(out[0]) if scalar else out


def hyp1f2_terms(a, b1, b2, z, count: int):
    """First ``count`` Taylor terms of 1F2 built by the term-ratio recurrence.

    Works with any numeric type supporting field operations, so passing
    :class:`fractions.Fraction` inputs yields exact rational terms.
    """
    terms = []
    t = type(z)(1)
    for k in range(count):
        terms.append(t)
        t = t * (a + k) * z / ((b1 + k) * (b2 + k) * (k + 1))
    return terms


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def hyp1f2(a: float, b1: float, b2: float, z: float, *, max_terms: int = 2000) -> float:
    r"""Generalised hypergeometric function :math:`{}_1F_2(a; b_1, b_2; z)`.

    Summed directly from its Taylor series.  The series terminates when ``a``
    is a non-positive integer.
    """
    if _is_nonpositive_integer(b1) or _is_nonpositive_integer(b2):
        raise PoleError(f"1F2 lower parameters must avoid non-positive integers, got {b1}, {b2}")
    total = 1.0
    t = 1.0
    small = 0
    for k in range(max_terms):
        t *= (a + k) * z / ((b1 + k) * (b2 + k) * (k + 1))
        if t == 0.0:
            return total
        total += t
        # the term ratio tends to zero, so two small terms in a row end the tail
        if abs(t) <= 1e-17 * abs(total) and k > abs(a):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise ConvergenceError(f"1F2 series did not converge within {max_terms} terms")


def gamma_fn(x: float) -> float:
    """Euler gamma on the real line, poles excluded."""
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)
