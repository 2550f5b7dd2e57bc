r"""Switching functions F(t) and their Fourier transforms.

The Fourier convention is :math:`\hat F(\omega) = \int dt\, e^{-i\omega t} F(t)`
and every switching is normalised so that :math:`\hat F(0) = \tau`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import RangeError


def psi(n: int, p: int) -> complex:
    r"""Unit phase :math:`\psi_{n,p} = \exp[i\pi(1+2p)/2n]` for ``n <= p <= 2n-1``."""
    if n < 1 or not n <= p <= 2 * n - 1:
        raise RangeError(f"psi_(n,p) needs n >= 1 and n <= p <= 2n-1, got n={n}, p={p}")
    return cmath.exp(1j * math.pi * (1 + 2 * p) / (2 * n))


def psi_array(n: int) -> np.ndarray:
    """All phases psi_{n,p}, p = n .. 2n-1, as a complex array."""
    p = np.arange(n, 2 * n)
    return np.exp(1j * np.pi * (1 + 2 * p) / (2 * n))


def lorentzian_cn(n: int) -> float:
    """Normalisation constant c_n = (2n/pi) sin(pi/2n)."""
    return 2 * n / math.pi * math.sin(math.pi / (2 * n))


@dataclass(frozen=True)
class Sudden:
    """Box switching: on during [0, tau]."""

    tau: float

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return np.where((t >= 0) & (t <= self.tau), 1.0, 0.0)

    def fourier_transform(self, omega):
        w = np.asarray(omega, dtype=float)
        safe = np.where(w == 0, 1.0, w)
        out = (1 - np.exp(-1j * safe * self.tau)) / (1j * safe)
        return np.where(w == 0, self.tau + 0j, out)

    def power_spectrum(self, omega):
        """|F(omega)|^2 in the cancellation-free form 4 sin^2(w tau/2) / w^2."""
        w = np.abs(np.asarray(omega, dtype=float))
        safe = np.where(w == 0, 1.0, w)
        out = (2 * np.sin(0.5 * safe * self.tau) / safe) ** 2
        return np.where(w == 0, self.tau**2, out)

    def damping_rate(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Lorentzian:
    r"""Generalised Lorentzian :math:`c_n / [1 + (2t/\tau)^{2n}]`."""

    n: int
    tau: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not self.tau > 0:
            raise ValueError("tau must be positive")

    @property
    def c_n(self) -> float:
        return lorentzian_cn(self.n)

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return self.c_n / (1 + (2 * t / self.tau) ** (2 * self.n))

    def fourier_transform(self, omega):
        r"""Residue sum :math:`(i\tau\pi c_n/2n)\sum_q \psi_{n,q} e^{-i|\omega|\tau\psi_{n,q}/2}`.

        F is real and even, so the transform depends on ``|omega|`` only.
        """
        w = np.abs(np.asarray(omega, dtype=float))
        ps = psi_array(self.n)
        pref = 1j * self.tau * math.pi * self.c_n / (2 * self.n)
        phase = np.exp(-0.5j * self.tau * np.multiply.outer(w, ps))
        out = pref * (phase @ ps)
        # imaginary part is rounding residue of a real transform
        return np.where(w == 0, self.tau + 0j, out.real + 0j)

    def power_spectrum(self, omega):
        return np.abs(self.fourier_transform(omega)) ** 2

    def damping_rate(self) -> float:
        """Envelope decay rate of |F|^2 in omega."""
        return self.tau * math.sin(math.pi / (2 * self.n))


@dataclass(frozen=True)
class Arctan:
    r"""Arctangent switching with switching time :math:`\tau_s` and measuring time :math:`\tau`."""

    tau_s: float
    tau: float

    def __post_init__(self):
        if self.tau_s < 0:
            raise ValueError("tau_s must be non-negative")
        if not self.tau > 0:
            raise ValueError("tau must be positive")

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        if self.tau_s == 0:
            return Sudden(self.tau).evaluate(t)
        return (np.arctan(t / self.tau_s) + np.arctan((self.tau - t) / self.tau_s)) / math.pi

    def fourier_transform(self, omega):
        w = np.asarray(omega, dtype=float)
        return Sudden(self.tau).fourier_transform(w) * np.exp(-self.tau_s * np.abs(w))

    def power_spectrum(self, omega):
        w = np.asarray(omega, dtype=float)
        return Sudden(self.tau).power_spectrum(w) * np.exp(-2 * self.tau_s * np.abs(w))

    def damping_rate(self) -> float:
        return 2 * self.tau_s


SwitchingSpec = Sudden | Lorentzian | Arctan


def evaluate(spec: SwitchingSpec, t):
    """Value of the switching function at time(s) ``t``."""
    return spec.evaluate(t)


def fourier_transform(spec: SwitchingSpec, omega):
    """Fourier transform of the switching function at angular frequency ``omega``."""
    return spec.fourier_transform(omega)
