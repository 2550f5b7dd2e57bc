import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from subvacuum import latetime as lt
from subvacuum.dispersions import Scenario, mixed_parallel_f1, mixed_perp_f1
from subvacuum.errors import DivergenceError, DomainError, RangeError
from subvacuum.oracle import latetime_quadrature
from subvacuum.propagators import FieldSpec

# frozen from mpmath quadrature of the defining integral at 40 digits
I_FROZEN = [
    (3, 1.0, 1.3512181466090614),
    (2, 1.0, 0.5163749479473644),
    (2.5, 0.7, 2.4079392171798464),
    (3, 5.0, 0.0004261113635230977),
]


@pytest.mark.parametrize("D,y,expected", I_FROZEN)
def test_i_func_frozen(D, y, expected):
    # the integer-D Richardson limit is good to about 1e-9
    assert lt.i_func(D, y) == pytest.approx(expected, rel=2e-9)


@pytest.mark.parametrize("D", [2.5, 3.5, 4.5])
@pytest.mark.parametrize("y", [0.3, 1.0, 1.9])
def test_i_func_series_vs_integral(D, y):
    assert lt._i_hypergeometric(D, y) == pytest.approx(lt._i_quadrature(D, y), rel=1e-10)


def test_i_func_errors():
    with pytest.raises(DomainError):
        lt.i_func(3, 0.0)
    with pytest.raises(DomainError):
        lt.i_func(0.5, 1.0)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from((2, 3, 4)), st.floats(0.2, 3.0), st.floats(0.0, 2.0), st.floats(0.1, 3.0))
def test_thermal_independent_of_auxiliary_length(D, m, tau_s, x):
    f = FieldSpec(m=m, D=D)
    a = lt.thermal_f2_latetime_at(f, 1.0, tau_s, x)
    b = lt.thermal_f2_latetime_at(f, 1.0, tau_s, 1.0)
    assert a == pytest.approx(b, rel=1e-8)


@pytest.mark.parametrize("D,m,tau_s", [(3, 1.0, 0.5), (2, 0.5, 0.2), (4, 2.0, 1.0), (3, 0.0, 0.3)])
def test_thermal_vs_quadrature(D, m, tau_s):
    f = FieldSpec(m=m, D=D)
    ref = latetime_quadrature(Scenario(f, 1.0, 1.0), tau_s, math.inf)
    assert lt.thermal_f2_latetime(f, 1.0, tau_s) == pytest.approx(ref, rel=1e-6)


def test_massless_hurwitz_form():
    f = FieldSpec(m=0.0, D=3)
    # 2 C_3 sum_l 1/(l beta + 2 tau_s)^2 with C_3 = 1/(6 pi^2)
    direct = sum(1 / (l + 0.6) ** 2 for l in range(1, 200_000)) + 1 / (200_000 - 0.5 + 0.6)
    assert lt.thermal_f2_latetime(f, 1.0, 0.3) == pytest.approx(direct / (3 * math.pi**2), rel=1e-9)
    with pytest.raises(DivergenceError):
        lt.thermal_f2_latetime(FieldSpec(m=0.0, D=2), 1.0, 0.3)


def test_thermal_switch_off_limit():
    f = FieldSpec(m=1.0, D=3)
    assert lt.thermal_f2_latetime(f, 1.0, 20.0) < 1e-15 * lt.thermal_f2_latetime(f, 1.0, 0.1)
    assert lt.thermal_f2_latetime(f, math.inf, 0.5) == 0.0


@pytest.mark.parametrize("D,m,b", [(3, 1.0, 0.7), (2, 0.4, 2.0), (4, 0.0, 1.5)])
def test_latetime_j_vs_quad(D, m, b):
    def f(k):
        w = math.hypot(k, m)
        return k ** (D + 1) / w**3 * math.exp(-b * w)

    ref, _ = integrate.quad(f, 0, math.inf, epsabs=0, epsrel=1e-12)
    assert lt.latetime_j(FieldSpec(m=m, D=D), b) == pytest.approx(ref, rel=1e-8)


# ---------------------------------------------------------------- wall terms


def u_mp(D, c, q):
    with mp.workdps(20):
        f = lambda u: (u * u - 1) ** (mp.mpf(D) / 4) / u * mp.exp(-c * (u - 1)) * mp.besselj(
            mp.mpf(D) / 2, q * mp.sqrt(u * u - 1)
        )
        hi = 1 + 45 / c
        pts = mp.linspace(1, hi, int(20 + 2 * q * hi))
        return float(mp.quad(f, pts))


@pytest.mark.parametrize("D,c,q", [(3, 0.6, 2.0), (2, 2.0, 0.5), (5, 0.8, 4.0), (4, 1.0, 0.0)])
def test_u_integral_vs_mpmath(D, c, q):
    assert lt.u_integral(D, c, q) == pytest.approx(u_mp(D, c, q), rel=1e-10, abs=1e-14)


def mixed_alpha_form(D, m, beta, x, tau_s, l_max=32):
    """Wall-parallel mixed term summed in the alpha_l form, at 20 digits."""
    with mp.workdps(20):
        m, beta, x, tau_s = (mp.mpf(v) for v in (m, beta, x, tau_s))
        mu = mp.mpf(D - 1) / 2
        total = mp.mpf(0)
        for l in range(1, l_max + 1):
            a = tau_s / x + l * beta / (2 * x)
            s = mp.sqrt(1 + a * a)
            first = (m * x / (4 * mp.pi * s)) ** mu * mp.besselk(mu, 2 * m * x * s)
            coef = a * (m * x) ** (mp.mpf(D) / 2) / (2 ** (D - 1) * mp.pi ** (mp.mpf(D) / 2 - 1))
            integral = mp.exp(-2 * m * x * a) * u_mp(D, 2 * m * x * a, 2 * m * x)
            total += first - coef * integral
        return float(-2 / (mp.pi * x ** (D - 1)) * total)


@pytest.mark.parametrize("D,m,x,tau_s", [(3, 1.0, 1.0, 0.3), (2, 0.8, 0.5, 0.4)])
def test_mixed_wall_term_alpha_form(D, m, x, tau_s):
    f = FieldSpec(m=m, D=D)
    assert lt.mixed_parallel_f2_latetime(f, 1.0, x, tau_s) == pytest.approx(
        mixed_alpha_form(D, m, 1.0, x, tau_s), rel=1e-9
    )


@pytest.mark.parametrize("direction", ["parallel", "perp"])
@pytest.mark.parametrize("D,m,x,tau_s", [(3, 1.0, 1.0, 0.3), (2, 0.5, 0.7, 0.5), (3, 0.0, 1.0, 0.4)])
def test_wall_terms_vs_quadrature(direction, D, m, x, tau_s):
    f = FieldSpec(m=m, D=D)
    sc = Scenario(f, 1.0, x)
    c = lt.components_f2_latetime(f, 1.0, x, tau_s)
    key = "parallel" if direction == "parallel" else "perp"
    for part in ("mixed", "vacuum"):
        ref = latetime_quadrature(sc, tau_s, math.inf, direction, part)
        assert c[f"{part}_{key}"] == pytest.approx(ref, rel=1e-6), part


def test_wall_terms_vanish_far_away():
    f = FieldSpec(m=1.0, D=3)
    near = lt.vacuum_parallel_f2_latetime(f, 1.0, 0.3)
    # far from the wall only the absolute accuracy of the oscillatory integral survives
    assert abs(lt.vacuum_parallel_f2_latetime(f, 30.0, 0.3)) < 1e-15 * abs(near)
    assert abs(lt.mixed_parallel_f2_latetime(f, 1.0, 30.0, 0.3)) < 1e-15 * abs(near)


def test_wall_term_errors():
    f = FieldSpec(m=1.0, D=3)
    with pytest.raises(DomainError):
        lt.vacuum_parallel_f2_latetime(f, 1.0, 0.0)
    with pytest.raises(DomainError):
        lt.mixed_parallel_f2_latetime(f, 1.0, 0.0, 0.3)
    with pytest.raises(ValueError):
        lt.mixed_parallel_f2_latetime(f, 1.0, 1.0, -0.3)
    with pytest.raises(DomainError):
        lt.u_integral(3, 0.0, 1.0)
    assert lt.mixed_parallel_f2_latetime(f, math.inf, 1.0, 0.3) == 0.0


# ---------------------------------------------------------------- dominance


def test_eta_zero_temperature():
    assert lt.eta(FieldSpec(m=1.0, D=3), math.inf, 1.0, 0.5) == 0.0


def test_eta_grows_away_from_wall():
    f = FieldSpec(m=1.0, D=3)
    assert lt.eta(f, 1.0, 3.0, 0.5) > lt.eta(f, 1.0, 0.3, 0.5)


@pytest.mark.parametrize("D,m,beta,tau_s", [(3, 1.0, 1.0, 0.5), (3, 0.5, 2.0, 0.1), (4, 1.5, 1.0, 1.0)])
def test_eta_near_wall_limit(D, m, beta, tau_s):
    f = FieldSpec(m=m, D=D)
    exact = lt.eta_wall_limit(f, beta, tau_s)
    assert lt.eta_near_wall(f, beta, tau_s) == pytest.approx(exact, rel=1e-6)
    assert lt.eta(f, beta, 1e-3 * min(beta, tau_s), tau_s) == pytest.approx(exact, rel=1e-4)


def test_eta_near_wall_special_cases():
    assert lt.eta_near_wall(FieldSpec(m=1.0, D=2), 1.0, 0.5) == math.inf
    assert lt.eta_wall_limit(FieldSpec(m=1.0, D=2), 1.0, 0.5) == math.inf
    assert lt.eta_near_wall(FieldSpec(m=1.0, D=3), 1.0, 0.0) == 0.0


def test_near_wall_mixed_approx():
    sc = Scenario.make(3, 1.0, 1.0, 0.01)
    par, perp = lt.near_wall_mixed_approx(sc, 20, 1.0)
    assert par == pytest.approx(mixed_parallel_f1(sc, 20, 1.0), rel=1e-3)
    assert perp == pytest.approx(mixed_perp_f1(sc, 20, 1.0), rel=1e-3)
    with pytest.raises(RangeError):
        lt.near_wall_mixed_approx(Scenario.make(3, 1.0, 1.0, 0.1), 20, 1.0)
    with pytest.raises(DomainError):
        lt.near_wall_mixed_approx(Scenario.make(3, 1.0, 1.0), 20, 1.0)
