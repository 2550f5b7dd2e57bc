"""Closed-form versus quadrature checks run by ``subvacuum validate``."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from scipy import special as sp

from . import dispersions as dsp
from . import latetime as lt
from . import oracle
from .errors import DivergenceError
from .propagators import FieldSpec, phi_squared_thermal_massless
from .specfun import mod_bessel_k, polygamma2
from .switching import Lorentzian


@dataclass
class Check:
    name: str
    value: float
    reference: float
    rel_error: float
    tol: float
    passed: bool


def _compare(name, value, reference, tol) -> Check:
    err = abs(value - reference) / max(abs(reference), 1e-300)
    return Check(name, float(value), float(reference), float(err), tol, bool(err <= tol))


def _raises(name, fn, exc) -> Check:
    try:
        fn()
    except exc:
        return Check(name, 1.0, 1.0, 0.0, 0.0, True)
    return Check(name, 0.0, 1.0, 1.0, 0.0, False)


def run_checks() -> list[Check]:
    out = []
    q = oracle.QuadratureSpec()

    for D, mb, tb in ((3, 1.0, 1.0), (2, 1.0, 2.0), (2, 0.0, 1.0)):
        sc = dsp.Scenario.make(D, mb, 1.0)
        out.append(
            _compare(
                f"thermal_f1 D={D} m_beta={mb:g} tau/beta={tb:g}",
                dsp.thermal_f1(sc, 20, tb),
                oracle.dispersion_quadrature(sc, Lorentzian(20, tb), quad=q),
                1e-6,
            )
        )

    sc = dsp.Scenario.make(3, 1.0, 1.0, 1.0)
    for name, fn, d, part in (
        ("mixed_parallel_f1", dsp.mixed_parallel_f1, "parallel", "mixed"),
        ("vacuum_parallel_f1", dsp.vacuum_parallel_f1, "parallel", "vacuum"),
        ("mixed_perp_f1", dsp.mixed_perp_f1, "perp", "mixed"),
        ("vacuum_perp_f1", dsp.vacuum_perp_f1, "perp", "vacuum"),
    ):
        out.append(
            _compare(
                f"{name} D=3 mx=1 beta/x=1 tau/x=1",
                fn(sc, 20, 1.0),
                oracle.dispersion_quadrature(sc, Lorentzian(20, 1.0), d, part, q),
                1e-6,
            )
        )

    f3 = FieldSpec(m=1.0, D=3)
    sc = dsp.Scenario(f3, 1.0, 1.0)
    out.append(
        _compare(
            "thermal_f2_latetime D=3 m_beta=1 tau_s/beta=0.5",
            lt.thermal_f2_latetime(f3, 1.0, 0.5),
            oracle.latetime_quadrature(sc, 0.5, math.inf, quad=q),
            1e-6,
        )
    )
    out.append(
        _compare(
            "mixed_parallel_f2_latetime D=3 mx=1 beta/x=1 tau_s/x=0.3",
            lt.mixed_parallel_f2_latetime(f3, 1.0, 1.0, 0.3),
            oracle.latetime_quadrature(sc, 0.3, math.inf, "parallel", "mixed", q),
            1e-6,
        )
    )
    out.append(
        _compare(
            "vacuum_perp_f2_latetime D=3 mx=1 tau_s/x=0.3",
            lt.vacuum_perp_f2_latetime(f3, 1.0, 0.3),
            oracle.latetime_quadrature(sc, 0.3, math.inf, "perp", "vacuum", q),
            1e-6,
        )
    )
    out.append(
        _compare(
            "late-time thermal auxiliary-length independence",
            lt.thermal_f2_latetime_at(f3, 1.0, 0.5, 1.0),
            lt.thermal_f2_latetime_at(f3, 1.0, 0.5, 0.2),
            1e-10,
        )
    )
    out.append(
        _compare(
            "K_2(1+i) vs scipy kv", abs(mod_bessel_k(2, 1 + 1j)), abs(sp.kv(2, 1 + 1j)), 1e-12
        )
    )
    out.append(_compare("polygamma2(1) = -2 zeta(3)", polygamma2(1).real, -2 * sp.zeta(3), 1e-12))
    f2 = FieldSpec(m=0.0, D=2)
    out.append(
        _raises(
            "thermal <phi^2> diverges for D=2, m=0",
            lambda: phi_squared_thermal_massless(f2, 1.0),
            DivergenceError,
        )
    )
    out.append(
        _raises(
            "late-time thermal diverges for D=2, m=0",
            lambda: lt.thermal_f2_latetime(f2, 1.0, 0.5),
            DivergenceError,
        )
    )
    return out


def report() -> dict:
    checks = run_checks()
    return {
        "passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
