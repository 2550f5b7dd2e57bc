"""Tabulated data behind each figure, as plain column/row tables.

Every builder takes a fully resolved parameter dict (see ``cli.DEFAULTS``)
and returns a :class:`Table`.  Grid points are independent, so they may be
computed by a pool; rows always come back in grid order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from . import dispersions as dsp
from . import latetime as lt
from .propagators import FieldSpec


@dataclass
class Table:
    columns: list[str]
    rows: list[list[float]]
    meta: dict = field(default_factory=dict)


def grid(p: dict) -> np.ndarray:
    lo, hi, n = p["grid_min"], p["grid_max"], p["grid_points"]
    if n == 1:
        return np.array([lo])
    if p.get("grid_spacing", "linear") == "log":
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _pmap(fn, xs, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in xs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, xs))


def _directions(p: dict) -> list[dsp.Direction]:
    d = p.get("direction")
    if d is None:
        return [dsp.Direction.PARALLEL, dsp.Direction.PERPENDICULAR]
    return [dsp.Direction.parse(d)]


def _short(d: dsp.Direction) -> str:
    return "parallel" if d is dsp.Direction.PARALLEL else "perp"


def _as_list(v):
    return list(v) if isinstance(v, (list, tuple)) else [v]


# ---------------------------------------------------------------- thermal F1 curves


def _fig2_row(t, D, masses, n):
    row = [t]
    for mb in masses:
        row.append(dsp.thermal_f1(dsp.Scenario.make(D, mb, 1.0), n, t))
    return row


def fig2(p: dict) -> Table:
    """Thermal F1 dispersion against tau/beta, one column per m beta (beta = 1)."""
    masses = _as_list(p["mass_beta"])
    fn = partial(_fig2_row, D=p["dimension"], masses=masses, n=p["n"])
    rows = _pmap(fn, grid(p).tolist(), p["jobs"])
    cols = ["tau_over_beta"] + [f"m_beta={mb:g}" for mb in masses]
    return Table(cols, rows)


# ---------------------------------------------------------------- wall breakdown


def _boundary_row(t, D, mx, bx, n, dirs):
    sc = dsp.Scenario.make(D, mx, bx, 1.0)
    row = [t]
    for d in dirs:
        b = dsp.breakdown_f1(sc, n, t, d)
        row += [b.vacuum, b.mixed, b.thermal, b.total]
    return row


def fig3_4_5(p: dict) -> Table:
    """Wall breakdown against tau/x at fixed m x and beta/x (x = 1)."""
    dirs = _directions(p)
    fn = partial(
        _boundary_row, D=p["dimension"], mx=p["mass_x"], bx=p["beta_over_x"], n=p["n"], dirs=dirs
    )
    rows = _pmap(fn, grid(p).tolist(), p["jobs"])
    cols = ["tau_over_x"]
    for d in dirs:
        cols += [f"{_short(d)}_{k}" for k in ("vacuum", "mixed", "thermal", "total")]
    return Table(cols, rows)


# ---------------------------------------------------------------- late-time components


def _fig7_row(ts, D, mx, bx, dirs):
    f = FieldSpec(m=mx, D=D)
    c = lt.components_f2_latetime(f, bx, 1.0, ts * bx)
    row = [ts]
    for d in dirs:
        k = _short(d)
        vac, mix = c[f"vacuum_{k}"], c[f"mixed_{k}"]
        row += [c["thermal"], vac, vac + mix, c["thermal"] + vac + mix]
    return row


def fig7(p: dict) -> Table:
    """Late-time components against tau_s/beta (x = 1, beta = beta/x)."""
    dirs = _directions(p)
    fn = partial(_fig7_row, D=p["dimension"], mx=p["mass_x"], bx=p["beta_over_x"], dirs=dirs)
    rows = _pmap(fn, grid(p).tolist(), p["jobs"])
    cols = ["tau_s_over_beta"]
    for d in dirs:
        cols += [f"{_short(d)}_{k}" for k in ("thermal", "vacuum", "vacuum_plus_mixed", "total")]
    return Table(cols, rows)


# ---------------------------------------------------------------- dominance parameter


def _eta_wall_row(ts, D, masses):
    return [ts] + [lt.eta_near_wall(FieldSpec(m=mb, D=D), 1.0, ts) for mb in masses]


def _eta_distance_row(xb, D, masses, ts):
    return [xb] + [lt.eta(FieldSpec(m=mb, D=D), 1.0, xb, ts) for mb in masses]


def fig10_11_12(p: dict) -> Table:
    """Dominance parameter: on the wall against tau_s/beta (figure 10), or against x/beta."""
    masses = _as_list(p["mass_beta"])
    if p["figure"] == 10:
        fn = partial(_eta_wall_row, D=p["dimension"], masses=masses)
        first = "tau_s_over_beta"
    else:
        fn = partial(_eta_distance_row, D=p["dimension"], masses=masses, ts=p["tau_s"])
        first = "x_over_beta"
    rows = _pmap(fn, grid(p).tolist(), p["jobs"])
    return Table([first] + [f"m_beta={mb:g}" for mb in masses], rows)


# ---------------------------------------------------------------- correlation


def _fig14_row(u, D, masses):
    return [u] + [dsp.correlation_thermal(FieldSpec(m=mb, D=D), 1.0, u) for mb in masses]


def fig14(p: dict) -> Table:
    """Thermal correlation function against dt/beta."""
    masses = _as_list(p["mass_beta"])
    fn = partial(_fig14_row, D=p["dimension"], masses=masses)
    rows = _pmap(fn, grid(p).tolist(), p["jobs"])
    return Table(["dt_over_beta"] + [f"m_beta={mb:g}" for mb in masses], rows)


# ---------------------------------------------------------------- generic sweep


def _q_thermal_f1(v):
    return dsp.thermal_f1(dsp.Scenario.make(v["D"], v["m"], v["beta"]), v["n"], v["tau"])


def _q_boundary_f1(name, v):
    sc = dsp.Scenario.make(v["D"], v["m"], v["beta"], v["x"])
    return getattr(dsp, name)(sc, v["n"], v["tau"])


def _field(v):
    return FieldSpec(m=v["m"], D=v["D"])


QUANTITIES = {
    "thermal_f1": _q_thermal_f1,
    "mixed_parallel_f1": partial(_q_boundary_f1, "mixed_parallel_f1"),
    "mixed_perp_f1": partial(_q_boundary_f1, "mixed_perp_f1"),
    "vacuum_parallel_f1": partial(_q_boundary_f1, "vacuum_parallel_f1"),
    "vacuum_perp_f1": partial(_q_boundary_f1, "vacuum_perp_f1"),
    "thermal_f2_latetime": lambda v: lt.thermal_f2_latetime(_field(v), v["beta"], v["tau_s"]),
    "mixed_parallel_f2_latetime": lambda v: lt.mixed_parallel_f2_latetime(
        _field(v), v["beta"], v["x"], v["tau_s"]
    ),
    "mixed_perp_f2_latetime": lambda v: lt.mixed_perp_f2_latetime(
        _field(v), v["beta"], v["x"], v["tau_s"]
    ),
    "vacuum_parallel_f2_latetime": lambda v: lt.vacuum_parallel_f2_latetime(
        _field(v), v["x"], v["tau_s"]
    ),
    "vacuum_perp_f2_latetime": lambda v: lt.vacuum_perp_f2_latetime(_field(v), v["x"], v["tau_s"]),
    "eta": lambda v: lt.eta(_field(v), v["beta"], v["x"], v["tau_s"]),
    "eta_near_wall": lambda v: lt.eta_near_wall(_field(v), v["beta"], v["tau_s"]),
    "correlation_thermal": lambda v: dsp.correlation_thermal(_field(v), v["beta"], v["dt"]),
}

SWEEP_PARAMETERS = ("m", "beta", "x", "n", "tau", "tau_s", "dt")


def _sweep_point(value, quantity, parameter, base):
    v = dict(base)
    v[parameter] = int(round(value)) if parameter == "n" else value
    return [value, QUANTITIES[quantity](v)]


def sweep(p: dict) -> Table:
    """Any single quantity against any single parameter, others held at ``p['values']``."""
    fn = partial(_sweep_point, quantity=p["quantity"], parameter=p["parameter"], base=p["values"])
    rows = _pmap(fn, grid(p).tolist(), p["jobs"])
    return Table([p["parameter"], p["quantity"]], rows)


BUILDERS = {
    "fig2": fig2,
    "fig3_4_5": fig3_4_5,
    "fig7": fig7,
    "fig10_11_12": fig10_11_12,
    "fig14": fig14,
    "sweep": sweep,
}
