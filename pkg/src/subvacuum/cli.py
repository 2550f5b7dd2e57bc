"""Command-line front end: figure data as CSV/JSON, plus the validation suite.

Parameter precedence is command-line flag, then the ``--config`` JSON file,
then the built-in defaults below.  Exit codes: 0 success, 1 configuration or
I/O error, 2 computation error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from . import figures
from . import validation
from .errors import SubvacuumError

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_VALIDATION = 0, 1, 2, 3
MAX_GRID_POINTS = 100_000

COMMON = {"grid_spacing": "linear", "direction": None, "output": None, "format": "csv", "jobs": 1}

DEFAULTS = {
    "fig2": {
        "dimension": 2, "n": 20, "mass_beta": [0.0, 0.5, 1.0, 2.0],
        "grid_min": 0.05, "grid_max": 5.0, "grid_points": 100,
    },
    "fig3_4_5": {
        "figure": 3, "n": 20, "mass_x": 1.0, "beta_over_x": 1.0,
        "grid_min": 0.05, "grid_max": 6.0, "grid_points": 120,
    },
    "fig7": {
        "dimension": 3, "mass_x": 1.0, "beta_over_x": 1.0,
        "grid_min": 0.05, "grid_max": 5.0, "grid_points": 40,
    },
    "fig10_11_12": {
        "figure": 10, "grid_spacing": "log", "grid_points": 30,
    },
    "fig14": {
        "dimension": 3, "mass_beta": [1.0], "grid_min": 0.0, "grid_max": 5.0, "grid_points": 101,
    },
    "sweep": {
        "grid_min": 0.1, "grid_max": 2.0, "grid_points": 20, "set": [],
    },
    "validate": {},
}

# per-figure defaults for the subcommands that cover several figures
FIGURE_DEFAULTS = {
    ("fig3_4_5", 3): {"dimension": 2},
    ("fig3_4_5", 4): {"dimension": 3},
    ("fig3_4_5", 5): {"dimension": 3},
    ("fig10_11_12", 10): {
        "dimension": 3, "mass_beta": [0.5, 1.0, 1.5], "grid_min": 0.01, "grid_max": 10.0,
    },
    ("fig10_11_12", 11): {
        "dimension": 3, "tau_s": 1.0, "mass_beta": [0.6, 0.8, 1.0], "grid_min": 0.01, "grid_max": 5.0,
    },
    ("fig10_11_12", 12): {
        "dimension": 2, "tau_s": 1.0, "mass_beta": [0.5, 1.0, 2.0, 3.0], "grid_min": 0.01,
        "grid_max": 5.0,
    },
}

ALLOWED = {
    "fig2": {"dimension", "n", "mass_beta"},
    "fig3_4_5": {"figure", "dimension", "n", "mass_x", "beta_over_x", "direction"},
    "fig7": {"dimension", "mass_x", "beta_over_x", "direction"},
    "fig10_11_12": {"figure", "dimension", "mass_beta", "tau_s"},
    "fig14": {"dimension", "mass_beta"},
    "sweep": {"quantity", "parameter", "set"},
    "validate": set(),
}
GRID_KEYS = {"grid_min", "grid_max", "grid_points", "grid_spacing"}
IO_KEYS = {"output", "format", "jobs"}

SWEEP_BASE = {"D": 3, "m": 1.0, "beta": 1.0, "x": 1.0, "n": 20, "tau": 1.0, "tau_s": 0.5, "dt": 0.0}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _float_or_inf(s: str) -> float:
    return math.inf if s.lower() in ("inf", "infinity") else float(s)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subvacuum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"subvacuum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    S = argparse.SUPPRESS
    for name in DEFAULTS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=S, help="JSON file of parameter overrides")
        p.add_argument("--output", default=S, help="output file (default: stdout)")
        if name == "validate":
            continue
        p.add_argument("--format", choices=("csv", "json"), default=S)
        p.add_argument("--jobs", type=int, default=S, help="worker processes for the grid")
        p.add_argument("--grid-min", type=float, default=S)
        p.add_argument("--grid-max", type=float, default=S)
        p.add_argument("--grid-points", type=int, default=S)
        p.add_argument("--grid-spacing", choices=("linear", "log"), default=S)
        allowed = ALLOWED[name]
        if "figure" in allowed:
            p.add_argument("--figure", type=int, default=S)
        if "dimension" in allowed:
            p.add_argument("--dimension", type=int, default=S)
        if "n" in allowed:
            p.add_argument("--n", type=int, default=S)
        if "mass_beta" in allowed:
            p.add_argument("--mass-beta", type=float, nargs="+", default=S)
        if "mass_x" in allowed:
            p.add_argument("--mass-x", type=float, default=S)
        if "beta_over_x" in allowed:
            p.add_argument("--beta-over-x", type=_float_or_inf, default=S)
        if "tau_s" in allowed:
            p.add_argument("--tau-s", type=float, default=S)
        if "direction" in allowed:
            p.add_argument("--direction", choices=("parallel", "perp"), default=S)
        if name == "sweep":
            p.add_argument("--quantity", choices=sorted(figures.QUANTITIES), default=S)
            p.add_argument("--parameter", choices=figures.SWEEP_PARAMETERS, default=S)
            p.add_argument("--set", action="append", metavar="KEY=VALUE", default=S,
                           help=f"fix a parameter, keys {sorted(SWEEP_BASE)}")
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def resolve(command: str, cli: dict) -> dict:
    """Merge defaults, config file and flags, then type- and range-check."""
    file_cfg = _load_config(cli.pop("config")) if "config" in cli else {}
    allowed = ALLOWED[command] | IO_KEYS | (GRID_KEYS if command != "validate" else set())
    for key in file_cfg:
        if key not in allowed:
            raise ConfigError(f"parameter {key!r} does not apply to {command}")
    p = dict(COMMON)
    p.update(DEFAULTS[command])
    fig = cli.get("figure", file_cfg.get("figure", p.get("figure")))
    p.update(FIGURE_DEFAULTS.get((command, fig), {}))
    p.update(file_cfg)
    p.update(cli)
    _check(command, p)
    return p


def _check(command: str, p: dict):
    def need(cond, msg):
        if not cond:
            raise ConfigError(msg)

    if command == "validate":
        return
    need(p["format"] in ("csv", "json"), "format must be csv or json")
    need(isinstance(p["jobs"], int) and p["jobs"] >= 1, "jobs must be a positive integer")
    need(isinstance(p["grid_points"], int), "grid_points must be an integer")
    need(1 <= p["grid_points"] <= MAX_GRID_POINTS, f"grid_points must lie in [1, {MAX_GRID_POINTS}]")
    need(p["grid_min"] <= p["grid_max"], "grid_min must not exceed grid_max")
    if p["grid_spacing"] == "log":
        need(p["grid_min"] > 0, "log grids need grid_min > 0")
    if "figure" in p:
        valid = {"fig3_4_5": (3, 4, 5), "fig10_11_12": (10, 11, 12)}[command]
        need(p["figure"] in valid, f"{command} covers figures {valid}")
    if "dimension" in p:
        need(isinstance(p["dimension"], int) and p["dimension"] >= 2, "dimension must be an integer >= 2")
    if command == "fig2":
        need(p["dimension"] in (2, 3), "fig2 is defined for D = 2 or 3")
    if "n" in p:
        need(isinstance(p["n"], int) and p["n"] >= 1, "n must be a positive integer")
    for key in ("mass_beta",):
        if key in p:
            vals = p[key] if isinstance(p[key], list) else [p[key]]
            need(all(isinstance(v, (int, float)) and v >= 0 for v in vals), f"{key} must be >= 0")
    for key in ("mass_x",):
        if key in p:
            need(isinstance(p[key], (int, float)) and p[key] >= 0, f"{key} must be >= 0")
    for key in ("beta_over_x", "tau_s"):
        if key in p:
            need(isinstance(p[key], (int, float)) and p[key] > 0, f"{key} must be > 0")
    if p.get("direction") is not None:
        need(p["direction"] in ("parallel", "perp", "perpendicular"), "direction must be parallel or perp")
    if command == "sweep":
        need("quantity" in p and p["quantity"] in figures.QUANTITIES, "sweep needs a valid --quantity")
        need("parameter" in p and p["parameter"] in figures.SWEEP_PARAMETERS, "sweep needs a valid --parameter")
        values = dict(SWEEP_BASE)
        for item in p.get("set", []):
            key, sep, val = str(item).partition("=")
            need(sep == "=" and key in SWEEP_BASE, f"bad --set entry {item!r}")
            try:
                values[key] = int(val) if key in ("D", "n") else _float_or_inf(val)
            except ValueError:
                raise ConfigError(f"bad value in --set {item!r}") from None
        p["values"] = values


def _fmt(v) -> str:
    return "%.12g" % v


def render(command: str, table: figures.Table, p: dict) -> str:
    shown = {k: v for k, v in sorted(p.items()) if k not in ("output", "jobs", "format")}
    if p["format"] == "json":
        payload = {
            "version": __version__,
            "command": command,
            "parameters": shown,
            "columns": table.columns,
            "rows": [[float(_fmt(v)) for v in row] for row in table.rows],
        }
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"
    lines = [
        f"# subvacuum {__version__}",
        f"# command: {command}",
        "# parameters: " + json.dumps(shown, sort_keys=True),
        ",".join(table.columns),
    ]
    lines += [",".join(_fmt(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cli = {k: v for k, v in vars(ns).items() if k != "command"}
        p = resolve(ns.command, cli)
    except ConfigError as exc:
        print(f"subvacuum: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if ns.command == "validate":
            rep = validation.report()
            _emit(json.dumps(rep, indent=1, sort_keys=True) + "\n", p.get("output"))
            return EXIT_OK if rep["passed"] else EXIT_VALIDATION
        table = figures.BUILDERS[ns.command](p)
        _emit(render(ns.command, table, p), p.get("output"))
    except OSError as exc:
        print(f"subvacuum: I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SubvacuumError, ArithmeticError, ValueError) as exc:
        print(f"subvacuum: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
