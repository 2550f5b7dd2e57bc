"""Velocity dispersions of a scalar test particle in a thermal bath of a massive
scalar field in D+1 dimensions, with and without a Dirichlet wall."""

from .dispersions import (
    Direction,
    DispersionBreakdown,
    Scenario,
    breakdown_f1,
    correlation_thermal,
    mixed_parallel_f1,
    mixed_perp_f1,
    thermal_f1,
    thermal_f1_d2_massless,
    vacuum_parallel_f1,
    vacuum_perp_f1,
)
from .errors import (
    ConvergenceError,
    DivergenceError,
    DivisionError,
    DomainError,
    ExtrapolationError,
    PoleError,
    QuadratureError,
    RangeError,
    SubvacuumError,
)
from .latetime import (
    components_f2_latetime,
    eta,
    eta_near_wall,
    i_func,
    mixed_parallel_f2_latetime,
    mixed_perp_f2_latetime,
    near_wall_mixed_approx,
    thermal_f2_latetime,
    vacuum_parallel_f2_latetime,
    vacuum_perp_f2_latetime,
)
from .propagators import FieldSpec

__version__ = "0.1.0"
