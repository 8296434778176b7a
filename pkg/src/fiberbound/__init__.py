"""Exact potential theory on metrized graphs and the effective Bogomolov
bound for semistable genus-2 fibrations.

The core objects are metrized graphs (finite connected multigraphs whose
edges carry positive rational lengths), mass-1 reference measures, and the
admissible Green function attached to them.  On top of that sit the six
degenerate fiber types of genus-2 pencils, their local invariants, and the
global lower bound sqrt((2/135) delta).
"""

from .metric_graph import (
    DanglingEndpointError,
    DisconnectedGraphError,
    Divisor,
    Edge,
    EdgePoint,
    EdgeSplit,
    GraphError,
    GraphPoint,
    Measure,
    MetricGraph,
    NonpositiveLengthError,
    PiecewiseQuadratic,
    VertexPoint,
    as_fraction,
    build_graph,
    evaluate,
    integrate_against,
    laplacian_of,
    scale_lengths,
    split_edge,
)
from .green_solver import (
    RESIDUAL_THRESHOLD,
    DiscreteSolution,
    GreenFunction,
    SingularSystemError,
    discretize_green,
    green_pairing,
    green_value,
    solve_green,
)
from .genus2_catalog import (
    FiberModel,
    FiberSpec,
    FiberType,
    SolverConsistencyError,
    build_model,
    d_invariant,
    delta_invariant,
    e_closed_form,
    e_from_green,
    e_from_oracle,
    fiber,
)
from .bogomolov import (
    FLOOR_COEFFICIENT,
    GENUS,
    FiberReport,
    GlobalReport,
    InequalityCheck,
    ScanResult,
    VerificationError,
    check_amgm_inequality,
    contribution_ratio,
    decimal_string,
    fiber_contribution,
    global_report,
    minimize_contribution_ratio,
    sqrt_decimal_string,
)
from .cli import ConfigError, ConfigFile, parse_config

__all__ = [
    "DanglingEndpointError",
    "DisconnectedGraphError",
    "Divisor",
    "Edge",
    "EdgePoint",
    "EdgeSplit",
    "GraphError",
    "GraphPoint",
    "Measure",
    "MetricGraph",
    "NonpositiveLengthError",
    "PiecewiseQuadratic",
    "VertexPoint",
    "as_fraction",
    "build_graph",
    "evaluate",
    "integrate_against",
    "laplacian_of",
    "scale_lengths",
    "split_edge",
    "RESIDUAL_THRESHOLD",
    "DiscreteSolution",
    "GreenFunction",
    "SingularSystemError",
    "discretize_green",
    "green_pairing",
    "green_value",
    "solve_green",
    "FiberModel",
    "FiberSpec",
    "FiberType",
    "SolverConsistencyError",
    "build_model",
    "d_invariant",
    "delta_invariant",
    "e_closed_form",
    "e_from_green",
    "e_from_oracle",
    "fiber",
    "FLOOR_COEFFICIENT",
    "GENUS",
    "FiberReport",
    "GlobalReport",
    "InequalityCheck",
    "ScanResult",
    "VerificationError",
    "check_amgm_inequality",
    "contribution_ratio",
    "decimal_string",
    "fiber_contribution",
    "global_report",
    "minimize_contribution_ratio",
    "sqrt_decimal_string",
    "ConfigError",
    "ConfigFile",
    "parse_config",
]

__version__ = "0.1.0"
