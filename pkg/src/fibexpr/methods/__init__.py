"""Expression generators for Fibonacci graphs."""

from ._guard import EXPONENTIAL_CAP, POLYNOMIAL_CAP
from .decomposition import (
    GdConfig,
    decomposition_expr,
    fixed,
    gd_expr,
    gen_decomposition,
    gen_gd,
    middle_ceil,
    middle_floor,
    resolve_strategy,
    uniform_vertices,
)
from .reduction import (
    Reduction,
    Schedule,
    Step,
    all_schedules,
    apply_reduction,
    gen_reduction,
    gen_reduction_optimal,
    make_schedule,
    reduction_trace,
    schedule_for_tallies,
    split_vertex,
)
from .simple import (
    DIRECT,
    OPPOSITE,
    dfs_direct,
    dfs_opposite,
    dls_direct,
    dls_opposite,
    gen_dfs,
    gen_dls,
    gen_sequential,
)

__all__ = [
    "EXPONENTIAL_CAP", "POLYNOMIAL_CAP", "GdConfig", "decomposition_expr", "fixed",
    "gd_expr", "gen_decomposition", "gen_gd", "middle_ceil", "middle_floor",
    "resolve_strategy", "uniform_vertices", "Reduction", "Schedule", "Step",
    "all_schedules", "apply_reduction", "gen_reduction", "gen_reduction_optimal",
    "make_schedule", "reduction_trace", "schedule_for_tallies", "split_vertex",
    "DIRECT", "OPPOSITE", "dfs_direct", "dfs_opposite", "dls_direct", "dls_opposite",
    "gen_dfs", "gen_dls", "gen_sequential",
]
