"""Exact combinatorics, invariant measure, and seeded simulation for the
Euler adic system: the multigraph with Eulerian path counts, the Vershik
order and successor map on its paths, the symmetric invariant measure, the
cutting-and-stacking interval model, and a reproducible experiment harness.
"""

from .errors import (
    EulerAdicError,
    IndexBeyondPath,
    LengthMismatch,
    MaximalPath,
    MinimalPath,
    OrbitOverflow,
    RootHasNoInEdges,
    TooLarge,
)
from .graph import (
    EdgeRef,
    EulerianTriangle,
    Turn,
    Vertex,
    eulerian,
    eulerian_row,
    in_edge_with_rank,
    in_edges,
    out_edges,
    path_count_between,
)
from .paths import (
    FinitePath,
    Order,
    enumerate_paths_to,
    path_from_out_indices,
    step_for_out_index,
    is_maximal,
    is_minimal,
    max_path_to,
    min_path_to,
    vershik_compare,
)
from .transform import (
    OrbitPosition,
    iterate,
    orbit_rank,
    path_with_rank,
    predecessor,
    successor,
)
from .measure import (
    ColumnDistribution,
    InvarianceReport,
    MomentRow,
    PushforwardReport,
    WeightSystem,
    check_invariance_conditions,
    column_distribution,
    column_distribution_dp,
    column_tail,
    column_tail_bounds,
    cylinder_measure,
    exact_moments,
    pair_drift,
    pushforward_check,
    transition_probs,
)
from .stacking import StackLayout, build_stage, decode_path, encode_point, stage_map
from .montecarlo import (
    MeetingStats,
    RngConfig,
    StatReport,
    birkhoff_experiment,
    chebyshev_experiment,
    load_expectations,
    meeting_experiment,
    pair_drift_experiment,
    sample_experiment,
    sample_path,
    sample_path_codes,
    variance_experiment,
)

__version__ = "0.1.0"
