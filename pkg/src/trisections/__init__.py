"""Combinatorial engine for trisections of closed orientable 3-manifolds."""

from .core import (
    CONSTRUCTORS,
    GenealogyEvent,
    Infeasible,
    LinkComponentSet,
    OutOfDomain,
    Profile,
    SurfaceGenera,
    TrisectionError,
    TrisectionState,
    connect_sum_equal_genus,
    construct,
    euler_defect,
    from_heegaard,
    genera_from_profile,
    is_feasible,
    koda_ozawa,
    open_book,
    profile_of,
    split_heegaard,
    state_from_profile,
    surface_bundle,
    trivial,
    tunnel_system,
)
from .moves import (
    DESTAB_CAVEAT,
    Arc,
    DestabMove,
    DistinctComponents,
    IllegalMove,
    MoveRecord,
    MoveScript,
    SameComponent,
    StabMove,
    apply_destabilization,
    apply_stabilization,
    balance,
    build_heegaard,
    canonical_balance_move,
    canonical_distinct_arc,
    canonical_same_arc,
    drive_opposite_to_disk,
    fake_heegaard_stab,
    inverse_of,
    is_legal,
    legal_moves,
)
from .explorer import (
    MoveGraphNode,
    PropertyResult,
    VerificationReport,
    bfs_reachable,
    common_stabilization_search,
    feasible_nodes,
    realize_path,
    shortest_path,
    shortest_script,
    verify_properties,
)
from .planner import (
    InfeasibleInput,
    PlanReport,
    PlanSteps,
    TrivialInput,
    plan_common_stabilization,
    replay,
)

__version__ = "0.1.0"
