"""Deterministic indoor dense-femtocell handover simulator.

Builds neighbor cell lists three ways — the optimized scheme (RSSI
selection, co-channel deduction, hidden-FAP recovery via SON location
exchange) and two RSSI-only baselines — and measures list size and
target-miss probability over a seeded random-waypoint walk.
"""

from femtosim.errors import (
    FemtosimError,
    ParseError,
    PlacementInfeasible,
    ScenarioError,
    UnknownServingFap,
    ValidationError,
)
from femtosim.kernels import BACKEND as KERNEL_BACKEND
from femtosim.ncl import (
    REASON_HIDDEN,
    REASON_RSSI,
    CandidateEntry,
    NeighborCellList,
    ThresholdConfig,
    build_ncl_baseline,
    build_ncl_proposed,
    hidden_candidates,
    set_a,
    set_b,
    set_c,
)
from femtosim.radio import (
    FloorPlan,
    Point2D,
    PropagationParams,
    WallSegment,
    path_loss,
    rssi,
    wall_crossings,
)
from femtosim.scenario import Scenario, emit_scenario, parse_scenario
from femtosim.simulation import (
    ALL_SCHEMES,
    SCHEME_BASELINE_T0,
    SCHEME_BASELINE_T1,
    SCHEME_PROPOSED,
    HandoverEvent,
    MobilityConfig,
    MobilityState,
    ScenarioResult,
    SchemeStats,
    TriggerConfig,
    build_deployment,
    detect_trigger,
    evaluate_event,
    initial_state,
    run_scenario,
    step_mobility,
)
from femtosim.topology import (
    Channel,
    Deployment,
    Fap,
    NeighborRecord,
    assign_frequencies,
    build_overlap_graph,
    deploy,
    exchange_locations,
)

__version__ = "0.1.0"
