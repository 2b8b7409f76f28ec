"""Random-waypoint mobility, handover triggering, and per-scheme metrics.

Handover works in two phases, as a real MS would experience it: when the
serving RSSI drops below ``serving_drop`` the check is *armed* and every
scheme's neighbor list is built from what is measurable/known right
there; the handover then *completes* at the first later step where some
other FAP clears s_t1 and beats the serving RSSI by the hysteresis
margin. That strongest FAP is the ground-truth target, and a scheme
scores a miss when the target is absent from the list it built at arming
time. Steps where the serving signal recovers disarm the check and drop
the snapshot.

All schemes share one trajectory and one event stream: handover always
executes to the ground-truth target, lists are scored passively. Events
where no FAP qualifies fall through to the macrocell and are excluded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from math import sqrt

from femtosim.errors import UnknownServingFap
from femtosim.ncl import (
    NeighborCellList,
    ThresholdConfig,
    build_ncl_baseline,
    build_ncl_proposed,
)
from femtosim.radio import FloorPlan, Point2D
from femtosim.topology import (
    Deployment,
    Fap,
    assign_frequencies,
    build_overlap_graph,
    deploy,
    exchange_locations,
)

SCHEME_PROPOSED = "proposed"
SCHEME_BASELINE_T0 = "baseline-t0"
SCHEME_BASELINE_T1 = "baseline-t1"
ALL_SCHEMES = (SCHEME_PROPOSED, SCHEME_BASELINE_T0, SCHEME_BASELINE_T1)

# Keeps the mobility stream disjoint from the placement stream, which is
# seeded with the raw scenario seed.
_MOBILITY_SEED_OFFSET = 1_000_000_007

# Step budget per requested event when the caller does not cap steps.
_DEFAULT_STEPS_PER_EVENT = 500
_DEFAULT_STEPS_FLOOR = 10_000


@dataclass(frozen=True)
class MobilityConfig:
    """Random-waypoint walk parameters."""

    speed: float = 1.0
    waypoint_pause: float = 0.0
    time_step: float = 0.5

    def __post_init__(self):
        if self.speed <= 0.0:
            raise ValueError(f"speed must be > 0, got {self.speed}")
        if self.time_step <= 0.0:
            raise ValueError(f"time_step must be > 0, got {self.time_step}")
        if self.waypoint_pause < 0.0:
            raise ValueError(f"waypoint_pause must be >= 0, got {self.waypoint_pause}")


@dataclass(frozen=True)
class TriggerConfig:
    """Serving RSSI below ``serving_drop`` arms a handover check; a
    candidate must clear s_t1 and exceed serving by ``hysteresis`` dB."""

    serving_drop: float = -70.0
    hysteresis: float = 2.0

    def __post_init__(self):
        if self.hysteresis < 0.0:
            raise ValueError(f"hysteresis must be >= 0, got {self.hysteresis}")


@dataclass(frozen=True)
class MobilityState:
    position: Point2D
    waypoint: Point2D
    pause_remaining: float = 0.0


@dataclass
class HandoverEvent:
    """One completed femtocell-to-femtocell handover.

    ``armed_pos`` is where the lists were built (the arming position);
    ``ms_pos`` is where the handover completed.
    """

    ms_pos: Point2D
    serving_id: int
    target_id: int
    lists: dict
    armed_pos: Point2D


@dataclass
class SchemeStats:
    """Per-scheme accumulators; sizes are integers so that
    mean_list_size * events == total_list_size holds exactly."""

    events: int = 0
    misses: int = 0
    total_list_size: int = 0
    max_list_size: int = 0

    @property
    def miss_probability(self) -> float:
        return self.misses / self.events if self.events else 0.0

    @property
    def mean_list_size(self) -> float:
        return self.total_list_size / self.events if self.events else 0.0


@dataclass
class ScenarioResult:
    """Aggregated outcome of one (scenario, seed) replication."""

    scenario_name: str
    seed: int
    schemes: dict
    events: int
    requested_events: int
    steps: int
    partial: bool
    channel_stressed: bool
    config: dict = field(default_factory=dict)


def _draw_waypoint(plan: FloorPlan, rng: random.Random) -> Point2D:
    return Point2D(rng.uniform(0.0, plan.width), rng.uniform(0.0, plan.height))


def initial_state(plan: FloorPlan, rng: random.Random) -> MobilityState:
    return MobilityState(position=_draw_waypoint(plan, rng), waypoint=_draw_waypoint(plan, rng))


def step_mobility(
    state: MobilityState,
    cfg: MobilityConfig,
    plan: FloorPlan,
    rng: random.Random,
) -> MobilityState:
    """Advance one time step toward the waypoint.

    Arrival lands exactly on the waypoint (no overshoot), then the walker
    pauses for ``waypoint_pause`` seconds before drawing the next uniform
    waypoint. Positions never leave the floor bounds.
    """
    if state.pause_remaining > 0.0:
        left = state.pause_remaining - cfg.time_step
        if left > 0.0:
            return replace(state, pause_remaining=left)
        return MobilityState(state.position, _draw_waypoint(plan, rng), 0.0)

    pos, wp = state.position, state.waypoint
    dx = wp.x - pos.x
    dy = wp.y - pos.y
    dist = sqrt(dx * dx + dy * dy)
    travel = cfg.speed * cfg.time_step
    if travel >= dist:
        if cfg.waypoint_pause > 0.0:
            return MobilityState(wp, wp, cfg.waypoint_pause)
        return MobilityState(wp, _draw_waypoint(plan, rng), 0.0)
    f = travel / dist
    nx = min(max(pos.x + dx * f, 0.0), plan.width)
    ny = min(max(pos.y + dy * f, 0.0), plan.height)
    return MobilityState(Point2D(nx, ny), wp, 0.0)


def _best_other(rssi: list, serving_idx: int):
    """Strongest non-serving entry; ties go to the lowest index, which is
    the lowest id because deployments keep FAPs sorted by id."""
    best_idx = -1
    best = 0.0
    for i, r in enumerate(rssi):
        if i == serving_idx:
            continue
        if best_idx < 0 or r > best:
            best_idx = i
            best = r
    return best_idx, best


def detect_trigger(
    ms_pos: Point2D,
    dep: Deployment,
    serving_id: int,
    trig: TriggerConfig,
    cfg: ThresholdConfig,
) -> int | None:
    """Ground-truth target id if a handover completes at this position.

    Returns the strongest other FAP when the serving RSSI is below
    serving_drop and that FAP clears s_t1 and the hysteresis margin;
    None otherwise (including the femto-to-macro case where nothing
    qualifies).
    """
    serving_idx = dep.index_of(serving_id)
    rssi = dep.rssi_at(ms_pos)
    target_idx = _detect_from_rssi(rssi, serving_idx, trig, cfg)
    return dep.faps[target_idx].id if target_idx is not None else None


def _detect_from_rssi(
    rssi: list,
    serving_idx: int,
    trig: TriggerConfig,
    cfg: ThresholdConfig,
) -> int | None:
    serving_rssi = rssi[serving_idx]
    if serving_rssi >= trig.serving_drop:
        return None
    best_idx, best = _best_other(rssi, serving_idx)
    if best_idx < 0:
        return None
    if best >= cfg.s_t1 and best >= serving_rssi + trig.hysteresis:
        return best_idx
    return None


def evaluate_event(event: HandoverEvent) -> dict:
    """Per-scheme miss flags: True when the target is absent from the
    scheme's list."""
    return {scheme: event.target_id not in ncl.ids() for scheme, ncl in event.lists.items()}


def build_deployment(scenario, seed: int) -> Deployment:
    """Deploy FAPs (or take the scenario's explicit positions), color the
    overlap graph, and run the SON location exchange."""
    if scenario.fap_positions:
        # Explicit positions share the scenario-wide tx power.
        faps = [
            Fap(id=i, position=p, tx_power=scenario.params.tx_power)
            for i, p in enumerate(scenario.fap_positions)
        ]
    else:
        faps = deploy(
            scenario.plan,
            scenario.fap_count,
            scenario.min_separation,
            rng_seed=seed,
            tx_power=scenario.params.tx_power,
        )
    dep = Deployment(
        plan=scenario.plan,
        faps=faps,
        params=scenario.params,
        num_channels=scenario.num_channels,
    )
    graph = build_overlap_graph(dep, scenario.thresholds.s_t0)
    assign_frequencies(graph, scenario.num_channels, dep)
    exchange_locations(dep, scenario.thresholds.s_t0, two_hop=True, graph=graph)
    return dep


def _build_lists(
    ms_pos: Point2D,
    dep: Deployment,
    serving_id: int,
    cfg: ThresholdConfig,
    schemes,
) -> dict:
    lists = {}
    for scheme in schemes:
        if scheme == SCHEME_PROPOSED:
            lists[scheme] = build_ncl_proposed(ms_pos, dep, serving_id, cfg)
        elif scheme == SCHEME_BASELINE_T0:
            lists[scheme] = build_ncl_baseline(ms_pos, dep, serving_id, cfg.s_t0)
        elif scheme == SCHEME_BASELINE_T1:
            lists[scheme] = build_ncl_baseline(ms_pos, dep, serving_id, cfg.s_t1)
        else:
            raise ValueError(f"unknown scheme {scheme!r}")
    return lists


def run_scenario(
    scenario,
    seed: int,
    n_events: int,
    max_steps: int | None = None,
    on_event=None,
) -> ScenarioResult:
    """Run one replication and aggregate per-scheme statistics.

    The walk continues until ``n_events`` handovers complete or the step
    budget runs out; in the latter case the result is flagged partial.
    Output is a pure function of (scenario, seed, n_events, max_steps).
    ``on_event(event, misses)`` is invoked per completed handover.
    """
    if n_events < 0:
        raise ValueError(f"n_events must be >= 0, got {n_events}")
    dep = build_deployment(scenario, seed)
    plan = scenario.plan
    cfg = scenario.thresholds
    trig = scenario.trigger
    mob = scenario.mobility
    schemes = tuple(scenario.schemes)
    stats = {scheme: SchemeStats() for scheme in schemes}
    if max_steps is None:
        max_steps = _DEFAULT_STEPS_PER_EVENT * n_events + _DEFAULT_STEPS_FLOOR

    rng = random.Random(seed + _MOBILITY_SEED_OFFSET)
    state = initial_state(plan, rng)
    start_rssi = dep.rssi_at(state.position)
    serving_idx = max(range(len(dep.faps)), key=lambda i: (start_rssi[i], -i)) if dep.faps else -1
    if serving_idx < 0:
        raise ValueError("cannot simulate an empty deployment")

    armed: tuple | None = None  # (lists, arming position)
    events = 0
    steps = 0
    while events < n_events and steps < max_steps:
        state = step_mobility(state, mob, plan, rng)
        steps += 1
        rssi = dep.rssi_at(state.position)
        if rssi[serving_idx] >= trig.serving_drop:
            armed = None
            continue
        serving_id = dep.faps[serving_idx].id
        if armed is None:
            armed = (_build_lists(state.position, dep, serving_id, cfg, schemes), state.position)
        target_idx = _detect_from_rssi(rssi, serving_idx, trig, cfg)
        if target_idx is None:
            continue
        lists, armed_pos = armed
        event = HandoverEvent(
            ms_pos=state.position,
            serving_id=serving_id,
            target_id=dep.faps[target_idx].id,
            lists=lists,
            armed_pos=armed_pos,
        )
        misses = evaluate_event(event)
        for scheme in schemes:
            s = stats[scheme]
            size = len(lists[scheme])
            s.events += 1
            s.misses += int(misses[scheme])
            s.total_list_size += size
            if size > s.max_list_size:
                s.max_list_size = size
        if on_event is not None:
            on_event(event, misses)
        events += 1
        serving_idx = target_idx
        armed = None

    return ScenarioResult(
        scenario_name=scenario.name,
        seed=seed,
        schemes=stats,
        events=events,
        requested_events=n_events,
        steps=steps,
        partial=events < n_events,
        channel_stressed=dep.channel_stressed,
        config={
            "s_t0": cfg.s_t0,
            "s_t1": cfg.s_t1,
            "d_hidden": cfg.d_hidden,
            "serving_drop": trig.serving_drop,
            "hysteresis": trig.hysteresis,
            "num_channels": scenario.num_channels,
        },
    )
