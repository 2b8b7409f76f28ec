"""FAP deployment, overlap-driven channel assignment, SON location exchange.

The overlap graph connects two FAPs when at least one can detect the
other's signal at the detection floor s_t0 (wall-aware). Overlapping FAPs
must not share a frequency, which the greedy coloring enforces whenever
enough channels exist; location exchange then gives every FAP the
positions and channels of its one- and (optionally) two-hop neighbors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from femtosim.errors import PlacementInfeasible, UnknownServingFap
from femtosim.kernels import RadioKernel
from femtosim.radio import FloorPlan, Point2D, PropagationParams, wall_rows

# Channel = index into [0, num_channels); kept as a plain int.
Channel = int

PLACEMENT_ATTEMPTS = 10_000


@dataclass(frozen=True)
class NeighborRecord:
    """One row of a FAP's SON neighbor table.

    hops is 1 for directly-overlapping neighbors and 2 for FAPs learned
    through a relay neighbor.
    """

    fap_id: int
    position: Point2D
    channel: Channel | None
    hops: int


@dataclass
class Fap:
    """Femto access point. Channel and neighbor table are filled in by
    assign_frequencies / exchange_locations before any simulation runs."""

    id: int
    position: Point2D
    channel: Channel | None = None
    tx_power: float = 10.0
    neighbor_table: list = field(default_factory=list)


@dataclass
class Deployment:
    """An immutable-once-built set of FAPs on a floor plan.

    Positions and tx powers are fixed at construction (the radio kernel
    caches them); channels and neighbor tables are populated by the
    build steps and must not change afterwards.
    """

    plan: FloorPlan
    faps: list
    params: PropagationParams
    num_channels: int = 1
    channel_stressed: bool = False

    def __post_init__(self):
        if self.num_channels < 1:
            raise ValueError(f"num_channels must be >= 1, got {self.num_channels}")
        self.faps = sorted(self.faps, key=lambda f: f.id)
        ids = [f.id for f in self.faps]
        if len(set(ids)) != len(ids):
            raise ValueError("FAP ids must be unique within a deployment")
        for f in self.faps:
            if f.id < 0:
                raise ValueError(f"FAP ids must be >= 0, got {f.id}")
            if not self.plan.contains(f.position):
                raise ValueError(f"FAP {f.id} at ({f.position.x}, {f.position.y}) outside plan")
        self._index = {f.id: i for i, f in enumerate(self.faps)}
        self._radio = None

    def fap(self, fap_id: int) -> Fap:
        try:
            return self.faps[self._index[fap_id]]
        except KeyError:
            raise UnknownServingFap(f"no FAP with id {fap_id}") from None

    def index_of(self, fap_id: int) -> int:
        try:
            return self._index[fap_id]
        except KeyError:
            raise UnknownServingFap(f"no FAP with id {fap_id}") from None

    @property
    def radio(self) -> RadioKernel:
        if self._radio is None:
            self._radio = RadioKernel(
                wall_rows(self.plan),
                self.params.ref_loss,
                self.params.exponent,
                self.params.min_distance,
                faps=[(f.position.x, f.position.y, f.tx_power) for f in self.faps],
            )
        return self._radio

    def rssi_at(self, p: Point2D) -> list:
        """RSSI in dBm from every FAP at point p, indexed like self.faps."""
        return self.radio.rssi_all(p.x, p.y)


def deploy(
    plan: FloorPlan,
    count: int,
    min_separation: float,
    rng_seed: int,
    tx_power: float = 10.0,
) -> list:
    """Place ``count`` FAPs uniformly at random with a minimum pairwise
    separation, by bounded rejection sampling. Deterministic per seed.

    Raises PlacementInfeasible when a FAP cannot be placed within
    PLACEMENT_ATTEMPTS tries.
    """
    rng = random.Random(rng_seed)
    placed: list = []
    for i in range(count):
        for _ in range(PLACEMENT_ATTEMPTS):
            pos = Point2D(rng.uniform(0.0, plan.width), rng.uniform(0.0, plan.height))
            if all(pos.distance_to(f.position) >= min_separation for f in placed):
                placed.append(Fap(id=i, position=pos, tx_power=tx_power))
                break
        else:
            raise PlacementInfeasible(
                f"could not place FAP {i} after {PLACEMENT_ATTEMPTS} attempts "
                f"(min_separation={min_separation}, plan={plan.width}x{plan.height})"
            )
    return placed


def build_overlap_graph(dep: Deployment, s_t0: float) -> dict:
    """Adjacency over FAP ids: i ~ j iff either one detects the other at s_t0.

    Detectability is wall-aware (the serving-to-hidden coordination gap of
    a thick wall shows up here). The result is symmetric and irreflexive.
    """
    ids = [f.id for f in dep.faps]
    adj: dict = {i: set() for i in ids}
    # cols[j][i] = RSSI of FAP i measured at FAP j's position.
    cols = [dep.rssi_at(f.position) for f in dep.faps]
    n = len(ids)
    for a in range(n):
        for b in range(a + 1, n):
            if cols[b][a] >= s_t0 or cols[a][b] >= s_t0:
                adj[ids[a]].add(ids[b])
                adj[ids[b]].add(ids[a])
    return adj


def assign_frequencies(graph: dict, num_channels: int, dep: Deployment) -> dict:
    """Greedy-color the overlap graph and write channels onto dep's FAPs.

    FAPs are colored in descending-degree order (ties by ascending id);
    each takes the lowest channel unused by its already-colored neighbors.
    When all channels are taken the FAP gets the channel least used among
    its neighbors (tie: lowest index) and the deployment is flagged
    channel-stressed rather than failing — dense floors are the point.
    """
    if num_channels < 1:
        raise ValueError(f"num_channels must be >= 1, got {num_channels}")
    order = sorted(graph, key=lambda u: (-len(graph[u]), u))
    colors: dict = {}
    stressed = False
    for u in order:
        used = {colors[v] for v in graph[u] if v in colors}
        chosen = next((c for c in range(num_channels) if c not in used), None)
        if chosen is None:
            counts = [0] * num_channels
            for v in graph[u]:
                if v in colors:
                    counts[colors[v]] += 1
            chosen = min(range(num_channels), key=lambda c: (counts[c], c))
            stressed = True
        colors[u] = chosen
    for f in dep.faps:
        f.channel = colors[f.id]
    dep.channel_stressed = stressed
    return colors


def exchange_locations(
    dep: Deployment,
    s_t0: float,
    two_hop: bool = True,
    graph: dict | None = None,
) -> None:
    """Populate every FAP's neighbor table from the overlap graph.

    One-hop records cover direct overlap neighbors; with ``two_hop`` each
    FAP also learns neighbors-of-neighbors it cannot see itself (the relay
    mechanism that makes hidden FAPs listable). A FAP already known at one
    hop is not demoted to two, and no FAP lists itself.
    """
    if graph is None:
        graph = build_overlap_graph(dep, s_t0)
    info = {f.id: (f.position, f.channel) for f in dep.faps}
    for f in dep.faps:
        hops: dict = {}
        for nb in sorted(graph[f.id]):
            hops[nb] = 1
        if two_hop:
            for nb in sorted(graph[f.id]):
                for relayed in sorted(graph[nb]):
                    if relayed != f.id and relayed not in hops:
                        hops[relayed] = 2
        f.neighbor_table = [
            NeighborRecord(fap_id=i, position=info[i][0], channel=info[i][1], hops=h)
            for i, h in sorted(hops.items())
        ]
