"""Neighbor-cell-list construction.

Candidate sets, in order:

  A — every non-serving FAP whose RSSI at the MS clears the detection
      floor s_t0 (what a signal-only list would contain).
  B — the subset of A clearing the stricter selection threshold s_t1.
  C — the subset of B sharing the serving FAP's channel. Overlapping
      cells are never co-channel under a valid frequency plan, so a
      co-channel B-member is a far-away reuse cell, not a real handover
      candidate; it is deducted.

The proposed list is (B \\ C) plus hidden candidates: FAPs the serving FAP
knows by location (SON neighbor table, one or two hops) that sit within
d_hidden meters of the MS but fall in the second category — their signal
is below s_t1 (e.g. blocked by a wall) or they are co-channel. Baseline
lists apply a bare RSSI threshold and nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from femtosim.radio import Point2D
from femtosim.topology import Channel, Deployment

REASON_RSSI = "rssi_qualified"
REASON_HIDDEN = "hidden_location"


@dataclass(frozen=True)
class ThresholdConfig:
    """Detection/selection thresholds (dBm) and the hidden-candidate rules.

    d_hidden bounds how far from the MS a location-known FAP may sit and
    still be listed; 0 disables hidden recovery entirely.
    """

    s_t0: float = -90.0
    s_t1: float = -80.0
    d_hidden: float = 15.0
    hidden_allows_cochannel: bool = True

    def __post_init__(self):
        if self.s_t1 < self.s_t0:
            raise ValueError(f"s_t1 ({self.s_t1}) must be >= s_t0 ({self.s_t0})")
        if self.d_hidden < 0.0:
            raise ValueError(f"d_hidden must be >= 0, got {self.d_hidden}")


@dataclass(frozen=True)
class CandidateEntry:
    """One list entry. ``rssi`` is the true value at the MS and may sit
    below s_t0 for hidden entries; ``hops`` is the neighbor-table hop count
    behind a hidden entry (0 for RSSI-qualified ones)."""

    fap_id: int
    rssi: float
    channel: Channel | None
    reason: str
    hops: int = 0


@dataclass
class NeighborCellList:
    """Ordered candidate list for one serving FAP.

    Entries are unique per FAP, never include the serving FAP, and are
    ordered by RSSI descending with ties broken by ascending id — hidden
    entries carry their true (low) RSSI, which places them last, matching
    their fallback role.
    """

    serving_fap_id: int
    entries: list = field(default_factory=list)

    def ids(self) -> set:
        return {e.fap_id for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, fap_id: int) -> bool:
        return any(e.fap_id == fap_id for e in self.entries)


def _rssi_by_id(ms_pos: Point2D, dep: Deployment) -> dict:
    values = dep.rssi_at(ms_pos)
    return {f.id: values[i] for i, f in enumerate(dep.faps)}


def set_a(ms_pos: Point2D, dep: Deployment, serving_id: int, cfg: ThresholdConfig) -> set:
    """FAP ids detectable at the MS: RSSI >= s_t0, serving excluded."""
    dep.index_of(serving_id)
    rssi = _rssi_by_id(ms_pos, dep)
    return {i for i, r in rssi.items() if i != serving_id and r >= cfg.s_t0}


def set_b(ms_pos: Point2D, dep: Deployment, serving_id: int, cfg: ThresholdConfig) -> set:
    """FAP ids clearing the selection threshold: RSSI >= s_t1. B is a
    subset of A because s_t1 >= s_t0."""
    dep.index_of(serving_id)
    rssi = _rssi_by_id(ms_pos, dep)
    return {i for i, r in rssi.items() if i != serving_id and r >= cfg.s_t1}


def set_c(b: set, dep: Deployment, serving_id: int) -> set:
    """Members of B sharing the serving FAP's channel."""
    serving_channel = dep.fap(serving_id).channel
    return {k for k in b if dep.fap(k).channel == serving_channel}


def hidden_candidates(
    ms_pos: Point2D,
    dep: Deployment,
    serving_id: int,
    cfg: ThresholdConfig,
    already: set,
) -> set:
    """Second-category FAPs recoverable through the serving FAP's table.

    A FAP qualifies when all of these hold:
      * it is not already listed and is not the serving FAP;
      * the serving FAP knows it (neighbor table, hops 1 or 2);
      * its true position is within d_hidden meters of the MS;
      * it is second-category: RSSI at the MS below s_t1, or co-channel
        with the serving FAP;
      * when hidden_allows_cochannel is off, it must additionally use a
        different channel than the serving FAP.
    """
    serving = dep.fap(serving_id)
    rssi = _rssi_by_id(ms_pos, dep)
    out = set()
    for rec in serving.neighbor_table:
        f = rec.fap_id
        if f == serving_id or f in already:
            continue
        if ms_pos.distance_to(rec.position) > cfg.d_hidden:
            continue
        second_category = rssi[f] < cfg.s_t1 or rec.channel == serving.channel
        if not second_category:
            continue
        if not cfg.hidden_allows_cochannel and rec.channel == serving.channel:
            continue
        out.add(f)
    return out


def _entry_order(e: CandidateEntry):
    return (-e.rssi, e.fap_id)


def build_ncl_proposed(
    ms_pos: Point2D,
    dep: Deployment,
    serving_id: int,
    cfg: ThresholdConfig,
) -> NeighborCellList:
    """The optimized list: (B \\ C) as RSSI-qualified entries plus hidden
    candidates recovered via the serving FAP's location knowledge."""
    serving = dep.fap(serving_id)
    rssi = _rssi_by_id(ms_pos, dep)
    b = set_b(ms_pos, dep, serving_id, cfg)
    c = set_c(b, dep, serving_id)
    qualified = b - c
    hidden = hidden_candidates(ms_pos, dep, serving_id, cfg, already=qualified)
    hops_by_id = {rec.fap_id: rec.hops for rec in serving.neighbor_table}
    entries = [
        CandidateEntry(i, rssi[i], dep.fap(i).channel, REASON_RSSI, hops=0)
        for i in qualified
    ]
    entries += [
        CandidateEntry(i, rssi[i], dep.fap(i).channel, REASON_HIDDEN, hops=hops_by_id[i])
        for i in hidden
    ]
    entries.sort(key=_entry_order)
    return NeighborCellList(serving_fap_id=serving_id, entries=entries)


def build_ncl_baseline(
    ms_pos: Point2D,
    dep: Deployment,
    serving_id: int,
    threshold: float,
) -> NeighborCellList:
    """RSSI-only list: every non-serving FAP at or above ``threshold``,
    with no frequency or location logic. Run with threshold=s_t0 and
    threshold=s_t1 as the two comparison schemes."""
    dep.index_of(serving_id)
    rssi = _rssi_by_id(ms_pos, dep)
    entries = [
        CandidateEntry(i, r, dep.fap(i).channel, REASON_RSSI, hops=0)
        for i, r in rssi.items()
        if i != serving_id and r >= threshold
    ]
    entries.sort(key=_entry_order)
    return NeighborCellList(serving_fap_id=serving_id, entries=entries)
