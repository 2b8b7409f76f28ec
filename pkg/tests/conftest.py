import random

import pytest

from femtosim import (
    Deployment,
    Fap,
    FloorPlan,
    Point2D,
    PropagationParams,
    ThresholdConfig,
    WallSegment,
    build_overlap_graph,
    deploy,
    exchange_locations,
)
from femtosim.topology import assign_frequencies


@pytest.fixture
def params():
    return PropagationParams()


def random_plan(rng: random.Random, width=30.0, height=30.0, max_walls=6):
    walls = []
    for _ in range(rng.randint(0, max_walls)):
        while True:
            a = Point2D(rng.uniform(0, width), rng.uniform(0, height))
            b = Point2D(rng.uniform(0, width), rng.uniform(0, height))
            if a != b:
                break
        walls.append(WallSegment(a, b, rng.uniform(5.0, 20.0)))
    return FloorPlan(width, height, tuple(walls))


def random_point(rng: random.Random, plan: FloorPlan) -> Point2D:
    return Point2D(rng.uniform(0, plan.width), rng.uniform(0, plan.height))


def random_deployment(
    seed: int,
    count=12,
    width=30.0,
    height=30.0,
    max_walls=6,
    num_channels=4,
    cfg: ThresholdConfig | None = None,
    min_separation=1.5,
):
    """A fully-built random deployment (placed, colored, exchanged)."""
    rng = random.Random(seed)
    plan = random_plan(rng, width, height, max_walls)
    cfg = cfg or ThresholdConfig(s_t0=-75.0, s_t1=-62.0, d_hidden=12.0)
    faps = deploy(plan, count, min_separation, rng_seed=rng.randrange(2**31))
    dep = Deployment(plan=plan, faps=faps, params=PropagationParams(), num_channels=num_channels)
    graph = build_overlap_graph(dep, cfg.s_t0)
    assign_frequencies(graph, num_channels, dep)
    exchange_locations(dep, cfg.s_t0, two_hop=True, graph=graph)
    return dep, cfg, rng


def two_room_fixture(
    d_hidden=10.0,
    hidden_allows_cochannel=True,
    hidden_channel=2,
    extras=False,
):
    """Scripted two-room scenario with a hidden FAP behind a 20 dB wall.

    Geometry (floor 20 x 12, wall x=10 from y=0 to y=9, door above):

        serving #0 at (6, 6)     room 1
        hidden  #1 at (13, 6)    room 2, 5 m from the MS across the wall
        relay   #2 at (10.5, 10.5) in the doorway, sees both

    With tx=10 dBm, ref_loss=37, exponent=3:
        RSSI(hidden at MS (8,6)) = 10 - 37 - 30*log10(5) - 20 = -67.97 dBm
        RSSI(relay  at MS)       = 10 - 37 - 30*log10(5.148)  = -48.35 dBm
        RSSI(serving<->hidden)   = 10 - 37 - 30*log10(7) - 20 = -72.35 dBm

    so at s_t0=-70 the serving FAP cannot coordinate with the hidden FAP
    directly and learns it at hops=2 through the relay.

    ``extras`` adds near FAPs #3, #8 plus far/co-channel FAPs #4, #9 to
    reproduce the full walkthrough list {1, 2, 3, 8} (pass d_hidden=6).
    """
    wall = WallSegment(Point2D(10, 0), Point2D(10, 9), 20.0)
    plan = FloorPlan(20, 12, (wall,))
    params = PropagationParams(tx_power=10.0, ref_loss=37.0, exponent=3.0)
    faps = [
        Fap(id=0, position=Point2D(6, 6)),
        Fap(id=1, position=Point2D(13, 6)),
        Fap(id=2, position=Point2D(10.5, 10.5)),
    ]
    channels = {0: 0, 1: hidden_channel, 2: 1}
    if extras:
        faps += [
            Fap(id=3, position=Point2D(7, 2)),
            Fap(id=8, position=Point2D(9, 9)),
            Fap(id=4, position=Point2D(19, 11)),  # far, co-channel with serving
            Fap(id=9, position=Point2D(19, 1)),  # far, other channel
        ]
        channels.update({3: 1, 8: 2, 4: 0, 9: 1})
    cfg = ThresholdConfig(
        s_t0=-70.0,
        s_t1=-50.0,
        d_hidden=d_hidden,
        hidden_allows_cochannel=hidden_allows_cochannel,
    )
    dep = Deployment(plan=plan, faps=faps, params=params, num_channels=3)
    graph = build_overlap_graph(dep, cfg.s_t0)
    for f in dep.faps:
        f.channel = channels[f.id]
    exchange_locations(dep, cfg.s_t0, two_hop=True, graph=graph)
    ms = Point2D(8, 6)
    return dep, cfg, ms
