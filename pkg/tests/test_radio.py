import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from femtosim import FloorPlan, Point2D, PropagationParams, WallSegment, path_loss, rssi, wall_crossings

from conftest import random_plan, random_point
from oracle import crossings_bruteforce


def test_point_requires_finite_coordinates():
    with pytest.raises(ValueError):
        Point2D(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Point2D(0.0, float("inf"))


def test_wall_validation():
    p = Point2D(1, 1)
    with pytest.raises(ValueError):
        WallSegment(p, p)
    with pytest.raises(ValueError):
        WallSegment(Point2D(0, 0), Point2D(1, 1), attenuation=-1.0)


def test_floor_plan_validation():
    with pytest.raises(ValueError):
        FloorPlan(0, 10)
    with pytest.raises(ValueError):
        FloorPlan(10, 10, (WallSegment(Point2D(0, 0), Point2D(11, 0)),))


def test_propagation_params_validation():
    with pytest.raises(ValueError):
        PropagationParams(exponent=0.0)
    with pytest.raises(ValueError):
        PropagationParams(min_distance=0.0)


def test_zero_length_segment_crosses_nothing():
    plan = FloorPlan(10, 10, (WallSegment(Point2D(2, 0), Point2D(2, 2)),))
    assert wall_crossings(Point2D(1, 1), Point2D(1, 1), plan) == []


def test_orthogonal_crossing_at_midpoint():
    wall = WallSegment(Point2D(2, 0), Point2D(2, 2))
    plan = FloorPlan(10, 10, (wall,))
    assert wall_crossings(Point2D(0, 1), Point2D(4, 1), plan) == [wall]


def test_three_staggered_walls_on_diagonal():
    walls = (
        WallSegment(Point2D(2, 0), Point2D(2, 4), 5.0),
        WallSegment(Point2D(5, 2), Point2D(5, 8), 7.0),
        WallSegment(Point2D(8, 6), Point2D(8, 10), 9.0),
    )
    plan = FloorPlan(10, 10, walls)
    a, b = Point2D(0, 0), Point2D(10, 10)
    got = wall_crossings(a, b, plan)
    expected = [plan.walls[i] for i in crossings_bruteforce(a, b, plan)]
    assert got == expected == list(walls)


def test_crossing_at_wall_endpoint_counts():
    # Path passes exactly through the wall's lower endpoint.
    wall = WallSegment(Point2D(2, 1), Point2D(2, 3))
    plan = FloorPlan(10, 10, (wall,))
    assert wall_crossings(Point2D(0, 1), Point2D(4, 1), plan) == [wall]


def test_crossing_at_path_endpoint_does_not_count():
    # The path *ends* on the wall: open-segment rule excludes it.
    wall = WallSegment(Point2D(2, 0), Point2D(2, 2))
    plan = FloorPlan(10, 10, (wall,))
    assert wall_crossings(Point2D(0, 1), Point2D(2, 1), plan) == []


def test_wall_out_of_reach_not_crossed():
    wall = WallSegment(Point2D(2, 5), Point2D(2, 9))
    plan = FloorPlan(10, 10, (wall,))
    assert wall_crossings(Point2D(0, 1), Point2D(4, 1), plan) == []


def test_collinear_overlap_is_not_a_crossing():
    wall = WallSegment(Point2D(2, 1), Point2D(6, 1))
    plan = FloorPlan(10, 10, (wall,))
    assert wall_crossings(Point2D(0, 1), Point2D(8, 1), plan) == []


def test_path_loss_reference_distance(params):
    plan = FloorPlan(20, 20)
    assert path_loss(Point2D(1, 5), Point2D(2, 5), plan, params) == pytest.approx(37.0)


def test_path_loss_ten_meters(params):
    # 37 + 30*log10(10) = 67
    plan = FloorPlan(20, 20)
    assert path_loss(Point2D(0, 5), Point2D(10, 5), plan, params) == pytest.approx(67.0)


def test_path_loss_with_wall(params):
    plan = FloorPlan(20, 20, (WallSegment(Point2D(5, 0), Point2D(5, 20), 10.0),))
    assert path_loss(Point2D(0, 5), Point2D(10, 5), plan, params) == pytest.approx(77.0)


def test_path_loss_clamps_below_min_distance(params):
    plan = FloorPlan(20, 20)
    at_zero = path_loss(Point2D(3, 3), Point2D(3, 3), plan, params)
    at_clamp = 37.0 + 30.0 * math.log10(params.min_distance)
    assert at_zero == pytest.approx(at_clamp)
    assert math.isfinite(at_zero)


def test_rssi_examples(params):
    plan = FloorPlan(20, 20)
    assert rssi(Point2D(1, 5), Point2D(2, 5), plan, params) == pytest.approx(-27.0)
    assert rssi(Point2D(0, 5), Point2D(10, 5), plan, params) == pytest.approx(-57.0)
    walled = FloorPlan(20, 20, (WallSegment(Point2D(5, 0), Point2D(5, 20), 10.0),))
    assert rssi(Point2D(0, 5), Point2D(10, 5), walled, params) == pytest.approx(-67.0)


def test_symmetry_exact(params):
    rng = random.Random(11)
    plan = random_plan(rng, max_walls=5)
    for _ in range(1000):
        a, b = random_point(rng, plan), random_point(rng, plan)
        assert path_loss(a, b, plan, params) == path_loss(b, a, plan, params)


def test_monotone_along_wall_free_ray(params):
    plan = FloorPlan(200, 200)
    fap = Point2D(1, 1)
    prev = math.inf
    for i in range(1, 101):
        d = i * 1.9
        value = rssi(fap, Point2D(1 + d * 0.6, 1 + d * 0.8), plan, params)
        assert value <= prev + 1e-12
        prev = value


def test_wall_additivity_exact(params):
    rng = random.Random(23)
    for _ in range(50):
        bare = FloorPlan(30, 30)
        a, b = random_point(rng, bare), random_point(rng, bare)
        if a.distance_to(b) < 1.0:
            continue
        mid = Point2D((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
        # Perpendicular wall through the midpoint, guaranteed crossed.
        dx, dy = b.x - a.x, b.y - a.y
        norm = math.hypot(dx, dy)
        off = 0.4 * min(norm, 10.0)
        wa = Point2D(mid.x - dy / norm * off, mid.y + dx / norm * off)
        wb = Point2D(mid.x + dy / norm * off, mid.y - dx / norm * off)
        if not (bare.contains(wa) and bare.contains(wb)):
            continue
        att = rng.uniform(1.0, 25.0)
        walled = FloorPlan(30, 30, (WallSegment(wa, wb, att),))
        assert rssi(a, b, bare, params) - rssi(a, b, walled, params) == pytest.approx(att, abs=1e-12)


def test_crossings_match_bruteforce_oracle_random():
    rng = random.Random(99)
    for trial in range(60):
        plan = random_plan(rng, max_walls=6)
        a, b = random_point(rng, plan), random_point(rng, plan)
        got = [plan.walls.index(w) for w in wall_crossings(a, b, plan)]
        assert got == crossings_bruteforce(a, b, plan), f"trial {trial}"


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_crossings_match_bruteforce_oracle_hypothesis(data):
    coord = st.floats(min_value=0.0, max_value=30.0, allow_nan=False, allow_infinity=False)
    seed = data.draw(st.integers(min_value=0, max_value=2**30))
    plan = random_plan(random.Random(seed), max_walls=4)
    a = Point2D(data.draw(coord), data.draw(coord))
    b = Point2D(data.draw(coord), data.draw(coord))
    got = [plan.walls.index(w) for w in wall_crossings(a, b, plan)]
    assert got == crossings_bruteforce(a, b, plan)
