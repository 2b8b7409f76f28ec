"""Floor-plan geometry and deterministic wall-aware RSSI.

The propagation model is log-distance with an additive per-wall penalty:

    loss(a, b) = ref_loss + 10 * exponent * log10(max(dist, min_distance) / 1 m)
                 + sum of attenuations of walls crossed by the open segment (a, b)

There is no fading or shadowing term, so RSSI is a pure function of the
geometry; any handover miss observed downstream is attributable to the
list-construction logic alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from femtosim.kernels import RadioKernel


@dataclass(frozen=True)
class Point2D:
    """A position on the floor, in meters."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: "Point2D") -> float:
        dx = other.x - self.x
        dy = other.y - self.y
        return math.sqrt(dx * dx + dy * dy)


@dataclass(frozen=True)
class WallSegment:
    """An attenuating segment; crossing it costs ``attenuation`` dB."""

    a: Point2D
    b: Point2D
    attenuation: float = 10.0

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("wall endpoints must differ")
        if self.attenuation < 0.0:
            raise ValueError(f"wall attenuation must be >= 0 dB, got {self.attenuation}")


@dataclass(frozen=True)
class FloorPlan:
    """Rectangular floor [0, width] x [0, height] with attenuating walls."""

    width: float
    height: float
    walls: tuple = ()

    def __post_init__(self):
        if not (self.width > 0.0 and self.height > 0.0):
            raise ValueError(f"floor dimensions must be positive, got {self.width}x{self.height}")
        object.__setattr__(self, "walls", tuple(self.walls))
        for wall in self.walls:
            for p in (wall.a, wall.b):
                if not self.contains(p):
                    raise ValueError(f"wall endpoint ({p.x}, {p.y}) outside floor bounds")

    def contains(self, p: Point2D) -> bool:
        return 0.0 <= p.x <= self.width and 0.0 <= p.y <= self.height


@dataclass(frozen=True)
class PropagationParams:
    """Log-distance model parameters; defaults suit a ~2 GHz indoor link."""

    tx_power: float = 10.0
    ref_loss: float = 37.0
    exponent: float = 3.0
    min_distance: float = 0.5

    def __post_init__(self):
        if self.exponent <= 0.0:
            raise ValueError(f"path-loss exponent must be > 0, got {self.exponent}")
        if self.min_distance <= 0.0:
            raise ValueError(f"min_distance must be > 0, got {self.min_distance}")


def wall_rows(plan: FloorPlan) -> tuple:
    """Walls as flat (ax, ay, bx, by, attenuation) rows for kernel input."""
    return tuple((w.a.x, w.a.y, w.b.x, w.b.y, w.attenuation) for w in plan.walls)


@lru_cache(maxsize=256)
def _geometry_kernel(plan: FloorPlan) -> RadioKernel:
    return RadioKernel(wall_rows(plan), 0.0, 1.0, 1.0)


@lru_cache(maxsize=256)
def _radio_kernel(plan: FloorPlan, params: PropagationParams) -> RadioKernel:
    return RadioKernel(wall_rows(plan), params.ref_loss, params.exponent, params.min_distance)


def wall_crossings(a: Point2D, b: Point2D, plan: FloorPlan) -> list:
    """Walls properly crossed by the open segment (a, b).

    A crossing exactly at a wall endpoint counts (walls never leak at
    shared corners); a crossing exactly at ``a`` or ``b`` does not.
    A degenerate segment (a == b) crosses nothing.
    """
    kernel = _geometry_kernel(plan)
    return [plan.walls[k] for k in kernel.crossing_indices(a.x, a.y, b.x, b.y)]


def path_loss(a: Point2D, b: Point2D, plan: FloorPlan, params: PropagationParams) -> float:
    """Wall-aware log-distance loss in dB; exactly symmetric in a and b."""
    return _radio_kernel(plan, params).path_loss(a.x, a.y, b.x, b.y)


def rssi(fap_pos: Point2D, ms_pos: Point2D, plan: FloorPlan, params: PropagationParams) -> float:
    """Received signal strength in dBm at ``ms_pos`` from a FAP at ``fap_pos``."""
    return params.tx_power - path_loss(fap_pos, ms_pos, plan, params)
