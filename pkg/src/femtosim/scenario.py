"""Scenario files: parse, validate, emit.

The format is line-oriented and diff-friendly: one ``key = value`` per
line, ``#`` starts a full-line comment, blank lines are ignored. Repeated
``wall`` and ``fap`` lines accumulate. Unknown keys are errors — a typo
must not silently fall back to a default.

    name = dense-office
    floor.width = 40
    floor.height = 30
    wall = 20 0 20 22 15          # x1 y1 x2 y2 attenuation_db
    deploy.count = 25             # or repeated: fap = x y
    deploy.min_separation = 3
    deploy.tx_power = 10
    radio.ref_loss = 37
    radio.exponent = 3
    radio.min_distance = 0.5
    thresholds.s_t0 = -90
    thresholds.s_t1 = -80
    thresholds.d_hidden = 15
    thresholds.hidden_allows_cochannel = true
    trigger.serving_drop = -70
    trigger.hysteresis = 2
    mobility.speed = 1.0
    mobility.waypoint_pause = 0
    mobility.time_step = 0.5
    channels = 4
    schemes = proposed baseline-t0 baseline-t1

Every key except floor.width, floor.height, and one of deploy.count /
``fap`` lines has the default shown above.
"""

from __future__ import annotations

from dataclasses import dataclass

from femtosim.errors import ParseError, ValidationError
from femtosim.ncl import ThresholdConfig
from femtosim.radio import FloorPlan, Point2D, PropagationParams, WallSegment
from femtosim.simulation import ALL_SCHEMES, MobilityConfig, TriggerConfig

_DEFAULTS = {
    "deploy.min_separation": 2.0,
    "deploy.tx_power": 10.0,
    "radio.ref_loss": 37.0,
    "radio.exponent": 3.0,
    "radio.min_distance": 0.5,
    "thresholds.s_t0": -90.0,
    "thresholds.s_t1": -80.0,
    "thresholds.d_hidden": 15.0,
    "thresholds.hidden_allows_cochannel": True,
    "trigger.serving_drop": -70.0,
    "trigger.hysteresis": 2.0,
    "mobility.speed": 1.0,
    "mobility.waypoint_pause": 0.0,
    "mobility.time_step": 0.5,
    "channels": 4,
}

_FLOAT_KEYS = {
    "floor.width",
    "floor.height",
    "deploy.min_separation",
    "deploy.tx_power",
    "radio.ref_loss",
    "radio.exponent",
    "radio.min_distance",
    "thresholds.s_t0",
    "thresholds.s_t1",
    "thresholds.d_hidden",
    "trigger.serving_drop",
    "trigger.hysteresis",
    "mobility.speed",
    "mobility.waypoint_pause",
    "mobility.time_step",
}
_INT_KEYS = {"deploy.count", "channels"}
_BOOL_KEYS = {"thresholds.hidden_allows_cochannel"}
_LIST_KEYS = {"schemes"}
_STR_KEYS = {"name"}

_KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _LIST_KEYS | _STR_KEYS | {"wall", "fap"}


@dataclass(frozen=True)
class Scenario:
    """A fully-validated simulation configuration."""

    name: str
    plan: FloorPlan
    fap_count: int
    fap_positions: tuple
    min_separation: float
    params: PropagationParams
    thresholds: ThresholdConfig
    trigger: TriggerConfig
    mobility: MobilityConfig
    num_channels: int
    schemes: tuple


def _parse_float(raw: str, line: int, key: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"{key}: expected a number, got {raw!r}", line) from None
    return value


def _parse_bool(raw: str, line: int, key: str) -> bool:
    lowered = raw.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    raise ParseError(f"{key}: expected true or false, got {raw!r}", line)


def parse_scenario(text: str, default_name: str = "scenario") -> Scenario:
    """Parse scenario text into a validated Scenario.

    Raises ParseError for malformed lines or unknown keys and
    ValidationError for constraint violations, each naming the offending
    1-based line number.
    """
    values: dict = {}
    lines_of: dict = {}
    walls: list = []
    faps: list = []

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key == "wall":
            parts = raw.split()
            if len(parts) != 5:
                raise ParseError("wall: expected 'x1 y1 x2 y2 attenuation_db'", lineno)
            nums = [_parse_float(p, lineno, "wall") for p in parts]
            walls.append((nums, lineno))
        elif key == "fap":
            parts = raw.split()
            if len(parts) != 2:
                raise ParseError("fap: expected 'x y'", lineno)
            faps.append(([_parse_float(p, lineno, "fap") for p in parts], lineno))
        else:
            if key in values:
                raise ParseError(f"duplicate key {key!r}", lineno)
            lines_of[key] = lineno
            if key in _FLOAT_KEYS:
                values[key] = _parse_float(raw, lineno, key)
            elif key in _INT_KEYS:
                try:
                    values[key] = int(raw)
                except ValueError:
                    raise ParseError(f"{key}: expected an integer, got {raw!r}", lineno) from None
            elif key in _BOOL_KEYS:
                values[key] = _parse_bool(raw, lineno, key)
            elif key in _LIST_KEYS:
                values[key] = tuple(p for p in raw.replace(",", " ").split() if p)
            else:
                values[key] = raw

    def get(key):
        return values.get(key, _DEFAULTS.get(key))

    def fail(key: str, message: str):
        raise ValidationError(message, lines_of.get(key, 0))

    if "floor.width" not in values:
        raise ValidationError("floor.width is required", 0)
    if "floor.height" not in values:
        raise ValidationError("floor.height is required", 0)
    width = values["floor.width"]
    height = values["floor.height"]
    if width <= 0:
        fail("floor.width", f"floor.width must be > 0, got {width}")
    if height <= 0:
        fail("floor.height", f"floor.height must be > 0, got {height}")

    wall_segments = []
    for (x1, y1, x2, y2, att), lineno in walls:
        if (x1, y1) == (x2, y2):
            raise ValidationError("wall endpoints must differ", lineno)
        if att < 0:
            raise ValidationError(f"wall attenuation must be >= 0 dB, got {att}", lineno)
        for x, y in ((x1, y1), (x2, y2)):
            if not (0 <= x <= width and 0 <= y <= height):
                raise ValidationError(f"wall endpoint ({x}, {y}) outside floor bounds", lineno)
        wall_segments.append(WallSegment(Point2D(x1, y1), Point2D(x2, y2), att))

    fap_positions = []
    for (x, y), lineno in faps:
        if not (0 <= x <= width and 0 <= y <= height):
            raise ValidationError(f"fap position ({x}, {y}) outside floor bounds", lineno)
        fap_positions.append(Point2D(x, y))

    if "deploy.count" in values and fap_positions:
        fail("deploy.count", "deploy.count and explicit fap lines are mutually exclusive")
    if "deploy.count" not in values and not fap_positions:
        raise ValidationError("either deploy.count or at least one fap line is required", 0)
    fap_count = values.get("deploy.count", 0)
    if fap_count < 0:
        fail("deploy.count", f"deploy.count must be >= 0, got {fap_count}")

    s_t0 = get("thresholds.s_t0")
    s_t1 = get("thresholds.s_t1")
    if s_t1 < s_t0:
        fail("thresholds.s_t1", f"thresholds.s_t1 ({s_t1}) must be >= thresholds.s_t0 ({s_t0})")
    d_hidden = get("thresholds.d_hidden")
    if d_hidden < 0:
        fail("thresholds.d_hidden", f"thresholds.d_hidden must be >= 0, got {d_hidden}")

    for key, minimum in (
        ("deploy.min_separation", 0.0),
        ("radio.exponent", None),
        ("radio.min_distance", None),
        ("mobility.speed", None),
        ("mobility.time_step", None),
        ("mobility.waypoint_pause", 0.0),
        ("trigger.hysteresis", 0.0),
    ):
        value = get(key)
        if minimum is None:
            if value <= 0:
                fail(key, f"{key} must be > 0, got {value}")
        elif value < minimum:
            fail(key, f"{key} must be >= {minimum}, got {value}")

    num_channels = get("channels")
    if num_channels < 1:
        fail("channels", f"channels must be >= 1, got {num_channels}")

    schemes = values.get("schemes", ALL_SCHEMES)
    if not schemes:
        fail("schemes", "schemes must not be empty")
    for scheme in schemes:
        if scheme not in ALL_SCHEMES:
            fail("schemes", f"unknown scheme {scheme!r}; known: {', '.join(ALL_SCHEMES)}")

    return Scenario(
        name=values.get("name", default_name),
        plan=FloorPlan(width=width, height=height, walls=tuple(wall_segments)),
        fap_count=fap_count,
        fap_positions=tuple(fap_positions),
        min_separation=get("deploy.min_separation"),
        params=PropagationParams(
            tx_power=get("deploy.tx_power"),
            ref_loss=get("radio.ref_loss"),
            exponent=get("radio.exponent"),
            min_distance=get("radio.min_distance"),
        ),
        thresholds=ThresholdConfig(
            s_t0=s_t0,
            s_t1=s_t1,
            d_hidden=d_hidden,
            hidden_allows_cochannel=get("thresholds.hidden_allows_cochannel"),
        ),
        trigger=TriggerConfig(
            serving_drop=get("trigger.serving_drop"),
            hysteresis=get("trigger.hysteresis"),
        ),
        mobility=MobilityConfig(
            speed=get("mobility.speed"),
            waypoint_pause=get("mobility.waypoint_pause"),
            time_step=get("mobility.time_step"),
        ),
        num_channels=num_channels,
        schemes=tuple(schemes),
    )


def emit_scenario(sc: Scenario) -> str:
    """Canonical text for a Scenario; parse_scenario(emit_scenario(sc))
    reconstructs an equal Scenario."""
    out = [
        f"name = {sc.name}",
        f"floor.width = {sc.plan.width!r}",
        f"floor.height = {sc.plan.height!r}",
    ]
    for w in sc.plan.walls:
        out.append(f"wall = {w.a.x!r} {w.a.y!r} {w.b.x!r} {w.b.y!r} {w.attenuation!r}")
    if sc.fap_positions:
        for p in sc.fap_positions:
            out.append(f"fap = {p.x!r} {p.y!r}")
    else:
        out.append(f"deploy.count = {sc.fap_count}")
    out += [
        f"deploy.min_separation = {sc.min_separation!r}",
        f"deploy.tx_power = {sc.params.tx_power!r}",
        f"radio.ref_loss = {sc.params.ref_loss!r}",
        f"radio.exponent = {sc.params.exponent!r}",
        f"radio.min_distance = {sc.params.min_distance!r}",
        f"thresholds.s_t0 = {sc.thresholds.s_t0!r}",
        f"thresholds.s_t1 = {sc.thresholds.s_t1!r}",
        f"thresholds.d_hidden = {sc.thresholds.d_hidden!r}",
        f"thresholds.hidden_allows_cochannel = {'true' if sc.thresholds.hidden_allows_cochannel else 'false'}",
        f"trigger.serving_drop = {sc.trigger.serving_drop!r}",
        f"trigger.hysteresis = {sc.trigger.hysteresis!r}",
        f"mobility.speed = {sc.mobility.speed!r}",
        f"mobility.waypoint_pause = {sc.mobility.waypoint_pause!r}",
        f"mobility.time_step = {sc.mobility.time_step!r}",
        f"channels = {sc.num_channels}",
        f"schemes = {' '.join(sc.schemes)}",
    ]
    return "\n".join(out) + "\n"
