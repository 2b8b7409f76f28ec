"""Command-line runner: parse a scenario, run replications, emit rows.

Replications use seeds N .. N+replications-1 and may run in parallel
(--jobs); results are merged in ascending seed order after all workers
finish, so parallel and serial runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

from femtosim.errors import PlacementInfeasible, ScenarioError
from femtosim.scenario import Scenario, parse_scenario
from femtosim.simulation import ScenarioResult, build_deployment, run_scenario

CSV_HEADER = "scenario,scheme,seed,events,misses,miss_probability,mean_list_size,max_list_size"


@dataclass(frozen=True)
class ResultRow:
    scenario: str
    scheme: str
    seed: int
    events: int
    misses: int
    miss_probability: float
    mean_list_size: float
    max_list_size: int

    def to_csv(self) -> str:
        return (
            f"{self.scenario},{self.scheme},{self.seed},{self.events},{self.misses},"
            f"{self.miss_probability:.6f},{self.mean_list_size:.6f},{self.max_list_size}"
        )

    def to_json_obj(self) -> dict:
        return {
            "scenario": self.scenario,
            "scheme": self.scheme,
            "seed": self.seed,
            "events": self.events,
            "misses": self.misses,
            "miss_probability": round(self.miss_probability, 6),
            "mean_list_size": round(self.mean_list_size, 6),
            "max_list_size": self.max_list_size,
        }


def result_rows(results) -> list:
    rows = []
    for res in results:
        for scheme, s in res.schemes.items():
            rows.append(
                ResultRow(
                    scenario=res.scenario_name,
                    scheme=scheme,
                    seed=res.seed,
                    events=s.events,
                    misses=s.misses,
                    miss_probability=s.miss_probability,
                    mean_list_size=s.mean_list_size,
                    max_list_size=s.max_list_size,
                )
            )
    rows.sort(key=lambda r: (r.scheme, r.seed))
    return rows


def render_csv(rows) -> str:
    return "\n".join([CSV_HEADER] + [r.to_csv() for r in rows]) + "\n"


def render_json(rows) -> str:
    return json.dumps([r.to_json_obj() for r in rows], indent=2) + "\n"


def geometry_dump(scenario: Scenario, seeds) -> dict:
    """Everything needed to replay the runs: floor, walls, and the exact
    per-seed FAP placement and channel assignment."""
    deployments = []
    for seed in seeds:
        dep = build_deployment(scenario, seed)
        deployments.append(
            {
                "seed": seed,
                "channel_stressed": dep.channel_stressed,
                "faps": [
                    {"id": f.id, "x": f.position.x, "y": f.position.y, "channel": f.channel}
                    for f in dep.faps
                ],
            }
        )
    return {
        "scenario": scenario.name,
        "floor": {"width": scenario.plan.width, "height": scenario.plan.height},
        "walls": [
            {
                "x1": w.a.x,
                "y1": w.a.y,
                "x2": w.b.x,
                "y2": w.b.y,
                "attenuation_db": w.attenuation,
            }
            for w in scenario.plan.walls
        ],
        "num_channels": scenario.num_channels,
        "deployments": deployments,
    }


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="femtosim",
        description="Deterministic indoor femtocell handover simulator; compares "
        "neighbor-cell-list schemes on list size and target-miss probability.",
    )
    p.add_argument("--scenario", metavar="FILE", help="scenario file (required)")
    p.add_argument("--seed", type=int, default=1, help="base RNG seed (default 1)")
    p.add_argument(
        "--replications",
        type=int,
        default=1,
        help="number of replications, seeds N..N+reps-1 (default 1)",
    )
    p.add_argument("--events", type=int, default=1000, help="handover events per replication")
    p.add_argument("--max-steps", type=int, default=None, help="mobility step cap per replication")
    p.add_argument("--out", metavar="FILE", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--dump-geometry", metavar="FILE", default=None, help="write per-seed geometry JSON")
    p.add_argument("--jobs", type=int, default=1, help="parallel replication workers (default 1)")
    return p


def _run_one(scenario: Scenario, events: int, max_steps, seed: int) -> ScenarioResult:
    return run_scenario(scenario, seed, n_events=events, max_steps=max_steps)


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    if not args.scenario:
        parser.print_usage(sys.stderr)
        print("femtosim: error: --scenario is required", file=sys.stderr)
        return 1
    if args.replications < 1:
        print("femtosim: error: --replications must be >= 1", file=sys.stderr)
        return 1

    try:
        text = Path(args.scenario).read_text()
    except OSError as exc:
        print(f"femtosim: error: cannot read scenario: {exc}", file=sys.stderr)
        return 1
    try:
        scenario = parse_scenario(text, default_name=Path(args.scenario).stem)
    except ScenarioError as exc:
        print(f"femtosim: scenario error: {exc}", file=sys.stderr)
        return 1

    seeds = list(range(args.seed, args.seed + args.replications))
    worker = partial(_run_one, scenario, args.events, args.max_steps)
    try:
        if args.jobs > 1 and len(seeds) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(worker, seeds))
        else:
            results = [worker(seed) for seed in seeds]
    except PlacementInfeasible as exc:
        print(f"femtosim: infeasible: {exc}", file=sys.stderr)
        return 2

    for res in results:
        if res.partial:
            print(
                f"femtosim: warning: seed {res.seed} reached only {res.events}/"
                f"{res.requested_events} events within the step budget",
                file=sys.stderr,
            )

    rows = result_rows(results)
    rendered = render_csv(rows) if args.format == "csv" else render_json(rows)
    if args.out:
        Path(args.out).write_text(rendered, newline="\n")
    else:
        sys.stdout.write(rendered)

    if args.dump_geometry:
        try:
            dump = geometry_dump(scenario, seeds)
        except PlacementInfeasible as exc:
            print(f"femtosim: infeasible: {exc}", file=sys.stderr)
            return 2
        Path(args.dump_geometry).write_text(json.dumps(dump, indent=2) + "\n", newline="\n")

    return 0


if __name__ == "__main__":
    sys.exit(main())
