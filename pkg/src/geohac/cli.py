"""Command-line interface: cluster, verify, graph, bench, gen.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
input-data error, 4 dense baseline refused by its memory guard.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .bench import run_scaling_experiment
from .dataio import load_points, parse_cut_list, parse_km, write_labels, write_points_csv
from .dendro import count_clusters
from .graph import build_distance_graph, write_edge_list
from .linkage import LINKAGES
from .pipeline import DenseInfeasibleError, sparse_geo_hclust, verify_exactness
from .synth import SCENARIOS, ScenarioSpec, generate_constant_k, generate_gaussian_mixture

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4


@dataclass
class RunConfig:
    """Resolved parameters of one CLI invocation."""

    subcommand: str
    input_path: str | None
    input_format: str
    h_max: float
    method: str
    cuts: list
    output: str | None
    graph_output: str | None
    parallel: bool
    seed: int


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geohac",
        description="Exact hierarchical clustering of spatial points via a sparse "
        "radius-bounded distance graph. All distances are km ('m'/'km' suffixes accepted).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="points file (csv or geojson)")
        p.add_argument("--format", default="auto", choices=["auto", "csv", "geojson"])

    p = sub.add_parser("cluster", help="cluster a points file and write labels per cut")
    add_input(p)
    p.add_argument("--h-max", required=True, help="graph radius, km")
    p.add_argument("--linkage", default="single", choices=list(LINKAGES))
    p.add_argument("--cuts", required=True, help="comma-separated cut heights, km")
    p.add_argument("--out", required=True, help="labels output file")
    p.add_argument("--graph-out", default=None, help="also dump the edge list here")
    p.add_argument("--parallel", action="store_true", help="process components concurrently")

    p = sub.add_parser("verify", help="check sparse output against the dense baseline")
    p.add_argument("--input", default=None, help="points file; omit to use --scenario")
    p.add_argument("--format", default="auto", choices=["auto", "csv", "geojson"])
    p.add_argument("--scenario", default=None, choices=sorted(SCENARIOS))
    p.add_argument("--n", type=int, default=2000, help="scenario size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--h-max", required=True)
    p.add_argument("--linkage", default=None, choices=list(LINKAGES), help="default: all four")
    p.add_argument("--cuts", default=None, help="default: 0.2, 0.5 and 1.0 of h-max")
    p.add_argument("--dense-guard", type=int, default=50_000)

    p = sub.add_parser("graph", help="emit the sparse distance graph as an edge list")
    add_input(p)
    p.add_argument("--h-max", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="run the scaling experiment and write a report")
    p.add_argument("--scenario", default=None, choices=sorted(SCENARIOS))
    p.add_argument("--k-target", type=float, default=None, help="constant mean-degree mode")
    p.add_argument("--sizes", required=True, help="comma-separated ascending sizes")
    p.add_argument("--h-max", required=True)
    p.add_argument("--linkage", default="single", choices=list(LINKAGES))
    p.add_argument("--cuts", default=None)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--dense-guard", type=int, default=25_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out", required=True, help="TSV report path")
    p.add_argument("--json", default=None, help="also write the report as JSON")

    p = sub.add_parser("gen", help="emit a synthetic dataset")
    p.add_argument("--scenario", default=None, choices=sorted(SCENARIOS))
    p.add_argument("--k-target", type=float, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h-max", required=True)
    p.add_argument("--domain", default=None, help="scenario domain side, km (default 500)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    return parser


def _cmd_cluster(args, parser) -> int:
    h_max = parse_km(args.h_max)
    cuts = parse_cut_list(args.cuts)
    bad = [h for h in cuts if h > h_max]
    if bad:
        parser.error(f"cut height {bad[0]:g} exceeds --h-max {h_max:g}")
    ps = load_points(args.input, args.format)
    result = sparse_geo_hclust(
        ps, h_max, args.linkage, cuts, parallel=args.parallel, keep_linkages=False
    )
    write_labels(args.out, result.cuts)
    if args.graph_out:
        write_edge_list(args.graph_out, build_distance_graph(ps, h_max))
    counts = ", ".join(f"h={c.h:g}: {count_clusters(c.labels)}" for c in result.cuts)
    print(f"n={ps.n} metric={ps.metric} h_max={h_max:g} linkage={args.linkage}")
    print(
        f"edges m={result.m} mean_degree={result.mean_degree:.2f} "
        f"components K={result.n_components} largest={result.max_component}"
    )
    print(f"clusters: {counts}")
    print(
        f"graph {result.graph_seconds:.3f}s ({result.graph_mib:.2f} MiB), "
        f"hac {result.hac_seconds:.3f}s (peak {result.peak_hac_mib:.2f} MiB)"
    )
    print(f"labels written to {args.out}")
    return EXIT_OK


def _cmd_verify(args, parser) -> int:
    if (args.input is None) == (args.scenario is None):
        parser.error("pass exactly one of --input or --scenario")
    h_max = parse_km(args.h_max)
    cuts = parse_cut_list(args.cuts) if args.cuts else [0.2 * h_max, 0.5 * h_max, h_max]
    bad = [h for h in cuts if h > h_max]
    if bad:
        parser.error(f"cut height {bad[0]:g} exceeds --h-max {h_max:g}")
    if args.input is not None:
        ps = load_points(args.input, args.format)
    else:
        ps = generate_gaussian_mixture(
            ScenarioSpec(name=args.scenario, n=args.n, h_max=h_max, seed=args.seed)
        )
    methods = [args.linkage] if args.linkage else list(LINKAGES)
    report = verify_exactness(ps, h_max, methods, cuts, guard=args.dense_guard)
    print(report.summary())
    if report.all_pass:
        print(f"all {len(report.rows)} checks passed: sparse == dense")
        return EXIT_OK
    failed = sum(not r.passed for r in report.rows)
    print(f"{failed} of {len(report.rows)} checks FAILED", file=sys.stderr)
    return EXIT_VERIFY_FAIL


def _cmd_graph(args, parser) -> int:
    h_max = parse_km(args.h_max)
    ps = load_points(args.input, args.format)
    g = build_distance_graph(ps, h_max)
    write_edge_list(args.out, g)
    print(f"n={ps.n} m={g.m} mean_degree={g.mean_degree:.2f} -> {args.out}")
    return EXIT_OK


def _cmd_bench(args, parser) -> int:
    if (args.scenario is None) == (args.k_target is None):
        parser.error("pass exactly one of --scenario or --k-target")
    h_max = parse_km(args.h_max)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    cuts = parse_cut_list(args.cuts) if args.cuts else None
    report = run_scaling_experiment(
        sizes,
        scenario=args.scenario,
        k_target=args.k_target,
        h_max=h_max,
        method=args.linkage,
        cuts=cuts,
        reps=args.reps,
        dense_guard=args.dense_guard,
        seed=args.seed,
        parallel=args.parallel,
    )
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(report.to_table())
    if args.json:
        with open(args.json, "w", encoding="ascii") as fh:
            fh.write(report.to_json())
    for row in report.rows:
        print(
            f"n={row.n} total={row.total_s_mean:.3f}s m={row.m} k_bar={row.k_bar:.1f} "
            f"K={row.n_components} mem={(row.mem_entries * 8 / 2**20):.1f} MiB "
            f"speedup_distances={row.speedup_distances:.1f}"
        )
    print(f"report written to {args.out}")
    return EXIT_OK


def _cmd_gen(args, parser) -> int:
    if (args.scenario is None) == (args.k_target is None):
        parser.error("pass exactly one of --scenario or --k-target")
    h_max = parse_km(args.h_max)
    if args.scenario:
        spec = ScenarioSpec(
            name=args.scenario,
            n=args.n,
            h_max=h_max,
            seed=args.seed,
            **({"domain_km": parse_km(args.domain)} if args.domain else {}),
        )
        ps = generate_gaussian_mixture(spec)
    else:
        ps = generate_constant_k(args.n, args.k_target, h_max, seed=args.seed)
    write_points_csv(args.out, ps)
    print(f"wrote {ps.n} points to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "cluster": _cmd_cluster,
    "verify": _cmd_verify,
    "graph": _cmd_graph,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except DenseInfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
