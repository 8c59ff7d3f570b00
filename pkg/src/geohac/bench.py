"""Scaling and benchmark harness over the synthetic generators.

Each configuration is measured r times strictly sequentially (one run at a
time, parallel mode off unless requested); both mean and median wall times
are reported. Memory columns are deterministic entry counts (graph storage
plus the HAC allocation accountant peak) converted to MiB at 8 bytes per
entry, so memory scaling claims are reproducible run to run.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .dendro import count_clusters
from .pipeline import DenseInfeasibleError, dense_hclust_oracle, sparse_geo_hclust
from .synth import ScenarioSpec, generate_constant_k, generate_gaussian_mixture


def fit_loglog_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size < 3 or ys.size != xs.size:
        raise ValueError("need at least 3 aligned points")
    if (xs <= 0).any() or (ys <= 0).any():
        raise ValueError("log-log fit requires strictly positive values")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


@dataclass
class BenchRow:
    n: int
    scenario: str
    h_max: float
    reps: int
    graph_s_mean: float
    graph_s_median: float
    hac_s_mean: float
    hac_s_median: float
    total_s_mean: float
    m: int
    k_bar: float
    n_components: int
    max_component: int
    graph_entries: int
    graph_mib: float
    hac_peak_entries: int
    hac_mib: float
    speedup_distances: float  # n^2 / (2m): dense-vs-sparse distance computations
    graph_pct: float
    cluster_counts: tuple
    dense_total_s: float | None = None
    dense_mib: float | None = None
    dense_note: str = ""

    @property
    def mem_entries(self) -> int:
        """Deterministic memory figure: graph storage + HAC peak."""
        return self.graph_entries + self.hac_peak_entries


@dataclass
class BenchReport:
    mode: str
    method: str
    h_max: float
    cut_heights: tuple
    reps: int
    rows: list[BenchRow] = field(default_factory=list)

    def sizes(self) -> list[int]:
        return [r.n for r in self.rows]

    def time_slope(self) -> float:
        return fit_loglog_slope(self.sizes(), [r.total_s_mean for r in self.rows])

    def memory_slope(self) -> float:
        return fit_loglog_slope(self.sizes(), [r.mem_entries for r in self.rows])

    def to_table(self) -> str:
        """Tab-separated table, one row per configuration."""
        cols = [
            "n", "scenario", "h_max", "reps",
            "graph_s_mean", "graph_s_median", "hac_s_mean", "hac_s_median",
            "total_s_mean", "m", "k_bar", "K", "max_component",
            "graph_entries", "graph_mib", "hac_peak_entries", "hac_mib",
            "speedup_distances", "graph_pct",
        ]
        cols += [f"count_h={h:g}" for h in self.cut_heights]
        cols += ["dense_total_s", "dense_mib", "dense_note"]
        lines = ["\t".join(cols)]
        for r in self.rows:
            vals = [
                r.n, r.scenario, f"{r.h_max:g}", r.reps,
                f"{r.graph_s_mean:.6g}", f"{r.graph_s_median:.6g}",
                f"{r.hac_s_mean:.6g}", f"{r.hac_s_median:.6g}",
                f"{r.total_s_mean:.6g}", r.m, f"{r.k_bar:.6g}",
                r.n_components, r.max_component,
                r.graph_entries, f"{r.graph_mib:.6g}",
                r.hac_peak_entries, f"{r.hac_mib:.6g}",
                f"{r.speedup_distances:.17g}", f"{r.graph_pct:.4g}",
            ]
            vals += [c for c in r.cluster_counts]
            vals += [
                "" if r.dense_total_s is None else f"{r.dense_total_s:.6g}",
                "" if r.dense_mib is None else f"{r.dense_mib:.6g}",
                r.dense_note,
            ]
            lines.append("\t".join(str(v) for v in vals))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "mode": self.mode,
            "method": self.method,
            "h_max": self.h_max,
            "cut_heights": list(self.cut_heights),
            "reps": self.reps,
            "rows": [
                {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(r).items()}
                for r in self.rows
            ],
        }
        return json.dumps(payload, indent=2) + "\n"


def run_scaling_experiment(
    sizes,
    *,
    scenario: str | None = None,
    k_target: float | None = None,
    h_max: float,
    method: str = "single",
    cuts=None,
    reps: int = 1,
    dense_guard: int = 25_000,
    seed: int = 0,
    parallel: bool = False,
) -> BenchReport:
    """Measure the pipeline across sizes, with the dense baseline where it fits.

    Exactly one of scenario / k_target selects the generator: a named
    fixed-domain scenario (density grows with n) or the constant-mean-degree
    regime (domain grows as sqrt(n)). Sizes must be ascending; reps >= 1.
    The dense baseline runs only when n <= dense_guard and is otherwise
    recorded as skipped with the memory bill it would have incurred.
    """
    sizes = [int(n) for n in sizes]
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if (scenario is None) == (k_target is None):
        raise ValueError("pass exactly one of scenario= or k_target=")
    heights = [0.2 * h_max, 0.5 * h_max, h_max] if cuts is None else [float(h) for h in cuts]

    if scenario is not None:
        mode = scenario
        make = lambda n: generate_gaussian_mixture(
            ScenarioSpec(name=scenario, n=n, h_max=h_max, seed=seed)
        )
    else:
        mode = f"constant_k{k_target:g}"
        make = lambda n: generate_constant_k(n, k_target, h_max, seed=seed)

    report = BenchReport(mode=mode, method=method, h_max=h_max, cut_heights=tuple(heights), reps=reps)
    for n in sizes:
        ps = make(n)
        graph_times, hac_times = [], []
        result = None
        for _ in range(reps):
            result = sparse_geo_hclust(
                ps, h_max, method, heights, keep_linkages=False, parallel=parallel
            )
            graph_times.append(result.graph_seconds)
            hac_times.append(result.hac_seconds)
        total_mean = statistics.mean(graph_times) + statistics.mean(hac_times)

        dense_s = dense_mib = None
        dense_note = ""
        try:
            t0 = time.perf_counter()
            dense_hclust_oracle(ps, method, heights, guard=dense_guard)
            dense_s = time.perf_counter() - t0
            dense_mib = n * (n - 1) / 2 * 8 / 2**20
        except DenseInfeasibleError as exc:
            dense_note = f"dense skipped: needs {exc.required_mib:.0f} MiB"

        report.rows.append(
            BenchRow(
                n=n,
                scenario=mode,
                h_max=h_max,
                reps=reps,
                graph_s_mean=statistics.mean(graph_times),
                graph_s_median=statistics.median(graph_times),
                hac_s_mean=statistics.mean(hac_times),
                hac_s_median=statistics.median(hac_times),
                total_s_mean=total_mean,
                m=result.m,
                k_bar=result.mean_degree,
                n_components=result.n_components,
                max_component=result.max_component,
                graph_entries=result.graph_entries,
                graph_mib=result.graph_mib,
                hac_peak_entries=result.peak_hac_entries,
                hac_mib=result.peak_hac_mib,
                speedup_distances=n * n / (2.0 * result.m) if result.m else float("inf"),
                graph_pct=100.0 * statistics.mean(graph_times) / total_mean if total_mean else 0.0,
                cluster_counts=tuple(count_clusters(c.labels) for c in result.cuts),
                dense_total_s=dense_s,
                dense_mib=dense_mib,
                dense_note=dense_note,
            )
        )
    return report
