"""The three benchmark protocols: grid sweeps, Copeland tournaments, reject curves.

A sweep clusters one graph with one family across a normalized parameter
grid and scores each cut against the ground truth with the adjusted Rand
index.  Families that fail on a cell (log of a nonpositive entry, singular
solve, overflow) contribute ARI = -1 with a recorded error marker; a family
that cannot produce a clustering must lose.

Tournaments reduce each family's grid to one statistic per graph (max or a
percentile), then award +1/-1 per pairwise win/loss.  Reject curves compare
inter-class vs intra-class distances directly, independent of clustering.

The (task, graph) jobs are embarrassingly parallel; results are aggregated
in a fixed sort order so outputs are identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .clustering import adjusted_rand_index, ward_cluster
from .errors import DegenerateLabels, KernelBenchError, ParameterOutOfRange
from .families import DistanceMatrix
from .generators import BlockModelSpec, generate
from .graph import Graph
from .measures import FamilyEvaluator
from .transforms import clustering_sqdist, reject_distance

GRID_MARGIN = 0.02


def parameter_grid(size: int, lo: float = GRID_MARGIN, hi: float = 1.0 - GRID_MARGIN) -> np.ndarray:
    """Evenly spaced normalized parameters, avoiding the open endpoints 0 and 1."""
    if size < 1:
        raise ParameterOutOfRange(f"grid size must be >= 1, got {size}")
    if size == 1:
        return np.array([(lo + hi) / 2.0])
    return np.linspace(lo, hi, size)


@dataclass(frozen=True)
class Statistic:
    """Per-graph summary of a family's grid ARIs: the max or a percentile."""

    kind: str  # "max" | "percentile"
    q: float = 100.0

    @classmethod
    def parse(cls, text: str) -> "Statistic":
        text = text.strip()
        if text == "max":
            return cls("max")
        if text.startswith("percentile:"):
            q = float(text.split(":", 1)[1])
            if not (0.0 <= q <= 100.0):
                raise ParameterOutOfRange(f"percentile must be in [0, 100], got {q}")
            return cls("percentile", q)
        raise ParameterOutOfRange(f"unknown statistic {text!r} (use max or percentile:q)")

    def of(self, values: np.ndarray) -> float:
        if self.kind == "max":
            return float(np.max(values))
        return float(np.percentile(values, self.q))

    def __str__(self) -> str:
        return "max" if self.kind == "max" else f"percentile:{self.q:g}"


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Per-graph, per-parameter ARI table for one family on one task."""

    family: str
    grid: np.ndarray
    ari: np.ndarray  # (n_graphs, len(grid))
    errors: tuple[tuple[int, int, str], ...]  # (graph_index, grid_index, marker)


@dataclass(frozen=True, eq=False)
class TournamentResult:
    families: tuple[str, ...]
    tasks: tuple[str, ...]
    scores: np.ndarray  # (n_families, n_tasks) integer Copeland scores
    totals: np.ndarray  # (n_families,)


@dataclass(frozen=True, eq=False)
class RejectCurve:
    """Cumulative inter-class share (x) vs intra-class share (y), plus AUC."""

    x: np.ndarray
    y: np.ndarray
    auc: float


def sweep(g: Graph, family_name: str, grid, k: int | None = None,
          constants: dict[str, float] | None = None):
    """ARI per grid parameter for one family on one labeled graph.

    Returns (ari_vector, errors); error cells hold -1.0 and a marker of the
    raising error type.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if k is None:
        k = g.num_classes
    evaluator = FamilyEvaluator(g, constants)
    return _sweep_with_evaluator(evaluator, g, family_name, grid, k)


def _sweep_with_evaluator(evaluator, g, family_name, grid, k):
    ari = np.empty(grid.shape[0])
    errors: list[tuple[int, str]] = []
    for j, p in enumerate(grid):
        try:
            measure = evaluator.matrix(family_name, float(p))
            partition = ward_cluster(clustering_sqdist(measure), k)
            ari[j] = adjusted_rand_index(partition, g.labels)
        except KernelBenchError as exc:
            ari[j] = -1.0
            errors.append((j, type(exc).__name__))
    return ari, errors


def _graph_sweep_job(args):
    """One (task, graph) cell: ARI table over all families and grid points."""
    spec, index, families, grid, constants = args
    g = generate(spec, index)
    evaluator = FamilyEvaluator(g, constants)
    k = g.num_classes
    table = np.empty((len(families), grid.shape[0]))
    errors = []
    for fi, name in enumerate(families):
        ari, errs = _sweep_with_evaluator(evaluator, g, name, grid, k)
        table[fi] = ari
        errors.extend((fi, index, j, marker) for j, marker in errs)
    return index, table, errors


def _run_jobs(fn, jobs, workers: int):
    if workers <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def sweep_task(spec: BlockModelSpec, families, grid, n_graphs: int,
               constants: dict[str, float] | None = None,
               workers: int = 1) -> dict[str, SweepResult]:
    """Sweep every family over ``n_graphs`` samples of one block model task."""
    grid = np.asarray(grid, dtype=np.float64)
    families = list(families)
    jobs = [(spec, i, families, grid, constants) for i in range(n_graphs)]
    results = _run_jobs(_graph_sweep_job, jobs, workers)
    results.sort(key=lambda r: r[0])
    tables = np.stack([table for _, table, _ in results], axis=1)  # (fam, graph, grid)
    all_errors = sorted(err for _, _, errs in results for err in errs)
    out = {}
    for fi, name in enumerate(families):
        errs = tuple((gi, j, marker) for efi, gi, j, marker in all_errors if efi == fi)
        out[name] = SweepResult(name, grid, tables[fi], errs)
    return out


def sweep_graphs(graphs, families, grid,
                 constants: dict[str, float] | None = None) -> dict[str, SweepResult]:
    """Sweep every family over an explicit list of labeled graphs."""
    grid = np.asarray(grid, dtype=np.float64)
    families = list(families)
    tables = np.empty((len(families), len(graphs), grid.shape[0]))
    errors: dict[str, list] = {name: [] for name in families}
    for gi, g in enumerate(graphs):
        evaluator = FamilyEvaluator(g, constants)
        for fi, name in enumerate(families):
            ari, errs = _sweep_with_evaluator(evaluator, g, name, grid, g.num_classes)
            tables[fi, gi] = ari
            errors[name].extend((gi, j, marker) for j, marker in errs)
    return {
        name: SweepResult(name, grid, tables[fi], tuple(errors[name]))
        for fi, name in enumerate(families)
    }


def best_of_grid(result: SweepResult) -> tuple[float, float]:
    """(parameter, ARI) maximizing the graph-averaged ARI; ties take the
    smaller parameter."""
    mean = result.ari.mean(axis=0)
    j = int(np.argmax(mean))
    return float(result.grid[j]), float(mean[j])


def best_params_table(tasks, families, graphs_per_task: int, grid,
                      constants: dict[str, float] | None = None,
                      workers: int = 1) -> list[tuple[str, str, float, float]]:
    """Rows of (task, family, best parameter, best graph-averaged ARI)."""
    rows = []
    for spec in tasks:
        sweeps = sweep_task(spec, families, grid, graphs_per_task, constants, workers)
        for name in families:
            p, ari = best_of_grid(sweeps[name])
            rows.append((spec.name, name, p, ari))
    return rows


def copeland_scores(stats: np.ndarray) -> np.ndarray:
    """Copeland scores from a (n_graphs, n_families) statistic table.

    For each graph and unordered family pair, the strictly greater statistic
    earns +1 and the other -1; exact ties score 0 for both.
    """
    diffs = np.sign(stats[:, :, None] - stats[:, None, :])
    return diffs.sum(axis=(0, 2)).astype(np.int64)


def family_statistics(sweeps: dict[str, SweepResult], families,
                      statistic: Statistic) -> np.ndarray:
    """(n_graphs, n_families) per-graph grid statistics."""
    columns = [
        np.apply_along_axis(statistic.of, 1, sweeps[name].ari) for name in families
    ]
    return np.stack(columns, axis=1)


def copeland_tournament(tasks, families, graphs_per_task: int, grid,
                        statistic: Statistic,
                        constants: dict[str, float] | None = None,
                        workers: int = 1) -> TournamentResult:
    """Run the pairwise-comparison tournament over block model tasks."""
    families = tuple(families)
    if len(families) < 2:
        raise ParameterOutOfRange("a tournament needs at least 2 families")
    scores = np.zeros((len(families), len(tasks)), dtype=np.int64)
    for ti, spec in enumerate(tasks):
        sweeps = sweep_task(spec, families, grid, graphs_per_task, constants, workers)
        stats = family_statistics(sweeps, families, statistic)
        scores[:, ti] = copeland_scores(stats)
    return TournamentResult(
        families, tuple(spec.name for spec in tasks), scores, scores.sum(axis=1)
    )


def reject_curve(dist: DistanceMatrix | np.ndarray, labels) -> RejectCurve:
    """Reject curve of a distance matrix against ground-truth classes.

    Walks all unordered node pairs by increasing distance; each distinct
    threshold contributes one point (ties grouped).  AUC is the trapezoid
    area, equal to P(intra < inter) + P(intra = inter)/2.
    """
    m = dist.matrix if isinstance(dist, DistanceMatrix) else np.asarray(dist, float)
    labels = np.asarray(labels)
    n = m.shape[0]
    iu, ju = np.triu_indices(n, 1)
    values = m[iu, ju]
    intra_mask = labels[iu] == labels[ju]
    intra = np.sort(values[intra_mask])
    inter = np.sort(values[~intra_mask])
    if intra.size == 0 or inter.size == 0:
        raise DegenerateLabels("need at least one intra-class and one inter-class pair")
    thresholds = np.unique(values)
    x = np.searchsorted(inter, thresholds, side="right") / inter.size
    y = np.searchsorted(intra, thresholds, side="right") / intra.size
    x = np.concatenate(([0.0], x))
    y = np.concatenate(([0.0], y))
    auc = float(np.trapezoid(y, x))
    return RejectCurve(x, y, auc)


def _graph_reject_job(args):
    """Reject curves for one generated graph at fixed per-family parameters."""
    spec, index, family_params, constants = args
    g = generate(spec, index)
    evaluator = FamilyEvaluator(g, constants)
    curves = []
    for name, p in family_params:
        try:
            dist = reject_distance(evaluator.matrix(name, p))
            curves.append(reject_curve(dist, g.labels))
        except KernelBenchError:
            curves.append(None)
    return index, curves


def reject_experiment(spec: BlockModelSpec, families, grid, n_graphs: int,
                      constants: dict[str, float] | None = None,
                      workers: int = 1):
    """Average reject curves at each family's ARI-optimal grid parameter.

    Returns {family: (best_parameter, averaged RejectCurve)}.  Graphs where
    a family errors are dropped from that family's average.
    """
    sweeps = sweep_task(spec, families, grid, n_graphs, constants, workers)
    family_params = [(name, best_of_grid(sweeps[name])[0]) for name in families]
    jobs = [(spec, i, family_params, constants) for i in range(n_graphs)]
    results = _run_jobs(_graph_reject_job, jobs, workers)
    results.sort(key=lambda r: r[0])
    out = {}
    for fi, (name, p) in enumerate(family_params):
        curves = [cs[fi] for _, cs in results if cs[fi] is not None]
        out[name] = (p, average_reject_curves(curves))
    return out


def average_reject_curves(curves, grid_points: int = 1001) -> RejectCurve:
    """Vertical average of reject curves on a fixed x grid."""
    curves = list(curves)
    if not curves:
        raise DegenerateLabels("cannot average zero reject curves")
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.zeros_like(xs)
    for curve in curves:
        # collapse duplicate x (vertical segments) onto their upper envelope
        cx, cy = curve.x, curve.y
        keep = np.ones(cx.shape[0], dtype=bool)
        keep[:-1] = cx[1:] != cx[:-1]
        ys += np.interp(xs, cx[keep], cy[keep])
    ys /= len(curves)
    return RejectCurve(xs, ys, float(np.trapezoid(ys, xs)))
