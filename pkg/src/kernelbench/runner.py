"""Run orchestration and persistence.

Each run writes its outputs into the configured directory: a manifest with
the full configuration, fixed-schema CSV tables, and standalone SVG plots
for curve-shaped results.  Re-running an identical configuration reproduces
every CSV byte-for-byte (only the manifest timestamp differs), regardless
of worker count.
"""

from __future__ import annotations

import csv
import datetime
import json
from pathlib import Path

import numpy as np

from . import __version__
from ._accel import USING_NUMBA
from .config import ExperimentConfig, config_to_dict
from .datasets import load_dataset
from .evaluation import (
    SweepResult,
    best_of_grid,
    copeland_scores,
    family_statistics,
    parameter_grid,
    reject_experiment,
    sweep_graphs,
    sweep_task,
)
from .plots import write_curves_svg


def _fnum(v: float) -> str:
    return f"{float(v):.10g}"


def _write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _sweep_rows(task_name: str, families, sweeps: dict[str, SweepResult]):
    rows = []
    for name in families:
        result = sweeps[name]
        markers = {(gi, j): marker for gi, j, marker in result.errors}
        n_graphs = result.ari.shape[0]
        for j, p in enumerate(result.grid):
            for gi in range(n_graphs):
                rows.append((
                    task_name, name, _fnum(p), gi,
                    _fnum(result.ari[gi, j]), markers.get((gi, j), ""),
                ))
    return rows


def _mean_curves(families, sweeps):
    return [(name, sweeps[name].grid, sweeps[name].ari.mean(axis=0)) for name in families]


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "._-" else "_" for c in name)


def run(cfg: ExperimentConfig) -> Path:
    """Execute a configuration and return its output directory."""
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    grid = parameter_grid(cfg.grid_size)

    if cfg.kind == "sweep":
        _run_sweep(cfg, grid, out)
    elif cfg.kind == "tournament":
        _run_tournament(cfg, grid, out)
    elif cfg.kind == "reject":
        _run_reject(cfg, grid, out)
    else:
        _run_datasets(cfg, grid, out)

    manifest = {
        "config": config_to_dict(cfg),
        "version": __version__,
        "backend": "numba" if USING_NUMBA else "numpy",
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return out


def _run_sweep(cfg, grid, out):
    sweep_rows = []
    best_rows = []
    for spec in cfg.tasks:
        sweeps = sweep_task(spec, cfg.families, grid, cfg.graphs_per_task,
                            cfg.constants, cfg.workers)
        sweep_rows.extend(_sweep_rows(spec.name, cfg.families, sweeps))
        for name in cfg.families:
            p, ari = best_of_grid(sweeps[name])
            best_rows.append((spec.name, name, _fnum(p), _fnum(ari)))
        write_curves_svg(
            out / f"sweep_{_safe(spec.name)}.svg",
            _mean_curves(cfg.families, sweeps),
            title=f"mean ARI vs parameter: {spec.name}",
            xlabel="normalized parameter", ylabel="mean ARI",
            y_range=(-1.0, 1.0),
        )
    _write_csv(out / "sweep.csv",
               ("task", "family", "param", "graph_index", "ari", "error"), sweep_rows)
    _write_csv(out / "best_params.csv", ("task", "family", "param", "ari"), best_rows)


def _run_tournament(cfg, grid, out):
    from .evaluation import copeland_tournament

    result = copeland_tournament(cfg.tasks, cfg.families, cfg.graphs_per_task,
                                 grid, cfg.statistic, cfg.constants, cfg.workers)
    rows = []
    for fi, name in enumerate(result.families):
        for ti, task in enumerate(result.tasks):
            rows.append((name, task, int(result.scores[fi, ti])))
    for fi, name in enumerate(result.families):
        rows.append((name, "total", int(result.totals[fi])))
    _write_csv(out / "tournament.csv", ("family", "task", "score"), rows)


def _run_reject(cfg, grid, out):
    reject_rows = []
    best_rows = []
    for spec in cfg.tasks:
        averaged = reject_experiment(spec, cfg.families, grid, cfg.graphs_per_task,
                                     cfg.constants, cfg.workers)
        curves = []
        for name in cfg.families:
            p, curve = averaged[name]
            best_rows.append((spec.name, name, _fnum(p), _fnum(curve.auc)))
            curves.append((name, curve.x, curve.y))
            for x, y in zip(curve.x, curve.y):
                reject_rows.append((name, _fnum(x), _fnum(y)))
        write_curves_svg(
            out / f"reject_{_safe(spec.name)}.svg", curves,
            title=f"average reject curves: {spec.name}",
            xlabel="inter-class share", ylabel="intra-class share",
        )
    _write_csv(out / "reject.csv", ("family", "x", "y_mean"), reject_rows)
    _write_csv(out / "best_params.csv", ("task", "family", "param", "auc"), best_rows)


def _run_datasets(cfg, grid, out):
    sweep_rows = []
    score_table = np.zeros((len(cfg.families), len(cfg.tasks)), dtype=np.int64)
    for ti, name in enumerate(cfg.tasks):
        g = load_dataset(name, cfg.data_root)
        sweeps = sweep_graphs([g], cfg.families, grid, cfg.constants)
        sweep_rows.extend(_sweep_rows(name, cfg.families, sweeps))
        stats = family_statistics(sweeps, cfg.families, cfg.statistic)
        score_table[:, ti] = copeland_scores(stats)
    rows = []
    for fi, fam in enumerate(cfg.families):
        for ti, task in enumerate(cfg.tasks):
            rows.append((fam, task, int(score_table[fi, ti])))
    for fi, fam in enumerate(cfg.families):
        rows.append((fam, "total", int(score_table[fi].sum())))
    _write_csv(out / "tournament.csv", ("family", "task", "score"), rows)
    _write_csv(out / "sweep.csv",
               ("task", "family", "param", "graph_index", "ari", "error"), sweep_rows)
