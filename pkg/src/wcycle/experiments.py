"""Batch pipelines: statistics, indicator scores, evaluation and spreading.

Every command writes comma-separated, header-first, LF-terminated UTF-8
CSV files under ``config.out_dir``.  Floats are written with ``repr`` so
identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from . import __version__
from .centrality import ScoreVector, compute_indicators, top_k
from .config import ExperimentConfig, config_hash
from .cycles import CycleBasis, cycle_basis
from .datasets import sha256_file
from .epidemic import WsirParams, epidemic_threshold, wsir_average
from .errors import ThresholdUndefinedError, WCycleError
from .graph import IngestOptions, WeightedGraph, graph_stats, read_graph
from .metrics import (
    activation_cost,
    avg_jaccard_against_others,
    avg_structural_similarity,
    average_correlation_matrix,
    correlation_matrix,
    dispersion,
    individuation,
    individuation_fraction,
    shared_rank_frequency,
)

__all__ = ["Study", "StageError", "cmd_stats", "cmd_centrality", "cmd_evaluate", "cmd_spread",
           "cmd_reproduce"]

log = logging.getLogger(__name__)


class StageError(WCycleError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")


def _fmt(x) -> str:
    if x is None:
        return "nan"
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def _write_csv(path: Path, header: list[str], rows: Iterable[Iterable]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
    return path


@dataclass
class Study:
    """Loaded networks plus lazily computed, cached indicator scores."""

    config: ExperimentConfig
    graphs: dict[str, WeightedGraph] = field(default_factory=dict)
    _scores: dict = field(default_factory=dict, repr=False)
    _bases: dict = field(default_factory=dict, repr=False)
    written: list[Path] = field(default_factory=list)

    @property
    def out_dir(self) -> Path:
        return Path(self.config.out_dir)

    def load(self) -> "Study":
        for entry in self.config.datasets:
            if entry.name in self.graphs:
                continue
            path = Path(entry.path)
            if not path.is_file():
                raise FileNotFoundError(f"dataset {entry.name!r}: cannot read {path}")
            opts = IngestOptions(extra_columns=entry.extra_columns)
            self.graphs[entry.name] = read_graph(path, entry.format, opts)
            log.info("loaded %s: %r", entry.name, self.graphs[entry.name])
        return self

    def basis(self, name: str) -> CycleBasis:
        if name not in self._bases:
            self._bases[name] = cycle_basis(self.graphs[name])
        return self._bases[name]

    def scores(self, name: str) -> dict[str, ScoreVector]:
        if name not in self._scores:
            cfg = self.config
            basis = self.basis(name) if "WCycle" in cfg.indicators else None
            self._scores[name] = compute_indicators(
                self.graphs[name], cfg.indicators, basis=basis,
                coreness_params=(cfg.coreness_alpha, cfg.coreness_beta))
        return self._scores[name]

    def _emit(self, rel: str, header, rows) -> Path:
        path = _write_csv(self.out_dir / rel, header, rows)
        self.written.append(path)
        return path


# -- commands --------------------------------------------------------------------

def cmd_stats(study: Study) -> Path:
    """Summary table: network, N, E, <k>, <w>, D, C (+ <k^2>, components)."""
    study.load()
    rows = []
    for name, g in study.graphs.items():
        st = graph_stats(g)
        rows.append(st.table_row(name) + [st.mean_sq_degree, st.components])
    return study._emit("stats.csv", ["network", "N", "E", "mean_degree", "mean_weight", "density",
                                     "clustering", "mean_sq_degree", "components"], rows)


def cmd_centrality(study: Study) -> list[Path]:
    """One CSV per network: node label, a score column and a rank column per indicator."""
    study.load()
    paths = []
    for name, g in study.graphs.items():
        vecs = study.scores(name)
        names = list(vecs)
        ranks = {k: v.ranks() for k, v in vecs.items()}
        rows = ([g.labels[v]] + [vecs[k].scores[v] for k in names] + [ranks[k][v] for k in names]
                for v in g.nodes())
        paths.append(study._emit(f"centrality/{name}.csv",
                                 ["node"] + names + [f"rank_{k}" for k in names], rows))
    return paths


def _matrix_rows(m):
    return ([m.names[i]] + [float(x) for x in m.values[i]] for i in range(len(m.names)))


def cmd_evaluate(study: Study) -> list[Path]:
    """Correlation, overlap, individuation, shared ranks, dispersion, similarity, cost."""
    study.load()
    cfg = study.config
    names = list(cfg.indicators)
    paths = []
    matrices = []
    overlap, indiv, shared, disp, simil, cost = [], [], [], [], [], []
    for net, g in study.graphs.items():
        vecs = study.scores(net)
        n = g.number_of_nodes
        if n >= 2:
            m = correlation_matrix(vecs, cfg.tau_variant)
            matrices.append(m)
            paths.append(study._emit(f"correlation/{net}.csv", ["indicator"] + names,
                                     _matrix_rows(m)))
        if len(names) >= 2:
            overlap.append([net] + [avg_jaccard_against_others(k, vecs, cfg.overlap_fraction)
                                    for k in names])
        f = individuation_fraction(n, cfg.individuation_small, cfg.individuation_large,
                                   cfg.individuation_cutoff)
        indiv.append([net, f] + [individuation(vecs[k], f) for k in names])
        for k in names:
            for rank, count in shared_rank_frequency(vecs[k], f).items():
                shared.append([net, k, rank, count])
        for k in names:
            for c in cfg.fractions:
                seeds = top_k(vecs[k], c)
                if seeds.size >= 2:
                    disp.append([net, k, c, seeds.size, dispersion(g, seeds)])
                    simil.append([net, k, c, seeds.size, avg_structural_similarity(g, seeds)])
                else:
                    disp.append([net, k, c, seeds.size, None])
                    simil.append([net, k, c, seeds.size, None])
            for c in cfg.cost_fractions:
                seeds = top_k(vecs[k], c)
                cost.append([net, k, c, seeds.size, cfg.cost_binning,
                             activation_cost(g, seeds, cfg.cost_binning)])
    if matrices:
        paths.append(study._emit("correlation_average.csv", ["indicator"] + names,
                                 _matrix_rows(average_correlation_matrix(matrices))))
    paths.append(study._emit("overlap.csv", ["network"] + [f"J_{k}" for k in names], overlap))
    paths.append(study._emit("individuation.csv",
                             ["network", "top_fraction"] + [f"gamma_{k}" for k in names], indiv))
    paths.append(study._emit("shared_rank.csv", ["network", "indicator", "rank", "count"], shared))
    paths.append(study._emit("dispersion.csv", ["network", "indicator", "c", "seeds", "d_c"], disp))
    paths.append(study._emit("similarity.csv", ["network", "indicator", "c", "seeds", "J_c"], simil))
    paths.append(study._emit("cost.csv", ["network", "indicator", "c", "seeds", "binning",
                                          "lambda"], cost))
    return paths


_SPREAD_HEADER = ["network", "indicator", "c", "seeds", "beta_multiplier", "beta", "runs",
                  "mean_R", "std_R"]


def cmd_spread(study: Study) -> list[Path]:
    """Spreading sweeps.

    ``spread_fraction.csv`` varies c at ``fixed_multiplier``;
    ``spread_beta.csv`` varies the multiplier at ``fixed_fraction``;
    ``spread_cost.csv`` covers ``cost_fractions`` at ``fixed_multiplier``.
    """
    study.load()
    cfg = study.config
    by_fraction, by_beta, by_cost, raw = [], [], [], []
    for net, g in study.graphs.items():
        try:
            beta_c = epidemic_threshold(g)
        except ThresholdUndefinedError as exc:
            log.warning("skipping %s: %s", net, exc)
            continue
        vecs = study.scores(net)
        cache: dict = {}

        def cell(k: str, c: float, mult: float, scenario: str, out: list):
            seeds = top_k(vecs[k], c)
            key = (k, seeds.size, mult)
            if key not in cache:
                params = WsirParams(beta=mult * beta_c, mu=cfg.mu, max_steps=cfg.max_steps,
                                    seed=cfg.seed, variant=cfg.sir_variant)
                cache[key] = wsir_average(g, seeds, params, cfg.runs, threads=cfg.threads)
            res = cache[key]
            out.append([net, k, c, seeds.size, mult, mult * beta_c, res.runs, res.mean, res.std])
            if cfg.dump_runs:
                raw.extend([net, scenario, k, c, mult, r, size] for r, size in enumerate(res.sizes))

        for k in cfg.indicators:
            for c in cfg.fractions:
                cell(k, c, cfg.fixed_multiplier, "fraction", by_fraction)
            for mult in cfg.beta_multipliers:
                cell(k, cfg.fixed_fraction, mult, "beta", by_beta)
            for c in cfg.cost_fractions:
                cell(k, c, cfg.fixed_multiplier, "cost", by_cost)
    paths = [
        study._emit("spread_fraction.csv", _SPREAD_HEADER, by_fraction),
        study._emit("spread_beta.csv", _SPREAD_HEADER, by_beta),
        study._emit("spread_cost.csv", _SPREAD_HEADER, by_cost),
    ]
    if cfg.dump_runs:
        paths.append(study._emit("spread_runs.csv", ["network", "scenario", "indicator", "c",
                                                     "beta_multiplier", "run", "R"], raw))
    return paths


def cmd_reproduce(study: Study) -> Path:
    """All stages in order, then ``manifest.json``.

    The manifest records the configuration hash, dataset checksums, the tool
    version and a checksum of every file written.
    """
    missing = [d.name for d in study.config.datasets if not Path(d.path).is_file()]
    if missing:
        raise StageError("datasets", FileNotFoundError(f"missing dataset(s): {', '.join(missing)}"))
    stages = [("stats", cmd_stats), ("centrality", cmd_centrality),
              ("evaluate", cmd_evaluate), ("spread", cmd_spread)]
    for stage, fn in stages:
        try:
            fn(study)
        except Exception as exc:
            raise StageError(stage, exc) from exc
    out = study.out_dir
    manifest = {
        "tool": "wcycle",
        "version": __version__,
        "config_hash": config_hash(study.config),
        "master_seed": study.config.seed,
        "datasets": [
            {
                "name": d.name,
                "file": Path(d.path).name,
                "sha256": sha256_file(d.path),
                "N": study.graphs[d.name].number_of_nodes,
                "E": study.graphs[d.name].number_of_edges,
                "components": study.basis(d.name).n_components,
            }
            for d in study.config.datasets
        ],
        "outputs": [
            {"path": p.relative_to(out).as_posix(), "sha256": sha256_file(p)}
            for p in sorted(set(study.written))
        ],
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
