"""Evaluation measures for indicators and the seed groups they select."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .centrality import ScoreVector, SeedSet, top_k, seed_count
from .errors import UndefinedMetricError
from .graph import WeightedGraph, hop_distances

__all__ = [
    "CorrelationMatrix",
    "kendall_tau",
    "correlation_matrix",
    "average_correlation_matrix",
    "jaccard_sets",
    "avg_jaccard_against_others",
    "individuation",
    "shared_rank_frequency",
    "dispersion",
    "structural_similarity",
    "avg_structural_similarity",
    "activation_cost",
    "COST_BINNINGS",
    "TAU_VARIANTS",
    "individuation_fraction",
]

TAU_VARIANTS = ("paper", "tie-corrected")
COST_BINNINGS = ("sqrt-n", "exact")


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


# -- rank correlation ------------------------------------------------------------

def _scores(x) -> np.ndarray:
    return np.asarray(x.scores if isinstance(x, ScoreVector) else x, dtype=float)


def kendall_tau(x, y, variant: str = "paper") -> float:
    """Kendall rank correlation between two score vectors over the same nodes.

    ``variant="paper"`` returns ``2 (Nc - Nd) / (N (N - 1))`` where pairs tied
    in either vector are neither concordant nor discordant.
    ``variant="tie-corrected"`` divides ``Nc - Nd`` by
    ``sqrt((n0 - n1)(n0 - n2))`` instead (tau-b); it is NaN when one of the
    vectors is constant.
    """
    a, b = _scores(x), _scores(y)
    if a.shape != b.shape:
        raise ValueError("score vectors cover different node sets")
    n = a.size
    if n < 2:
        raise ValueError("need at least two nodes")
    if variant not in TAU_VARIANTS:
        raise ValueError(f"variant must be one of {TAU_VARIANTS}")
    s = 0
    tied_a = tied_b = 0
    for i in range(n - 1):
        da = np.sign(a[i + 1:] - a[i])
        db = np.sign(b[i + 1:] - b[i])
        s += int(np.dot(da, db))
        tied_a += int(np.count_nonzero(da == 0))
        tied_b += int(np.count_nonzero(db == 0))
    n0 = n * (n - 1) // 2
    if variant == "paper":
        return s / n0
    denom = math.sqrt((n0 - tied_a) * (n0 - tied_b))
    return s / denom if denom > 0 else math.nan


@dataclass(frozen=True)
class CorrelationMatrix:
    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (len(self.names), len(self.names)):
            raise ValueError("matrix shape does not match the indicator list")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "names", tuple(self.names))

    def __getitem__(self, key: tuple[str, str]) -> float:
        i, j = (self.names.index(k) for k in key)
        return float(self.values[i, j])


def correlation_matrix(vectors: Mapping[str, ScoreVector], variant: str = "paper") -> CorrelationMatrix:
    names = tuple(vectors)
    m = np.eye(len(names))
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            m[i, j] = m[j, i] = kendall_tau(vectors[names[i]], vectors[names[j]], variant)
    return CorrelationMatrix(names, m)


def average_correlation_matrix(matrices: Sequence[CorrelationMatrix]) -> CorrelationMatrix:
    """Element-wise mean of matrices that share one indicator list."""
    if not matrices:
        raise ValueError("no matrices to average")
    names = matrices[0].names
    for m in matrices[1:]:
        if m.names != names:
            raise ValueError(f"indicator lists differ: {names} vs {m.names}")
    stack = np.stack([m.values for m in matrices])
    return CorrelationMatrix(names, stack.mean(axis=0))


# -- overlap ---------------------------------------------------------------------

def jaccard_sets(a: Iterable[int], b: Iterable[int]) -> float:
    a, b = set(a), set(b)
    union = a | b
    if not union:
        raise UndefinedMetricError("Jaccard similarity of two empty sets")
    return len(a & b) / len(union)


def avg_jaccard_against_others(target: str, vectors: Mapping[str, ScoreVector],
                               fraction: float) -> float:
    """Mean Jaccard overlap between ``target``'s top set and every other indicator's."""
    if target not in vectors:
        raise KeyError(target)
    others = [k for k in vectors if k != target]
    if not others:
        raise ValueError("need at least two indicators")
    mine = top_k(vectors[target], fraction).members
    return math.fsum(jaccard_sets(mine, top_k(vectors[k], fraction).members)
                     for k in others) / len(others)


# -- individuation -----------------------------------------------------------------

def _top_scores(sv: ScoreVector, fraction: float) -> list[float]:
    k = seed_count(fraction, len(sv))
    return [_round12(sv.scores[v]) for v in sv.ranking[:k]]


def individuation(sv: ScoreVector, fraction: float) -> float:
    """Share of the top ``ceil(fraction N)`` nodes whose score no other top node shares.

    Scores are compared after rounding to 12 significant digits.
    """
    top = _top_scores(sv, fraction)
    counts = Counter(top)
    return sum(1 for s in top if counts[s] == 1) / len(top)


def shared_rank_frequency(sv: ScoreVector, fraction: float) -> dict[int, int]:
    """Dense rank -> number of top nodes holding that rank."""
    top = _top_scores(sv, fraction)
    hist: dict[int, int] = {}
    rank = 0
    prev = None
    for s in top:
        if s != prev:
            rank += 1
            prev = s
        hist[rank] = hist.get(rank, 0) + 1
    return hist


def individuation_fraction(n: int, small: float = 0.5, large: float = 0.3,
                           cutoff: int = 500) -> float:
    """Top fraction used for individuation: ``small`` below ``cutoff`` nodes."""
    return small if n < cutoff else large


# -- dispersion and structural similarity ---------------------------------------------

def _members(seeds) -> list[int]:
    return list(seeds.members if isinstance(seeds, SeedSet) else seeds)


def dispersion(g: WeightedGraph, seeds) -> float | None:
    """Mean hop distance over ordered seed pairs that are connected.

    Returns None when no pair of seeds lies in a common component.
    """
    members = _members(seeds)
    if len(members) < 2:
        raise ValueError("dispersion needs at least two seeds")
    total = 0
    pairs = 0
    for i in members:
        dist = hop_distances(g, i)
        for j in members:
            if j != i and dist[j] is not None:
                total += dist[j]
                pairs += 1
    return total / pairs if pairs else None


def structural_similarity(g: WeightedGraph, i: int, j: int) -> float:
    """Jaccard overlap of the neighbour sets of ``i`` and ``j``."""
    a, b = set(g.neighbors(i)), set(g.neighbors(j))
    if i == j:
        raise ValueError("structural similarity needs two distinct nodes")
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def avg_structural_similarity(g: WeightedGraph, seeds) -> float:
    members = _members(seeds)
    c = len(members)
    if c < 2:
        raise ValueError("average structural similarity needs at least two seeds")
    total = math.fsum(structural_similarity(g, members[a], members[b])
                      for a in range(c) for b in range(a + 1, c))
    return 2.0 * total / (c * (c - 1))


# -- cost -------------------------------------------------------------------------

def strength_probabilities(strengths: np.ndarray, binning: str = "sqrt-n") -> np.ndarray:
    """Empirical probability of each node's strength class.

    ``"sqrt-n"``: ``ceil(sqrt(N))`` equal-width bins over ``[min, max]``.
    ``"exact"``: classes of identical strength (12 significant digits).
    """
    s = np.asarray(strengths, dtype=float)
    n = s.size
    if binning == "exact":
        keys = [_round12(x) for x in s]
        counts = Counter(keys)
        return np.array([counts[k] / n for k in keys])
    if binning == "sqrt-n":
        lo, hi = float(s.min()), float(s.max())
        if hi <= lo:
            return np.ones(n)
        bins = math.ceil(math.sqrt(n))
        idx = np.floor((s - lo) / (hi - lo) * bins).astype(np.int64)
        idx = np.clip(idx, 0, bins - 1)
        counts = np.bincount(idx, minlength=bins)
        return counts[idx] / n
    raise ValueError(f"binning must be one of {COST_BINNINGS}")


def activation_cost(g: WeightedGraph, seeds, binning: str = "sqrt-n") -> float:
    """Total activation cost ``sum s / p(s)`` over the seeds."""
    members = _members(seeds)
    if not members:
        raise ValueError("activation cost of an empty seed set")
    s = g.strengths()
    p = strength_probabilities(s, binning)
    return math.fsum(s[v] / p[v] for v in members)
