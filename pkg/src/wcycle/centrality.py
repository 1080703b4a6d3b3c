"""Node importance indicators and top-fraction seed selection.

Every indicator maps a :class:`~wcycle.graph.WeightedGraph` to a
:class:`ScoreVector`.  Rankings order nodes by descending score and break
ties by ascending node id, which makes seed sets reproducible.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cycles import CycleBasis, cycle_basis
from .graph import WeightedGraph, spanning_forest, weighted_distances

__all__ = [
    "ScoreVector",
    "SeedSet",
    "wcycle",
    "weighted_degree",
    "weighted_h_index",
    "weighted_coreness",
    "weighted_betweenness",
    "top_k",
    "seed_count",
    "INDICATORS",
    "DEFAULT_INDICATORS",
    "register_indicator",
    "compute_indicators",
]


@dataclass(frozen=True)
class ScoreVector:
    """Per-node scores of one indicator together with their ranking."""

    name: str
    scores: tuple[float, ...]
    ranking: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        scores = tuple(float(s) for s in self.scores)
        for v, s in enumerate(scores):
            if not math.isfinite(s) or s < 0:
                raise ValueError(f"{self.name}: score of node {v} is {s}, expected finite >= 0")
        object.__setattr__(self, "scores", scores)
        ranking = sorted(range(len(scores)), key=lambda v: (-scores[v], v))
        object.__setattr__(self, "ranking", tuple(ranking))

    def __len__(self) -> int:
        return len(self.scores)

    def __getitem__(self, v: int) -> float:
        return self.scores[v]

    def ranks(self) -> list[int]:
        """Position (1-based) of each node in the ranking."""
        pos = [0] * len(self.scores)
        for r, v in enumerate(self.ranking, start=1):
            pos[v] = r
        return pos


@dataclass(frozen=True)
class SeedSet:
    fraction: float
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


# -- WCycle ------------------------------------------------------------------

def wcycle(g: WeightedGraph, basis: CycleBasis | None = None) -> ScoreVector:
    """Cycle-participation score weighted by cycle weight sums.

    A node's score is the sum of the weight sums of all basis cycles it lies
    on, divided by the number of cycles in the basis.  Nodes on no basis
    cycle, and every node of an acyclic graph, score 0.
    """
    if basis is None:
        basis = cycle_basis(g, spanning_forest(g))
    size = basis.size
    if size == 0:
        return ScoreVector("WCycle", [0.0] * g.number_of_nodes)
    sums = [c.weight_sum for c in basis.cycles]
    scores = [math.fsum(sums[k] for k in ix) / size for ix in basis.node_index]
    return ScoreVector("WCycle", scores)


# -- benchmarks --------------------------------------------------------------

def weighted_degree(g: WeightedGraph) -> ScoreVector:
    """Node strength, i.e. the sum of incident edge weights."""
    return ScoreVector("WD", g.strengths())


def _h_operator(pairs: Sequence[tuple[float, float, int]]) -> float:
    """Largest ``y`` with total edge weight to neighbours of strength >= y at least ``y``.

    ``pairs`` are ``(edge weight, neighbour strength, neighbour id)``.
    """
    best = 0.0
    cum = 0.0
    for w, s, _ in sorted(pairs, key=lambda p: (-p[1], p[2])):
        cum += w
        best = max(best, min(cum, s))
    return best


def weighted_h_index(g: WeightedGraph) -> ScoreVector:
    """Weighted h-index over ``(edge weight, neighbour strength)`` pairs.

    Neighbours are sorted by strength (descending, ties by id) and the score
    is ``max_k min(W_k, s_k)`` where ``W_k`` is the cumulative edge weight of
    the first ``k`` neighbours and ``s_k`` the strength of the k-th.  With
    unit weights this is the ordinary h-index of neighbour degrees.
    """
    s = g.strengths()
    scores = []
    for v in g.nodes():
        adj = g.adjacency(v)
        scores.append(_h_operator([(adj[j], s[j], j) for j in g.neighbors(v)]))
    return ScoreVector("WH", scores)


def weighted_coreness(g: WeightedGraph, alpha: float = 1.0, beta: float = 1.0) -> ScoreVector:
    """Generalised core decomposition over ``k' = (k^alpha * s^beta)^(1/(alpha+beta))``.

    Nodes are peeled one at a time, always removing the node with the
    smallest current ``k'`` (ties by ascending id) and recomputing degree
    and strength on the residual graph.  A node's coreness is the running
    maximum of the removal values up to and including its own removal.
    """
    if alpha < 0 or beta < 0 or alpha + beta <= 0:
        raise ValueError("alpha and beta must be non-negative with a positive sum")
    n = g.number_of_nodes
    expo = 1.0 / (alpha + beta)
    deg = [g.degree(v) for v in range(n)]
    stren = list(g.strengths())

    def kprime(v: int) -> float:
        if deg[v] == 0:
            return 0.0
        return (deg[v] ** alpha * max(stren[v], 0.0) ** beta) ** expo

    current = [kprime(v) for v in range(n)]
    heap = [(current[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    core = [0.0] * n
    level = 0.0
    while heap:
        val, v = heapq.heappop(heap)
        if removed[v] or val != current[v]:
            continue
        removed[v] = True
        level = max(level, val)
        core[v] = level
        adj = g.adjacency(v)
        for u in g.neighbors(v):
            if removed[u]:
                continue
            deg[u] -= 1
            stren[u] -= adj[u]
            if deg[u] == 0:
                stren[u] = 0.0
            current[u] = kprime(u)
            heapq.heappush(heap, (current[u], u))
    return ScoreVector("WC", core)


def weighted_betweenness(g: WeightedGraph) -> ScoreVector:
    """Shortest-path betweenness with edge length ``1/w``.

    Sums, over unordered endpoint pairs not involving the node, the share
    of weighted shortest paths that pass through it.  No normalisation.
    Uses per-source path counting with dependency accumulation.
    """
    n = g.number_of_nodes
    bc = [0.0] * n
    for s in range(n):
        sp = weighted_distances(g, s)
        delta = [0.0] * n
        for w in reversed(sp.order):
            coeff = (1.0 + delta[w]) / sp.count[w]
            for v in sp.preds[w]:
                delta[v] += sp.count[v] * coeff
            if w != s:
                bc[w] += delta[w]
    return ScoreVector("WBC", [max(0.0, b / 2.0) for b in bc])


# -- seed selection ------------------------------------------------------------

def seed_count(fraction: float, n: int) -> int:
    """``ceil(fraction * n)``, robust to decimal fractions such as 0.07."""
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    x = fraction * n
    k = round(x)
    if abs(x - k) > 1e-9 * max(1.0, x):
        k = math.ceil(x)
    return max(1, min(n, int(k)))


def top_k(sv: ScoreVector, fraction: float) -> SeedSet:
    """The first ``ceil(fraction * N)`` nodes of ``sv``'s ranking."""
    k = seed_count(fraction, len(sv))
    return SeedSet(fraction, sv.ranking[:k])


# -- registry ------------------------------------------------------------------

Indicator = Callable[..., ScoreVector]

INDICATORS: dict[str, Indicator] = {
    "WCycle": wcycle,
    "WD": weighted_degree,
    "WH": weighted_h_index,
    "WC": weighted_coreness,
    "WBC": weighted_betweenness,
}

DEFAULT_INDICATORS = ("WD", "WH", "WC", "WBC", "WCycle")


def register_indicator(name: str, fn: Callable[[WeightedGraph], Iterable[float]]) -> None:
    """Add an extra indicator; ``fn(g)`` returns one non-negative score per node."""
    if name in INDICATORS:
        raise ValueError(f"indicator {name!r} already registered")

    def wrapped(g: WeightedGraph) -> ScoreVector:
        return ScoreVector(name, list(fn(g)))

    INDICATORS[name] = wrapped


def compute_indicators(g: WeightedGraph, names: Iterable[str] = DEFAULT_INDICATORS,
                       basis: CycleBasis | None = None,
                       coreness_params: tuple[float, float] = (1.0, 1.0)) -> dict[str, ScoreVector]:
    """Evaluate the named indicators, building the cycle basis at most once."""
    out = {}
    for name in names:
        if name not in INDICATORS:
            raise KeyError(f"unknown indicator {name!r}; known: {sorted(INDICATORS)}")
        if name == "WCycle":
            if basis is None:
                basis = cycle_basis(g)
            out[name] = wcycle(g, basis)
        elif name == "WC":
            out[name] = weighted_coreness(g, *coreness_params)
        else:
            out[name] = INDICATORS[name](g)
    return out
