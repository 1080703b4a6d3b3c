"""Weighted discrete-time SIR spreading.

Dynamics: in each synchronous step every infected node ``i`` infects each
susceptible neighbour ``j`` independently with probability ``p_ij``; after
the infection phase every node that was infected at the start of the step
recovers with probability ``mu``.  Nodes infected during a step start
transmitting in the next one.

A run is simulated through an equivalent construction: node ``i`` stays
infectious for ``D_i ~ Geometric(mu)`` steps and the first step at which
``i`` would succeed against ``j`` is ``T_ij ~ Geometric(p_ij)``.  The arc
``i -> j`` fires iff ``T_ij <= D_i``, and infection times are shortest
paths over fired arcs with length ``T_ij``.  The draws depend only on the
graph and the run's stream, never on the seed set, so outcomes for
different seed sets sharing a run index are coupled.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ThresholdUndefinedError, UnknownNodeError
from .graph import WeightedGraph

__all__ = [
    "WsirParams",
    "RunOutcome",
    "OutbreakResult",
    "SIR_VARIANTS",
    "epidemic_threshold",
    "transmission_probabilities",
    "run_stream",
    "wsir_run",
    "wsir_average",
]

SIR_VARIANTS = ("linear-clamped", "complement")
_MASK64 = (1 << 64) - 1
_NEVER = np.iinfo(np.int64).max


@dataclass(frozen=True)
class WsirParams:
    """Spreading parameters.

    ``variant`` selects the per-contact probability: ``"linear-clamped"``
    uses ``min(1, beta * w)``, ``"complement"`` uses ``1 - (1 - beta)**w``
    (requires ``beta <= 1``).  ``max_steps=None`` means ``10 * N``.
    """

    beta: float
    mu: float = 0.5
    max_steps: int | None = None
    seed: int = 0
    variant: str = "linear-clamped"

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValueError(f"beta must be finite and >= 0, got {self.beta}")
        if not 0 < self.mu <= 1:
            raise ValueError(f"mu must lie in (0, 1], got {self.mu}")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.variant not in SIR_VARIANTS:
            raise ValueError(f"variant must be one of {SIR_VARIANTS}")
        if self.variant == "complement" and self.beta > 1:
            raise ValueError("complement variant needs beta <= 1")


class RunOutcome(NamedTuple):
    size: int
    absorbed: bool


@dataclass(frozen=True)
class OutbreakResult:
    sizes: tuple[int, ...]
    absorbed: tuple[bool, ...]
    mean: float
    std: float

    @property
    def runs(self) -> int:
        return len(self.sizes)

    @property
    def stderr(self) -> float:
        return self.std / math.sqrt(self.runs)


def epidemic_threshold(g: WeightedGraph) -> float:
    """``<k> / (<w> (<k^2> - <k>))`` from degree moments and mean edge weight.

    Raises
    ------
    ThresholdUndefinedError
        When ``<w> (<k^2> - <k>)`` is not positive, e.g. a perfect matching.
    """
    n, e = g.number_of_nodes, g.number_of_edges
    if n == 0 or e == 0:
        raise ThresholdUndefinedError("threshold undefined on a graph without edges")
    deg = g.degrees().astype(float)
    k1 = deg.mean()
    k2 = float(np.dot(deg, deg)) / n
    mean_w = math.fsum(g.weights()) / e
    denom = mean_w * (k2 - k1)
    if not denom > 0:
        raise ThresholdUndefinedError(
            f"threshold undefined: <w>={mean_w}, <k^2>-<k>={k2 - k1}")
    return k1 / denom


def transmission_probabilities(g: WeightedGraph, beta: float,
                               variant: str = "linear-clamped") -> np.ndarray:
    """Per-arc infection probability aligned with ``g.csr()``."""
    _, _, w = g.csr()
    if variant == "linear-clamped":
        return np.minimum(1.0, beta * w)
    if variant == "complement":
        return 1.0 - np.power(1.0 - beta, w)
    raise ValueError(f"unknown SIR variant {variant!r}")


def run_stream(master_seed: int, run_index: int) -> np.random.Generator:
    """Independent generator for one run, derived from ``(master_seed, run_index)``."""
    return np.random.default_rng(np.random.SeedSequence([master_seed & _MASK64, run_index]))


def _seed_list(g: WeightedGraph, seeds: Iterable[int]) -> list[int]:
    members = sorted(set(int(s) for s in seeds))
    if not members:
        raise ValueError("seed set is empty")
    n = g.number_of_nodes
    for s in members:
        if not 0 <= s < n:
            raise UnknownNodeError(f"seed {s} is not a node of the graph")
    return members


def _draw(g: WeightedGraph, prob: np.ndarray, mu: float,
          rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    duration = rng.geometric(mu, size=g.number_of_nodes)
    first = rng.geometric(np.where(prob > 0, prob, 1.0))
    first[prob <= 0] = _NEVER
    return duration, first


def _spread(g: WeightedGraph, seeds: list[int], duration: np.ndarray, first: np.ndarray,
            max_steps: int) -> RunOutcome:
    indptr, indices, _ = g.csr()
    n = g.number_of_nodes
    t_inf = [_NEVER] * n
    heap = []
    for s in seeds:
        t_inf[s] = 0
        heap.append((0, s))
    done = bytearray(n)
    size = 0
    absorbed = True
    while heap:
        t, i = heapq.heappop(heap)
        if done[i] or t != t_inf[i]:
            continue
        if t > max_steps:
            break
        done[i] = 1
        size += 1
        d_i = int(duration[i])
        if t + d_i > max_steps:
            absorbed = False
        lo, hi = indptr[i], indptr[i + 1]
        fired = np.nonzero(first[lo:hi] <= d_i)[0]
        for a in fired:
            j = int(indices[lo + a])
            if done[j]:
                continue
            tj = t + int(first[lo + a])
            if tj < t_inf[j]:
                t_inf[j] = tj
                heapq.heappush(heap, (tj, j))
    return RunOutcome(size, absorbed)


def wsir_run(g: WeightedGraph, seeds: Iterable[int], params: WsirParams,
             run_index: int, _prob: np.ndarray | None = None) -> RunOutcome:
    """Simulate one outbreak; ``size`` counts every node ever infected.

    ``absorbed`` is False when infected nodes remained after ``max_steps``;
    those nodes are still included in ``size``.
    """
    members = _seed_list(g, seeds)
    prob = _prob if _prob is not None else transmission_probabilities(g, params.beta, params.variant)
    max_steps = params.max_steps or 10 * g.number_of_nodes
    duration, first = _draw(g, prob, params.mu, run_stream(params.seed, run_index))
    return _spread(g, members, duration, first, max_steps)


def wsir_average(g: WeightedGraph, seeds: Iterable[int], params: WsirParams, runs: int,
                 threads: int = 1) -> OutbreakResult:
    """Run indices ``0..runs-1`` and aggregate final sizes.

    ``std`` is the population standard deviation of the sizes.  The result
    does not depend on ``threads``.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    members = _seed_list(g, seeds)
    prob = transmission_probabilities(g, params.beta, params.variant)

    def one(r: int) -> RunOutcome:
        return wsir_run(g, members, params, r, _prob=prob)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, range(runs)))
    else:
        outcomes = [one(r) for r in range(runs)]
    sizes = np.array([o.size for o in outcomes], dtype=float)
    return OutbreakResult(
        sizes=tuple(o.size for o in outcomes),
        absorbed=tuple(o.absorbed for o in outcomes),
        mean=float(sizes.mean()),
        std=float(sizes.std()),
    )
