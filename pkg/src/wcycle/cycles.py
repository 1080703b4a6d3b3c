"""Fundamental cycle basis of a weighted graph.

Each non-tree edge ``(s, t)`` of the spanning forest closes exactly one
cycle together with the tree path between ``s`` and ``t``.  The set of
these cycles spans the cycle space, whose dimension is
``E - N + components``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .errors import UnknownNodeError
from .graph import SpanningForest, WeightedGraph, check_forest, spanning_forest

__all__ = ["BasicCycle", "CycleBasis", "cycle_basis", "cycle_weight", "cycles_containing",
           "write_cycles_csv"]


@dataclass(frozen=True)
class BasicCycle:
    """One fundamental cycle.

    ``nodes`` lists the cycle as a closed walk starting at the generator's
    smaller endpoint ``s``: ``s -> ... -> t`` along the tree, closed by the
    generator edge ``(t, s)``.
    """

    generator: tuple[int, int]
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, float], ...]
    weight_sum: float

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def node_set(self) -> frozenset:
        return frozenset(self.nodes)


@dataclass(frozen=True)
class CycleBasis:
    cycles: tuple[BasicCycle, ...]
    node_index: tuple[tuple[int, ...], ...]
    n_components: int = field(default=1)

    @property
    def size(self) -> int:
        return len(self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)


def _tree_path(forest: SpanningForest, s: int, t: int) -> list[int]:
    """Tree path from ``s`` to ``t`` found by climbing to their lowest common ancestor."""
    parent, depth = forest.parent, forest.depth
    left, right = [s], [t]
    a, b = s, t
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        left.append(a)
        right.append(b)
    right.pop()  # the common ancestor is already the last entry of ``left``
    return left + right[::-1]


def cycle_basis(g: WeightedGraph, forest: SpanningForest | None = None) -> CycleBasis:
    """Fundamental cycles of ``g`` with respect to ``forest``.

    Parameters
    ----------
    g : WeightedGraph
    forest : SpanningForest, optional
        Defaults to :func:`~wcycle.graph.spanning_forest` of ``g``.

    Returns
    -------
    CycleBasis
        One cycle per non-tree edge, ordered by ascending generator edge
        ``(min id, max id)``, plus a node -> cycle-index lookup.

    Raises
    ------
    IntegrityError
        If ``forest`` does not belong to ``g``.
    """
    if forest is None:
        forest = spanning_forest(g)
    check_forest(g, forest)
    cycles = []
    index: list[list[int]] = [[] for _ in range(g.number_of_nodes)]
    for s, t, w_st in g.sorted_edges():
        if forest.is_tree_edge(s, t):
            continue
        path = _tree_path(forest, s, t)
        edges = [(a, b, g.weight(a, b)) for a, b in zip(path, path[1:])]
        edges.append((t, s, w_st))
        k = len(cycles)
        for v in path:
            index[v].append(k)
        cycles.append(BasicCycle((s, t), tuple(path), tuple(edges),
                                 math.fsum(e[2] for e in edges)))
    return CycleBasis(tuple(cycles), tuple(tuple(ix) for ix in index), forest.n_components)


def cycle_weight(c: BasicCycle) -> float:
    """Sum of the member-edge weights of ``c``."""
    return math.fsum(e[2] for e in c.edges)


def cycles_containing(basis: CycleBasis, v: int) -> tuple[int, ...]:
    """Indices of the basis cycles passing through ``v``, ascending."""
    if not isinstance(v, int) or not 0 <= v < len(basis.node_index):
        raise UnknownNodeError(f"unknown node id {v!r}")
    return basis.node_index[v]


def write_cycles_csv(g: WeightedGraph, basis: CycleBasis, stream=None) -> str | None:
    """One row per cycle: index, generator edge, length, weight sum, node labels."""
    out = stream if stream is not None else io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["cycle", "generator_u", "generator_v", "length", "weight_sum", "nodes"])
    for k, c in enumerate(basis.cycles):
        s, t = c.generator
        writer.writerow([k, g.labels[s], g.labels[t], len(c), repr(c.weight_sum),
                         ",".join(g.labels[v] for v in c.nodes)])
    return out.getvalue() if stream is None else None
