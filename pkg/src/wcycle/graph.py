"""Weighted undirected graph model, ingestion, statistics and distances.

Nodes are dense integer ids ``0..N-1``; the labels found in the source
file are kept alongside so every report can be written back in terms of
the original names.  Graphs are immutable once built.
"""

from __future__ import annotations

import heapq
import io
import logging
import math
import re
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from .errors import EmptyGraphError, IntegrityError, ParseError, UnknownNodeError

__all__ = [
    "WeightedGraph",
    "IngestOptions",
    "IngestSummary",
    "GraphStats",
    "SpanningForest",
    "ShortestPaths",
    "parse_edge_list",
    "parse_pajek",
    "read_graph",
    "serialize_edge_list",
    "graph_stats",
    "strength",
    "spanning_forest",
    "hop_distances",
    "weighted_distances",
    "TIE_RTOL",
]

log = logging.getLogger(__name__)

#: Relative tolerance under which two weighted path lengths count as equal.
TIE_RTOL = 1e-12

_SPLIT = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class IngestOptions:
    """Knobs for :func:`parse_edge_list`.

    ``extra_columns="ignore"`` keeps only the first three columns, which is
    what KONECT files with a trailing timestamp column need.
    """

    default_weight: float = 1.0
    extra_columns: str = "error"
    comment_chars: str = "#%"

    def __post_init__(self):
        if self.extra_columns not in ("error", "ignore"):
            raise ValueError("extra_columns must be 'error' or 'ignore'")
        if not (math.isfinite(self.default_weight) and self.default_weight > 0):
            raise ValueError("default_weight must be finite and positive")


@dataclass(frozen=True)
class IngestSummary:
    data_lines: int
    self_loops_dropped: int
    duplicates_merged: int


class WeightedGraph:
    """Simple undirected graph with strictly positive edge weights.

    Parameters
    ----------
    labels : sequence of str
        Source label of every node; position is the node id.
    edges : iterable of (u, v, w)
        Edges over node ids.  Repeated pairs, in either orientation, are
        merged by summing their weights.  The first orientation and position
        seen for a pair is remembered so that serialisation round-trips.
    """

    __slots__ = ("_labels", "_index", "_adj", "_edges", "_nbrs", "_csr", "ingest")

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int, float]],
                 ingest: IngestSummary | None = None):
        self._labels = tuple(str(x) for x in labels)
        self._index = {lab: i for i, lab in enumerate(self._labels)}
        if len(self._index) != len(self._labels):
            raise ValueError("node labels must be unique")
        n = len(self._labels)
        adj: list[dict[int, float]] = [{} for _ in range(n)]
        ordered: dict[tuple[int, int], None] = {}
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownNodeError(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (math.isfinite(w) and w > 0):
                raise ValueError(f"edge ({u}, {v}) has non-positive or non-finite weight {w}")
            if v in adj[u]:
                adj[u][v] += w
                adj[v][u] += w
            else:
                adj[u][v] = w
                adj[v][u] = w
                ordered[(u, v)] = None
        self._adj = adj
        self._edges = tuple(ordered)
        self._nbrs = tuple(tuple(sorted(a)) for a in adj)
        self._csr = None
        self.ingest = ingest

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence], n: int | None = None,
                   labels: Sequence[str] | None = None) -> "WeightedGraph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples over integer ids.

        ``n`` defaults to one more than the largest id; labels default to
        the decimal ids.
        """
        triples = []
        for e in edges:
            w = float(e[2]) if len(e) > 2 else 1.0
            triples.append((int(e[0]), int(e[1]), w))
        if n is None:
            n = 1 + max((max(u, v) for u, v, _ in triples), default=-1)
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(labels, triples)

    # -- basic accessors -------------------------------------------------

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def number_of_nodes(self) -> int:
        return len(self._labels)

    @property
    def number_of_edges(self) -> int:
        return len(self._edges)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def nodes(self) -> range:
        return range(len(self._labels))

    def label(self, v: int) -> str:
        self._check(v)
        return self._labels[v]

    def node_id(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownNodeError(f"no node labelled {label!r}") from None

    def _check(self, v) -> None:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < len(self._labels):
            raise UnknownNodeError(f"unknown node id {v!r}")

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` in ascending id order."""
        self._check(v)
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < len(self._adj) and v in self._adj[u]

    def weight(self, u: int, v: int) -> float:
        try:
            return self._adj[u][v]
        except (KeyError, IndexError):
            raise KeyError(f"no edge ({u}, {v})") from None

    def adjacency(self, v: int) -> dict[int, float]:
        """Read-only view is not enforced; callers must not mutate."""
        return self._adj[v]

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Edges in first-seen order and orientation."""
        for u, v in self._edges:
            yield u, v, self._adj[u][v]

    def sorted_edges(self) -> list[tuple[int, int, float]]:
        """Edges as ``(min, max, w)`` in ascending order."""
        return sorted((min(u, v), max(u, v), w) for u, v, w in self.edges())

    def weights(self) -> np.ndarray:
        return np.fromiter((w for _, _, w in self.edges()), dtype=float,
                           count=len(self._edges))

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self._nbrs), dtype=np.int64,
                           count=len(self._nbrs))

    def strengths(self) -> np.ndarray:
        return np.array([math.fsum(a.values()) for a in self._adj], dtype=float)

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, indices, weights)`` with each row sorted by neighbour id."""
        if self._csr is None:
            indptr = np.zeros(len(self._nbrs) + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(a) for a in self._nbrs])
            indices = np.fromiter((j for a in self._nbrs for j in a), dtype=np.int64,
                                  count=int(indptr[-1]))
            weights = np.fromiter((self._adj[i][j] for i, a in enumerate(self._nbrs) for j in a),
                                  dtype=float, count=int(indptr[-1]))
            for arr in (indptr, indices, weights):
                arr.flags.writeable = False
            self._csr = (indptr, indices, weights)
        return self._csr

    def scaled(self, factor: float) -> "WeightedGraph":
        """Copy with every weight multiplied by ``factor``."""
        return WeightedGraph(self._labels, ((u, v, w * factor) for u, v, w in self.edges()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        if self._labels != other._labels or len(self._edges) != len(other._edges):
            return False
        return all(other._adj[u].get(v) == w for u, v, w in self.edges())

    __hash__ = None

    def __repr__(self) -> str:
        return f"WeightedGraph(N={self.number_of_nodes}, E={self.number_of_edges})"


# -- ingestion ---------------------------------------------------------------

def _lines(source) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_edge_list(source: str | TextIO | Iterable[str],
                    options: IngestOptions | None = None) -> WeightedGraph:
    """Parse ``u v [w]`` records into a :class:`WeightedGraph`.

    Tokens are separated by whitespace and/or commas; lines starting with a
    comment character are skipped.  Labels are relabelled to dense ids in
    order of first appearance.  Self-loop lines are dropped (and do not
    introduce their label); duplicate pairs in either orientation are summed.

    Raises
    ------
    ParseError
        Wrong token count, non-numeric or non-positive weight.
    EmptyGraphError
        No edge survived ingestion.
    """
    opts = options or IngestOptions()
    index: dict[str, int] = {}
    triples: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    data_lines = loops = merged = 0
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line[0] in opts.comment_chars:
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        if len(tokens) not in (2, 3):
            if len(tokens) > 3 and opts.extra_columns == "ignore":
                tokens = tokens[:3]
            else:
                raise ParseError(f"expected 2 or 3 fields, got {len(tokens)}", lineno)
        data_lines += 1
        if len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise ParseError(f"non-numeric weight {tokens[2]!r}", lineno) from None
            if not math.isfinite(w) or w <= 0:
                raise ParseError(f"weight must be finite and > 0, got {tokens[2]!r}", lineno)
        else:
            w = opts.default_weight
        a, b = tokens[0], tokens[1]
        if a == b:
            loops += 1
            continue
        u = index.setdefault(a, len(index))
        v = index.setdefault(b, len(index))
        key = (u, v) if u < v else (v, u)
        if key in seen:
            merged += 1
        seen.add(key)
        triples.append((u, v, w))
    if loops:
        log.warning("dropped %d self-loop line(s)", loops)
    if not triples:
        raise EmptyGraphError("input contains no edges")
    return WeightedGraph(list(index), triples, IngestSummary(data_lines, loops, merged))


def parse_pajek(source: str | TextIO | Iterable[str]) -> WeightedGraph:
    """Parse a Pajek ``.net`` file (``*Vertices`` plus ``*Edges``/``*Arcs``).

    Every declared vertex becomes a node, labelled by its Pajek number.
    Arcs are symmetrised by summing, like duplicate edges.
    """
    n = None
    section = None
    triples: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    data_lines = loops = merged = 0
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line[0] == "%":
            continue
        if line[0] == "*":
            head = line.split()
            kind = head[0].lower()
            if kind == "*vertices":
                try:
                    n = int(head[1])
                except (IndexError, ValueError):
                    raise ParseError("malformed *Vertices header", lineno) from None
                section = "vertices"
            elif kind in ("*edges", "*arcs"):
                if n is None:
                    raise ParseError(f"{head[0]} before *Vertices", lineno)
                section = "edges"
            else:
                raise ParseError(f"unsupported Pajek section {head[0]}", lineno)
            continue
        if section != "edges":
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError("expected at least 2 fields", lineno)
        data_lines += 1
        try:
            u, v = int(tokens[0]) - 1, int(tokens[1]) - 1
        except ValueError:
            raise ParseError("non-integer vertex number", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex number out of range 1..{n}", lineno)
        w = 1.0
        if len(tokens) >= 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise ParseError(f"non-numeric weight {tokens[2]!r}", lineno) from None
            if not math.isfinite(w) or w <= 0:
                raise ParseError(f"weight must be finite and > 0, got {tokens[2]!r}", lineno)
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            merged += 1
        seen.add(key)
        triples.append((u, v, w))
    if n is None or not triples:
        raise EmptyGraphError("Pajek input contains no edges")
    if loops:
        log.warning("dropped %d self-loop line(s)", loops)
    return WeightedGraph([str(i + 1) for i in range(n)], triples,
                         IngestSummary(data_lines, loops, merged))


def read_graph(path: str | Path, fmt: str = "auto",
               options: IngestOptions | None = None) -> WeightedGraph:
    """Read a graph file; ``fmt`` is ``"edgelist"``, ``"pajek"`` or ``"auto"``."""
    path = Path(path)
    if fmt == "auto":
        fmt = "pajek" if path.suffix.lower() == ".net" else "edgelist"
    with open(path, encoding="utf-8", errors="replace") as fh:
        if fmt == "pajek":
            return parse_pajek(fh)
        if fmt == "edgelist":
            return parse_edge_list(fh, options)
    raise ValueError(f"unknown graph format {fmt!r}")


def serialize_edge_list(g: WeightedGraph) -> str:
    """``label label weight`` lines, weights at 17 significant digits.

    Edges keep their first-seen order and orientation, so parsing the
    output reproduces the same node ids.
    """
    labels = g.labels
    return "".join(f"{labels[u]} {labels[v]} {w:.17g}\n" for u, v, w in g.edges())


# -- statistics --------------------------------------------------------------

@dataclass(frozen=True)
class GraphStats:
    N: int
    E: int
    mean_degree: float
    mean_sq_degree: float
    mean_weight: float
    density: float
    clustering: float
    components: int

    def table_row(self, name: str) -> list:
        """Row in the column order ``name, N, E, <k>, <w>, D, C``."""
        return [name, self.N, self.E, self.mean_degree, self.mean_weight,
                self.density, self.clustering]


def _local_clustering(g: WeightedGraph, v: int) -> float:
    nbrs = g.neighbors(v)
    k = len(nbrs)
    if k < 2:
        return 0.0
    nset = set(nbrs)
    links = sum(1 for a in nbrs for b in g.adjacency(a) if b in nset)
    return links / (k * (k - 1))


def graph_stats(g: WeightedGraph) -> GraphStats:
    """Summary statistics of the kind reported for benchmark networks.

    Clustering is the mean unweighted local clustering coefficient with
    degree < 2 nodes contributing 0.
    """
    n, e = g.number_of_nodes, g.number_of_edges
    if n < 1:
        raise EmptyGraphError("graph has no nodes")
    deg = g.degrees().astype(float)
    mean_w = math.fsum(g.weights()) / e if e else 0.0
    density = 2.0 * e / (n * (n - 1)) if n > 1 else 0.0
    clustering = math.fsum(_local_clustering(g, v) for v in g.nodes()) / n
    return GraphStats(
        N=n,
        E=e,
        mean_degree=2.0 * e / n,
        mean_sq_degree=float(np.dot(deg, deg)) / n,
        mean_weight=mean_w,
        density=density,
        clustering=clustering,
        components=spanning_forest(g).n_components,
    )


def strength(g: WeightedGraph, v: int) -> float:
    """Sum of the weights of edges incident to ``v``."""
    g._check(v)
    return math.fsum(g.adjacency(v).values())


# -- spanning forest -----------------------------------------------------------

@dataclass(frozen=True)
class SpanningForest:
    """Breadth-first spanning forest.

    ``parent[root]`` is None; ``tree_edges`` holds ``(min, max)`` pairs in
    discovery order.
    """

    parent: tuple
    depth: tuple
    component: tuple
    roots: tuple
    tree_edges: tuple

    @property
    def n_components(self) -> int:
        return len(self.roots)

    def edge_set(self) -> frozenset:
        return frozenset(self.tree_edges)

    def is_tree_edge(self, u: int, v: int) -> bool:
        return self.parent[u] == v or self.parent[v] == u


def spanning_forest(g: WeightedGraph) -> SpanningForest:
    """Deterministic BFS forest.

    Each component is rooted at its smallest node id and neighbours are
    explored in ascending id order.
    """
    n = g.number_of_nodes
    parent: list = [None] * n
    depth = [-1] * n
    comp = [-1] * n
    roots = []
    tree = []
    for root in range(n):
        if comp[root] != -1:
            continue
        cid = len(roots)
        roots.append(root)
        comp[root] = cid
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if comp[v] == -1:
                    comp[v] = cid
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    tree.append((u, v) if u < v else (v, u))
                    queue.append(v)
    return SpanningForest(tuple(parent), tuple(depth), tuple(comp), tuple(roots), tuple(tree))


def check_forest(g: WeightedGraph, forest: SpanningForest) -> None:
    """Raise :class:`IntegrityError` unless ``forest`` is a spanning forest of ``g``."""
    n = g.number_of_nodes
    if len(forest.parent) != n:
        raise IntegrityError("forest and graph disagree on node count")
    for v, p in enumerate(forest.parent):
        if p is not None and not g.has_edge(v, p):
            raise IntegrityError(f"forest edge ({p}, {v}) is not an edge of the graph")
    if len(forest.tree_edges) != n - forest.n_components:
        raise IntegrityError("forest has the wrong number of edges")


# -- distances ---------------------------------------------------------------

def hop_distances(g: WeightedGraph, source: int) -> list[int | None]:
    """BFS hop counts from ``source``; unreachable nodes map to None."""
    g._check(source)
    dist: list[int | None] = [None] * g.number_of_nodes
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.neighbors(u):
            if dist[v] is None:
                dist[v] = du
                queue.append(v)
    return dist


@dataclass
class ShortestPaths:
    """Single-source shortest paths under edge length ``1/w``.

    Attributes
    ----------
    dist : list
        Distance per node, None when unreachable.
    count : list of int
        Number of distinct shortest paths from the source.
    preds : list of list
        Shortest-path predecessors of each node.
    order : list of int
        Reachable nodes in non-decreasing distance order.
    """

    source: int
    dist: list
    count: list
    preds: list
    order: list


def _tied(a: float, b: float) -> bool:
    return abs(a - b) <= TIE_RTOL * max(abs(a), abs(b))


def weighted_distances(g: WeightedGraph, source: int) -> ShortestPaths:
    """Dijkstra with shortest-path counting.

    Two path lengths within relative tolerance :data:`TIE_RTOL` are treated
    as equal, so both routes contribute to the path count.
    """
    g._check(source)
    n = g.number_of_nodes
    dist: list = [None] * n
    count = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    done = [False] * n
    order = []
    dist[source] = 0.0
    count[source] = 1
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u] or d != dist[u]:
            continue
        done[u] = True
        order.append(u)
        adj = g.adjacency(u)
        for v in g.neighbors(u):
            if done[v]:
                continue
            nd = d + 1.0 / adj[v]
            dv = dist[v]
            if dv is None or (nd < dv and not _tied(nd, dv)):
                dist[v] = nd
                count[v] = count[u]
                preds[v] = [u]
                heapq.heappush(heap, (nd, v))
            elif _tied(nd, dv):
                count[v] += count[u]
                preds[v].append(u)
    return ShortestPaths(source, dist, count, preds, order)
