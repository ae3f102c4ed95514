"""Finite directed graphs and their path category.

Composition convention (pinned; the opposite of most graph libraries):

  * an edge e points from s(e) to r(e):      s(e) --e--> r(e)
  * a path is a string mu = e1 ... en with   s(e_i) = r(e_{i+1})
  * r(mu) = r(e1) and s(mu) = s(en)

so a path reads like function composition: the rightmost edge acts first,
and a path "extends to the right toward its source".  Diagram for mu = e1 e2:

      s(e2) --e2--> r(e2) = s(e1) --e1--> r(e1)
      = s(mu)                             = r(mu)

For a vertex v, the set vE^1 = {e : r(e) = v} (edges arriving at v) and
E^1 v = {e : s(e) = v} (edges leaving v).  "No sources" means every vE^1 is
nonempty; "no sinks" means every E^1 v is nonempty.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DanglingEndpointError,
    DuplicateIdError,
    NonComposableError,
)


@dataclass(frozen=True)
class Edge:
    id: str
    src: str  # s(e)
    dst: str  # r(e)


class Graph:
    """A finite directed graph with opaque string vertex and edge ids.

    Immutable after construction; all derived maps are precomputed.
    """

    def __init__(self, vertices, edges):
        vs = [str(v) for v in vertices]
        if len(set(vs)) != len(vs):
            raise DuplicateIdError("duplicate vertex id")
        self.vertices = tuple(sorted(vs))
        vset = set(self.vertices)
        es = []
        seen = set()
        for eid, src, dst in edges:
            eid, src, dst = str(eid), str(src), str(dst)
            if eid in seen:
                raise DuplicateIdError(f"duplicate edge id {eid!r}")
            seen.add(eid)
            if src not in vset or dst not in vset:
                raise DanglingEndpointError(f"edge {eid!r} references missing vertex")
            es.append(Edge(eid, src, dst))
        if seen & vset:
            raise DuplicateIdError(f"ids used for both a vertex and an edge: {sorted(seen & vset)}")
        es.sort(key=lambda e: e.id)
        self.edges = tuple(es)
        self._by_id = {e.id: e for e in self.edges}
        self._into = {v: tuple(e for e in self.edges if e.dst == v) for v in self.vertices}
        self._out = {v: tuple(e for e in self.edges if e.src == v) for v in self.vertices}

    def edge(self, eid: str) -> Edge:
        return self._by_id[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def s(self, eid: str) -> str:
        return self._by_id[eid].src

    def r(self, eid: str) -> str:
        return self._by_id[eid].dst

    def range_edges(self, v: str):
        """vE^1: edges e with r(e) = v."""
        return self._into[v]

    def source_edges(self, v: str):
        """E^1 v: edges e with s(e) = v."""
        return self._out[v]

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class Path:
    """A finite path; ``base`` is the range vertex when ``edges`` is empty."""

    base: str
    edges: tuple[str, ...] = ()

    @staticmethod
    def empty(v: str) -> "Path":
        return Path(v, ())

    @staticmethod
    def of(graph: Graph, edge_ids) -> "Path":
        """Build and check a path from a left-to-right edge id sequence."""
        ids = tuple(str(e) for e in edge_ids)
        if not ids:
            raise ValueError("Path.of needs at least one edge; use Path.empty(v)")
        for a, b in zip(ids, ids[1:]):
            if graph.s(a) != graph.r(b):
                raise NonComposableError(f"s({a}) = {graph.s(a)} != r({b}) = {graph.r(b)}")
        return Path(graph.r(ids[0]), ids)

    def __len__(self):
        return len(self.edges)

    def r(self, graph: Graph) -> str:
        return graph.r(self.edges[0]) if self.edges else self.base

    def s(self, graph: Graph) -> str:
        return graph.s(self.edges[-1]) if self.edges else self.base

    def __str__(self):
        return ".".join(self.edges) if self.edges else f"(empty@{self.base})"


def concat(graph: Graph, p: Path, q: Path) -> Path:
    """Concatenation p*q, defined when s(p) = r(q); p's edges come first."""
    if p.s(graph) != q.r(graph):
        raise NonComposableError(f"s(p) = {p.s(graph)} != r(q) = {q.r(graph)}")
    if not p.edges and not q.edges:
        return Path.empty(p.base)
    return Path(p.r(graph), p.edges + q.edges)


def enumerate_paths(graph: Graph, n: int, at: str | None = None) -> list[Path]:
    """All of E^n (or vE^n when ``at`` is given), lexicographic by edge ids.

    Built by extending paths on the right: a length-k path with source u
    extends by every edge in uE^1-range position, i.e. every e with r(e) = s(path).
    """
    if n < 0:
        raise ValueError("path length must be >= 0")
    roots = [at] if at is not None else list(graph.vertices)
    out: list[Path] = []
    for v in roots:
        level = [Path.empty(v)]
        for _ in range(n):
            nxt = []
            for p in level:
                u = p.s(graph)
                for e in graph.range_edges(u):
                    nxt.append(Path(v, p.edges + (e.id,)))
            level = nxt
        out.extend(level)
    out.sort(key=lambda p: (p.edges, p.base))
    return out


@dataclass(frozen=True)
class StructureReport:
    finite: bool
    no_sources: bool
    no_sinks: bool
    strongly_connected: bool
    primitive: bool

    def as_dict(self):
        return {
            "finite": self.finite,
            "no_sources": self.no_sources,
            "no_sinks": self.no_sinks,
            "strongly_connected": self.strongly_connected,
            "primitive": self.primitive,
        }


def _bool_adjacency(graph: Graph):
    idx = {v: i for i, v in enumerate(graph.vertices)}
    n = len(graph.vertices)
    m = [[False] * n for _ in range(n)]
    for e in graph.edges:
        m[idx[e.src]][idx[e.dst]] = True  # arrow s(e) -> r(e)
    return m


def _bool_mul(a, b):
    n = len(a)
    return [[any(a[i][k] and b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def validate_graph(graph: Graph) -> StructureReport:
    """Compute the structural flags exactly.

    Strong connectivity asks that vE*w is nonempty for all v, w, i.e. a
    directed walk from every vertex to every other (the one-vertex
    edgeless graph is excluded by convention).  Primitivity asks for some
    power of the adjacency matrix to be strictly positive; the exponent is
    capped at |V|^2 + 1, past which no new zero pattern can appear.
    """
    n = len(graph.vertices)
    adj = _bool_adjacency(graph)

    reach = [row[:] for row in adj]
    changed = True
    while changed:
        changed = False
        step = _bool_mul(reach, adj)
        for i in range(n):
            for j in range(n):
                if step[i][j] and not reach[i][j]:
                    reach[i][j] = True
                    changed = True
    strongly = all(reach[i][j] for i in range(n) for j in range(n) if i != j)
    if n == 1:
        strongly = bool(graph.edges)

    primitive = False
    power = [row[:] for row in adj]
    for _ in range(n * n + 1):
        if all(all(row) for row in power):
            primitive = True
            break
        power = _bool_mul(power, adj)

    return StructureReport(
        finite=True,
        no_sources=all(graph.range_edges(v) for v in graph.vertices),
        no_sinks=all(graph.source_edges(v) for v in graph.vertices),
        strongly_connected=strongly,
        primitive=primitive,
    )
