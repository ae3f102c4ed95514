"""Level-n Schreier graphs, the level-lowering projections, and distances.

Gamma_n has vertex set E^n and an (undirected) edge labelled a between mu
and a . mu whenever d(a) = r(mu).  The projection psi_n deletes the first
edge of each vertex path and restricts each label: (a : e mu -> f nu)
maps to (a|_e : mu -> nu).  For that to stay inside the labelling set the
generating set must be closed under inverses and restriction; build_schreier
extends it (with a warning) when it is not.

Geodesic distance between the depth-n windows of two left-infinite paths
stays bounded over n exactly when the paths are asymptotically equivalent,
which the distance_profile helper exposes for cross-checks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .automaton import Automaton, Element, reachable_closure, word_key
from .errors import VertexNotInLevelError
from .graphs import Path, enumerate_paths
from .infinite_paths import LeftInfinitePath


def default_generating_set(aut: Automaton, nucleus=None) -> list[Element]:
    """Generators, inverses and units (plus the nucleus when given), closed
    under restriction."""
    seeds = [aut.unit(v) for v in aut.graph.vertices]
    for name in sorted(aut.generators):
        seeds.append(aut.generator(name))
        seeds.append(aut.inverse(aut.generator(name)))
    if nucleus is not None:
        seeds.extend(nucleus.states)
    return [aut.canonical(s) for s in reachable_closure(aut, seeds).states]


@dataclass
class SchreierGraph:
    level: int
    automaton: Automaton
    gen_set: list[Element]
    vertices: list[Path]
    arcs: list[tuple[int, int, Element]]  # (mu index, (a.mu) index, label element)

    def __post_init__(self):
        self._index = {(p.base, p.edges): i for i, p in enumerate(self.vertices)}

    def vertex_index(self, p: Path) -> int:
        try:
            return self._index[(p.base, p.edges)]
        except KeyError:
            raise VertexNotInLevelError(f"{p} is not a vertex of level {self.level}") from None

    def undirected_edges(self):
        """Edges deduplicated across orientation and inverse labels, keyed
        (min index, max index) with a sorted label tuple."""
        aut = self.automaton
        out: dict[tuple[int, int], set[str]] = {}
        for (u, v, label) in self.arcs:
            a, b = (u, v) if u <= v else (v, u)
            inv = aut.canonical(aut.inverse(label))
            name = min(aut.canonical(label).name(), inv.name())
            out.setdefault((a, b), set()).add(name)
        return {k: tuple(sorted(v)) for k, v in sorted(out.items())}

    def neighbours(self, i: int):
        adj = getattr(self, "_adj", None)
        if adj is None:
            adj = [set() for _ in self.vertices]
            for (u, v, _label) in self.arcs:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return adj[i]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbours(u):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(self.vertices)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "level": self.level,
            "vertices": [str(p) if p.edges else p.base for p in self.vertices],
            "edges": [
                {"u": str(self.vertices[u]) if self.vertices[u].edges else self.vertices[u].base,
                 "v": str(self.vertices[v]) if self.vertices[v].edges else self.vertices[v].base,
                 "labels": list(labels)}
                for (u, v), labels in self.undirected_edges().items()
            ],
        }

    def to_dot(self) -> str:
        lines = [f"graph schreier_level_{self.level} {{"]
        for i, p in enumerate(self.vertices):
            name = str(p) if p.edges else p.base
            lines.append(f'  v{i} [label="{name}"];')
        for (u, v), labels in self.undirected_edges().items():
            lines.append(f'  v{u} -- v{v} [label="{",".join(labels)}"];')
        lines.append("}")
        return "\n".join(lines)


def build_schreier(aut: Automaton, gen_set, n: int) -> SchreierGraph:
    """The exact level-n Schreier graph with deterministic vertex order."""
    if n < 0:
        raise ValueError("level must be >= 0")
    closed = {aut.canonical_id(a): aut.canonical(a) for a in gen_set}
    closure = reachable_closure(aut, list(closed.values()))
    if len(closure.states) != len(closed):
        warnings.warn("generating set was not closed under restriction; extended")
    labels = [aut.canonical(s) for s in closure.states]
    # inverses must be present too
    for a in list(labels):
        inv = aut.inverse(a)
        if aut.canonical_id(inv) not in {aut.canonical_id(x) for x in labels}:
            warnings.warn("generating set was not closed under inverses; extended")
            labels.append(aut.canonical(inv))
    labels.sort(key=lambda e: word_key(e.word))

    vertices = enumerate_paths(aut.graph, n)
    index = {(p.base, p.edges): i for i, p in enumerate(vertices)}
    arcs = []
    seen = set()
    for a in labels:
        for i, mu in enumerate(vertices):
            if mu.r(aut.graph) != a.dom:
                continue
            nu = aut.act(a, mu)
            j = index[(nu.base, nu.edges)]
            key = (i, j, aut.canonical_id(a))
            if key not in seen:
                seen.add(key)
                arcs.append((i, j, a))
    return SchreierGraph(n, aut, labels, vertices, arcs)


@dataclass
class PsiMorphism:
    vertex_map: dict[int, int]                     # index in Gamma_n -> index in Gamma_{n-1}
    arc_map: list[tuple[tuple[int, int, str], tuple[int, int, str]]]


def project_psi(gamma: SchreierGraph) -> tuple[SchreierGraph, PsiMorphism]:
    """psi_n : Gamma_n -> Gamma_{n-1}, dropping the first edge of every
    vertex path and restricting every label along it."""
    if gamma.level < 1:
        raise ValueError("psi needs level >= 1")
    aut = gamma.automaton
    graph = aut.graph
    lower = enumerate_paths(graph, gamma.level - 1)
    lower_index = {(p.base, p.edges): i for i, p in enumerate(lower)}

    def drop_first(p: Path) -> Path:
        rest = p.edges[1:]
        if not rest:
            return Path.empty(graph.s(p.edges[0]))
        return Path(graph.r(rest[0]), rest)

    vmap = {}
    for i, p in enumerate(gamma.vertices):
        q = drop_first(p)
        vmap[i] = lower_index[(q.base, q.edges)]

    arcs = []
    arc_map = []
    seen = set()
    for (u, v, label) in gamma.arcs:
        mu = gamma.vertices[u]
        e = mu.edges[0]
        restricted = aut.canonical(aut.restrict(label, Path.of(graph, [e])))
        pu, pv = vmap[u], vmap[v]
        key = (pu, pv, aut.canonical_id(restricted))
        if key not in seen:
            seen.add(key)
            arcs.append((pu, pv, restricted))
        arc_map.append(((u, v, aut.canonical(label).name()),
                        (pu, pv, restricted.name())))
    projected = SchreierGraph(gamma.level - 1, aut, gamma.gen_set, lower, arcs)
    return projected, PsiMorphism(vmap, arc_map)


def geodesic_distance(gamma: SchreierGraph, mu: Path, nu: Path):
    """BFS distance ignoring labels; None when unreachable."""
    src = gamma.vertex_index(mu)
    dst = gamma.vertex_index(nu)
    if src == dst:
        return 0
    dist = {src: 0}
    queue = [src]
    while queue:
        u = queue.pop(0)
        for v in gamma.neighbours(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                if v == dst:
                    return dist[v]
                queue.append(v)
    return None


def distance_profile(aut: Automaton, x: LeftInfinitePath, y: LeftInfinitePath,
                     max_level: int, gen_set=None, nucleus=None,
                     _cache: dict | None = None) -> list:
    """Geodesic distances between the depth-n windows for n = 1..max_level;
    bounded over all n exactly for asymptotically equivalent paths."""
    gens = gen_set if gen_set is not None else default_generating_set(aut, nucleus)
    out = []
    for n in range(1, max_level + 1):
        if _cache is not None and n in _cache:
            gamma = _cache[n]
        else:
            gamma = build_schreier(aut, gens, n)
            if _cache is not None:
                _cache[n] = gamma
        out.append(geodesic_distance(gamma, x.window_path(aut.graph, n),
                                     y.window_path(aut.graph, n)))
    return out
