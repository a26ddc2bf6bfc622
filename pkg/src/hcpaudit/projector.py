"""Projector bipartite graph, its path/cycle decomposition and component codes.

Edge ``j`` of the projector joins the out-copy ``x_tail`` to the in-copy
``y_head`` of arc ``j``.  Vertex ids: ``x_i -> i``, ``y_i -> n + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal

import numpy as np

from .digraph import Digraph, build_incidence, split_incidence
from .errors import DegreeTooHigh, NoPerfectMatching, NotPerfect


@dataclass(frozen=True)
class ProjectorGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending."""
        adj: list[list[int]] = [[] for _ in range(2 * self.n)]
        for j, (x, y) in enumerate(self.edges):
            adj[x].append(j)
            adj[self.n + y].append(j)
        return tuple(tuple(a) for a in adj)

    def endpoints(self, j: int) -> tuple[int, int]:
        x, y = self.edges[j]
        return x, self.n + y

    def other_end(self, j: int, v: int) -> int:
        a, b = self.endpoints(j)
        return b if v == a else a

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def vertex_name(self, v: int) -> str:
        return f"x{v}" if v < self.n else f"y{v - self.n}"

    def incidence(self) -> np.ndarray:
        """The ``2n x m`` 0/1 incidence matrix, X rows first."""
        f = np.zeros((2 * self.n, self.m), dtype=np.int8)
        for j in range(self.m):
            a, b = self.endpoints(j)
            f[a, j] = 1
            f[b, j] = 1
        return f


def project(d: Digraph) -> ProjectorGraph:
    return ProjectorGraph(d.n, d.arcs)


def projector_matrix(d: Digraph) -> np.ndarray:
    """Stack ``C+`` over ``-C-``; equals ``project(d).incidence()``."""
    cplus, cminus = split_incidence(build_incidence(d))
    return np.vstack([cplus.entries, -cminus.entries]).astype(np.int8)


def format_projector(g: ProjectorGraph) -> str:
    lines = [
        f"# projector: vertices 0..{g.n - 1} = X (out-copies), {g.n}..{2 * g.n - 1} = Y (in-copies)",
        f"{2 * g.n} {g.m}",
    ]
    for j in range(g.m):
        a, b = g.endpoints(j)
        lines.append(f"# edge {j} -> arc {j}")
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"


# -- decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class Component:
    kind: Literal["path", "cycle"]
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    """Edges in traversal order. Cycles are rotated so their lowest edge id comes first."""

    @property
    def is_cycle(self) -> bool:
        return self.kind == "cycle"

    def class_a(self) -> tuple[int, ...]:
        """The alternating class holding the lowest edge id (the forced class for an even path)."""
        return tuple(sorted(self.edges[0::2]))

    def class_b(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges[1::2]))


@dataclass(frozen=True)
class ComponentDecomposition:
    graph: ProjectorGraph
    components: tuple[Component, ...]
    vertex_component: tuple[int, ...]
    edge_component: tuple[int, ...]

    @cached_property
    def cycle_indices(self) -> tuple[int, ...]:
        """Component indices of the even cycles, ascending; bit ``i`` of a code belongs to ``cycles[i]``."""
        return tuple(i for i, c in enumerate(self.components) if c.is_cycle)

    @property
    def cycles(self) -> tuple[Component, ...]:
        return tuple(self.components[i] for i in self.cycle_indices)

    @cached_property
    def odd_paths(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if not c.is_cycle and len(c.vertices) % 2)

    @property
    def has_perfect_matching(self) -> bool:
        return not self.odd_paths


def decompose(g: ProjectorGraph) -> ComponentDecomposition:
    nv = 2 * g.n
    for v in range(nv):
        if g.degree(v) > 2:
            raise DegreeTooHigh(v, g.degree(v))
    vertex_comp = [-1] * nv
    edge_comp = [-1] * g.m
    comps: list[Component] = []
    for start in range(nv):
        if vertex_comp[start] != -1:
            continue
        # collect the component, then walk it from an endpoint (or anywhere on a cycle)
        members = [start]
        vertex_comp[start] = len(comps)
        stack = [start]
        while stack:
            v = stack.pop()
            for j in g.adjacency[v]:
                w = g.other_end(j, v)
                if vertex_comp[w] == -1:
                    vertex_comp[w] = len(comps)
                    members.append(w)
                    stack.append(w)
        ends = [v for v in members if g.degree(v) < 2]
        first = min(ends) if ends else start
        verts = [first]
        edges: list[int] = []
        prev_edge = -1
        v = first
        while True:
            nxt = [j for j in g.adjacency[v] if j != prev_edge]
            if not nxt:
                break
            j = nxt[0]
            w = g.other_end(j, v)
            edges.append(j)
            prev_edge = j
            if w == first:
                break
            verts.append(w)
            v = w
        for j in edges:
            edge_comp[j] = len(comps)
        if ends:
            comps.append(Component("path", tuple(verts), tuple(edges)))
        else:
            k = edges.index(min(edges))
            comps.append(Component("cycle", tuple(verts), tuple(edges[k:] + edges[:k])))
    return ComponentDecomposition(g, tuple(comps), tuple(vertex_comp), tuple(edge_comp))


# -- codes and matchings ---------------------------------------------------


def lift(g: ProjectorGraph, matching: Iterable[int]) -> frozenset[int]:
    """Arc ids of the matched edges (edge ``j`` is arc ``j``)."""
    return frozenset(getattr(matching, "edges", matching))


def two_matchings_of_cycle(comp: Component) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not comp.is_cycle:
        raise ValueError("two_matchings_of_cycle needs an even cycle component")
    return comp.class_a(), comp.class_b()


def code_of(dec: ComponentDecomposition, matching: Iterable[int]) -> tuple[int, ...]:
    edges = set(getattr(matching, "edges", matching))
    g = dec.graph
    covered = [False] * (2 * g.n)
    for j in edges:
        for v in g.endpoints(j):
            if covered[v]:
                raise NotPerfect(f"vertex {g.vertex_name(v)} covered twice")
            covered[v] = True
    if not all(covered):
        exposed = [g.vertex_name(v) for v, c in enumerate(covered) if not c]
        raise NotPerfect(f"exposed vertices: {' '.join(exposed[:8])}")
    bits = []
    for comp in dec.cycles:
        a = comp.class_a()
        bits.append(0 if a[0] in edges else 1)
    return tuple(bits)


def matching_edges_from_code(dec: ComponentDecomposition, code: Iterable[int]) -> tuple[int, ...]:
    code = tuple(code)
    if len(code) != len(dec.cycle_indices):
        raise ValueError(f"code has {len(code)} bits, expected {len(dec.cycle_indices)}")
    if dec.odd_paths:
        raise NoPerfectMatching(dec.odd_paths[0])
    chosen: list[int] = []
    bit = iter(code)
    for comp in dec.components:
        if comp.is_cycle:
            chosen.extend(comp.class_b() if next(bit) else comp.class_a())
        else:
            chosen.extend(comp.class_a())
    return tuple(sorted(chosen))


def hall_violation(g: ProjectorGraph) -> frozenset[int]:
    """A Hall-deficient vertex set, or the empty set when a perfect matching exists.

    Grows alternating paths from the Y vertices a maximum matching leaves
    exposed; the Y vertices reached form ``S`` with ``|N(S)| = |S| - #exposed``.
    """
    from .matching import hopcroft_karp

    m = hopcroft_karp(g)
    if m.is_perfect:
        return frozenset()
    mate_x = m.mate_x(g)
    n = g.n
    y_mate = [-1] * n
    for x, j in enumerate(mate_x):
        if j >= 0:
            y_mate[g.edges[j][1]] = x
    frontier = [y for y in range(n) if y_mate[y] == -1]
    seen_y = set(frontier)
    seen_x: set[int] = set()
    while frontier:
        nxt = []
        for y in frontier:
            for j in g.adjacency[n + y]:
                x = g.edges[j][0]
                if x in seen_x:
                    continue
                seen_x.add(x)
                y2 = g.edges[mate_x[x]][1]
                if y2 not in seen_y:
                    seen_y.add(y2)
                    nxt.append(y2)
        frontier = nxt
    return frozenset(n + y for y in seen_y)


def neighborhood(g: ProjectorGraph, vertices: Iterable[int]) -> frozenset[int]:
    return frozenset(g.other_end(j, v) for v in vertices for j in g.adjacency[v])
