"""Bipartite matchings on projector graphs: Hopcroft-Karp, code enumeration, flips."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import NoPerfectMatching, NotPerfect
from .projector import (
    Component,
    ComponentDecomposition,
    ProjectorGraph,
    matching_edges_from_code,
)


@dataclass(frozen=True)
class Matching:
    """A set of projector edge ids, stored sorted. ``n`` is the side size."""

    n: int
    edges: tuple[int, ...]

    @classmethod
    def of(cls, g: ProjectorGraph, edges: Iterable[int]) -> "Matching":
        edges = tuple(sorted(set(edges)))
        used: set[int] = set()
        for j in edges:
            for v in g.endpoints(j):
                if v in used:
                    raise ValueError(f"edges share vertex {g.vertex_name(v)}")
                used.add(v)
        return cls(g.n, edges)

    @property
    def is_perfect(self) -> bool:
        return len(self.edges) == self.n

    def __len__(self) -> int:
        return len(self.edges)

    def mate_x(self, g: ProjectorGraph) -> list[int]:
        """Matched edge per X vertex, -1 when exposed."""
        mate = [-1] * g.n
        for j in self.edges:
            mate[g.edges[j][0]] = j
        return mate

    def exposed(self, g: ProjectorGraph) -> list[int]:
        covered = set()
        for j in self.edges:
            covered.update(g.endpoints(j))
        return [v for v in range(2 * g.n) if v not in covered]

    def serialize(self) -> str:
        return " ".join(map(str, self.edges))


def hopcroft_karp(g: ProjectorGraph) -> Matching:
    """Maximum matching; ties go to the lowest X vertex and lowest edge id."""
    n = g.n
    edges = g.edges
    x_adj = [g.adjacency[x] for x in range(n)]
    mate_x = [-1] * n
    mate_y = [-1] * n
    inf = n + 2
    while True:
        dist = [inf] * n
        q: deque[int] = deque()
        for x in range(n):
            if mate_x[x] == -1:
                dist[x] = 0
                q.append(x)
        found = inf
        while q:
            x = q.popleft()
            if dist[x] >= found:
                continue
            for j in x_adj[x]:
                je = mate_y[edges[j][1]]
                if je == -1:
                    found = min(found, dist[x] + 1)
                else:
                    x2 = edges[je][0]
                    if dist[x2] == inf:
                        dist[x2] = dist[x] + 1
                        q.append(x2)
        if found == inf:
            break
        pos = [0] * n
        for root in range(n):
            if mate_x[root] != -1:
                continue
            stack = [root]
            path: list[int] = []
            while stack:
                x = stack[-1]
                adj = x_adj[x]
                advanced = augmented = False
                while pos[x] < len(adj):
                    j = adj[pos[x]]
                    pos[x] += 1
                    je = mate_y[edges[j][1]]
                    if je == -1:
                        if dist[x] + 1 == found:
                            path.append(j)
                            augmented = True
                            break
                    elif dist[edges[je][0]] == dist[x] + 1:
                        path.append(j)
                        stack.append(edges[je][0])
                        advanced = True
                        break
                if augmented:
                    for j in path:
                        mate_x[edges[j][0]] = j
                        mate_y[edges[j][1]] = j
                    break
                if not advanced:
                    dist[x] = inf
                    stack.pop()
                    if path:
                        path.pop()
    return Matching(n, tuple(sorted(j for j in mate_x if j != -1)))


def perfect_matching(g: ProjectorGraph) -> Matching | None:
    m = hopcroft_karp(g)
    return m if m.is_perfect else None


def enumerate_matchings(
    dec: ComponentDecomposition, limit: int | None = None
) -> Iterator[tuple[tuple[int, ...], Matching]]:
    """All perfect matchings paired with their codes, in lexicographic code order."""
    if dec.odd_paths:
        raise NoPerfectMatching(dec.odd_paths[0])
    k = len(dec.cycle_indices)
    codes = itertools.product((0, 1), repeat=k)
    if limit is not None:
        codes = itertools.islice(codes, limit)
    n = dec.graph.n
    for code in codes:
        yield code, Matching(n, matching_edges_from_code(dec, code))


class MatchingCount(NamedTuple):
    labeled: int
    weight_classes: int


def count_matchings(dec: ComponentDecomposition) -> MatchingCount:
    if dec.odd_paths:
        return MatchingCount(0, 0)
    k = len(dec.cycle_indices)
    return MatchingCount(2**k, k + 1)


def flip(m: Matching, comp: Component) -> Matching:
    """Swap the matching's alternating class inside one even-cycle component."""
    if not comp.is_cycle:
        raise ValueError("flip needs an even cycle component")
    if not m.is_perfect:
        raise NotPerfect("flip needs a perfect matching")
    a, b = comp.class_a(), comp.class_b()
    current = set(m.edges)
    if set(a) <= current:
        out, into = a, b
    elif set(b) <= current:
        out, into = b, a
    else:
        raise ValueError("matching does not restrict to an alternating class of the component")
    current.difference_update(out)
    current.update(into)
    return Matching(m.n, tuple(sorted(current)))
