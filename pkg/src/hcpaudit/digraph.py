"""Digraph model, incidence matrices, exact rank and cycle predicates.

Vertices are dense integers ``0..n-1``; arc ``j`` is always ``arcs[j]``.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidDigraph, ParseError

Arc = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        arcs = tuple((int(t), int(h)) for t, h in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if self.n < 0:
            raise InvalidDigraph(f"negative vertex count {self.n}")
        seen = set()
        for j, (t, h) in enumerate(arcs):
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise InvalidDigraph(f"arc {j} ({t}, {h}) has a vertex outside [0, {self.n})")
            if t == h:
                raise InvalidDigraph(f"arc {j} is a self loop at {t}")
            if (t, h) in seen:
                raise InvalidDigraph(f"arc {j} ({t}, {h}) is a duplicate")
            seen.add((t, h))

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for j, (t, _) in enumerate(self.arcs):
            out[t].append(j)
        return tuple(tuple(a) for a in out)

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for j, (_, h) in enumerate(self.arcs):
            inc[h].append(j)
        return tuple(tuple(a) for a in inc)

    def out_degree(self, v: int) -> int:
        return len(self.out_arcs[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_arcs[v])

    def successors(self, v: int) -> list[int]:
        return [self.arcs[j][1] for j in self.out_arcs[v]]

    def predecessors(self, v: int) -> list[int]:
        return [self.arcs[j][0] for j in self.in_arcs[v]]

    def arc_subgraph(self, arc_ids: Iterable[int]) -> "Digraph":
        return Digraph(self.n, tuple(self.arcs[j] for j in sorted(set(arc_ids))))

    def without_arc(self, j: int) -> "Digraph":
        return Digraph(self.n, self.arcs[:j] + self.arcs[j + 1 :])

    def without_vertex(self, v: int) -> "Digraph":
        def relabel(x: int) -> int:
            return x - 1 if x > v else x

        kept = tuple((relabel(t), relabel(h)) for t, h in self.arcs if v not in (t, h))
        return Digraph(self.n - 1, kept)


# -- text format -----------------------------------------------------------


def parse_digraph(text: str) -> Digraph:
    """Parse the ``n m`` header + ``tail head`` lines format."""
    header: tuple[int, int] | None = None
    arcs: list[Arc] = []
    seen: dict[Arc, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("negative count in header", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex out of range [0, {n})", lineno)
        if a == b:
            raise ParseError(f"self loop at vertex {a}", lineno)
        if (a, b) in seen:
            raise ParseError(f"duplicate arc {a} {b} (first on line {seen[(a, b)]})", lineno)
        seen[(a, b)] = lineno
        arcs.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header")
    if len(arcs) != header[1]:
        raise ParseError(f"header declares {header[1]} arcs, found {len(arcs)}")
    return Digraph(header[0], tuple(arcs))


def format_digraph(d: Digraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{d.n} {d.m}")
    lines.extend(f"{t} {h}" for t, h in d.arcs)
    return "\n".join(lines) + "\n"


# -- incidence matrices ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """Read-only ``rows x cols`` integer table with entries in {-1, 0, +1}."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.int8, copy=True)
        if arr.ndim != 2:
            arr = arr.reshape(arr.shape[0] if arr.ndim else 0, -1)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def restrict_columns(self, cols: Iterable[int]) -> "IncidenceMatrix":
        idx = sorted(set(cols))
        return IncidenceMatrix(self.entries[:, idx].reshape(self.rows, len(idx)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(
            np.array_equal(self.entries, other.entries)
        )

    def __neg__(self) -> "IncidenceMatrix":
        return IncidenceMatrix(-self.entries)

    def __add__(self, other: "IncidenceMatrix") -> "IncidenceMatrix":
        return IncidenceMatrix(self.entries.astype(np.int16) + other.entries)


def build_incidence(d: Digraph) -> IncidenceMatrix:
    c = np.zeros((d.n, d.m), dtype=np.int8)
    for j, (t, h) in enumerate(d.arcs):
        c[t, j] = 1
        c[h, j] = -1
    return IncidenceMatrix(c)


def split_incidence(c: IncidenceMatrix) -> tuple[IncidenceMatrix, IncidenceMatrix]:
    """Return ``(C+, C-)``: the nonnegative and nonpositive parts of ``c``."""
    e = c.entries
    return IncidenceMatrix(np.where(e > 0, e, 0)), IncidenceMatrix(np.where(e < 0, e, 0))


# -- rank ------------------------------------------------------------------

_INT64_SAFE = 1 << 31


def rank_exact(mx: IncidenceMatrix | np.ndarray | Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Runs on int64 while every working entry stays below 2**31 in magnitude,
    so a product of two entries cannot overflow; otherwise it continues on
    Python integers.  No floating point is involved.
    """
    if isinstance(mx, IncidenceMatrix):
        a = mx.entries.astype(np.int64)
    else:
        a = np.array(mx, dtype=object)
        if a.size == 0:
            return 0
        a = a.reshape(a.shape[0], -1)
        try:
            if np.abs(a).max() < _INT64_SAFE:
                a = a.astype(np.int64)
        except TypeError:
            raise TypeError("rank_exact needs an integer matrix") from None
    if a.size == 0:
        return 0
    a = a.copy()
    rows, cols = a.shape
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        p = rank + int(nz[0])
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        piv = a[rank, c]
        if rank + 1 < rows and c + 1 < cols:
            if a.dtype == np.int64 and np.abs(a[rank:, c:]).max() >= _INT64_SAFE:
                a = a.astype(object)
                piv = int(piv)
            sub = a[rank + 1 :, c + 1 :]
            sub[...] = (piv * sub - np.outer(a[rank + 1 :, c], a[rank, c + 1 :])) // prev
        a[rank + 1 :, c] = 0
        prev = piv
        rank += 1
    return rank


class _DisjointSet:
    __slots__ = ("parent", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.count -= 1


def weak_components(d: Digraph, arc_subset: Iterable[int] | None = None) -> int:
    """Number of weakly connected components of ``(V, arc_subset)``; isolated vertices count."""
    ds = _DisjointSet(d.n)
    arcs = d.arcs
    ids = range(d.m) if arc_subset is None else arc_subset
    for j in ids:
        t, h = arcs[j]
        ds.union(t, h)
    return ds.count


def rank_by_components(d: Digraph, arc_subset: Iterable[int] | None = None) -> int:
    return d.n - weak_components(d, arc_subset)


# -- connectivity and classification ---------------------------------------


def _reach(n: int, start: int, nbrs) -> int:
    seen = [False] * n
    seen[start] = True
    q = deque([start])
    count = 1
    while q:
        v = q.popleft()
        for w in nbrs(v):
            if not seen[w]:
                seen[w] = True
                count += 1
                q.append(w)
    return count


def is_strongly_connected(d: Digraph) -> bool:
    if d.n <= 1:
        return True
    return _reach(d.n, 0, d.successors) == d.n and _reach(d.n, 0, d.predecessors) == d.n


class DegreeKind(enum.Enum):
    GAMMA = "Gamma"
    BOUND_TWO = "BoundTwo"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class DegreeClass:
    kind: DegreeKind
    out_degree: tuple[int, ...] = field(repr=False)
    in_degree: tuple[int, ...] = field(repr=False)
    strongly_connected: bool = False

    @property
    def is_bounded(self) -> bool:
        return self.kind is not DegreeKind.OUTSIDE


def classify(d: Digraph) -> DegreeClass:
    outs = tuple(len(a) for a in d.out_arcs)
    ins = tuple(len(a) for a in d.in_arcs)
    strong = is_strongly_connected(d)
    if all(x <= 2 for x in outs) and all(x <= 2 for x in ins):
        gamma = strong and all(x >= 1 for x in outs) and all(x >= 1 for x in ins)
        kind = DegreeKind.GAMMA if gamma else DegreeKind.BOUND_TWO
    else:
        kind = DegreeKind.OUTSIDE
    return DegreeClass(kind, outs, ins, strong)


# -- the forward relation and cycle predicates -----------------------------


def forward_relation(d: Digraph, a_i: int, a_j: int) -> int | None:
    """The vertex where arc ``a_i`` ends and arc ``a_j`` starts, if any."""
    if a_i == a_j:
        return None
    head = d.arcs[a_i][1]
    return head if head == d.arcs[a_j][0] else None


def _degree_one_cover(d: Digraph, arc_set: set[int]) -> dict[int, int] | None:
    """Map tail -> head if every touched vertex has exactly one in and one out arc."""
    succ: dict[int, int] = {}
    heads: set[int] = set()
    for j in arc_set:
        t, h = d.arcs[j]
        if t in succ or h in heads:
            return None
        succ[t] = h
        heads.add(h)
    if set(succ) != heads:
        return None
    return succ


def is_simple_cycle(d: Digraph, arc_ids: Iterable[int]) -> bool:
    arc_set = set(arc_ids)
    if not arc_set or not all(0 <= j < d.m for j in arc_set):
        return False
    succ = _degree_one_cover(d, arc_set)
    if succ is None:
        return False
    start = next(iter(succ))
    v, steps = succ[start], 1
    while v != start:
        v = succ[v]
        steps += 1
    return steps == len(succ)


def is_hamiltonian_subgraph(d: Digraph, arc_ids: Iterable[int]) -> bool:
    arc_set = set(arc_ids)
    if d.n < 2 or len(arc_set) != d.n:
        return False
    return is_simple_cycle(d, arc_set)


def _forward_values(d: Digraph, arc_set: frozenset[int]) -> set[int]:
    vals = set()
    for i in arc_set:
        for j in arc_set:
            v = forward_relation(d, i, j)
            if v is not None:
                vals.add(v)
    return vals


def satisfies_cycle_conditions(d: Digraph, arc_ids: Iterable[int]) -> bool:
    """Literal transcription of the two set conditions defining a cycle via the forward relation.

    Every arc needs a successor arc that itself has a different successor arc,
    and the forward relation must produce exactly ``|L|`` distinct vertices.
    """
    arc_set = frozenset(arc_ids)
    if not arc_set:
        return False
    for i in arc_set:
        rest = arc_set - {i}
        ok = False
        for j in rest:
            v1 = forward_relation(d, i, j)
            if v1 is None:
                continue
            for k in rest:
                v2 = forward_relation(d, j, k)
                if v2 is not None and v2 != v1:
                    ok = True
                    break
            if ok:
                break
        if not ok:
            return False
    return len(_forward_values(d, arc_set)) == len(arc_set)


def is_simple_cycle_literal(d: Digraph, arc_ids: Iterable[int], max_arcs: int = 16) -> bool:
    """Set-condition cycle that no proper nonempty subset also satisfies. Exponential in ``|L|``."""
    arc_set = frozenset(arc_ids)
    if len(arc_set) > max_arcs:
        raise ValueError(f"literal minimality check limited to {max_arcs} arcs")
    if not satisfies_cycle_conditions(d, arc_set):
        return False
    items = sorted(arc_set)
    for r in range(1, len(items)):
        for sub in itertools.combinations(items, r):
            if satisfies_cycle_conditions(d, sub):
                return False
    return True
