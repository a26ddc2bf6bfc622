"""Hamiltonian cycle search over the perfect matchings of the projector graph.

A perfect matching of the projector lifts to a cycle cover of the digraph;
the cover is a Hamiltonian cycle exactly when its incidence rank is
``n - 1``.  The greedy search flips one even-cycle component at a time and
keeps the flip when the rank goes up.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal

import numpy as np

from .digraph import (
    Digraph,
    DegreeKind,
    classify,
    is_hamiltonian_subgraph,
    rank_by_components,
    rank_exact,
)
from .errors import (
    CapExceeded,
    DegreeOutsideClass,
    NotHamiltonianAfterUnsplit,
    RankMismatch,
)
from .matching import Matching, flip, hopcroft_karp
from .projector import (
    ComponentDecomposition,
    code_of,
    decompose,
    hall_violation,
    matching_edges_from_code,
    project,
)

RankPath = Literal["components", "exact"]
Order = Literal["ascending", "descending"]

DEFAULT_CODE_CAP = 1 << 20


class Verdict(enum.Enum):
    HAMILTONIAN = "HAMILTONIAN"
    NO_PM = "NO_PM"
    STUCK = "STUCK"
    EXHAUSTED = "EXHAUSTED"
    NOT_STRONG = "NOT_STRONG"
    BAD_DEGREE = "BAD_DEGREE"

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self]


_EXIT_CODES = {
    Verdict.HAMILTONIAN: 0,
    Verdict.NO_PM: 1,
    Verdict.EXHAUSTED: 1,
    Verdict.NOT_STRONG: 1,
    Verdict.STUCK: 2,
    Verdict.BAD_DEGREE: 3,
}


@dataclass(frozen=True)
class SolveOutcome:
    verdict: Verdict
    arcs: tuple[int, ...] = ()
    flips: int = 0
    codes_visited: tuple[tuple[int, ...], ...] = ()
    best_rank: int | None = None
    final_code: tuple[int, ...] | None = None
    hall_witness: frozenset[int] = frozenset()
    codes_tried: int = 0
    passes: int = 0

    @property
    def is_hamiltonian(self) -> bool:
        return self.verdict is Verdict.HAMILTONIAN


# -- vertex splitting ------------------------------------------------------


@dataclass(frozen=True)
class SplitMap:
    original: Digraph = field(repr=False)
    split_vertices: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    """``(v_in, v_out)`` per split vertex; ``v_in`` keeps the original id."""
    bridge_arcs: tuple[int, ...]
    arc_origin: tuple[int, ...]
    """Original arc id per arc of the split graph, -1 for bridges."""

    @property
    def original_n(self) -> int:
        return self.original.n

    def to_split(self, arc_ids: Iterable[int]) -> frozenset[int]:
        """Image of an original Hamiltonian cycle in the split graph (bridges added)."""
        return frozenset(arc_ids) | frozenset(self.bridge_arcs)


def split_degree_two(d: Digraph) -> tuple[Digraph, SplitMap]:
    """Replace each vertex with in- and out-degree two by an in-copy and an out-copy joined by a bridge."""
    if classify(d).kind is DegreeKind.OUTSIDE:
        raise DegreeOutsideClass("splitting needs in- and out-degrees <= 2")
    split = [v for v in range(d.n) if d.out_degree(v) == 2 and d.in_degree(v) == 2]
    out_copy = {v: d.n + i for i, v in enumerate(split)}
    arcs = [(out_copy.get(t, t), h) for t, h in d.arcs]
    bridges = []
    for v in split:
        bridges.append(len(arcs))
        arcs.append((v, out_copy[v]))
    s = Digraph(d.n + len(split), tuple(arcs))
    origin = tuple(range(d.m)) + (-1,) * len(split)
    smap = SplitMap(d, tuple(split), tuple((v, out_copy[v]) for v in split), tuple(bridges), origin)
    return s, smap


def unsplit(smap: SplitMap, arc_ids: Iterable[int]) -> frozenset[int]:
    result = frozenset(smap.arc_origin[j] for j in arc_ids if smap.arc_origin[j] >= 0)
    if not is_hamiltonian_subgraph(smap.original, result):
        raise NotHamiltonianAfterUnsplit(f"arcs {sorted(result)} are not a Hamiltonian cycle")
    return result


# -- rank evaluation -------------------------------------------------------


def lifted_incidence(d: Digraph, arc_ids: Iterable[int]) -> np.ndarray:
    cols = sorted(arc_ids)
    c = np.zeros((d.n, len(cols)), dtype=np.int64)
    for k, j in enumerate(cols):
        t, h = d.arcs[j]
        c[t, k] = 1
        c[h, k] = -1
    return c


def make_rank_fn(d: Digraph, rank_path: RankPath = "components", audit: bool = False) -> Callable[[Iterable[int]], int]:
    def by_components(arcs: Iterable[int]) -> int:
        return rank_by_components(d, arcs)

    def by_elimination(arcs: Iterable[int]) -> int:
        return rank_exact(lifted_incidence(d, arcs))

    if rank_path not in ("components", "exact"):
        raise ValueError(f"unknown rank path {rank_path!r}")
    primary = by_components if rank_path == "components" else by_elimination
    if not audit:
        return primary

    def checked(arcs: Iterable[int]) -> int:
        arcs = tuple(arcs)
        a, b = by_components(arcs), by_elimination(arcs)
        if a != b:
            raise RankMismatch(f"component rank {a} != elimination rank {b} for arcs {arcs}")
        return a

    return checked


# -- shared setup ----------------------------------------------------------


@dataclass
class _Prepared:
    graph: Digraph
    smap: SplitMap | None
    dec: ComponentDecomposition


def _prepare(d: Digraph, split: bool) -> _Prepared | SolveOutcome:
    cls = classify(d)
    if cls.kind is DegreeKind.OUTSIDE:
        return SolveOutcome(Verdict.BAD_DEGREE)
    if not cls.strongly_connected:
        return SolveOutcome(Verdict.NOT_STRONG)
    if d.n < 2:
        return SolveOutcome(Verdict.EXHAUSTED)
    smap = None
    s = d
    if split:
        s, smap = split_degree_two(d)
    return _Prepared(s, smap, decompose(project(s)))


def _finish(prep: _Prepared, arcs: Iterable[int]) -> tuple[int, ...]:
    arcs = frozenset(arcs)
    if prep.smap is not None:
        arcs = unsplit(prep.smap, arcs)
    if not is_hamiltonian_subgraph(prep.smap.original if prep.smap else prep.graph, arcs):
        raise AssertionError(f"solver produced a non-Hamiltonian arc set {sorted(arcs)}")
    return tuple(sorted(arcs))


def _no_pm(prep: _Prepared) -> SolveOutcome:
    return SolveOutcome(Verdict.NO_PM, hall_witness=hall_violation(prep.dec.graph))


# -- greedy flip search ----------------------------------------------------


@dataclass
class FlipTrace:
    matching: Matching
    code: tuple[int, ...]
    rank: int
    flips: int
    passes: int
    visited: list[tuple[int, ...]]
    reached: bool


def flip_search(
    dec: ComponentDecomposition,
    start: Matching,
    rank: Callable[[Iterable[int]], int],
    *,
    target: Callable[[Matching, int], bool],
    strict: bool = True,
    order: Order = "ascending",
    max_passes: int | None = None,
) -> FlipTrace:
    """Visit cycle components in order, keeping a flip when the rank of its lift improves.

    ``strict`` accepts only a rank increase; otherwise an equal rank is also
    accepted.  Passes repeat until one makes no acceptance or ``max_passes``
    is reached.
    """
    cycles = dec.cycles
    k = len(cycles)
    if max_passes is None:
        max_passes = max(1, k)
    m = start
    code = list(code_of(dec, m))
    r = rank(m.edges)
    visited = [tuple(code)]
    flips = passes = 0
    if target(m, r):
        return FlipTrace(m, tuple(code), r, 0, 0, visited, True)
    indices = list(range(k)) if order == "ascending" else list(reversed(range(k)))
    while passes < max_passes and k:
        passes += 1
        accepted = False
        for i in indices:
            m2 = flip(m, cycles[i])
            code[i] ^= 1
            visited.append(tuple(code))
            r2 = rank(m2.edges)
            if r2 > r or (not strict and r2 == r):
                m, r = m2, r2
                flips += 1
                accepted = True
                if target(m, r):
                    return FlipTrace(m, tuple(code), r, flips, passes, visited, True)
            else:
                code[i] ^= 1
        if not accepted:
            break
    return FlipTrace(m, tuple(code), r, flips, passes, visited, False)


def solve_greedy(
    d: Digraph,
    max_passes: int | None = None,
    *,
    rank_path: RankPath = "components",
    audit: bool = False,
    order: Order = "ascending",
    split: bool = False,
    initial: Iterable[int] | None = None,
) -> SolveOutcome:
    """Greedy rank-increasing flips starting from the Hopcroft-Karp matching.

    ``initial`` overrides the starting perfect matching (edge ids of the
    graph actually searched, i.e. the split graph when ``split`` is set).
    """
    prep = _prepare(d, split)
    if isinstance(prep, SolveOutcome):
        return prep
    s, dec = prep.graph, prep.dec
    if initial is not None:
        m0 = Matching.of(dec.graph, initial)
    else:
        m0 = hopcroft_karp(dec.graph)
    if not m0.is_perfect:
        return _no_pm(prep)
    rank = make_rank_fn(s, rank_path, audit)
    goal = s.n - 1
    trace = flip_search(
        dec, m0, rank, target=lambda _m, r: r == goal, strict=True, order=order, max_passes=max_passes
    )
    visited = tuple(trace.visited)
    if trace.reached:
        return SolveOutcome(
            Verdict.HAMILTONIAN,
            _finish(prep, trace.matching.edges),
            flips=trace.flips,
            codes_visited=visited,
            best_rank=trace.rank,
            final_code=trace.code,
            passes=trace.passes,
        )
    # every code was looked at, so "no" is definite
    exhausted = len(set(visited)) == 1 << len(dec.cycle_indices)
    return SolveOutcome(
        Verdict.EXHAUSTED if exhausted else Verdict.STUCK,
        flips=trace.flips,
        codes_visited=visited,
        best_rank=trace.rank,
        final_code=trace.code,
        passes=trace.passes,
    )


# -- exhaustive search -----------------------------------------------------


def solve_exact(
    d: Digraph,
    code_cap: int = DEFAULT_CODE_CAP,
    *,
    rank_path: RankPath = "components",
    audit: bool = False,
    split: bool = False,
) -> SolveOutcome:
    """Try every component code in lexicographic order."""
    prep = _prepare(d, split)
    if isinstance(prep, SolveOutcome):
        return prep
    s, dec = prep.graph, prep.dec
    if not dec.has_perfect_matching:
        return _no_pm(prep)
    rank = make_rank_fn(s, rank_path, audit)
    goal = s.n - 1
    tried = 0
    for code in itertools.product((0, 1), repeat=len(dec.cycle_indices)):
        if tried >= code_cap:
            raise CapExceeded(f"more than {code_cap} codes")
        tried += 1
        edges = matching_edges_from_code(dec, code)
        if rank(edges) == goal:
            return SolveOutcome(
                Verdict.HAMILTONIAN, _finish(prep, edges), final_code=code, codes_tried=tried, best_rank=goal
            )
    return SolveOutcome(Verdict.EXHAUSTED, codes_tried=tried)


# -- second Hamiltonian cycle ----------------------------------------------


def _second_setup(d: Digraph, known: Iterable[int], split: bool):
    known = frozenset(known)
    if not is_hamiltonian_subgraph(d, known):
        raise ValueError("known arc set is not a Hamiltonian cycle")
    if classify(d).kind is DegreeKind.OUTSIDE:
        raise DegreeOutsideClass("second-cycle search needs in- and out-degrees <= 2")
    s, smap = (split_degree_two(d) if split else (d, None))
    start = smap.to_split(known) if smap else known
    dec = decompose(project(s))
    return s, smap, dec, Matching.of(dec.graph, start), known


def _back(smap: SplitMap | None, arcs: Iterable[int]) -> frozenset[int]:
    return unsplit(smap, arcs) if smap else frozenset(arcs)


def second_hc_by_flips(
    d: Digraph, known: Iterable[int], *, split: bool = False, order: Order = "ascending"
) -> frozenset[int] | None:
    """Flip search from a known cycle accepting rank-preserving flips; polynomial, not exhaustive."""
    s, smap, dec, start, known = _second_setup(d, known, split)
    goal = s.n - 1
    start_edges = frozenset(start.edges)
    trace = flip_search(
        dec,
        start,
        make_rank_fn(s),
        target=lambda m, r: r == goal and frozenset(m.edges) != start_edges,
        strict=False,
        order=order,
    )
    return _back(smap, trace.matching.edges) if trace.reached else None


def find_second_hc(
    d: Digraph,
    known: Iterable[int],
    code_cap: int = DEFAULT_CODE_CAP,
    *,
    exhaustive: bool = True,
    split: bool = False,
) -> frozenset[int] | None:
    """Another Hamiltonian cycle (as a different arc set), or None.

    Tries the rank-preserving flip search first; when ``exhaustive`` it then
    walks all codes in lexicographic order starting just after the known
    cycle's code, wrapping around.
    """
    found = second_hc_by_flips(d, known, split=split)
    if found is not None or not exhaustive:
        return found
    s, smap, dec, start, _ = _second_setup(d, known, split)
    k = len(dec.cycle_indices)
    if k == 0:
        return None
    rank = make_rank_fn(s)
    goal = s.n - 1
    base = int("".join(map(str, code_of(dec, start))), 2)
    total = 1 << k
    for step in range(1, total):
        if step > code_cap:
            raise CapExceeded(f"more than {code_cap} codes")
        value = (base + step) % total
        code = tuple(int(b) for b in format(value, f"0{k}b"))
        edges = matching_edges_from_code(dec, code)
        if rank(edges) == goal:
            return _back(smap, edges)
    return None
