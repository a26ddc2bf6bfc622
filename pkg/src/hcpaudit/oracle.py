"""Ground truth and instance generators.

Nothing here touches the projector or the solver; the only shared code is
the ``Digraph`` type, so the audit suites compare two independent routes.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with the caller's 64-bit integer.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .digraph import Digraph, DegreeKind, classify
from .errors import TooLarge, Unsatisfiable

BRUTE_FORCE_MAX_N = 24
ENUMERATION_MAX_N = 16


def brute_force_hamiltonian(d: Digraph) -> frozenset[int] | None:
    """First Hamiltonian cycle found by backtracking from vertex 0, successors ascending."""
    n = d.n
    if n > BRUTE_FORCE_MAX_N:
        raise TooLarge(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    if n < 2:
        return None
    out = [sorted((d.arcs[j][1], j) for j in d.out_arcs[v]) for v in range(n)]
    if any(not o for o in out) or any(not d.in_arcs[v] for v in range(n)):
        return None
    visited = [False] * n
    visited[0] = True
    path: list[int] = []

    def extend(v: int, depth: int) -> bool:
        for w, j in out[v]:
            if depth == n:
                if w == 0:
                    path.append(j)
                    return True
                continue
            if visited[w]:
                continue
            visited[w] = True
            path.append(j)
            if extend(w, depth + 1):
                return True
            path.pop()
            visited[w] = False
        return False

    return frozenset(path) if extend(0, 1) else None


def enumerate_cycle_covers(d: Digraph, max_n: int = ENUMERATION_MAX_N) -> list[tuple[int, ...]]:
    """Every arc set giving each vertex exactly one out-arc and one in-arc.

    ``max_n`` raises the size guard, e.g. for split graphs of small inputs
    whose degree bound keeps the search tree small.
    """
    n = d.n
    if n > max_n:
        raise TooLarge(f"cycle cover enumeration limited to n <= {max_n}")
    if n == 0:
        return []
    out = [list(d.out_arcs[v]) for v in range(n)]
    in_tails = [{d.arcs[j][0] for j in d.in_arcs[v]} for v in range(n)]
    taken = [False] * n
    chosen: list[int] = []
    covers: list[tuple[int, ...]] = []

    def feasible(next_tail: int) -> bool:
        # every head still free must keep a tail among the unassigned vertices
        for h in range(n):
            if not taken[h] and not any(t >= next_tail for t in in_tails[h]):
                return False
        return True

    def assign(v: int) -> None:
        if v == n:
            covers.append(tuple(sorted(chosen)))
            return
        for j in out[v]:
            h = d.arcs[j][1]
            if taken[h]:
                continue
            taken[h] = True
            chosen.append(j)
            if feasible(v + 1):
                assign(v + 1)
            chosen.pop()
            taken[h] = False

    assign(0)
    covers.sort()
    return covers


def _single_cycle(d: Digraph, cover: tuple[int, ...]) -> bool:
    succ = {d.arcs[j][0]: d.arcs[j][1] for j in cover}
    v, steps = succ[0], 1
    while v != 0:
        v = succ[v]
        steps += 1
    return steps == d.n


def enumerate_hamiltonian_cycles(d: Digraph, max_n: int = ENUMERATION_MAX_N) -> list[tuple[int, ...]]:
    if d.n < 2:
        return []
    return [c for c in enumerate_cycle_covers(d, max_n) if _single_cycle(d, c)]


# -- generators ------------------------------------------------------------


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    cls: DegreeKind = DegreeKind.GAMMA
    plant_hc: bool = True
    seed: int = 0
    density: float = 0.5
    """Extra arcs attempted, as a fraction of ``n``."""


MAX_RETRIES = 2000


def _add_extra_arcs(
    rng: random.Random, n: int, arcs: list[tuple[int, int]], count: int
) -> None:
    present = set(arcs)
    outd = [0] * n
    ind = [0] * n
    for t, h in arcs:
        outd[t] += 1
        ind[h] += 1
    for _ in range(count * 8):
        if count == 0:
            break
        tails = [v for v in range(n) if outd[v] < 2]
        heads = [v for v in range(n) if ind[v] < 2]
        if not tails or not heads:
            break
        t = rng.choice(tails)
        h = rng.choice(heads)
        if t == h or (t, h) in present:
            continue
        arcs.append((t, h))
        present.add((t, h))
        outd[t] += 1
        ind[h] += 1
        count -= 1


def _derangement(rng: random.Random, n: int) -> list[int]:
    while True:
        p = list(range(n))
        rng.shuffle(p)
        if all(p[i] != i for i in range(n)):
            return p


def _finish(rng: random.Random, n: int, arcs: list[tuple[int, int]], planted: list[tuple[int, int]] | None):
    rng.shuffle(arcs)
    d = Digraph(n, tuple(arcs))
    if planted is None:
        return d, None
    where = {a: j for j, a in enumerate(d.arcs)}
    return d, frozenset(where[a] for a in planted)


def generate(spec: InstanceSpec) -> tuple[Digraph, frozenset[int] | None]:
    """Deterministic random instance for ``spec``; returns the planted HC's arc ids when planted."""
    n = spec.n
    if n < 3:
        raise Unsatisfiable("generation needs n >= 3")
    if spec.cls is DegreeKind.OUTSIDE:
        raise Unsatisfiable("only Gamma and BoundTwo instances are generated")
    rng = random.Random(spec.seed)
    extra = round(spec.density * n)

    if spec.plant_hc:
        order = list(range(n))
        rng.shuffle(order)
        planted = [(order[i], order[(i + 1) % n]) for i in range(n)]
        arcs = list(planted)
        _add_extra_arcs(rng, n, arcs, extra)
        return _finish(rng, n, arcs, planted)

    for _ in range(MAX_RETRIES):
        if spec.cls is DegreeKind.GAMMA:
            p = _derangement(rng, n)
            arcs = [(i, p[i]) for i in range(n)]
            _add_extra_arcs(rng, n, arcs, extra)
        else:
            # a fixed arc count can force strong connectivity on small n
            arcs = []
            _add_extra_arcs(rng, n, arcs, rng.randint(1, n + extra))
        d, _ = _finish(rng, n, arcs, None)
        if classify(d).kind is spec.cls:
            return d, None
    raise Unsatisfiable(f"no {spec.cls.value} instance for {spec} after {MAX_RETRIES} tries")


def gen_two_cycles_bridge(c1: int, c2: int) -> Digraph:
    """Cycles ``0..c1-1`` and ``c1..c1+c2-1`` plus one arc from the first to the second."""
    if c1 < 2 or c2 < 2:
        raise ValueError("both cycles need length >= 2")
    arcs = [(i, (i + 1) % c1) for i in range(c1)]
    arcs += [(c1 + i, c1 + (i + 1) % c2) for i in range(c2)]
    arcs.append((c1 - 1, c1))
    return Digraph(c1 + c2, tuple(arcs))


def all_bounded_digraphs(n: int) -> Iterator[Digraph]:
    """Every simple digraph on ``n`` labeled vertices with in- and out-degrees at most two."""
    choices = []
    for v in range(n):
        others = [w for w in range(n) if w != v]
        opts = [()]
        opts += [(w,) for w in others]
        opts += list(itertools.combinations(others, 2))
        choices.append(opts)
    for outs in itertools.product(*choices):
        ind = [0] * n
        ok = True
        for heads in outs:
            for h in heads:
                ind[h] += 1
                if ind[h] > 2:
                    ok = False
        if ok:
            yield Digraph(n, tuple((v, h) for v, heads in enumerate(outs) for h in heads))
