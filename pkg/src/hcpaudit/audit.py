"""Randomized counterexample search for each claim, with witness shrinking and replay.

A claim audit draws instances, keeps the ones the claim speaks about, and
checks each.  ``CONFIRMED`` only means no counterexample turned up within
the stated budget.
"""

from __future__ import annotations

import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple

from .digraph import (
    Digraph,
    DegreeKind,
    build_incidence,
    classify,
    is_strongly_connected,
    rank_exact,
    split_incidence,
)
from .errors import (
    BudgetTooSmall,
    CapExceeded,
    HCPError,
    NotHamiltonianAfterUnsplit,
    SizeOutOfGuard,
    Unsatisfiable,
)
from .matching import count_matchings, enumerate_matchings
from .oracle import (
    InstanceSpec,
    all_bounded_digraphs,
    brute_force_hamiltonian,
    enumerate_hamiltonian_cycles,
    gen_two_cycles_bridge,
    generate,
)
from .projector import decompose, project
from .solver import (
    Verdict,
    find_second_hc,
    make_rank_fn,
    second_hc_by_flips,
    solve_exact,
    solve_greedy,
    split_degree_two,
    unsplit,
)

CONFIRMED = "CONFIRMED"
REFUTED = "REFUTED"
UNDECIDED = "UNDECIDED"

EXHAUSTIVE_MAX_N = 5
ENUM_CODE_CAP = 1 << 12
# split graphs of the largest THM6 inputs; in-copies have one out-arc, so the search stays small
SPLIT_ENUMERATION_MAX_N = 24


class Observation(NamedTuple):
    refuted: bool
    details: dict[str, str] = {}
    stats: dict[str, int] = {}
    inconclusive: bool = False


def format_witness(d: Digraph) -> str:
    return f"{d.n};" + ",".join(f"{t}-{h}" for t, h in d.arcs)


def parse_witness(text: str) -> Digraph:
    n_part, _, arc_part = text.strip().partition(";")
    arcs = []
    for tok in filter(None, arc_part.split(",")):
        t, h = tok.split("-")
        arcs.append((int(t), int(h)))
    return Digraph(int(n_part), tuple(arcs))


# -- instance streams ------------------------------------------------------

InstanceStream = Callable[[random.Random, int, int, int], Iterator[Digraph]]


def _random_stream(
    classes: tuple[DegreeKind, ...],
    plant: tuple[bool, ...] = (True, False),
    densities: tuple[float, ...] = (0.25, 0.5, 1.0),
) -> InstanceStream:
    def stream(rng: random.Random, budget: int, lo: int, hi: int) -> Iterator[Digraph]:
        for _ in range(budget):
            spec = InstanceSpec(
                n=rng.randint(lo, hi),
                cls=rng.choice(classes),
                plant_hc=rng.choice(plant),
                seed=rng.getrandbits(64),
                density=rng.choice(densities),
            )
            try:
                yield generate(spec)[0]
            except Unsatisfiable:
                continue

    return stream


def _cor2_stream(rng: random.Random, budget: int, lo: int, hi: int) -> Iterator[Digraph]:
    bridges = [(3, 3)] + [
        (a, b) for a in range(2, hi) for b in range(2, hi) if (a, b) != (3, 3) and a + b <= hi
    ]
    bridges = [(a, b) for a, b in bridges if lo <= a + b <= hi]
    for a, b in bridges[:budget]:
        yield gen_two_cycles_bridge(a, b)
    # random instances, mostly not strongly connected
    yield from _random_stream((DegreeKind.BOUND_TWO, DegreeKind.GAMMA), (False,))(
        rng, max(0, budget - len(bridges)), lo, hi
    )


# -- claim checks ----------------------------------------------------------


def _kind(d: Digraph) -> DegreeKind:
    return classify(d).kind


def check_thm1_c3(d: Digraph) -> Observation | None:
    if d.n < 1 or _kind(d) is not DegreeKind.GAMMA:
        return None
    dec = decompose(project(d))
    c4 = sum(1 for c in dec.components if c.is_cycle and len(c.edges) == 4)
    four_vertex = sum(1 for c in dec.components if len(c.vertices) == 4)
    refuted = 4 * c4 > d.n
    details = {"n": str(d.n), "c4_components": str(c4), "bound_n_over_4": f"{d.n / 4:g}"}
    return Observation(refuted, details, {"max_c4": c4, "max_four_vertex": four_vertex})


def check_cor2(d: Digraph) -> Observation | None:
    if d.n < 2:
        return None
    cplus, cminus = split_incidence(build_incidence(d))
    rp, rm = rank_exact(cplus), rank_exact(cminus)
    strong = is_strongly_connected(d)
    full = rp == d.n and rm == d.n
    details = {"rank_cplus": str(rp), "rank_cminus": str(rm), "n": str(d.n), "strongly_connected": str(strong)}
    if full and not strong:
        details["direction"] = "full rank does not imply strong connectivity"
    elif strong and not full:
        details["direction"] = "strong connectivity without full rank"
    return Observation(full != strong, details, {"full_not_strong": int(full and not strong)})


def check_lemma2(d: Digraph) -> Observation | None:
    if d.n < 2 or d.n > 12 or _kind(d) is DegreeKind.OUTSIDE:
        return None
    hcs = enumerate_hamiltonian_cycles(d)
    if not hcs:
        return None
    for hc in hcs:
        sub = d.arc_subgraph(hc)
        g = project(sub)
        degrees_ok = all(g.degree(v) == 1 for v in range(2 * d.n))
        if not degrees_ok or g.m != d.n:
            return Observation(True, {"cycle": " ".join(map(str, hc)), "edges": str(g.m)})
    return Observation(False, stats={"cycles_checked": len(hcs)})


def check_lemma4(d: Digraph) -> Observation | None:
    if _kind(d) is DegreeKind.OUTSIDE:
        return None
    dec = decompose(project(d))
    if not dec.cycles:
        return None
    g = dec.graph
    for comp in dec.cycles:
        a, b = comp.class_a(), comp.class_b()
        covers = []
        for cls in (a, b):
            touched = [v for j in cls for v in g.endpoints(j)]
            covers.append(len(touched) == len(set(touched)) and set(touched) == set(comp.vertices))
        ok = not (set(a) & set(b)) and set(a) | set(b) == set(comp.edges) and all(covers)
        if not ok:
            return Observation(True, {"component_edges": " ".join(map(str, comp.edges))})
    return Observation(False, stats={"cycles_checked": len(dec.cycles)})


def check_lemma5(d: Digraph) -> Observation | None:
    if _kind(d) is not DegreeKind.GAMMA:
        return None
    count = count_matchings(decompose(project(d)))
    labeled_over = count.labeled**4 > 2**d.n
    classes_over = 2 * count.weight_classes > d.n
    details = {
        "n": str(d.n),
        "labeled_matchings": str(count.labeled),
        "labeled_bound": f"2^({d.n}/4)",
        "weight_classes": str(count.weight_classes),
        "unlabeled_bound": f"{d.n / 2:g}",
        "labeled_exceeds": str(labeled_over),
        "weight_classes_exceed": str(classes_over),
    }
    stats = {"max_labeled": count.labeled, "max_weight_classes": count.weight_classes}
    return Observation(labeled_over or classes_over, details, stats)


def check_prop1(d: Digraph) -> Observation | None:
    if _kind(d) is not DegreeKind.GAMMA:
        return None
    dec = decompose(project(d))
    k = len(dec.cycles)
    if k < 2 or not dec.has_perfect_matching:
        return None
    if 2**k > ENUM_CODE_CAP:
        return Observation(False, inconclusive=True)
    rank = make_rank_fn(d)
    by_weight: dict[int, tuple[tuple[int, ...], int]] = {}
    for code, m in enumerate_matchings(dec):
        r = rank(m.edges)
        w = sum(code)
        if w in by_weight and by_weight[w][1] != r:
            first, r0 = by_weight[w]
            details = {
                "weight": str(w),
                "code_a": "".join(map(str, first)),
                "rank_a": str(r0),
                "code_b": "".join(map(str, code)),
                "rank_b": str(r),
            }
            return Observation(True, details)
        by_weight.setdefault(w, (code, r))
    return Observation(False)


def check_thm2_fwd(d: Digraph) -> Observation | None:
    if _kind(d) is DegreeKind.OUTSIDE or brute_force_hamiltonian(d) is None:
        return None
    try:
        out = solve_exact(d, code_cap=ENUM_CODE_CAP)
    except CapExceeded:
        return Observation(False, inconclusive=True)
    return Observation(out.verdict is not Verdict.HAMILTONIAN, {"solver": out.verdict.value})


def check_thm2_back(d: Digraph) -> Observation | None:
    if d.n < 2 or d.n > 16 or _kind(d) is DegreeKind.OUTSIDE:
        return None
    dec = decompose(project(d))
    if not dec.has_perfect_matching:
        return None
    if 2 ** len(dec.cycles) > ENUM_CODE_CAP:
        return Observation(False, inconclusive=True)
    hcs = set(enumerate_hamiltonian_cycles(d))
    rank = make_rank_fn(d)
    full = 0
    for code, m in enumerate_matchings(dec):
        is_full = rank(m.edges) == d.n - 1
        full += is_full
        if is_full != (m.edges in hcs):
            details = {"code": "".join(map(str, code)), "arcs": " ".join(map(str, m.edges)), "rank_full": str(is_full)}
            return Observation(True, details)
    return Observation(False, stats={"full_rank_matchings": full})


def check_thm3_complete(d: Digraph) -> Observation | None:
    if _kind(d) is not DegreeKind.GAMMA or brute_force_hamiltonian(d) is None:
        return None
    out = solve_greedy(d)
    # the verdict follows the default order; descending is measured alongside
    desc = solve_greedy(d, order="descending")
    details = {"greedy": out.verdict.value, "best_rank": str(out.best_rank), "n": str(d.n)}
    if out.final_code is not None:
        details["final_code"] = "".join(map(str, out.final_code))
    details["greedy_descending"] = desc.verdict.value
    found = out.verdict is Verdict.HAMILTONIAN
    stats = {"greedy_found": int(found), "greedy_found_descending": int(desc.is_hamiltonian)}
    return Observation(not found, details, stats)


def check_thm6(d: Digraph) -> Observation | None:
    if d.n < 2 or _kind(d) is DegreeKind.OUTSIDE:
        return None
    s, smap = split_degree_two(d)
    h_d = brute_force_hamiltonian(d) is not None
    h_s = brute_force_hamiltonian(s)
    details = {"hc_original": str(h_d), "hc_split": str(h_s is not None)}
    if h_d != (h_s is not None):
        return Observation(True, details)
    cycles = enumerate_hamiltonian_cycles(s, max_n=SPLIT_ENUMERATION_MAX_N) if h_s else []
    for hc in cycles:
        try:
            unsplit(smap, hc)
        except NotHamiltonianAfterUnsplit:
            details["unsplit_failed"] = " ".join(map(str, hc))
            return Observation(True, details)
    return Observation(False, stats={"split_vertices": len(smap.split_vertices)})


def check_cor3(d: Digraph) -> Observation | None:
    if d.n > 16 or _kind(d) is not DegreeKind.GAMMA:
        return None
    hcs = enumerate_hamiltonian_cycles(d)
    if len(hcs) < 2:
        return None
    known = hcs[0]
    by_flips = second_hc_by_flips(d, known)
    try:
        exhaustive = find_second_hc(d, known, code_cap=ENUM_CODE_CAP)
    except CapExceeded:
        exhaustive = None
    details = {
        "known": " ".join(map(str, known)),
        "oracle_cycles": str(len(hcs)),
        "flip_search": "found" if by_flips is not None else "none",
        "exhaustive": "found" if exhaustive is not None else "none",
    }
    return Observation(by_flips is None, details, {"flip_found": int(by_flips is not None)})


# -- registry --------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    check: Callable[[Digraph], Observation | None]
    stream: InstanceStream
    max_n: int
    default_sizes: tuple[int, int] = (3, 10)


_GAMMA = (DegreeKind.GAMMA,)
_BOUNDED = (DegreeKind.GAMMA, DegreeKind.BOUND_TWO)

CLAIMS: dict[str, Claim] = {
    c.id: c
    for c in (
        Claim("THM1_C3", "projector has at most n/4 four-cycle components", check_thm1_c3,
              _random_stream(_GAMMA, densities=(0.5, 1.0)), 400),
        Claim("COR2", "strongly connected iff r(C+) = r(C-) = n", check_cor2, _cor2_stream, 400),
        Claim("LEMMA2", "a Hamiltonian cycle projects to a 1-regular graph with n edges", check_lemma2,
              _random_stream(_BOUNDED, (True,)), 12),
        Claim("LEMMA4", "an even cycle splits into two disjoint perfect matchings", check_lemma4,
              _random_stream(_BOUNDED, densities=(0.5, 1.0)), 400),
        Claim("LEMMA5", "at most 2^(n/4) labeled and n/2 unlabeled perfect matchings", check_lemma5,
              _random_stream(_GAMMA, densities=(0.5, 1.0)), 400),
        Claim("PROP1", "matchings with isomorphic codes lift to equal ranks", check_prop1,
              _random_stream(_GAMMA, densities=(1.0,)), 16),
        Claim("THM2_FWD", "a Hamiltonian cycle gives a perfect matching of rank n-1", check_thm2_fwd,
              _random_stream(_BOUNDED), 16),
        Claim("THM2_BACK", "a perfect matching of rank n-1 lifts to a Hamiltonian cycle", check_thm2_back,
              _random_stream(_BOUNDED), 16),
        Claim("THM3_COMPLETE", "greedy rank-increasing flips decide Hamiltonicity", check_thm3_complete,
              _random_stream(_GAMMA, (True,), (0.5, 1.0)), 24),
        Claim("THM6_EQUIV", "splitting degree-(2,2) vertices preserves Hamiltonicity", check_thm6,
              _random_stream(_BOUNDED), 12),
        Claim("COR3", "a second Hamiltonian cycle is found by rank-preserving flips", check_cor3,
              _random_stream(_GAMMA, (True,), (1.0,)), 16),
    )
}


# -- running an audit ------------------------------------------------------


@dataclass
class AuditReport:
    claim: str
    verdict: str
    budget: int
    trials: int
    counterexamples: int
    seed: int
    sizes: tuple[int, int]
    anchor: str = ""
    exhaustive: bool = False
    inconclusive: int = 0
    witness: Digraph | None = None
    witness_details: dict[str, str] = field(default_factory=dict)
    witness_min: Digraph | None = None
    stats: dict[str, int] = field(default_factory=dict)
    elapsed: float | None = None

    def to_text(self) -> str:
        lines = [
            f"claim={self.claim}",
            f"anchor={self.anchor}",
            f"verdict={self.verdict}",
            f"budget={self.budget}",
            f"trials={self.trials}",
            f"counterexamples={self.counterexamples}",
            f"inconclusive={self.inconclusive}",
            f"seed={self.seed}",
            f"sizes={self.sizes[0]}..{self.sizes[1]}",
            f"exhaustive={str(self.exhaustive).lower()}",
        ]
        if self.witness is not None:
            lines.append(f"witness={format_witness(self.witness)}")
            lines.extend(f"witness.{k}={v}" for k, v in self.witness_details.items())
        if self.witness_min is not None:
            lines.append(f"witness_min={format_witness(self.witness_min)}")
        lines.extend(f"stat.{k}={v}" for k, v in sorted(self.stats.items()))
        if self.elapsed is not None:
            lines.append(f"elapsed_s={self.elapsed:.3f}")
        return "\n".join(lines) + "\n"

    CSV_HEADER = "claim,verdict,budget,trials,counterexamples,seed,sizes,witness,witness_min"

    def to_csv_row(self) -> str:
        w = format_witness(self.witness) if self.witness else ""
        wm = format_witness(self.witness_min) if self.witness_min else ""
        return ",".join(
            [self.claim, self.verdict, str(self.budget), str(self.trials), str(self.counterexamples),
             str(self.seed), f"{self.sizes[0]}..{self.sizes[1]}", f'"{w}"', f'"{wm}"']
        )


def _observe(claim: Claim, d: Digraph) -> Observation | None:
    try:
        return claim.check(d)
    except HCPError:
        return None


def shrink(claim: Claim, d: Digraph, max_steps: int = 400) -> Digraph:
    """Greedy best-effort minimization: drop arcs, then vertices, while the refutation replays."""
    steps = 0
    improved = True
    while improved and steps < max_steps:
        improved = False
        candidates = [d.without_arc(j) for j in range(d.m)]
        if d.n > 2:
            candidates += [d.without_vertex(v) for v in range(d.n)]
        for cand in candidates:
            if steps >= max_steps:
                break
            steps += 1
            obs = _observe(claim, cand)
            if obs is not None and obs.refuted:
                d = cand
                improved = True
                break
    return d


def replay(claim_id: str, d: Digraph) -> Observation | None:
    return CLAIMS[claim_id].check(d)


def _instances(claim: Claim, budget: int, sizes: tuple[int, int], seed: int, exhaustive: bool) -> Iterator[Digraph]:
    lo, hi = sizes
    if exhaustive:
        for n in range(lo, hi + 1):
            yield from all_bounded_digraphs(n)
        return
    rng = random.Random(f"{claim.id}:{seed}")
    yield from claim.stream(rng, budget, lo, hi)


def audit(
    claim_id: str,
    budget: int = 200,
    sizes: tuple[int, int] | None = None,
    seed: int = 0,
    *,
    exhaustive: bool = False,
    shrink_steps: int = 400,
    timing: bool = False,
) -> AuditReport:
    if claim_id not in CLAIMS:
        raise KeyError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIMS)}")
    claim = CLAIMS[claim_id]
    sizes = sizes or claim.default_sizes
    lo, hi = sizes
    if lo < 1 or lo > hi or hi > claim.max_n:
        raise SizeOutOfGuard(f"sizes {lo}..{hi} outside 1..{claim.max_n} for {claim_id}")
    if exhaustive and hi > EXHAUSTIVE_MAX_N:
        raise SizeOutOfGuard(f"exhaustive audits are limited to n <= {EXHAUSTIVE_MAX_N}")
    if budget < 1 and not exhaustive:
        raise BudgetTooSmall("budget must be positive")

    started = time.perf_counter()
    trials = counterexamples = inconclusive = 0
    witness: Digraph | None = None
    witness_details: dict[str, str] = {}
    stats: dict[str, int] = defaultdict(int)
    for d in _instances(claim, budget, sizes, seed, exhaustive):
        obs = _observe(claim, d)
        if obs is None:
            continue
        trials += 1
        if obs.inconclusive:
            inconclusive += 1
            continue
        for k, v in obs.stats.items():
            stats[k] = max(stats[k], v) if k.startswith("max_") else stats[k] + v
        if obs.refuted:
            counterexamples += 1
            if witness is None:
                witness, witness_details = d, dict(obs.details)
    if trials == 0:
        raise BudgetTooSmall(f"no instance in budget {budget} was applicable to {claim_id}")
    if counterexamples:
        verdict = REFUTED
    elif inconclusive:
        verdict = UNDECIDED
    else:
        verdict = CONFIRMED
    witness_min = shrink(claim, witness, shrink_steps) if witness is not None else None
    if witness_min is not None and witness_min == witness:
        witness_min = None
    return AuditReport(
        claim=claim_id,
        verdict=verdict,
        budget=budget,
        trials=trials,
        counterexamples=counterexamples,
        seed=seed,
        sizes=(lo, hi),
        anchor=claim.anchor,
        exhaustive=exhaustive,
        inconclusive=inconclusive,
        witness=witness,
        witness_details=witness_details,
        witness_min=witness_min,
        stats=dict(stats),
        elapsed=time.perf_counter() - started if timing else None,
    )


def completeness_rate(report: AuditReport) -> float | None:
    """Fraction of applicable THM3_COMPLETE trials where the greedy search found the cycle."""
    if report.claim != "THM3_COMPLETE" or not report.trials:
        return None
    return report.stats.get("greedy_found", 0) / report.trials
