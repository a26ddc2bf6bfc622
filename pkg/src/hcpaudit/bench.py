"""Timing runs of the greedy solver over both rank paths."""

from __future__ import annotations

import random
import time
from typing import Iterable, Iterator

from .digraph import DegreeKind
from .oracle import InstanceSpec, generate
from .solver import solve_greedy

CSV_HEADER = "n,m,mode,rank_path,verdict,flips,micros"
RANK_PATHS = ("components", "exact")


def bench_rows(
    sizes: Iterable[int],
    reps: int = 3,
    seed: int = 0,
    *,
    density: float = 1.0,
    timing: bool = True,
    rank_paths: Iterable[str] = RANK_PATHS,
) -> Iterator[str]:
    """CSV rows (no header). Instance generation is excluded from the timings.

    With ``timing=False`` the micros column is left empty so output is byte-stable.
    """
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    rank_paths = tuple(rank_paths)
    rng = random.Random(seed)
    for n in sizes:
        for _ in range(reps):
            spec = InstanceSpec(n, DegreeKind.GAMMA, True, rng.getrandbits(64), density)
            d, _ = generate(spec)
            for path in rank_paths:
                t0 = time.perf_counter()
                out = solve_greedy(d, rank_path=path)
                micros = round((time.perf_counter() - t0) * 1e6)
                shown = str(micros) if timing else ""
                yield f"{d.n},{d.m},greedy,{path},{out.verdict.value},{out.flips},{shown}"


def bench(sizes: Iterable[int], reps: int = 3, seed: int = 0, **kwargs) -> str:
    rows = [CSV_HEADER, *bench_rows(sizes, reps, seed, **kwargs)]
    return "\n".join(rows) + "\n"
