from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hcpaudit.digraph import Digraph

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def cap_degrees(n: int, pairs, cap: int = 2) -> Digraph:
    """Keep arcs in order while both endpoint degrees stay within ``cap``."""
    outd = [0] * n
    ind = [0] * n
    kept = []
    for t, h in pairs:
        if t == h or (t, h) in kept or outd[t] >= cap or ind[h] >= cap:
            continue
        kept.append((t, h))
        outd[t] += 1
        ind[h] += 1
    return Digraph(n, tuple(kept))


@st.composite
def bounded_digraphs(draw, min_n: int = 1, max_n: int = 7) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n)
    )
    return cap_degrees(n, pairs)


@st.composite
def any_digraphs(draw, max_n: int = 8) -> Digraph:
    n = draw(st.integers(1, max_n))
    pairs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=4 * n)
    )
    return cap_degrees(n, pairs, cap=n)


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    return Digraph(n, tuple((a, b) for a in range(n) for b in range(n) if a != b and rng.random() < p))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261015)
