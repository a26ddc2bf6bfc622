import pytest
from hypothesis import given

from hcpaudit.digraph import DegreeKind, Digraph, is_hamiltonian_subgraph, rank_by_components
from hcpaudit.errors import CapExceeded, DegreeOutsideClass, NotHamiltonianAfterUnsplit, RankMismatch
from hcpaudit.fixtures import D2SQ, D3, D4C, D5FIG8, DBI4, LADDER16, LADDER16_M0
from hcpaudit.matching import count_matchings, enumerate_matchings
from hcpaudit.oracle import (
    InstanceSpec,
    brute_force_hamiltonian,
    enumerate_hamiltonian_cycles,
    generate,
)
from hcpaudit.projector import code_of, decompose, project
from hcpaudit.solver import (
    Verdict,
    find_second_hc,
    make_rank_fn,
    second_hc_by_flips,
    solve_exact,
    solve_greedy,
    split_degree_two,
    unsplit,
)

from conftest import bounded_digraphs

FORWARD = (0, 1, 2, 3)
REVERSE = (4, 5, 6, 7)


class TestGreedy:
    def test_triangle_zero_flips(self):
        out = solve_greedy(D3)
        assert out.verdict is Verdict.HAMILTONIAN
        assert out.flips == 0 and out.arcs == (0, 1, 2)

    def test_mixed_start_needs_one_flip(self):
        dec = decompose(project(DBI4))
        rank = make_rank_fn(DBI4)
        ranks = {code: rank(m.edges) for code, m in enumerate_matchings(dec)}
        assert ranks == {(0, 0): 3, (0, 1): 2, (1, 0): 2, (1, 1): 3}
        start = dict(enumerate_matchings(dec))[(0, 1)]
        out = solve_greedy(DBI4, initial=start.edges)
        assert out.verdict is Verdict.HAMILTONIAN
        assert out.flips == 1
        assert out.arcs == REVERSE

    def test_ladder_walkthrough(self):
        dec = decompose(project(LADDER16))
        assert len(dec.cycles) == 3
        assert all(len(c.edges) == 4 for c in dec.cycles)
        rank = make_rank_fn(LADDER16)
        assert rank(LADDER16_M0) == LADDER16.n - 3
        out = solve_greedy(LADDER16, initial=LADDER16_M0, order="descending")
        assert out.verdict is Verdict.HAMILTONIAN
        start = code_of(dec, LADDER16_M0)
        # first tried flip (last component) is rejected and leaves no trace in the final code
        g3_flip = list(start)
        g3_flip[2] ^= 1
        assert out.codes_visited[1] == tuple(g3_flip)
        from hcpaudit.projector import matching_edges_from_code

        assert rank(matching_edges_from_code(dec, g3_flip)) == LADDER16.n - 4
        assert out.final_code[2] == start[2]
        assert out.flips == 2
        assert is_hamiltonian_subgraph(LADDER16, out.arcs)

    def test_ladder_distinct_labeled_codes(self):
        dec = decompose(project(LADDER16))
        codes = [c for c, _ in enumerate_matchings(dec)]
        assert (0, 0, 1) in codes and (0, 1, 0) in codes
        ms = dict(enumerate_matchings(dec))
        assert ms[(0, 0, 1)] != ms[(0, 1, 0)]

    def test_no_pm_carries_hall_witness(self):
        out = solve_greedy(D5FIG8)
        assert out.verdict is Verdict.NO_PM
        assert out.hall_witness == frozenset({6, 8})

    def test_bad_degree(self):
        out = solve_greedy(Digraph(4, ((0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0))))
        assert out.verdict is Verdict.BAD_DEGREE
        assert out.verdict.exit_code == 3

    def test_not_strong(self):
        d = Digraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)))
        assert solve_greedy(d).verdict is Verdict.NOT_STRONG

    def test_all_codes_seen_is_definite(self):
        out = solve_greedy(D2SQ)
        assert out.verdict is Verdict.EXHAUSTED
        assert out.verdict.exit_code == 1

    @given(bounded_digraphs(min_n=2, max_n=7))
    def test_never_claims_a_non_cycle(self, d):
        for path in ("components", "exact"):
            out = solve_greedy(d, rank_path=path, audit=path == "exact")
            if out.is_hamiltonian:
                assert is_hamiltonian_subgraph(d, out.arcs)
                assert brute_force_hamiltonian(d) is not None

    def test_rank_paths_agree_on_large_instance(self):
        d, _ = generate(InstanceSpec(60, seed=3, density=0.8))
        a = solve_greedy(d, rank_path="components")
        b = solve_greedy(d, rank_path="exact", audit=True)
        assert a == b


class TestExact:
    def test_unique_matching(self):
        out = solve_exact(D4C)
        assert out.verdict is Verdict.HAMILTONIAN
        assert out.arcs == (0, 1, 2, 3)
        assert count_matchings(decompose(project(D4C))).labeled == 1

    def test_two_two_cycles(self):
        out = solve_exact(D2SQ)
        assert out.verdict is Verdict.EXHAUSTED
        assert rank_by_components(D2SQ, (0, 1, 2, 3)) == D2SQ.n - 2

    def test_no_pm(self):
        assert solve_exact(D5FIG8).verdict is Verdict.NO_PM

    def test_cap(self):
        with pytest.raises(CapExceeded):
            solve_exact(Digraph(4, ((0, 1), (1, 0), (2, 3), (3, 2), (0, 2), (2, 0), (1, 3), (3, 1))), code_cap=1)

    @given(bounded_digraphs(min_n=2, max_n=6))
    def test_agrees_with_oracle(self, d):
        out = solve_exact(d)
        hc = brute_force_hamiltonian(d)
        if out.verdict in (Verdict.BAD_DEGREE,):
            pytest.fail("bounded input classified outside")
        if out.verdict is Verdict.NOT_STRONG:
            assert hc is None
        else:
            assert out.is_hamiltonian == (hc is not None)


class TestRankCrossCheck:
    def test_mismatch_raises(self, monkeypatch):
        import hcpaudit.solver as solver

        rank = make_rank_fn(D3, audit=True)
        assert rank((0, 1, 2)) == 2
        monkeypatch.setattr(solver, "rank_by_components", lambda d, arcs=None: 99)
        with pytest.raises(RankMismatch):
            make_rank_fn(D3, audit=True)((0, 1, 2))


class TestSplit:
    def test_triangle_unchanged(self):
        s, smap = split_degree_two(D3)
        assert s == D3 and smap.split_vertices == ()
        assert unsplit(smap, (0, 1, 2)) == frozenset({0, 1, 2})

    def test_figure_eight(self):
        s, smap = split_degree_two(D5FIG8)
        assert (s.n, s.m) == (6, 7)
        assert smap.split_vertices == (0,)
        assert s.arcs[6] == (0, 5)

    def test_bidirected_square(self):
        s, smap = split_degree_two(DBI4)
        assert (s.n, s.m) == (8, 12)
        hcs = enumerate_hamiltonian_cycles(s)
        assert hcs
        for hc in hcs:
            back = unsplit(smap, hc)
            assert len(back) == 4 and is_hamiltonian_subgraph(DBI4, back)

    def test_planted_roundtrip(self):
        d, planted = generate(InstanceSpec(8, DegreeKind.BOUND_TWO, True, seed=8, density=0.9))
        s, smap = split_degree_two(d)
        image = smap.to_split(planted)
        assert is_hamiltonian_subgraph(s, image)
        assert unsplit(smap, image) == planted

    def test_unsplit_rejects_non_cycle(self):
        _, smap = split_degree_two(DBI4)
        with pytest.raises(NotHamiltonianAfterUnsplit):
            unsplit(smap, (0, 4))

    def test_outside_rejected(self):
        with pytest.raises(DegreeOutsideClass):
            split_degree_two(Digraph(4, ((0, 1), (0, 2), (0, 3))))

    def test_split_solver_returns_original_ids(self):
        out = solve_exact(DBI4, split=True)
        assert out.is_hamiltonian
        assert is_hamiltonian_subgraph(DBI4, out.arcs)


class TestSecondCycle:
    def test_bidirected_square(self):
        assert find_second_hc(DBI4, FORWARD) == frozenset(REVERSE)
        assert find_second_hc(DBI4, REVERSE) == frozenset(FORWARD)

    def test_flips_alone_can_miss(self):
        # both single flips from the forward cycle drop the rank to 2
        assert second_hc_by_flips(DBI4, FORWARD) is None

    def test_unique_cycles(self):
        assert find_second_hc(D3, (0, 1, 2)) is None
        assert find_second_hc(D4C, (0, 1, 2, 3)) is None

    def test_rejects_non_cycle_input(self):
        with pytest.raises(ValueError):
            find_second_hc(DBI4, (0, 1))

    @given(bounded_digraphs(min_n=2, max_n=6))
    def test_matches_oracle_count(self, d):
        hcs = enumerate_hamiltonian_cycles(d)
        if not hcs:
            return
        other = find_second_hc(d, hcs[0])
        if len(hcs) == 1:
            assert other is None
        else:
            assert other is not None and tuple(sorted(other)) in hcs[1:]
