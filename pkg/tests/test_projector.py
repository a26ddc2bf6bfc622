import itertools

import numpy as np
import pytest
from hypothesis import given

from hcpaudit.digraph import Digraph, build_incidence, split_incidence
from hcpaudit.errors import DegreeTooHigh, NoPerfectMatching, NotPerfect
from hcpaudit.fixtures import D2SQ, D3, D4C, D5FIG8, DBI4
from hcpaudit.oracle import enumerate_cycle_covers
from hcpaudit.projector import (
    code_of,
    decompose,
    format_projector,
    hall_violation,
    lift,
    matching_edges_from_code,
    neighborhood,
    project,
    projector_matrix,
    two_matchings_of_cycle,
)

from conftest import bounded_digraphs


class TestProjection:
    def test_triangle_edges(self):
        g = project(D3)
        assert g.edges == ((0, 1), (1, 2), (2, 0))
        assert [g.endpoints(j) for j in range(3)] == [(0, 4), (1, 5), (2, 3)]
        assert g.vertex_name(0) == "x0" and g.vertex_name(4) == "y1"

    def test_degrees_match_digraph(self):
        g = project(DBI4)
        for v in range(4):
            assert g.degree(v) == DBI4.out_degree(v)
            assert g.degree(4 + v) == DBI4.in_degree(v)

    def test_matrix_stacks_split_incidence(self):
        for d in (D3, DBI4, D5FIG8):
            cplus, cminus = split_incidence(build_incidence(d))
            p = projector_matrix(d)
            assert np.array_equal(p[: d.n], cplus.entries)
            assert np.array_equal(p[d.n :], -cminus.entries)
            assert np.array_equal(p, project(d).incidence())

    def test_format(self):
        text = format_projector(project(D3))
        lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
        assert lines[0] == "6 3"
        assert "0 4" in lines and "2 3" in lines

    def test_other_end(self):
        g = project(D3)
        assert g.other_end(0, 0) == 4 and g.other_end(0, 4) == 0


class TestDecompose:
    def test_triangle_is_one_path_per_edge(self):
        dec = decompose(project(D3))
        assert all(not c.is_cycle for c in dec.components)
        assert dec.cycle_indices == ()
        assert dec.has_perfect_matching

    def test_bidirected_square(self):
        dec = decompose(project(DBI4))
        # x0-y1-x2-y3 and x1-y2-x3-y0
        dec = decompose(project(DBI4))
        assert [c.edges for c in dec.cycles] == [(0, 5, 2, 7), (1, 6, 3, 4)]
        assert [(c.class_a(), c.class_b()) for c in dec.cycles] == [((0, 2), (5, 7)), ((1, 3), (4, 6))]

    def test_classes_are_matchings_and_lowest_edge_in_a(self):
        for d in (DBI4, D4C, D2SQ, D5FIG8):
            g = project(d)
            for comp in decompose(g).cycles:
                assert min(comp.edges) in comp.class_a()
                for cls in two_matchings_of_cycle(comp):
                    ends = [v for j in cls for v in g.endpoints(j)]
                    assert len(ends) == len(set(ends)) == len(comp.vertices)

    def test_degree_too_high(self):
        d = Digraph(4, ((0, 1), (0, 2), (0, 3)))
        with pytest.raises(DegreeTooHigh):
            decompose(project(d))

    def test_figure_eight_has_odd_path(self):
        dec = decompose(project(D5FIG8))
        assert dec.odd_paths
        assert not dec.has_perfect_matching

    @given(bounded_digraphs())
    def test_components_partition(self, d):
        dec = decompose(project(d))
        verts = [v for c in dec.components for v in c.vertices]
        edges = [j for c in dec.components for j in c.edges]
        assert sorted(verts) == list(range(2 * d.n))
        assert sorted(edges) == list(range(d.m))
        for c in dec.components:
            if c.is_cycle:
                assert len(c.edges) == len(c.vertices) and len(c.edges) % 2 == 0
            else:
                assert len(c.edges) == len(c.vertices) - 1


class TestCodes:
    def test_roundtrip(self):
        dec = decompose(project(DBI4))
        for code in itertools.product((0, 1), repeat=len(dec.cycles)):
            edges = matching_edges_from_code(dec, code)
            assert code_of(dec, edges) == code

    def test_code_of_rejects_non_perfect(self):
        dec = decompose(project(DBI4))
        with pytest.raises(NotPerfect):
            code_of(dec, [0, 1])

    def test_no_pm_raises(self):
        dec = decompose(project(D5FIG8))
        with pytest.raises(NoPerfectMatching):
            matching_edges_from_code(dec, ())

    def test_lift_is_identity_on_ids(self):
        assert lift(project(D3), [2, 0]) == frozenset({0, 2})

    @given(bounded_digraphs(max_n=6))
    def test_matchings_are_cycle_covers(self, d):
        dec = decompose(project(d))
        covers = set(enumerate_cycle_covers(d))
        if not dec.has_perfect_matching:
            assert covers == set()
            return
        found = {
            matching_edges_from_code(dec, code)
            for code in itertools.product((0, 1), repeat=len(dec.cycles))
        }
        assert found == covers


class TestHall:
    def test_figure_eight_witness(self):
        g = project(D5FIG8)
        s = hall_violation(g)
        assert s == frozenset({6, 8})
        assert len(neighborhood(g, s)) < len(s)

    def test_empty_when_perfect(self):
        assert hall_violation(project(DBI4)) == frozenset()

    @given(bounded_digraphs())
    def test_witness_is_deficient(self, d):
        g = project(d)
        s = hall_violation(g)
        dec = decompose(g)
        if dec.has_perfect_matching:
            assert s == frozenset()
        else:
            assert s and all(v >= d.n for v in s)
            assert len(neighborhood(g, s)) < len(s)
