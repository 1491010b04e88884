"""Tests for the census service."""
import pytest

from cycleconf.app.domain.canonical import canonical_graph
from cycleconf.app.domain.errors import CensusError
from cycleconf.app.domain.families import complete_bipartite, complete_graph, cube_graph, cycle_graph, path_graph
from cycleconf.app.domain.graph import are_isomorphic, vertex_connectivity
from cycleconf.app.domain.graph_io import from_graph6, to_graph6
from cycleconf.app.domain.matching import is_k_extendable
from cycleconf.app.services.census_service import (
    CensusService,
    CensusSpec,
    admits,
    census_braces,
    enumerate_graphs,
    examine_brace,
    examine_recognizers,
    is_complete_bipartite,
    validate_recognizers,
)


@pytest.fixture
def service():
    return CensusService(jobs=1)


class TestCensusSpec:
    def test_bounds(self):
        assert CensusSpec(max_n=6).bound == 8
        assert CensusSpec(max_n=6, bipartite=True).bound == 12
        assert CensusSpec(max_n=6, bipartite=True, regular_degree=3).bound == 14

    def test_empty_range(self):
        with pytest.raises(CensusError) as info:
            CensusSpec(max_n=3, min_n=5).validate()
        assert info.value.reason == "out of bounds"

    def test_above_bound(self):
        with pytest.raises(CensusError):
            CensusSpec(max_n=9).validate()

    def test_constraints_omit_range(self):
        constraints = CensusSpec(max_n=6, bipartite=True).constraints()
        assert constraints["bipartite"] is True
        assert "max_n" not in constraints

    def test_admits(self):
        spec = CensusSpec(max_n=6, bipartite=True, connected=True)
        assert admits(cycle_graph(6), spec)
        assert not admits(cycle_graph(5), spec)
        assert not admits(cycle_graph(8), spec)
        assert not admits(complete_bipartite(1, 3), CensusSpec(max_n=6, balanced=True))


class TestEnumerateGraphs:
    @pytest.mark.parametrize(
        "spec, expected",
        [
            (CensusSpec(max_n=4, min_n=4, bipartite=True), 7),
            (CensusSpec(max_n=4, min_n=4, bipartite=True, connected=True), 3),
            (CensusSpec(max_n=4, min_n=4), 11),
            (CensusSpec(max_n=4, min_n=4, connected=True), 6),
            (CensusSpec(max_n=5, min_n=5), 34),
            (CensusSpec(max_n=5, min_n=5, connected=True), 21),
            (CensusSpec(max_n=6, min_n=6, bipartite=True, regular_degree=3), 1),
            (CensusSpec(max_n=8, min_n=8, bipartite=True, regular_degree=3), 1),
        ],
    )
    def test_class_counts(self, spec, expected):
        assert len(list(enumerate_graphs(spec))) == expected

    def test_cubic_bipartite_graphs(self):
        graphs = list(enumerate_graphs(CensusSpec(max_n=8, bipartite=True, regular_degree=3)))
        assert len(graphs) == 2
        assert are_isomorphic(graphs[0], complete_bipartite(3, 3))
        assert are_isomorphic(graphs[1], cube_graph())

    def test_connected_bipartite_on_four(self):
        graphs = list(enumerate_graphs(CensusSpec(max_n=4, min_n=4, bipartite=True, connected=True)))
        expected = [path_graph(4), complete_bipartite(1, 3), cycle_graph(4)]
        assert all(any(are_isomorphic(g, h) for g in graphs) for h in expected)

    def test_planar_filter(self):
        graphs = list(enumerate_graphs(CensusSpec(max_n=6, min_n=6, bipartite=True, regular_degree=3, planar=True)))
        assert graphs == []

    def test_ordered_by_size(self):
        sizes = [g.n for g in enumerate_graphs(CensusSpec(max_n=5, connected=True))]
        assert sizes == sorted(sizes)

    def test_validates(self):
        with pytest.raises(CensusError):
            list(enumerate_graphs(CensusSpec(max_n=30)))

    def test_source_deduplicated(self):
        lines = ["C~", to_graph6(cycle_graph(4)), "", to_graph6(cycle_graph(4).relabel([1, 2, 3, 0]))]
        graphs = list(enumerate_graphs(CensusSpec(max_n=30), source=lines))
        assert graphs == [complete_graph(4), cycle_graph(4)]

    def test_source_filtered(self):
        lines = ["C~", to_graph6(cycle_graph(4))]
        graphs = list(enumerate_graphs(CensusSpec(max_n=30, bipartite=True), source=lines))
        assert graphs == [cycle_graph(4)]


class TestExamine:
    def test_complete_bipartite(self):
        assert is_complete_bipartite(cycle_graph(4))
        assert is_complete_bipartite(complete_bipartite(3, 3))
        assert not is_complete_bipartite(cycle_graph(6))
        assert not is_complete_bipartite(complete_graph(3))

    def test_examine_brace(self):
        verdict = examine_brace(to_graph6(complete_bipartite(3, 3)))
        assert verdict.brace and verdict.cycle_conformal and verdict.complete_bipartite

    def test_examine_non_conformal_brace(self):
        verdict = examine_brace(to_graph6(cube_graph()))
        assert verdict.brace
        assert not verdict.cycle_conformal

    def test_examine_not_matching_covered(self):
        verdict = examine_brace(to_graph6(path_graph(4)))
        assert not verdict.matching_covered
        assert not verdict.brace

    def test_examine_recognizers(self):
        assert examine_recognizers(to_graph6(cube_graph())) == []
        assert examine_recognizers(to_graph6(complete_graph(4))) == []


class TestBraceCensus:
    def test_up_to_six(self, service):
        report = service.census_braces(CensusSpec(max_n=6, bipartite=True))
        assert report.class_counts["braces"] == 2
        assert report.class_counts["cycle_conformal_braces"] == 2
        assert report.counterexamples == []
        assert report.cycle_conformal_braces == [
            to_graph6(canonical_graph(cycle_graph(4))),
            to_graph6(canonical_graph(complete_bipartite(3, 3))),
        ]

    def test_constraints_recorded(self, service):
        report = service.census_braces(CensusSpec(max_n=4, bipartite=True))
        assert report.constraints["connected"] is True
        assert report.constraints["min_degree"] == 2

    def test_needs_bipartite(self, service):
        with pytest.raises(CensusError):
            service.census_braces(CensusSpec(max_n=6))

    def test_cubic_braces(self):
        report = census_braces(CensusSpec(max_n=8, bipartite=True, regular_degree=3))
        assert report.class_counts["cycle_conformal_braces"] == 1
        assert are_isomorphic(from_graph6(report.cycle_conformal_braces[0]), complete_bipartite(3, 3))
        assert report.counterexamples == []

    @pytest.mark.slow
    def test_cubic_braces_to_ten(self):
        report = census_braces(CensusSpec(max_n=10, bipartite=True, regular_degree=3))
        assert report.class_counts["braces"] >= 3
        assert report.class_counts["cycle_conformal_braces"] == 1

    @pytest.mark.slow
    def test_cubic_braces_to_fourteen(self):
        report = census_braces(CensusSpec(max_n=14, bipartite=True, regular_degree=3))
        assert report.class_counts["cycle_conformal_braces"] == 1
        assert report.counterexamples == []

    def test_planar_braces(self):
        report = census_braces(CensusSpec(max_n=8, bipartite=True, planar=True))
        assert report.class_counts["cycle_conformal_braces"] == 1
        assert are_isomorphic(from_graph6(report.cycle_conformal_braces[0]), cycle_graph(4))
        assert report.counterexamples == []

    @pytest.mark.slow
    def test_planar_braces_to_ten(self):
        report = census_braces(CensusSpec(max_n=10, bipartite=True, planar=True))
        assert report.class_counts["cycle_conformal_braces"] == 1

    @pytest.mark.slow
    def test_all_braces_to_ten(self):
        report = census_braces(CensusSpec(max_n=10, bipartite=True), jobs=2)
        assert report.counterexamples == []
        braces = [from_graph6(b) for b in report.cycle_conformal_braces]
        assert all(is_complete_bipartite(b) for b in braces)
        assert sorted(b.n for b in braces) == [4, 6, 8, 10]

    @pytest.mark.slow
    def test_four_regular_braces_to_twelve(self):
        report = census_braces(CensusSpec(max_n=12, bipartite=True, regular_degree=4), jobs=2)
        assert report.counterexamples == []
        assert report.cycle_conformal_braces == [to_graph6(canonical_graph(complete_bipartite(4, 4)))]

    def test_from_source(self, service):
        lines = [to_graph6(g) for g in (cycle_graph(4), complete_bipartite(3, 3), cube_graph(), cycle_graph(6))]
        report = service.census_braces(CensusSpec(max_n=100, bipartite=True), source=lines)
        assert report.class_counts == {"graphs": 4, "matching_covered": 4, "braces": 3, "cycle_conformal_braces": 2}
        assert report.counterexamples == []

    def test_parallel_matches_serial(self):
        spec = CensusSpec(max_n=6, bipartite=True)
        serial = CensusService(jobs=1).census_braces(spec)
        parallel = CensusService(jobs=2).census_braces(spec)
        assert parallel.cycle_conformal_braces == serial.cycle_conformal_braces
        assert parallel.class_counts == serial.class_counts


class TestValidateRecognizers:
    def test_cubic(self):
        report = validate_recognizers(CensusSpec(max_n=8, bipartite=True, regular_degree=3))
        assert report.class_counts["mismatches"] == 0
        assert report.mismatches == []

    def test_planar_bipartite(self, service):
        report = service.validate_recognizers(CensusSpec(max_n=8, bipartite=True, planar=True))
        assert report.class_counts["mismatches"] == 0
        assert report.class_counts["graphs"] > 0

    @pytest.mark.slow
    def test_cubic_to_ten(self):
        report = validate_recognizers(CensusSpec(max_n=10, bipartite=True, regular_degree=3), jobs=2)
        assert report.mismatches == []

    @pytest.mark.slow
    def test_cubic_to_twelve(self):
        report = validate_recognizers(CensusSpec(max_n=12, bipartite=True, regular_degree=3), jobs=2)
        assert report.class_counts["graphs"] > 0
        assert report.mismatches == []

    @pytest.mark.slow
    def test_cubic_to_fourteen_from_graph6(self):
        spec = CensusSpec(max_n=14, bipartite=True, regular_degree=3)
        lines = [to_graph6(g) for g in enumerate_graphs(spec)]
        report = validate_recognizers(spec, source=lines, jobs=2)
        assert report.class_counts["graphs"] == len(lines)
        assert report.mismatches == []

    @pytest.mark.slow
    def test_planar_bipartite_to_ten(self):
        report = validate_recognizers(CensusSpec(max_n=10, bipartite=True, planar=True), jobs=2)
        assert report.mismatches == []


class TestExtendabilityCensus:
    def test_two_extendable_implies_one_extendable_and_three_connected(self):
        found = 0
        for g in enumerate_graphs(CensusSpec(max_n=8, bipartite=True, connected=True)):
            if not is_k_extendable(g, 2).extendable:
                continue
            found += 1
            assert is_k_extendable(g, 1).extendable
            assert vertex_connectivity(g) >= 3
        assert found >= 3

    @pytest.mark.slow
    def test_general_graphs_to_seven(self):
        for g in enumerate_graphs(CensusSpec(max_n=7, connected=True)):
            if is_k_extendable(g, 2).extendable:
                assert is_k_extendable(g, 1).extendable
                assert vertex_connectivity(g) >= 3
