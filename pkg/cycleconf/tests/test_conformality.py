"""Tests for conformal cycles and the cycle-conformality checkers."""
import pytest

from cycleconf.app.domain.conformality import (
    brute_is_cycle_conformal,
    edge_in_even_cycle,
    find_even_path,
    is_conformal,
    is_cycle_conformal_reduced,
    is_odd_cycle_conformal,
    subset_is_cycle_conformal,
)
from cycleconf.app.domain.errors import ConformalityError
from cycleconf.app.domain.families import (
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    even_wheel,
    fixture_corpus,
    glued_kll,
    heawood,
    heawood_witness_cycle,
    ladder,
    moebius_ladder,
    moebius_witness_cycle,
    odd_prism,
    odd_wheel,
    petersen,
    petersen_witness_cycle,
    splice,
    square_braces_graph,
    square_braces_witness_cycle,
    three_path_op,
)
from cycleconf.app.domain.graph import Cycle, Graph

SQUARES = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]


@pytest.fixture
def two_squares():
    """Joined by 0-4 and 2-6: the joining edges close an even cycle that leaves 3 and 7 behind."""
    return Graph.from_edges(8, SQUARES + [(0, 4), (2, 6)])


@pytest.fixture
def twisted_squares():
    """Joined by 0-4 and 2-5: every cycle through a joining edge is odd."""
    return Graph.from_edges(8, SQUARES + [(0, 4), (2, 5)])


class TestIsConformal:
    def test_square_in_k33(self):
        assert is_conformal(complete_bipartite(3, 3), Cycle.of([0, 3, 1, 4]))

    def test_hamiltonian_cycle(self):
        assert is_conformal(cycle_graph(6), Cycle.of(range(6)))

    def test_non_cycle(self):
        with pytest.raises(ConformalityError) as info:
            is_conformal(cycle_graph(6), Cycle.of([0, 1, 2, 3]))
        assert info.value.reason == "not a cycle of the graph"

    def test_heawood_witness(self):
        assert not is_conformal(heawood(), heawood_witness_cycle())

    def test_petersen_witness(self):
        assert not is_conformal(petersen(), petersen_witness_cycle())

    @pytest.mark.parametrize("k", [5, 7])
    def test_moebius_witness(self, k):
        assert not is_conformal(moebius_ladder(k), moebius_witness_cycle(k))

    def test_square_braces_witness(self):
        assert not is_conformal(square_braces_graph().graph, square_braces_witness_cycle())

    def test_glued_witness(self):
        glued = glued_kll(4)
        assert not is_conformal(glued.graph, glued.witness_cycle)


CYCLE_CONFORMAL = [
    cycle_graph(4),
    cycle_graph(6),
    complete_bipartite(3, 3),
    complete_bipartite(4, 4),
    moebius_ladder(4),
    odd_wheel(5),
    odd_prism(5),
    ladder(3),
    ladder(4),
    three_path_op(cycle_graph(4), (0, 1)),
    splice(complete_bipartite(3, 3), 0, complete_bipartite(3, 3), 3).graph,
]

NOT_CYCLE_CONFORMAL = [
    petersen(),
    moebius_ladder(5),
    square_braces_graph().graph,
    glued_kll(4).graph,
    cube_graph(),
]


class TestBruteChecker:
    @pytest.mark.parametrize("g", CYCLE_CONFORMAL, ids=lambda g: g.name)
    def test_cycle_conformal(self, g):
        report = brute_is_cycle_conformal(g)
        assert report.verdict
        assert report.witness is None

    @pytest.mark.parametrize("g", NOT_CYCLE_CONFORMAL, ids=lambda g: g.name)
    def test_not_cycle_conformal(self, g):
        report = brute_is_cycle_conformal(g)
        assert not report.verdict
        assert report.reason == "non-conformal cycle"
        assert g.is_cycle(report.witness)
        assert report.witness.is_even
        assert not is_conformal(g, report.witness)

    @pytest.mark.slow
    @pytest.mark.parametrize("g", [heawood(), moebius_ladder(7)], ids=lambda g: g.name)
    def test_larger_counterexamples(self, g):
        report = brute_is_cycle_conformal(g)
        assert not report.verdict
        assert not is_conformal(g, report.witness)

    @pytest.mark.slow
    def test_moebius_six(self):
        assert brute_is_cycle_conformal(moebius_ladder(6)).verdict

    def test_counts_every_even_cycle(self):
        assert brute_is_cycle_conformal(complete_bipartite(3, 3)).checked_cycles == 15

    def test_no_perfect_matching(self):
        report = brute_is_cycle_conformal(cycle_graph(5))
        assert not report.verdict
        assert report.reason == "no perfect matching"
        assert report.witness is None

    def test_composites(self, two_squares, twisted_squares):
        assert not brute_is_cycle_conformal(two_squares).verdict
        assert brute_is_cycle_conformal(twisted_squares).verdict


class TestReducedChecker:
    def test_agrees_on_corpus(self):
        for name, g in fixture_corpus().items():
            if g.n > 12:
                continue
            assert is_cycle_conformal_reduced(g) == brute_is_cycle_conformal(g).verdict, name

    def test_excluded_edge_on_even_cycle(self, two_squares):
        assert not is_cycle_conformal_reduced(two_squares)

    def test_excluded_edges_only_on_odd_cycles(self, twisted_squares):
        assert is_cycle_conformal_reduced(twisted_squares)

    def test_component_checker_is_used(self, twisted_squares):
        seen = []

        def checker(h):
            seen.append(h.n)
            return True

        assert is_cycle_conformal_reduced(twisted_squares, component_checker=checker)
        assert seen == [4, 4]

    def test_no_perfect_matching(self):
        assert not is_cycle_conformal_reduced(cycle_graph(5))


class TestEvenCycleThroughEdge:
    def test_square(self):
        assert edge_in_even_cycle(cycle_graph(4), (0, 1))

    def test_odd_cycle_only(self):
        assert not edge_in_even_cycle(cycle_graph(5), (0, 1))

    def test_k4(self):
        assert all(edge_in_even_cycle(complete_graph(4), e) for e in complete_graph(4).edges())

    def test_bridge(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
        assert not edge_in_even_cycle(g, (2, 3))

    def test_composites(self, two_squares, twisted_squares):
        assert edge_in_even_cycle(two_squares, (0, 4))
        assert not edge_in_even_cycle(twisted_squares, (0, 4))
        assert not edge_in_even_cycle(twisted_squares, (2, 5))

    def test_either_orientation(self):
        assert edge_in_even_cycle(petersen(), (5, 0))

    def test_missing_edge(self):
        with pytest.raises(ConformalityError) as info:
            edge_in_even_cycle(cycle_graph(5), (0, 2))
        assert info.value.reason == "edge absent"


class TestEvenPath:
    def test_bipartite_same_colour(self):
        path = find_even_path(cycle_graph(6), 0, 2)
        assert path.length % 2 == 0
        assert path.endpoints == (0, 2)

    def test_bipartite_opposite_colour(self):
        assert find_even_path(cycle_graph(6), 0, 1) is None

    def test_odd_cycle_long_way_round(self):
        path = find_even_path(cycle_graph(5), 0, 1)
        assert path.vertices == (0, 4, 3, 2, 1)

    def test_k4(self):
        path = find_even_path(complete_graph(4), 0, 1)
        assert path.length == 2

    def test_trivial(self):
        assert find_even_path(cycle_graph(5), 3, 3).is_trivial

    def test_unreachable(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert find_even_path(g, 0, 4) is None

    def test_path_is_simple(self):
        path = find_even_path(petersen(), 0, 1)
        assert len(set(path.vertices)) == len(path.vertices)
        assert all(petersen().has_edge(a, b) for a, b in zip(path.vertices, path.vertices[1:]))


class TestSubsetOracle:
    def test_agrees_with_brute(self):
        for name, g in fixture_corpus().items():
            if g.n > 10:
                continue
            assert subset_is_cycle_conformal(g).verdict == brute_is_cycle_conformal(g).verdict, name

    def test_witness_is_non_conformal(self):
        g = cube_graph()
        report = subset_is_cycle_conformal(g)
        assert not report.verdict
        assert g.is_cycle(report.witness)
        assert not is_conformal(g, report.witness)

    def test_composites(self, two_squares, twisted_squares):
        assert not subset_is_cycle_conformal(two_squares).verdict
        assert subset_is_cycle_conformal(twisted_squares).verdict

    def test_no_perfect_matching(self):
        assert subset_is_cycle_conformal(cycle_graph(3)).reason == "no perfect matching"


class TestOddCycles:
    @pytest.mark.parametrize(
        "g",
        [cycle_graph(5), complete_graph(5), complete_graph(7), even_wheel(4), even_wheel(6)],
        ids=lambda g: g.name,
    )
    def test_odd_cycle_conformal(self, g):
        assert is_odd_cycle_conformal(g).verdict

    def test_pendant_vertex(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
        report = is_odd_cycle_conformal(g)
        assert not report.verdict
        assert report.witness == Cycle.of(range(5))
