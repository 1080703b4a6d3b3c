import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from wcycle.centrality import ScoreVector, SeedSet
from wcycle.errors import UndefinedMetricError
from wcycle.graph import WeightedGraph
from wcycle.metrics import (
    CorrelationMatrix,
    activation_cost,
    average_correlation_matrix,
    avg_jaccard_against_others,
    avg_structural_similarity,
    correlation_matrix,
    dispersion,
    individuation,
    individuation_fraction,
    jaccard_sets,
    kendall_tau,
    shared_rank_frequency,
    strength_probabilities,
    structural_similarity,
)

import oracles
from conftest import random_graph

vectors = st.integers(2, 40).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 6), min_size=n, max_size=n),
                        st.lists(st.integers(0, 6), min_size=n, max_size=n)))


class TestKendall:
    def test_example(self):
        assert kendall_tau([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(2 / 3, abs=0)

    def test_identical_and_reversed(self):
        x = [0.3, 1.2, 9.0, 4.4, 2.0]
        assert kendall_tau(x, x) == 1.0
        assert kendall_tau(x, [-v for v in x]) == -1.0

    @settings(max_examples=150, deadline=None)
    @given(vectors)
    def test_matches_pair_count(self, xy):
        x, y = xy
        assert kendall_tau(x, y) == oracles.kendall_pairs(x, y)

    @settings(max_examples=80, deadline=None)
    @given(vectors)
    def test_tie_corrected_matches_scipy(self, xy):
        x, y = xy
        ref = stats.kendalltau(x, y, variant="b").statistic
        got = kendall_tau(x, y, variant="tie-corrected")
        if math.isnan(ref):
            assert math.isnan(got)
        else:
            assert got == pytest.approx(ref, abs=1e-12)

    def test_accepts_score_vectors(self):
        a = ScoreVector("a", [1.0, 2.0, 3.0])
        assert kendall_tau(a, a) == 1.0

    def test_errors(self):
        with pytest.raises(ValueError):
            kendall_tau([1, 2], [1, 2, 3])
        with pytest.raises(ValueError):
            kendall_tau([1], [1])
        with pytest.raises(ValueError):
            kendall_tau([1, 2], [2, 1], variant="a")


class TestCorrelationMatrix:
    def _vecs(self):
        return {"A": ScoreVector("A", [1, 2, 3, 4]), "B": ScoreVector("B", [1, 3, 2, 4]),
                "C": ScoreVector("C", [4, 3, 2, 1])}

    def test_matrix(self):
        m = correlation_matrix(self._vecs())
        assert np.array_equal(m.values, m.values.T)
        assert list(np.diag(m.values)) == [1.0, 1.0, 1.0]
        assert m["A", "C"] == -1.0
        assert m["A", "B"] == pytest.approx(2 / 3)

    def test_average(self):
        a = CorrelationMatrix(("x", "y"), [[1, 0.5], [0.5, 1]])
        b = CorrelationMatrix(("x", "y"), [[1, -0.5], [-0.5, 1]])
        assert np.array_equal(average_correlation_matrix([a]).values, a.values)
        assert average_correlation_matrix([a, b])["x", "y"] == 0.0
        ms = [CorrelationMatrix(("x", "y"), [[1, v], [v, 1]]) for v in (0.2, 0.4, 0.6)]
        assert average_correlation_matrix(ms)["x", "y"] == pytest.approx(0.4)

    def test_average_mismatch(self):
        a = CorrelationMatrix(("x", "y"), np.eye(2))
        b = CorrelationMatrix(("y", "x"), np.eye(2))
        with pytest.raises(ValueError):
            average_correlation_matrix([a, b])
        with pytest.raises(ValueError):
            average_correlation_matrix([])


class TestJaccard:
    def test_examples(self):
        assert jaccard_sets({1, 2}, {2, 1}) == 1.0
        assert jaccard_sets({1}, {2}) == 0.0
        assert jaccard_sets({1, 2, 3, 4, 5}, {3, 4, 5, 6, 7}) == 3 / 7
        with pytest.raises(UndefinedMetricError):
            jaccard_sets(set(), set())

    @settings(max_examples=100, deadline=None)
    @given(st.sets(st.integers(0, 20)), st.sets(st.integers(0, 20)))
    def test_range_and_symmetry(self, a, b):
        if not a | b:
            return
        j = jaccard_sets(a, b)
        assert 0.0 <= j <= 1.0
        assert j == jaccard_sets(b, a)

    def test_avg_against_others(self):
        same = {"A": ScoreVector("A", range(10)), "B": ScoreVector("B", range(10))}
        assert avg_jaccard_against_others("A", same, 0.2) == 1.0
        rev = {"A": ScoreVector("A", range(10)), "B": ScoreVector("B", range(9, -1, -1)),
               "C": ScoreVector("C", range(9, -1, -1))}
        assert avg_jaccard_against_others("A", rev, 0.2) == 0.0
        with pytest.raises(ValueError):
            avg_jaccard_against_others("A", {"A": same["A"]}, 0.2)
        with pytest.raises(KeyError):
            avg_jaccard_against_others("Z", same, 0.2)


class TestIndividuation:
    def test_examples(self):
        assert individuation(ScoreVector("x", [5, 4, 3, 2]), 1.0) == 1.0
        assert individuation(ScoreVector("x", [1.0] * 6), 0.5) == 0.0
        assert individuation(ScoreVector("x", [5, 5, 3, 2, 1, 0, 0, 0]), 0.5) == 0.5

    def test_rounding(self):
        assert individuation(ScoreVector("x", [0.1 + 0.2, 0.3]), 1.0) == 0.0

    def test_histogram(self):
        assert shared_rank_frequency(ScoreVector("x", [5, 5, 3]), 1.0) == {1: 2, 2: 1}
        assert shared_rank_frequency(ScoreVector("x", [2.0] * 4), 1.0) == {1: 4}
        assert shared_rank_frequency(ScoreVector("x", [4, 3, 2]), 1.0) == {1: 1, 2: 1, 3: 1}

    def test_fraction_rule(self):
        assert individuation_fraction(332) == 0.5
        assert individuation_fraction(500) == 0.3
        assert individuation_fraction(100, small=0.4) == 0.4

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 8), min_size=1, max_size=40), st.floats(0.01, 1.0))
    def test_range_and_distinct(self, scores, f):
        sv = ScoreVector("x", scores)
        g = individuation(sv, f)
        assert 0.0 <= g <= 1.0
        k = math.ceil(f * len(scores) - 1e-9)
        top = [sv.scores[v] for v in sv.ranking[:max(k, 1)]]
        assert (g == 1.0) == (len(set(top)) == len(top))
        assert sum(shared_rank_frequency(sv, f).values()) == len(top)


class TestDispersion:
    def test_examples(self, path3, triangle):
        assert dispersion(path3, [0, 1]) == 1.0
        assert dispersion(triangle, [0, 1, 2]) == 1.0
        assert dispersion(path3, SeedSet(0.5, (0, 2))) == 2.0

    def test_undefined_and_partial(self):
        g = WeightedGraph.from_edges([(0, 1), (2, 3)])
        assert dispersion(g, [0, 2]) is None
        assert dispersion(g, [0, 1, 2]) == 1.0

    def test_needs_two(self, triangle):
        with pytest.raises(ValueError):
            dispersion(triangle, [0])

    def test_clique(self):
        k5 = WeightedGraph.from_edges([(u, v) for u in range(5) for v in range(u + 1, 5)])
        assert dispersion(k5, [0, 2, 3, 4]) == 1.0


class TestSimilarity:
    def test_square(self):
        sq = WeightedGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
        assert structural_similarity(sq, 0, 2) == 1.0
        assert structural_similarity(sq, 0, 1) == 0.0
        assert avg_structural_similarity(sq, [0, 2]) == 1.0
        assert avg_structural_similarity(sq, [0, 1]) == 0.0

    def test_one_third(self):
        # 0 and 1 are twins (both adjacent to 2 and 3); node 4 is elsewhere
        g = WeightedGraph.from_edges([(0, 2), (0, 3), (1, 2), (1, 3), (4, 5)])
        assert avg_structural_similarity(g, [0, 1, 4]) == pytest.approx(1 / 3)

    def test_isolated_pair(self):
        g = WeightedGraph.from_edges([(0, 1)], n=4)
        assert structural_similarity(g, 2, 3) == 0.0

    def test_errors(self, triangle):
        with pytest.raises(ValueError):
            structural_similarity(triangle, 1, 1)
        with pytest.raises(ValueError):
            avg_structural_similarity(triangle, [1])

    def test_range(self, rng):
        g = random_graph(rng, 30, 0.2)
        for i in range(30):
            for j in range(i + 1, 30):
                assert 0.0 <= structural_similarity(g, i, j) <= 1.0


class TestCost:
    def test_uniform(self, triangle):
        assert activation_cost(triangle, [0, 1]) == 4.0

    def test_exact_binning(self):
        g = WeightedGraph.from_edges([(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (3, 4, 2.0), (4, 5, 2.0)])
        # strengths 2, 2, 2, 2, 4, 2
        assert activation_cost(g, [4], "exact") == pytest.approx(4 / (1 / 6))
        h = WeightedGraph.from_edges([(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 2.0)])
        # strengths 4, 2, 4, 2
        assert activation_cost(h, [0], "exact") == pytest.approx(8.0)

    def test_three_node_example(self):
        # strengths {2, 2, 4}: node 1 is the centre of a path with weights 2, 2
        g = WeightedGraph.from_edges([(0, 1, 2.0), (1, 2, 2.0)])
        assert list(g.strengths()) == [2.0, 4.0, 2.0]
        assert activation_cost(g, [1], "exact") == pytest.approx(12.0)

    def test_doubling(self, rng):
        g = random_graph(rng, 30, 0.2, weights="ties")
        seeds = [0, 3, 5]
        assert activation_cost(g.scaled(2.0), seeds, "exact") == 2 * activation_cost(g, seeds, "exact")
        assert activation_cost(g.scaled(2.0), seeds) == 2 * activation_cost(g, seeds)

    def test_additive_and_positive(self, rng):
        g = random_graph(rng, 40, 0.2, connected=True)
        a, b = [1, 2], [7, 9, 11]
        for mode in ("sqrt-n", "exact"):
            whole = activation_cost(g, a + b, mode)
            assert whole == pytest.approx(activation_cost(g, a, mode) + activation_cost(g, b, mode))
            assert whole > 0

    def test_sqrt_bins(self):
        p = strength_probabilities(np.array([0.0, 1.0, 2.0, 3.0, 4.0, 10.0, 10.0, 10.0, 10.0]))
        # 3 bins of width 10/3 hold {0,1,2,3}, {4} and the four 10s
        assert list(p) == [4 / 9] * 4 + [1 / 9] + [4 / 9] * 4

    def test_errors(self, triangle):
        with pytest.raises(ValueError):
            activation_cost(triangle, [])
        with pytest.raises(ValueError):
            activation_cost(triangle, [0], "log")
