import math

import numpy as np
import pytest

from wcycle.epidemic import (
    WsirParams,
    epidemic_threshold,
    run_stream,
    transmission_probabilities,
    wsir_average,
    wsir_run,
)
from wcycle.errors import ThresholdUndefinedError, UnknownNodeError
from wcycle.graph import WeightedGraph, hop_distances

import oracles
from conftest import random_graph


def _exact_mean(g, seeds, beta, mu):
    adj = oracles.adjacency(g)
    p = {(i, j): min(1.0, beta * w) for i in adj for j, w in adj[i].items()}
    dist = oracles.sir_exact_distribution(adj, seeds, p, mu)
    mean = sum(k * q for k, q in dist.items())
    var = sum(k * k * q for k, q in dist.items()) - mean ** 2
    return dist, mean, var


class TestParams:
    @pytest.mark.parametrize("kw", [dict(beta=-1), dict(beta=math.nan), dict(beta=0.1, mu=0),
                                    dict(beta=0.1, mu=1.5), dict(beta=0.1, max_steps=0),
                                    dict(beta=0.1, variant="nope"),
                                    dict(beta=2.0, variant="complement")])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            WsirParams(**kw)

    def test_probabilities(self):
        g = WeightedGraph.from_edges([(0, 1, 0.5), (1, 2, 4.0)])
        p = transmission_probabilities(g, 0.5)
        assert sorted(set(p.tolist())) == [0.25, 1.0]
        q = transmission_probabilities(g, 0.5, "complement")
        assert sorted(set(q.tolist())) == pytest.approx([1 - 0.5 ** 0.5, 1 - 0.5 ** 4])


class TestThreshold:
    def test_triangle(self, triangle):
        # <k>=2, <k^2>=4, <w>=1
        assert epidemic_threshold(triangle) == 1.0

    def test_matching_undefined(self):
        with pytest.raises(ThresholdUndefinedError):
            epidemic_threshold(WeightedGraph.from_edges([(0, 1), (2, 3)]))

    def test_scales_inversely_with_weight(self, rng):
        g = random_graph(rng, 30, 0.2, connected=True)
        assert epidemic_threshold(g.scaled(2.0)) == pytest.approx(epidemic_threshold(g) / 2)


class TestDegenerate:
    def test_beta_zero(self, rng):
        g = random_graph(rng, 30, 0.2)
        r = wsir_average(g, [0, 5, 7], WsirParams(beta=0.0), runs=50)
        assert r.mean == 3.0 and r.std == 0.0

    def test_certain_transmission_reaches_component(self, rng):
        g = random_graph(rng, 40, 0.04)
        seeds = [0, 1]
        reach = {v for s in seeds for v, d in enumerate(hop_distances(g, s)) if d is not None}
        r = wsir_average(g, seeds, WsirParams(beta=1e9, mu=1.0), runs=20)
        assert r.mean == len(reach) and r.std == 0.0

    def test_triangle_single_seed(self, triangle):
        r = wsir_average(triangle, [0], WsirParams(beta=1.0, mu=0.5), runs=100)
        assert (r.mean, r.std) == (3.0, 0.0)

    def test_bad_seeds(self, triangle):
        with pytest.raises(ValueError):
            wsir_run(triangle, [], WsirParams(beta=0.1), 0)
        with pytest.raises(UnknownNodeError):
            wsir_run(triangle, [3], WsirParams(beta=0.1), 0)


class TestAgainstExact:
    @pytest.mark.parametrize("edges, seeds, beta, mu", [
        ([(0, 1), (1, 2), (2, 3)], [0], 0.5, 1.0),
        ([(0, 1), (1, 2), (2, 3)], [0], 0.5, 0.5),
        ([(0, 1, 0.5), (1, 2, 2.0), (0, 2, 1.0), (2, 3, 1.5)], [3], 0.3, 0.4),
        ([(0, 1), (0, 2), (0, 3), (0, 4)], [1], 0.6, 0.7),
    ])
    def test_distribution(self, edges, seeds, beta, mu):
        g = WeightedGraph.from_edges(edges)
        dist, mean, var = _exact_mean(g, seeds, beta, mu)
        runs = 4000
        r = wsir_average(g, seeds, WsirParams(beta=beta, mu=mu, seed=11), runs=runs)
        assert abs(r.mean - mean) <= 4 * math.sqrt(var / runs)
        counts = np.bincount(r.sizes, minlength=g.number_of_nodes + 1)
        for k, q in dist.items():
            sd = math.sqrt(q * (1 - q) / runs)
            assert abs(counts[k] / runs - q) <= 4.5 * sd + 1e-12
        assert sum(counts[k] for k in range(len(counts)) if k not in dist) == 0

    def test_path4_known_values(self):
        g = WeightedGraph.from_edges([(0, 1), (1, 2), (2, 3)])
        dist, mean, var = _exact_mean(g, [0], 0.5, 1.0)
        assert dist == pytest.approx({1: 0.5, 2: 0.25, 3: 0.125, 4: 0.125})
        assert mean == pytest.approx(1.875)
        assert var == pytest.approx(1.109375)


class TestCoupling:
    def test_deterministic(self, rng):
        g = random_graph(rng, 40, 0.1)
        p = WsirParams(beta=0.2, seed=99)
        assert wsir_average(g, [0, 1], p, 30) == wsir_average(g, [0, 1], p, 30)

    def test_threads_do_not_change_result(self, rng):
        g = random_graph(rng, 40, 0.1)
        p = WsirParams(beta=0.2, seed=5)
        assert wsir_average(g, [3], p, 40, threads=4) == wsir_average(g, [3], p, 40)

    def test_seed_changes_result(self, rng):
        g = random_graph(rng, 60, 0.1)
        a = wsir_average(g, [0], WsirParams(beta=0.3, seed=1), 50)
        b = wsir_average(g, [0], WsirParams(beta=0.3, seed=2), 50)
        assert a.sizes != b.sizes

    def test_streams_independent_of_other_runs(self):
        x = run_stream(7, 3).random(5)
        run_stream(7, 2).random(1000)
        assert np.array_equal(run_stream(7, 3).random(5), x)

    def test_seed_monotone(self, rng):
        for _ in range(10):
            g = random_graph(rng, 30, 0.12)
            small = [0, 1]
            big = small + [rng.randrange(2, 30) for _ in range(3)]
            p = WsirParams(beta=0.4, mu=0.6, seed=rng.randrange(1 << 30))
            for r in range(25):
                assert wsir_run(g, small, p, r).size <= wsir_run(g, big, p, r).size

    def test_bounded_by_components(self, rng):
        g = random_graph(rng, 50, 0.03)
        seeds = [0, 10, 20]
        reach = {v for s in seeds for v, d in enumerate(hop_distances(g, s)) if d is not None}
        r = wsir_average(g, seeds, WsirParams(beta=0.8, mu=0.3), 100)
        assert len(seeds) <= min(r.sizes) and max(r.sizes) <= len(reach)

    def test_max_steps_truncates(self):
        path = WeightedGraph.from_edges([(k, k + 1) for k in range(20)])
        out = wsir_run(path, [0], WsirParams(beta=1.0, mu=1.0, max_steps=5), 0)
        assert out.size == 6
        assert not out.absorbed
        full = wsir_run(path, [0], WsirParams(beta=1.0, mu=1.0), 0)
        assert full.size == 21 and full.absorbed
