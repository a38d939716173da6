"""Tests for the arc graph and non-backtracking decay."""

import math

import numpy as np
import pytest

from src.graphs.arcs import arc_graph, fit_decay, nb_norm_decay, nb_operator_apply
from src.graphs.graph import RegularGraph, random_regular
from src.graphs.operators import tq_apply


class TestArcGraph:
    """Tests for arc construction and reversal."""

    def test_k4_arcs(self, k4):
        ag = arc_graph(k4)
        assert ag.n_arcs == 12
        assert ag.validate() == []
        for arc in range(ag.n_arcs):
            assert ag.source[ag.reverse[arc]] == ag.target[arc]
            succ = ag.successors(arc)
            assert len(succ) == 2
            assert ag.reverse[arc] not in succ
            assert np.all(ag.source[succ] == ag.target[arc])

    def test_self_loops_pair_with_each_other(self):
        g = RegularGraph(q=1, adjacency=np.array([[0, 0], [2, 2], [1, 1]]))
        ag = arc_graph(g)
        assert ag.reverse[0] == 1 and ag.reverse[1] == 0
        assert ag.validate() == []

    def test_asymmetric_adjacency_rejected(self):
        g = RegularGraph(q=1, adjacency=np.array([[1, 1], [0, -1]]))
        with pytest.raises(ValueError, match="not symmetric"):
            arc_graph(g)

    def test_begin_end_operators(self, k4):
        ag = arc_graph(k4)
        f = np.array([10.0, 20.0, 30.0, 40.0])
        np.testing.assert_array_equal(ag.begin_operator(4) @ f, f[ag.source])
        np.testing.assert_array_equal(ag.end_operator(4) @ f, f[ag.target])


class TestNbOperator:
    """Tests for T_q'."""

    def test_constants_fixed(self, k4):
        ag = arc_graph(k4)
        np.testing.assert_allclose(nb_operator_apply(ag, 2, np.ones(12)), np.ones(12))

    def test_rescaled_q(self, k4):
        ag = arc_graph(k4)
        np.testing.assert_allclose(nb_operator_apply(ag, 4, np.ones(12)), np.full(12, 0.5))

    def test_wrong_length_rejected(self, k4):
        with pytest.raises(ValueError, match="arc count"):
            nb_operator_apply(arc_graph(k4), 2, np.ones(5))


class TestNbIdentities:
    """T_q' on Im B, Im E and their orthogonal complement."""

    @pytest.fixture
    def setup(self, rng):
        g = random_regular(64, 2, seed=5)
        ag = arc_graph(g)
        return g, ag, ag.begin_operator(g.k), ag.end_operator(g.k), rng.standard_normal(g.k)

    def test_begin_maps_to_end(self, setup):
        g, ag, B, E, f = setup
        np.testing.assert_allclose(nb_operator_apply(ag, g.q, B @ f), E @ f, atol=1e-12)

    def test_end_maps_through_tq(self, setup):
        g, ag, B, E, f = setup
        expected = (E @ (math.sqrt(g.q) * tq_apply(g, f)) - B @ f) / g.q
        np.testing.assert_allclose(nb_operator_apply(ag, g.q, E @ f), expected, atol=1e-12)

    def test_complement_is_reversed_and_scaled(self, setup, rng):
        g, ag, B, E, _ = setup
        M = np.hstack([B.toarray(), E.toarray()])
        r = rng.standard_normal(ag.n_arcs)
        F = r - M @ np.linalg.lstsq(M, r, rcond=None)[0]
        assert np.max(np.abs(M.T @ F)) <= 1e-10
        np.testing.assert_allclose(nb_operator_apply(ag, g.q, F), -F[ag.reverse] / g.q, atol=1e-10)


class TestNbNormDecay:
    """Tests for ||(T_q')^k|| off the constants."""

    def test_k4_decays_at_gap_rate(self, k4):
        norms = nb_norm_decay(arc_graph(k4), 2, 12)
        beta = math.log(2) / 2
        assert norms[0] == 1.0
        assert np.all(norms <= 10.0 * np.exp(-beta * np.arange(13)))

    def test_bipartite_does_not_decay(self, k33):
        norms = nb_norm_decay(arc_graph(k33), 2, 10)
        assert np.all(norms >= 0.5)

    def test_dense_and_iterative_agree(self):
        ag = arc_graph(random_regular(20, 2, seed=4))
        dense = nb_norm_decay(ag, 2, 5, method="dense")
        iterative = nb_norm_decay(ag, 2, 5, method="iterative")
        np.testing.assert_allclose(iterative, dense, rtol=1e-5)


class TestFitDecay:
    """Tests for the log-linear fit."""

    def test_recovers_rate(self):
        ks = np.arange(21)
        norms = 3.0 * (ks + 1) * np.exp(-0.4 * ks)
        fit = fit_decay(norms, beta=0.4)
        assert fit.slope == pytest.approx(-0.4, abs=1e-10)
        assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-10)
        assert fit.constant == pytest.approx(3.0 * 21)
        assert fit.growth_constant == pytest.approx(3.0)
        assert fit.decays(margin=0.05)

    def test_raw_slope_keeps_the_linear_factor(self):
        ks = np.arange(21)
        norms = 3.0 * (ks + 1) * np.exp(-0.4 * ks)
        fit = fit_decay(norms, beta=0.4)
        expected = np.polyfit(ks[1:], np.log(norms[1:]), 1)[0]
        assert fit.raw_slope == pytest.approx(expected, abs=1e-10)
        assert fit.raw_slope > fit.slope

    def test_pure_exponential_raw_slope(self):
        ks = np.arange(21)
        fit = fit_decay(np.exp(-0.5 * ks), beta=0.5)
        assert fit.raw_slope == pytest.approx(-0.5, abs=1e-10)
        assert fit.constant == pytest.approx(1.0)

    def test_too_few_points(self):
        fit = fit_decay(np.array([1.0, 0.0, 0.0]), beta=0.3)
        assert fit.slope == -math.inf
        assert fit.constant == 1.0
