"""Tests for injectivity radii and the BST profile."""

import numpy as np

from src.graphs.graph import cycle_graph, random_regular, tree_ball, tree_depths
from src.graphs.injectivity import bst_profile, injectivity_radii, injectivity_radius, kept_rows


class TestInjectivityRadius:
    """Tests for rho(x)."""

    def test_complete_graph(self, k4):
        np.testing.assert_array_equal(injectivity_radii(k4), [1, 1, 1, 1])

    def test_cycle(self, cycle6):
        assert injectivity_radius(cycle6, 0) == 2
        assert injectivity_radius(cycle_graph(5), 0) == 2

    def test_tree_ball_center_reports_depth(self):
        assert injectivity_radius(tree_ball(2, 4), 0) == 4

    def test_tree_ball_leaf_reports_eccentricity(self):
        g = tree_ball(2, 3)
        leaf = int(np.argmax(tree_depths(g)))
        assert injectivity_radius(g, leaf) == 6

    def test_cap(self):
        assert injectivity_radius(tree_ball(2, 5), 0, cap=2) == 2
        assert injectivity_radius(tree_ball(2, 5), 0, cap=0) == 0

    def test_random_graph_radius_is_small_but_positive(self):
        radii = injectivity_radii(random_regular(60, 2, seed=1))
        assert radii.min() >= 1
        assert radii.max() < 60


class TestBstProfile:
    """Tests for alpha_R = |{x : rho(x) < R}| / k."""

    def test_k4(self, k4):
        profile = bst_profile(k4, 3)
        assert profile.count(1) == 0
        assert profile.count(2) == 4
        assert profile.count(3) == 4
        assert profile.alpha(2) == 1.0
        assert profile.pairs() == [(1, 0.0), (2, 1.0), (3, 1.0)]

    def test_monotone(self):
        profile = bst_profile(random_regular(80, 2, seed=9), 6)
        assert list(profile.counts) == sorted(profile.counts)
        assert profile.r_max == 6


class TestKeptRows:
    """Tests for the mask of rows kept in A_T'."""

    def test_k4_keeps_nothing(self, k4):
        assert not kept_rows(k4, 1).any()

    def test_tree_ball_keeps_everything(self):
        assert kept_rows(tree_ball(2, 5), 1).all()

    def test_keeps_exactly_the_long_loop_rows(self):
        g = random_regular(200, 2, seed=3)
        radii = injectivity_radii(g, cap=5)
        np.testing.assert_array_equal(kept_rows(g, 1), radii > 4)
