"""Pytest configuration and shared fixtures."""

import numpy as np
import pytest
import yaml

from src.graphs.graph import complete_bipartite, complete_graph, cycle_graph, tree_ball
from src.sphere.rotations import default_rotation_set, rx, rz, rotation_set_from_matrices
from src.utils.config import AppConfig, ExperimentConfig, GlobalSettings


@pytest.fixture
def rng():
    """Seeded generator so random inputs are the same on every run."""
    return np.random.default_rng(12345)


@pytest.fixture
def k4():
    """K_4, the 3-regular graph with q = 2 and injectivity radius 1 everywhere."""
    return complete_graph(4)


@pytest.fixture
def cycle6():
    """The 6-cycle (q = 1)."""
    return cycle_graph(6)


@pytest.fixture
def k33():
    """K_{3,3}, bipartite and 3-regular."""
    return complete_bipartite(2)


@pytest.fixture
def tree_ball_q2():
    """Radius-6 ball of the 3-regular tree."""
    return tree_ball(2, 6)


@pytest.fixture
def rots():
    """Default free pair of rotations by arccos(3/5), q = 3."""
    return default_rotation_set()


@pytest.fixture
def quarter_turns():
    """Quarter turns about z and x; not free (a^4 = e)."""
    return rotation_set_from_matrices([rz(np.pi / 2), rx(np.pi / 2)])


@pytest.fixture
def sample_settings():
    """Settings with a single worker and small budgets."""
    return GlobalSettings(threads=1, dense_limit=512, word_budget=100_000, orbit_radius_cap=4)


@pytest.fixture
def graph_variance_config(tmp_path):
    """A tiny graph-variance sweep writing into tmp_path."""
    return ExperimentConfig(
        kind="graph-variance",
        seed=7,
        output_dir=str(tmp_path / "results"),
        q=2,
        k_values=[20, 30],
        instances=2,
        T_values=[2, 3],
        bst_radius=3,
    )


@pytest.fixture
def sample_app_config(sample_settings, graph_variance_config):
    """Sample application configuration."""
    return AppConfig(settings=sample_settings, experiment=graph_variance_config)


@pytest.fixture
def write_config(tmp_path):
    """Write a config mapping to a YAML file and return its path."""

    def _write(data, name="config.yaml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(data))
        return path

    return _write
