"""Tests for the experiment factory and the nine sweep kinds."""

import math

import numpy as np
import pandas as pd
import pytest

from src.experiments import create_experiment
from src.experiments.base import rotation_set_from_config
from src.experiments.implementations import (
    GraphHsBoundExperiment,
    GraphKestenMcKayExperiment,
    GraphVarianceExperiment,
    MomentCheckExperiment,
    NbDecayExperiment,
    SphereGapExperiment,
    SphereKestenMcKayExperiment,
    SphereVarianceExperiment,
    WordAnglesExperiment,
)
from src.graphs.graph import complete_graph, write_graph
from src.sphere.words import exceptional_set_measure
from src.utils.config import ExperimentConfig, RotationConfig

QUARTER_TURNS = [
    [0, -1, 0, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, -1, 0, 1, 0],
]


@pytest.mark.parametrize(
    "data, expected",
    [
        ({"kind": "graph-variance", "k_values": [20]}, GraphVarianceExperiment),
        ({"kind": "graph-kesten-mckay", "k_values": [20]}, GraphKestenMcKayExperiment),
        ({"kind": "nb-decay", "k_values": [20]}, NbDecayExperiment),
        ({"kind": "graph-hs-bound", "k_values": [20]}, GraphHsBoundExperiment),
        ({"kind": "sphere-variance", "s_values": [1]}, SphereVarianceExperiment),
        ({"kind": "sphere-kesten-mckay", "s_values": [1]}, SphereKestenMcKayExperiment),
        ({"kind": "sphere-gap", "s_values": [1]}, SphereGapExperiment),
        ({"kind": "word-angles"}, WordAnglesExperiment),
        ({"kind": "moment-check", "s_values": [1]}, MomentCheckExperiment),
    ],
)
def test_factory_dispatch(data, expected, sample_settings):
    """Test that every kind maps to its experiment class."""
    experiment = create_experiment(ExperimentConfig(**data), sample_settings)
    assert isinstance(experiment, expected)
    assert experiment.get_name() == data["kind"]


def test_factory_unknown_kind(sample_settings):
    """Test the fallback branch for a kind that slipped past validation."""
    config = ExperimentConfig.model_construct(kind="lattice", rotations=RotationConfig())
    with pytest.raises(ValueError, match="Unknown experiment kind"):
        create_experiment(config, sample_settings)


class TestPoints:
    """Tests for sweep points and their seeds."""

    def test_graph_points_sorted_and_unique(self, sample_settings):
        config = ExperimentConfig(kind="graph-variance", k_values=[30, 20, 30], instances=2)
        experiment = create_experiment(config, sample_settings)
        assert experiment.points() == [
            {"k": 20, "instance": 0},
            {"k": 20, "instance": 1},
            {"k": 30, "instance": 0},
            {"k": 30, "instance": 1},
        ]
        assert experiment.point_keys() == ["k", "instance"]

    def test_graph_file_points(self, sample_settings):
        config = ExperimentConfig(kind="graph-kesten-mckay", graph_files=["a.txt", "b.txt"])
        assert create_experiment(config, sample_settings).points() == [{"file": 0}, {"file": 1}]

    def test_sphere_points(self, sample_settings):
        config = ExperimentConfig(kind="sphere-gap", s_values=[5, 1, 5, 3])
        assert create_experiment(config, sample_settings).points() == [{"s": 1}, {"s": 3}, {"s": 5}]

    def test_word_angles_single_point(self, sample_settings):
        config = ExperimentConfig(kind="word-angles", word_length=3)
        assert create_experiment(config, sample_settings).points() == [{"L": 3}]

    def test_point_seeds(self, sample_settings):
        config = ExperimentConfig(kind="graph-variance", k_values=[20], seed=11)
        experiment = create_experiment(config, sample_settings)
        a = experiment.point_rng({"k": 20, "instance": 0}).random(3)
        b = experiment.point_rng({"k": 20, "instance": 0}).random(3)
        c = experiment.point_rng({"k": 20, "instance": 1}).random(3)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_random_graph_is_reproducible(self, sample_settings):
        config = ExperimentConfig(kind="graph-variance", k_values=[20], seed=3)
        experiment = create_experiment(config, sample_settings)
        g1 = experiment.load_graph({"k": 20, "instance": 0})
        g2 = experiment.load_graph({"k": 20, "instance": 0})
        np.testing.assert_array_equal(g1.adjacency, g2.adjacency)


def test_rotation_set_from_config(tmp_path):
    """Test default, inline and file rotation sources."""
    assert rotation_set_from_config(RotationConfig()).q == 3
    inline = rotation_set_from_config(RotationConfig(matrices=QUARTER_TURNS))
    assert inline.N == 2
    path = tmp_path / "rots.txt"
    path.write_text("\n".join(" ".join(str(x) for x in row) for row in QUARTER_TURNS * 2))
    assert rotation_set_from_config(RotationConfig(file=str(path))).N == 4
    with pytest.raises(FileNotFoundError):
        rotation_set_from_config(RotationConfig(file=str(tmp_path / "none.txt")))


class TestGraphExperiments:
    """Run single points of the graph-side sweeps."""

    def test_graph_variance_point(self, graph_variance_config, sample_settings):
        experiment = create_experiment(graph_variance_config, sample_settings)
        result = experiment.run_point({"k": 20, "instance": 0})
        assert len(result.rows) == 2
        assert [row["T"] for row in result.rows] == [2, 3]
        assert set(result.rows[0]) <= set(experiment.columns)
        assert 0.0 <= result.rows[0]["alpha"] <= 1.0
        assert result.rows[0]["l2_norm_normalized"] == pytest.approx(result.rows[0]["l2_norm"] / math.sqrt(20))

    def test_graph_variance_summary(self, graph_variance_config, sample_settings):
        experiment = create_experiment(graph_variance_config, sample_settings)
        frame = pd.DataFrame(
            {
                "k": [20, 20, 30],
                "variance": [0.1, 0.3, 0.2],
                "hs_bound": [1.0, 0.2, 1.0],
                "holds": [True, False, True],
            }
        )
        summary = experiment.summarize(frame, [])
        assert summary["violations"] == 1
        assert summary["max_variance_to_bound"] == pytest.approx(1.5)
        assert summary["mean_variance_by_k"] == {20: pytest.approx(0.2), 30: pytest.approx(0.2)}

    def test_kesten_mckay_from_file(self, sample_settings, tmp_path):
        path = tmp_path / "k4.txt"
        write_graph(complete_graph(4), path)
        config = ExperimentConfig(kind="graph-kesten-mckay", graph_files=[str(path)])
        result = create_experiment(config, sample_settings).run_point({"file": 0})
        (row,) = result.rows
        assert row["file"] == 0 and row["k"] == 4
        assert row["beta"] == pytest.approx(math.log(2) / 2)
        assert row["tempered_fraction"] == 1.0
        assert 0.0 < row["ks_distance"] <= 1.0

    def test_nb_decay_point(self, sample_settings, tmp_path):
        path = tmp_path / "k4.txt"
        write_graph(complete_graph(4), path)
        config = ExperimentConfig(kind="nb-decay", graph_files=[str(path)], kmax=6)
        experiment = create_experiment(config, sample_settings)
        result = experiment.run_point({"file": 0})
        assert [row["power"] for row in result.rows] == list(range(7))
        assert result.rows[0]["norm"] == pytest.approx(1.0)
        assert result.metrics["beta"] == pytest.approx(math.log(2) / 2)
        assert {row["raw_slope"] for row in result.rows} == {result.metrics["raw_slope"]}
        assert {row["slope"] for row in result.rows} == {result.metrics["slope"]}
        assert result.metrics["growth_constant"] <= result.metrics["constant"]

        summary = experiment.summarize(pd.DataFrame(result.rows), [result.metrics])
        assert summary["max_constant"] == result.metrics["constant"]
        assert summary["all_within_margin"] == result.metrics["within_margin"]

    def test_graph_hs_bound_point(self, sample_settings):
        config = ExperimentConfig(kind="graph-hs-bound", k_values=[20], T_values=[1, 2], seed=5)
        experiment = create_experiment(config, sample_settings)
        result = experiment.run_point({"k": 20, "instance": 0})
        assert len(result.rows) == 2
        for row in result.rows:
            assert row["hs_prime_sq"] <= row["hs_sq"] * (1 + 1e-9)
            assert 0 <= row["short_rows"] <= 20
        summary = experiment.summarize(pd.DataFrame(result.rows), [])
        assert summary["split_bound_holds"]
        assert summary["fitted_constant"] >= 0.0


class TestSphereExperiments:
    """Run single points of the sphere-side sweeps."""

    def test_sphere_gap(self, sample_settings):
        config = ExperimentConfig(kind="sphere-gap", s_values=[1, 2])
        experiment = create_experiment(config, sample_settings)
        rows = experiment.run_point({"s": 1}).rows + experiment.run_point({"s": 2}).rows
        assert rows[0]["beta"] == pytest.approx(math.log(3) / 2)
        summary = experiment.summarize(pd.DataFrame(rows), [])
        assert summary["running_min"]["1"] == pytest.approx(math.log(3) / 2)
        assert summary["min_beta"] == pytest.approx(min(r["beta"] for r in rows))

    def test_sphere_gap_skips_constants(self, sample_settings):
        config = ExperimentConfig(kind="sphere-gap", s_values=[0])
        assert create_experiment(config, sample_settings).run_point({"s": 0}).rows == []

    def test_sphere_kesten_mckay(self, sample_settings):
        config = ExperimentConfig(kind="sphere-kesten-mckay", s_values=[1], interval=(1.5, 2.0))
        experiment = create_experiment(config, sample_settings)
        rows = experiment.run_point({"s": 1}).rows
        assert rows[0]["count"] == 2
        summary = experiment.summarize(pd.DataFrame(rows), [])
        assert summary["interval"] == [1.5, 2.0]
        assert summary["max_abs_deviation"] == pytest.approx(abs(rows[0]["deviation"]))

    def test_sphere_variance(self, sample_settings):
        config = ExperimentConfig(
            kind="sphere-variance",
            s_values=[2, 4],
            T_values=[10],
            observable={"kind": "harmonic", "degree": 2},
        )
        experiment = create_experiment(config, sample_settings)
        results = [experiment.run_point({"s": s}) for s in (2, 4)]
        assert len(results[0].rows) == 5
        assert len(results[1].rows) == 9
        summary = experiment.summarize(
            pd.DataFrame(results[0].rows + results[1].rows), [r.metrics for r in reversed(results)]
        )
        assert list(summary["variance"]) == ["2", "4"]
        assert summary["hs_violations"] == 0
        assert len(summary["strictly_decreasing"]) == 1

    def test_sphere_observables_follow_count(self, sample_settings):
        config = ExperimentConfig(kind="sphere-variance", s_values=[3], observable={"count": 2, "band": 3})
        experiment = create_experiment(config, sample_settings)
        first, second = experiment.observables()
        assert first.coefficients != second.coefficients
        assert experiment.observables()[0].coefficients == first.coefficients

    def test_coefficient_observable(self, sample_settings):
        config = ExperimentConfig(
            kind="sphere-variance",
            s_values=[3],
            observable={"kind": "coefficients", "coefficients": [{"l": 2, "m": 0, "re": 1.0}]},
        )
        (a,) = create_experiment(config, sample_settings).observables()
        assert a.coefficients == {(2, 0): 1.0}

    def test_moment_check(self, sample_settings):
        config = ExperimentConfig(kind="moment-check", s_values=[1], moments=[0, 2])
        experiment = create_experiment(config, sample_settings)
        rows = experiment.run_point({"s": 1}).rows
        assert [r["n"] for r in rows] == [0, 2]
        assert rows[0]["within_tolerance"]
        assert not rows[1]["within_tolerance"]
        summary = experiment.summarize(pd.DataFrame(rows), [])
        assert not summary["all_within_tolerance"]

    def test_word_angles(self, sample_settings):
        s = 10**8
        config = ExperimentConfig(kind="word-angles", word_length=3, s_values=[s])
        experiment = create_experiment(config, sample_settings)
        result = experiment.run_point({"L": 3})
        assert [row["count"] for row in result.rows] == [4, 12, 36]
        summary = experiment.summarize(pd.DataFrame(result.rows), [result.metrics])
        assert summary["words"] == 53
        assert summary["collision_count"] == 0
        assert summary["fixed_points"] == 2 * 52
        assert summary["exceptional_measure"][str(s)] == pytest.approx(
            exceptional_set_measure(np.zeros((104, 3)), s)
        )
        assert summary["min_angle"] == pytest.approx(min(row["min_angle"] for row in result.rows))

    def test_word_angles_reports_collisions(self, sample_settings):
        config = ExperimentConfig(kind="word-angles", word_length=2, rotations={"matrices": QUARTER_TURNS})
        experiment = create_experiment(config, sample_settings)
        result = experiment.run_point({"L": 2})
        summary = experiment.summarize(pd.DataFrame(result.rows), [result.metrics])
        assert summary["collision_count"] > 0
        assert ["aa", "AA"] in summary["collisions"] or ["AA", "aa"] in summary["collisions"]
