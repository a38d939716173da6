"""Tests for config diagnostics."""

from src.handlers.validate_handler import Diagnostic, check_config, has_errors, validate_config
from src.utils.config import AppConfig, ExperimentConfig, GlobalSettings


def make_config(settings=None, **experiment):
    return AppConfig(settings=settings or GlobalSettings(), experiment=ExperimentConfig(**experiment))


def messages(diagnostics):
    return [str(d) for d in diagnostics]


def test_diagnostic_str():
    assert str(Diagnostic("warning", "capped")) == "warning: capped"
    assert has_errors([Diagnostic("warning", "a"), Diagnostic("error", "b")])
    assert not has_errors([Diagnostic("warning", "a")])


def test_valid_graph_config(sample_app_config):
    """Test that the sample sweep has no diagnostics."""
    assert check_config(sample_app_config) == []


def test_graph_size_checks():
    """Test parity, simplicity and dense-limit checks on k_values."""
    config = make_config(GlobalSettings(dense_limit=100), kind="graph-variance", q=2, k_values=[3, 2, 7, 200])
    text = messages(check_config(config))
    assert text == [
        "error: k=3: k*(q+1) must be even for q=2",
        "error: k=2: need k > q+1 for a simple graph",
        "error: k=7: k*(q+1) must be even for q=2",
        "error: k=200 exceeds the dense eigensolve limit 100",
    ]


def test_missing_graph_file(tmp_path):
    config = make_config(kind="nb-decay", graph_files=[str(tmp_path / "g.txt")])
    assert messages(check_config(config)) == [f"error: Graph file not found: {tmp_path / 'g.txt'}"]


def test_missing_rotation_file(tmp_path):
    config = make_config(kind="sphere-gap", s_values=[1], rotations={"file": str(tmp_path / "r.txt")})
    (diag,) = check_config(config)
    assert diag.level == "error"
    assert "Rotation file not found" in diag.message


def test_rotation_that_is_not_a_rotation():
    config = make_config(
        kind="sphere-gap",
        s_values=[1],
        rotations={"matrices": [[1, 0, 0, 0, 1, 0, 0, 0, -1], [1, 0, 0, 0, 1, 0, 0, 0, 1]]},
    )
    (diag,) = check_config(config)
    assert diag.message.startswith("rotations: ")
    assert "generator 0" in diag.message


def test_word_budget():
    config = make_config(GlobalSettings(word_budget=1000), kind="word-angles", word_length=6)
    (diag,) = check_config(config)
    assert "over the budget 1000" in diag.message


def test_orbit_radius_cap_over_budget():
    settings = GlobalSettings(word_budget=100, orbit_radius_cap=6)
    config = make_config(settings, kind="sphere-variance", s_values=[4], T_values=[1])
    assert messages(check_config(config)) == ["error: orbit_radius_cap=6 exceeds the word budget"]


def test_capped_certification_warns():
    """Test that T=10 needs radius 40, so a cap of 2 yields a warning but no error."""
    settings = GlobalSettings(orbit_radius_cap=2)
    diagnostics = check_config(make_config(settings, kind="sphere-variance", s_values=[4, 9], T_values=[10]))
    assert len(diagnostics) == 1
    assert diagnostics[0].level == "warning"
    assert diagnostics[0].message.startswith("orbit_radius_cap=2 is below 4T=40, raise it to certify T=10: ")
    assert "condition at T=10, s=4" in diagnostics[0].message
    assert not has_errors(diagnostics)


def test_cap_named_once_per_T():
    """Test that each capped T gets one warning naming the cap."""
    settings = GlobalSettings(orbit_radius_cap=4)
    config = make_config(settings, kind="sphere-variance", s_values=[4, 9], T_values=[2, 3])
    text = messages(check_config(config))
    assert len(text) == 2
    assert text[0].startswith("warning: orbit_radius_cap=4 is below 4T=8")
    assert text[1].startswith("warning: orbit_radius_cap=4 is below 4T=12")


def test_certified_configuration_is_clean():
    settings = GlobalSettings(orbit_radius_cap=4)
    config = make_config(settings, kind="sphere-variance", s_values=[10**10], T_values=[1])
    assert check_config(config) == []


def test_validate_config_file(write_config, tmp_path):
    """Test file-level errors and schema errors."""
    assert messages(validate_config(tmp_path / "missing.yaml"))[0].startswith(
        "error: Configuration file not found"
    )

    path = write_config({"experiment": {"kind": "sphere-gap", "s_values": [1], "q": 1}})
    assert messages(validate_config(path)) == ["error: experiment.q: q must be ≥ 2"]

    path = write_config({"experiment": {"kind": "sphere-gap", "s_values": [1, 2]}}, name="ok.yaml")
    assert validate_config(path) == []
