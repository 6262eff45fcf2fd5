"""
End-to-end tests for the mubgeo command line
"""

import json

import numpy as np
import pytest

from database import FieldTableCache
from hspace import maximally_mixed, random_pure_state
from main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from serialization import complex_to_json, save_json, state_to_dict


@pytest.fixture
def cli(tmp_path, monkeypatch, capsys):
    """Run main() with --json; returns (exit code, report or None)"""
    monkeypatch.setenv("MUBGEO_LOG_FILE", str(tmp_path / "logs" / "mubgeo.log"))
    for name in ("MUBGEO_CACHE_DIR", "MUBGEO_SEED", "MUBGEO_TOLERANCE", "MUBGEO_JOBS", "MUBGEO_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)

    def run(*argv):
        capsys.readouterr()
        code = main([str(a) for a in argv] + ["--json"])
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None

    return run


def test_mub_construct(cli):
    code, report = cli("mub", 3)
    assert code == EXIT_OK
    assert report["status"] == "pass"
    assert report["command"] == ["mub", "3"]
    assert report["metrics"]["num_bases"] == 4
    assert report["metrics"]["complete"] is True
    assert report["metrics"]["unbiasedness_deviation"] < 1e-10
    assert report["artifacts"] == []


def test_mub_rejects_order_six(cli):
    code, report = cli("mub", 6)
    assert code == EXIT_USAGE
    assert report is None


def test_mub_export_and_verify(cli, tmp_path):
    path = tmp_path / "mub9.json"
    code, report = cli("mub", 9, "--out", path)
    assert code == EXIT_OK
    assert report["artifacts"] == [str(path)]

    code, report = cli("mub", "--verify", path)
    assert code == EXIT_OK
    assert report["metrics"]["n"] == 9


def test_mub_verify_detects_biased_set(cli, tmp_path):
    path = tmp_path / "biased.json"
    save_json(path, {"n": 2, "bases": [complex_to_json(np.eye(2))] * 2})
    code, report = cli("mub", "--verify", path)
    assert code == EXIT_FAILURE
    assert report["status"] == "fail"
    assert report["metrics"]["worst_pair"] is not None


def test_output_is_byte_stable(cli):
    _, first = cli("mub", 4)
    _, second = cli("mub", 4)
    assert first == second


def test_timings_are_opt_in(cli):
    _, report = cli("plane", 2)
    assert "runtime_seconds" not in report["metrics"]
    _, report = cli("plane", 2, "--timings")
    assert report["metrics"]["runtime_seconds"] >= 0


def test_plane_and_corrupted_plane(cli, tmp_path):
    path = tmp_path / "plane3.json"
    code, report = cli("plane", 3, "--out", path)
    assert code == EXIT_OK
    assert report["metrics"]["lines"] == 12
    assert report["metrics"]["A1"] is True

    code, _ = cli("plane", "--verify", path)
    assert code == EXIT_OK

    data = json.loads(path.read_text())
    index = data["lines"].index([0, 3, 6])
    data["lines"][index] = [1, 3, 6]
    path.write_text(json.dumps(data))
    code, report = cli("plane", "--verify", path)
    assert code == EXIT_FAILURE
    assert report["metrics"]["A1"] is False
    assert len(report["metrics"]["A1_witness"]) == 2


def test_plane_needs_an_input(cli):
    code, _ = cli("plane")
    assert code == EXIT_USAGE


def test_mols_to_plane(cli, tmp_path):
    path = tmp_path / "mols4.txt"
    code, report = cli("mols", 4, "--out", path)
    assert code == EXIT_OK
    assert report["metrics"]["squares"] == 3

    code, report = cli("mols", "--verify", path)
    assert code == EXIT_OK
    assert report["metrics"]["complete"] is True

    code, report = cli("plane", "--from-mols", path)
    assert code == EXIT_OK
    assert report["metrics"]["n"] == 4
    assert report["metrics"]["counting"] is True


def test_mols_verify_reports_witness(cli, tmp_path):
    path = tmp_path / "same.txt"
    path.write_text("0 1 2\n1 2 0\n2 0 1\n\n0 1 2\n1 2 0\n2 0 1\n")
    code, report = cli("mols", "--verify", path)
    assert code == EXIT_FAILURE
    assert report["metrics"]["pairwise_orthogonal"] is False
    assert report["metrics"]["witness"]["squares"] == [0, 1]


def test_missing_file(cli, tmp_path):
    code, _ = cli("mols", "--verify", tmp_path / "absent.txt")
    assert code == EXIT_USAGE


def test_tarry(cli):
    code, report = cli("tarry", "--order", 3, "--jobs", 1)
    assert code == EXIT_OK
    assert report["metrics"]["mates_found"] == 1
    assert report["metrics"]["exhaustive"] is True


def test_polytope(cli, tmp_path):
    export = tmp_path / "dsimplex.json"
    code, report = cli("polytope", 3, "--export", export)
    assert code == EXIT_OK
    assert report["metrics"]["corners_are_states"] is True
    assert report["metrics"]["dsimplex_gram_error"] < 1e-10
    assert len(json.loads(export.read_text())["choices"]) == 9


def test_polytope_for_order_six(cli):
    code, _ = cli("polytope", 6)
    assert code == EXIT_USAGE

    code, report = cli("polytope", 6, "--abstract")
    assert code == EXIT_OK
    assert report["metrics"]["realization"] == "abstract"
    assert report["metrics"]["corners_are_states"] is False
    assert "dsimplex_gram_error" not in report["metrics"]


def test_rotated_polytope(cli):
    code, report = cli("polytope", 3, "--rotate", "--seed", 5)
    assert code == EXIT_OK
    assert report["metrics"]["corners_are_states"] is False
    assert report["metrics"]["dsimplex_gram_error"] < 1e-10


def test_wigner(cli, tmp_path):
    state = save_json(tmp_path / "state.json", state_to_dict(random_pure_state(3, seed=1)))
    out = tmp_path / "wigner.json"
    code, report = cli("wigner", "--state", state, "--out", out)
    assert code == EXIT_OK
    metrics = report["metrics"]
    assert metrics["total"] == pytest.approx(1.0, abs=1e-10)
    assert metrics["roundtrip_error"] < 1e-10
    assert metrics["state_is_positive"] is True
    assert metrics["bloch_norm"] == pytest.approx(np.sqrt(1 / 3), abs=1e-10)
    assert out.with_suffix(".csv").exists()
    assert len(report["artifacts"]) == 2


def test_wigner_with_plane_file(cli, tmp_path):
    plane = tmp_path / "plane.json"
    cli("plane", 2, "--out", plane)
    state = save_json(tmp_path / "mixed.json", state_to_dict(maximally_mixed(2)))
    code, report = cli("wigner", "--state", state, "--plane", plane, "--n", 2)
    assert code == EXIT_OK
    assert report["metrics"]["min_value"] == pytest.approx(0.25)


def test_wigner_non_positive_state(cli, tmp_path):
    state = save_json(tmp_path / "bad.json", {"n": 2, "matrix": [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]})
    code, report = cli("wigner", "--state", state)
    assert code == EXIT_OK
    assert report["metrics"]["state_is_positive"] is False


def test_wigner_dimension_mismatch(cli, tmp_path):
    state = save_json(tmp_path / "mixed.json", state_to_dict(maximally_mixed(2)))
    code, _ = cli("wigner", "--state", state, "--n", 3)
    assert code == EXIT_USAGE


def test_sic_qubit(cli, tmp_path):
    code, report = cli("sic", 2, "--out", tmp_path / "sic.json")
    assert code == EXIT_OK
    assert report["metrics"]["sic_found"] is True
    assert report["metrics"]["identity_is_sic"] is True


def test_sic_bounded_search_is_indeterminate(cli):
    code, report = cli("sic", 4, "--max-selections", 5)
    assert code == EXIT_OK
    assert report["status"] == "indeterminate"
    assert report["metrics"]["selections_tried"] == 5


def test_invalid_configuration(cli, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("tolerances:\n  verification: -1\n")
    code, _ = cli("mub", 2, "--config", config)
    assert code == EXIT_USAGE


def test_console_report(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("MUBGEO_LOG_FILE", str(tmp_path / "mubgeo.log"))
    assert main(["plane", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "mubgeo plane 2" in out
    assert "pencil 0: {0,1} {2,3}" in out
    assert "✓ All checks passed" in out


def test_sic_qutrit(cli):
    code, report = cli("sic", 3)
    assert code == EXIT_OK
    assert report["status"] == "pass"
    assert report["metrics"]["sic_found"] is True
    assert report["metrics"]["orientation"] == "facet"


def test_tarry_rejects_order_one(cli):
    code, report = cli("tarry", "--order", 1, "--jobs", 1)
    assert code == EXIT_USAGE
    assert report is None


def test_spectral_tolerance_from_config(cli, tmp_path):
    config = tmp_path / "loose.yaml"
    config.write_text("tolerances:\n  spectral: 1.0\n")
    _, strict = cli("polytope", 6, "--abstract")
    _, loose = cli("polytope", 6, "--abstract", "--config", config)
    assert strict["metrics"]["corners_are_states"] is False
    assert loose["metrics"]["corners_are_states"] is True


def test_fields_come_from_the_cache(cli, tmp_path, monkeypatch):
    cache_dir = tmp_path / "cache"
    monkeypatch.setenv("MUBGEO_CACHE_DIR", str(cache_dir))
    code, _ = cli("mols", 4)
    assert code == EXIT_OK
    assert FieldTableCache(str(cache_dir)).get(2, 2) is not None
