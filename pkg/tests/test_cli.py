import json

import pytest

from hyperdet.cli import EXIT_BUDGET, EXIT_IDENTITY, EXIT_INPUT, EXIT_OK, run
from hyperdet.exceptions import IdentityCheckError
from hyperdet.hypergraph.facade import DeterminantEngine
from hyperdet.hypergraph.models import Contributor
from hyperdet.report_types import CommandReport

from tests.fixtures.matrices import SIGNED4_TEXT, WORKED3_PROBE, WORKED3_TEXT


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "HYPERDET_BUDGET", "HYPERDET_WORKERS", "HYPERDET_EXHAUSTIVE_CAP", "HYPERDET_TIMINGS",
        "HYPERDET_PROGRESS_INTERVAL", "HYPERDET_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr("hyperdet.config.load_dotenv", lambda: None)


@pytest.fixture
def worked_file(tmp_path):
    path = tmp_path / "worked3.txt"
    path.write_text(WORKED3_TEXT)
    return str(path)


@pytest.fixture
def signed4_file(tmp_path):
    path = tmp_path / "signed4.txt"
    path.write_text(SIGNED4_TEXT)
    return str(path)


def test_det_json(worked_file, capsys):
    """det prints sorted JSON with oracle and contributor values."""
    assert run(["det", worked_file, "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["det_h"] == 4
    assert payload["det_l"] == 16
    assert payload["contributors"]["visited"] == 162
    assert payload["agreement"] is True


def test_det_text(worked_file, capsys):
    assert run(["det", worked_file]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("[det]\n")
    assert "det_l: 16" in out
    assert "agreement: true" in out


def test_reduce(signed4_file, capsys):
    assert run(["reduce", signed4_file, "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["identity"] == "16 = 2^3 · 2"
    assert payload["h_prime"] == [[1, 0, 1], [0, 1, 1], [1, 1, 0]]
    assert payload["standardization"]["row_signs"] == [-1, -1, -1, 1]

    assert run(["reduce", signed4_file]) == EXIT_OK
    assert "identity: 16 = 2^3 · 2" in capsys.readouterr().out


def test_classes_single(worked_file, capsys):
    assert run(["classes", worked_file, "--class", "(2 3)", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["tally"]["sum"] == -4


def test_pair_needs_class(worked_file, capsys):
    assert run(["classes", worked_file, "--pair", "(1 2 3)"]) == EXIT_INPUT
    assert "--pair needs --class" in capsys.readouterr().err


def test_probe_then_reconstruct(tmp_path, capsys):
    std = tmp_path / "std.txt"
    std.write_text(WORKED3_TEXT)
    assert run(["probe", str(std), "--format", "json"]) == EXIT_OK
    probe = json.loads(capsys.readouterr().out)["probe"]
    assert probe == WORKED3_PROBE

    probe_file = tmp_path / "probe.json"
    probe_file.write_text(json.dumps(probe))
    assert run(["reconstruct", "--probe", str(probe_file), "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["matrix"] == "1 1 1\n1 -1 1\n1 1 -1"


def test_probe_needs_standardized_matrix(signed4_file, capsys):
    assert run(["probe", signed4_file]) == EXIT_INPUT
    assert "standardized" in capsys.readouterr().err


def test_reconstruct_rejects_bad_json(tmp_path, capsys):
    probe_file = tmp_path / "probe.json"
    probe_file.write_text("{not json")
    assert run(["reconstruct", "--probe", str(probe_file)]) == EXIT_INPUT
    probe_file.write_text(json.dumps({"n": 3, "s1k": [1], "skl": [], "s1kl": []}))
    assert run(["reconstruct", "--probe", str(probe_file)]) == EXIT_INPUT


def test_malformed_matrix(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\n1 1\n")
    assert run(["det", str(path)]) == EXIT_INPUT
    assert "outside" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert run(["det", str(tmp_path / "missing.txt")]) == EXIT_INPUT


def test_budget_refusal_on_det(worked_file, capsys):
    """Oracle values are still printed; the exit code reports the refusal."""
    assert run(["det", worked_file, "--budget", "100", "--format", "json"]) == EXIT_BUDGET
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["det_l"] == 16
    assert payload["contributors"]["required"] == 162
    assert "162" in captured.err


def test_budget_refusal_on_verify(worked_file, capsys):
    assert run(["verify", worked_file, "--budget", "10"]) == EXIT_BUDGET
    error = json.loads(capsys.readouterr().err.splitlines()[-1])
    assert error["budget"] == 10


def test_search_above_cap(capsys):
    assert run(["search", "6"]) == EXIT_BUDGET
    error = json.loads(capsys.readouterr().err.splitlines()[-1])
    assert error["required"] == 2**25


def test_search_progress_on_stderr_by_default(monkeypatch, capsys):
    monkeypatch.setenv("HYPERDET_PROGRESS_INTERVAL", "4")
    assert run(["search", "3", "--format", "json"]) == EXIT_OK
    captured = capsys.readouterr()
    progress = [line for line in captured.err.splitlines() if "candidates scanned" in line]
    assert len(progress) == 4
    assert "n=3: 16 candidates scanned" in progress[-1]
    assert "candidates scanned" not in captured.out
    assert json.loads(captured.out)["best_magnitude"] == 4


def test_search_progress_silent_below_interval(capsys):
    assert run(["search", "3", "--format", "json"]) == EXIT_OK
    assert "candidates scanned" not in capsys.readouterr().err


def test_local_search_budget_counts_evaluations(capsys):
    assert run(["search", "3", "--local", "--budget", "16", "--seed", "4", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["best_magnitude"] == 4
    assert payload["visited"] == 16
    assert payload["note"] == "heuristic: not proven optimal"


def test_identity_failure_exit_code(worked_file, monkeypatch, capsys):
    monkeypatch.setattr(
        DeterminantEngine,
        "det",
        lambda self, structure: CommandReport("det", {"det_h": 0}, checks_passed=False),
    )
    assert run(["det", worked_file]) == EXIT_IDENTITY


def test_identity_error_exit_code(worked_file, monkeypatch, capsys):
    def broken(self, structure):
        raise IdentityCheckError("det(L) disagrees")

    monkeypatch.setattr(DeterminantEngine, "det", broken)
    assert run(["det", worked_file]) == EXIT_IDENTITY
    assert "disagrees" in capsys.readouterr().err


def test_broken_adjacency_inverse_exit_code(worked_file, monkeypatch, capsys):
    monkeypatch.setattr(Contributor, "adjacency_inverse", lambda self: self)
    assert run(["classes", worked_file, "--class", "id", "--pair", "(1 2 3)"]) == EXIT_IDENTITY
    assert "adjacency-inverses" in capsys.readouterr().err


@pytest.mark.parametrize(
    "command",
    [
        ["classes", "{worked}"],
        ["verify", "{worked}"],
        ["det", "{worked}"],
        ["search", "4"],
    ],
)
def test_output_independent_of_workers(command, worked_file, capsys):
    args = [worked_file if part == "{worked}" else part for part in command]
    assert run([*args, "--format", "json", "--workers", "1"]) == EXIT_OK
    serial = capsys.readouterr().out
    assert run([*args, "--format", "json", "--workers", "8"]) == EXIT_OK
    assert capsys.readouterr().out == serial


def test_version(capsys):
    assert run(["--version"]) == EXIT_OK
    assert "version" in capsys.readouterr().out
