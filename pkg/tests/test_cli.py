"""Tests for the command-line interface."""

import json
from pathlib import Path
from typing import Any

import pytest
from typer.testing import CliRunner, Result

from ramanujan_clouds import __version__
from ramanujan_clouds.main import app
from tests.conftest import write_json

pytestmark = pytest.mark.usefixtures("default_settings")

runner = CliRunner()


def _document(result: Result) -> dict[str, Any]:
    """Output document on stdout, skipping any log lines written before it."""
    text = result.stdout
    return json.loads(text[text.index("{") :])


class TestRamsum:
    """Tests for the ramsum command."""

    def test_single_value(self) -> None:
        """c_4(2) = -2 inside the envelope."""
        result = runner.invoke(app, ["ramsum", "4", "2"])
        assert result.exit_code == 0
        document = _document(result)
        assert document["result"]["value"] == -2
        assert document["numeric_mode"] == "exact"
        assert document["exercises"] == "Ramanujan sums"

    def test_kluyver_method(self) -> None:
        """Both methods agree."""
        result = runner.invoke(app, ["ramsum", "8", "12", "--method", "kluyver"])
        assert _document(result)["result"]["value"] == -4

    def test_csv_table(self) -> None:
        """CSV output starts with a comment header and the column names."""
        result = runner.invoke(app, ["--format", "csv", "ramsum", "3", "2", "--table"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].startswith("# ramanujan-clouds ")
        assert "numeric=exact" in lines[0]
        assert lines[1] == "q,a,value"
        assert lines[2:] == ["1,1,1", "1,2,1", "2,1,-1", "2,2,1", "3,1,-1", "3,2,-1"]

    def test_domain_error(self) -> None:
        """Toolkit errors exit with status 2 and an error document."""
        result = runner.invoke(app, ["ramsum", "0", "3"])
        assert result.exit_code == 2
        error = _document(result)["error"]
        assert error["type"] == "DomainError"
        assert error["condition"] == "positive_integer"

    def test_unknown_method(self) -> None:
        """Unknown methods name the method condition."""
        result = runner.invoke(app, ["ramsum", "4", "2", "--method", "cosine"])
        assert result.exit_code == 2
        assert _document(result)["error"]["condition"] == "method"

    def test_bad_numeric_mode(self) -> None:
        """Invalid global options are usage errors."""
        result = runner.invoke(app, ["--numeric", "decimal", "ramsum", "4", "2"])
        assert result.exit_code == 2

    def test_format_after_command(self) -> None:
        """--format given after the command arguments selects CSV output."""
        result = runner.invoke(app, ["ramsum", "--table", "3", "2", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].startswith("# ramanujan-clouds ")
        assert lines[1] == "q,a,value"
        assert len(lines) == 8

    def test_command_options_override_global_ones(self) -> None:
        """Options after the command win over the global options."""
        argv = ["--format", "csv", "--seed", "1", "ramsum", "4", "2", "-f", "json", "--numeric", "float", "--seed", "9"]
        result = runner.invoke(app, argv)
        assert result.exit_code == 0
        document = _document(result)
        assert (document["numeric_mode"], document["seed"]) == ("float", 9)

    def test_invalid_command_format(self) -> None:
        """Unknown formats after the command are usage errors."""
        result = runner.invoke(app, ["ramsum", "4", "2", "--format", "xml"])
        assert result.exit_code == 2

    def test_error_document_carries_run_metadata(self) -> None:
        """Failed runs report the version, numeric mode, seed and exercised result."""
        result = runner.invoke(app, ["ramsum", "0", "3", "--numeric", "float", "--seed", "5"])
        assert result.exit_code == 2
        document = _document(result)
        assert document["toolkit_version"] == __version__
        assert (document["numeric_mode"], document["seed"]) == ("float", 5)
        assert document["exercises"] == "Ramanujan sums"
        assert document["error"]["condition"] == "positive_integer"


class TestCoefficientCommands:
    """Tests for commands reading coefficient files."""

    def test_classify(self, spec_file: Path) -> None:
        """G(3) = 2, G(9) = 4 gives N = 9 and N_T = 1."""
        result = runner.invoke(app, ["classify", str(spec_file)])
        assert result.exit_code == 0
        report = _document(result)["result"]
        assert (report["n"], report["n_t"]) == (9, 1)
        assert report["primes"][0]["prime_class"] == "simply_bad_opaque"
        assert report["primes"][0]["w"] == 2

    def test_classify_with_finiteness(self, spec_file: Path) -> None:
        """Finite coefficients give consistent probes."""
        result = runner.invoke(app, ["classify", str(spec_file), "--finiteness-budget", "200"])
        assert result.exit_code == 0
        assert _document(result)["result"]["finiteness"]["consistent"] is True

    def test_series(self, spec_file: Path) -> None:
        """R_G(9) with exact value and a non-heuristic verdict."""
        argv = ["series", "--spec", str(spec_file), "--xs", "10:100:10", "--kind", "R", "--a", "9"]
        result = runner.invoke(app, argv)
        assert result.exit_code == 0
        trace = _document(result)["result"]
        assert trace["heuristic"] is False
        assert trace["verdict"]["kind"] == "converged"
        assert len(trace["checkpoints"]) == 10
        assert trace["exact_value"] == trace["checkpoints"][-1][1]

    def test_series_csv_after_options(self, spec_file: Path) -> None:
        """A series trace with --format csv at the end of the command line."""
        argv = ["series", "--kind", "R", "--spec", str(spec_file), "--a", "12", "--xs", "1:1000:10", "--format", "csv"]
        result = runner.invoke(app, argv)
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "exercises=truncated Ramanujan-type series" in lines[0]
        assert lines[1] == "x,re,im"
        assert lines[2] == "1,1.0,0.0"
        assert len(lines) == 102

    def test_series_bad_range(self, spec_file: Path) -> None:
        """Malformed checkpoint ranges are domain errors."""
        result = runner.invoke(app, ["series", "--spec", str(spec_file), "--xs", "a:b"])
        assert result.exit_code == 2
        assert _document(result)["error"]["condition"] == "range"

    def test_cloud_check(self, null_spec_file: Path) -> None:
        """G(2^k) = 1 lies in the null cloud."""
        result = runner.invoke(app, ["cloud-check", str(null_spec_file)])
        assert result.exit_code == 0
        report = _document(result)["result"]
        assert report["verdict"] == "in_null_cloud"
        assert report["consistent"] is True

    def test_euler_selberg(self, spec_file: Path) -> None:
        """The Euler product agrees with the direct sum."""
        result = runner.invoke(app, ["euler-selberg", str(spec_file), "--amax", "12"])
        assert result.exit_code == 0
        values = _document(result)["result"]["values"]
        assert len(values) == 12
        assert all(v["euler_product"] == v["direct"] == v["factorized"] for v in values)

    def test_verify_identities(self) -> None:
        """Every checked identity has zero residual on a seeded coefficient."""
        result = runner.invoke(app, ["verify-identities", "--seed", "4", "--xmax", "80"])
        assert result.exit_code == 0
        document = _document(result)
        assert document["seed"] == 4
        entries = document["result"]["identities"]
        assert len(entries) == 8
        assert all(entry.get("skipped") or entry["residual"] in (0, "0") for entry in entries)

    def test_parse_error(self, tmp_path: Path) -> None:
        """Invalid JSON is reported with the parse condition."""
        path = tmp_path / "broken.json"
        path.write_text("{")
        result = runner.invoke(app, ["classify", str(path)])
        assert result.exit_code == 2
        assert _document(result)["error"]["condition"] == "parse"

    def test_composite_table_key(self, tmp_path: Path) -> None:
        """Tables must be keyed by primes."""
        path = write_json(tmp_path / "g.json", {"primes": {"6": {"values": [[1, 0]]}}})
        result = runner.invoke(app, ["classify", str(path)])
        assert result.exit_code == 2
        assert _document(result)["error"]["condition"] == "prime"


class TestFunctionCommands:
    """Tests for commands reading function files."""

    def test_canonical(self, id_function_file: Path) -> None:
        """The canonical coefficient of Id reproduces it."""
        result = runner.invoke(app, ["canonical", str(id_function_file), "--qmax", "60"])
        assert result.exit_code == 0
        document = _document(result)["result"]
        assert document["mismatches"] == []
        assert document["coefficient"]["primes"]["3"]["values"][1] == ["-2/3", "0"]

    def test_completely_multiplicative_cloud(self, tmp_path: Path) -> None:
        """sigma' = Id leaves the completely multiplicative cloud empty."""
        path = write_json(tmp_path / "sigma.json", {"builtin": "sigma", "a_max": 200})
        result = runner.invoke(app, ["canonical", str(path), "--completely-multiplicative"])
        assert result.exit_code == 0
        assert _document(result)["result"]["empty"] is True

    def test_hildebrand(self, id_function_file: Path) -> None:
        """Hi(4) = -1/2 for the identity."""
        result = runner.invoke(app, ["hildebrand", str(id_function_file), "--qmax", "30"])
        assert result.exit_code == 0
        document = _document(result)["result"]
        assert document["mismatches"] == []
        assert document["coefficient"]["4"] == ["-1/2", "0"]

    def test_selberg(self, tmp_path: Path) -> None:
        """Threshold 3 and constant 3."""
        path = write_json(tmp_path / "f.json", {"values": [0, 0, 3, 0, 0, 6, 0, 0, 12]})
        result = runner.invoke(app, ["selberg", str(path)])
        assert result.exit_code == 0
        document = _document(result)["result"]
        assert document["a_f"] == 3
        assert document["c"] == ["3", "0"]


class TestLabCommands:
    """Tests for the lab subcommands."""

    def test_squarefree(self) -> None:
        """Q(100) = 61 with the Dirichlet sum at s = 2."""
        result = runner.invoke(app, ["lab", "squarefree", "--x", "100", "--s", "2"])
        assert result.exit_code == 0
        document = _document(result)["result"]
        assert document["count"] == 61
        assert document["dirichlet"]["residual"] < 0.05

    def test_contraction(self) -> None:
        """The default experiment contracts and recovers ell / (1 + alpha)."""
        result = runner.invoke(app, ["lab", "contraction", "--xmax", "10000"])
        assert result.exit_code == 0
        document = _document(result)["result"]
        assert document["branch"] == "contraction"
        assert abs(document["recovered_limit"][0] - 1.0) < 1e-6

    def test_unsupported_branch(self) -> None:
        """|alpha| = 1.5 between 1 and rho exits with the unsupported branch condition."""
        result = runner.invoke(app, ["lab", "contraction", "--alpha", "-1.5"])
        assert result.exit_code == 2
        assert _document(result)["error"]["condition"] == "unsupported_branch"

    def test_a2_csv(self) -> None:
        """Both sides of the divergent family are written as CSV rows."""
        result = runner.invoke(app, ["--format", "csv", "lab", "a2", "--xmax", "100000"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[1] == "side,x,re,im"
        sides = {line.split(",")[0] for line in lines[2:]}
        assert sides == {"convergent", "divergent"}

    def test_a2_format_after_command(self) -> None:
        """The lab commands accept --format after their own options."""
        argv = ["lab", "a2", "--s", "0.6", "--p1", "2", "--p2", "3", "--xmax", "1e5", "--format", "csv"]
        result = runner.invoke(app, argv)
        assert result.exit_code == 0
        assert result.stdout.splitlines()[1] == "side,x,re,im"
