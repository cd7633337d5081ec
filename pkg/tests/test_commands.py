# relturan - Constructive relative Turán numbers for hypergraph cycles.
# Copyright (C) 2024 The relturan developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Tests of the relturan command.
"""
import json

import pytest

from relturan import __version__
from relturan.commands import EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, EXIT_VERIFICATION, run
from relturan.configuration import CACHE_DIR_ENVIRONMENT_VARIABLE
from relturan.experiments.runner import dumps
from relturan.generators import complete
from relturan.hypergraph import Hypergraph
from relturan.oracle import CACHE_FILE_NAME


@pytest.fixture(name="relturan")
def fixture_relturan(tmp_path, monkeypatch):
    """
    Run the command with a configuration file that does not exist.
    """
    monkeypatch.delenv(CACHE_DIR_ENVIRONMENT_VARIABLE, raising=False)

    def call(*argv):
        return run(["-f", str(tmp_path / "config.toml"), *argv])

    return call


def output_json(capsys):
    return json.loads(capsys.readouterr().out)


class TestGeneral:
    def test_no_command(self, relturan, capsys):
        assert relturan() == EXIT_OK
        assert "No command specified" in capsys.readouterr().out

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            run(["--version"])
        assert info.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_invalid_configuration(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("[oracle]\nbudget = 'large'\n")
        assert run(["-f", str(path), "config", "show"]) == EXIT_INPUT

    def test_log_file(self, relturan, tmp_path):
        log_file = tmp_path / "relturan.log"
        out = tmp_path / "host.hg"
        assert relturan("--log-file", str(log_file), "gen", "--spec", "complete:5,3", "--out", str(out)) == EXIT_OK
        assert "saved to" in log_file.read_text(encoding="utf-8")


class TestGen:
    def test_complete(self, relturan, tmp_path, capsys):
        out = tmp_path / "host.hg"
        assert relturan("gen", "--spec", "complete:5,3", "--out", str(out)) == EXIT_OK
        assert Hypergraph.load(out) == complete(5, 3)
        assert "10 edges" in capsys.readouterr().out

    def test_malformed_spec(self, relturan, tmp_path):
        assert relturan("gen", "--spec", "complete:5", "--out", str(tmp_path / "host.hg")) == EXIT_INPUT

    def test_too_large(self, relturan, tmp_path):
        assert relturan("gen", "--spec", "complete:500,2", "--out", str(tmp_path / "host.hg")) == EXIT_RESOURCE


class TestDetect:
    def test_contains(self, relturan, tmp_path, capsys):
        path = tmp_path / "k4.hg"
        complete(4, 3).save(path)
        assert relturan("detect", "--family", "berge:2", "--input", str(path)) == EXIT_OK
        content = output_json(capsys)
        assert content["family"] == "r3:berge:2"
        assert content["contains"]
        assert content["witness"] is not None

    def test_through(self, relturan, tmp_path, capsys):
        path = tmp_path / "k4.hg"
        complete(4, 3).save(path)
        assert relturan("detect", "--family", "berge:3", "--input", str(path), "--through", "0,1,2") == EXIT_OK
        assert output_json(capsys)["contains"]

    def test_free(self, relturan, tmp_path, capsys):
        path = tmp_path / "matching.hg"
        Hypergraph(3, 6, [(0, 1, 2), (3, 4, 5)]).save(path)
        assert relturan("detect", "--family", "berge:2|loose:3", "--input", str(path)) == EXIT_OK
        content = output_json(capsys)
        assert not content["contains"]
        assert content["witness"] is None

    def test_missing_file(self, relturan, tmp_path):
        assert relturan("detect", "--family", "berge:2", "--input", str(tmp_path / "none.hg")) == EXIT_INPUT

    def test_bad_family(self, relturan, tmp_path):
        path = tmp_path / "k4.hg"
        complete(4, 3).save(path)
        assert relturan("detect", "--family", "tight:3", "--input", str(path)) == EXIT_INPUT


class TestOracle:
    def test_complete_host(self, relturan, capsys):
        assert relturan("oracle", "--host", "complete:5,3", "--family", "berge:2") == EXIT_OK
        content = output_json(capsys)
        assert content["optimum"] == 2
        assert content["proved_exact"]

    def test_host_file(self, relturan, tmp_path, capsys):
        path = tmp_path / "host.hg"
        Hypergraph(3, 5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)]).save(path)
        assert relturan("oracle", "--host", str(path), "--family", "berge:2") == EXIT_OK
        assert output_json(capsys)["optimum"] == 2

    def test_cache_dir(self, relturan, tmp_path):
        cache_dir = tmp_path / "cache"
        assert run(
            ["-f", str(tmp_path / "config.toml"), "--cache-dir", str(cache_dir), "oracle", "--host", "complete:5,3", "--family", "berge:2"]
        ) == EXIT_OK
        assert (cache_dir / CACHE_FILE_NAME).is_file()

    def test_invalid_budget(self, relturan):
        assert relturan("oracle", "--host", "complete:5,3", "--family", "berge:2", "--budget", "0") == EXIT_INPUT


class TestExtract:
    def test_b53(self, relturan, tmp_path, capsys):
        host_path = tmp_path / "host.hg"
        out = tmp_path / "out.hg"
        complete(7, 3).save(host_path)
        code = relturan("extract", "--pipeline", "b53", "--host", str(host_path), "--trials", "2", "--out", str(out))
        assert code == EXIT_OK
        content = output_json(capsys)
        assert content["verified_free"]
        assert content["family"] == "berge:5"
        retained = Hypergraph.load(out)
        assert retained.num_edges == content["achieved"]
        assert set(retained.edges) <= set(complete(7, 3).edges)

    def test_no_verification(self, tmp_path, capsys):
        config_path = tmp_path / "config.toml"
        config_path.write_text("[extractors]\nverify = false\n")
        host_path = tmp_path / "host.hg"
        complete(7, 3).save(host_path)
        code = run(["-f", str(config_path), "extract", "--pipeline", "f5", "--host", str(host_path), "--trials", "2"])
        assert code == EXIT_OK
        assert not output_json(capsys)["verified_free"]

    def test_missing_length(self, relturan, tmp_path):
        host_path = tmp_path / "host.hg"
        complete(6, 3).save(host_path)
        assert relturan("extract", "--pipeline", "berge", "--host", str(host_path)) == EXIT_INPUT

    def test_unknown_pipeline(self, relturan, tmp_path):
        with pytest.raises(SystemExit):
            relturan("extract", "--pipeline", "tight", "--host", str(tmp_path / "host.hg"))


class TestExperiment:
    def test_run_and_fit(self, relturan, tmp_path, capsys):
        plan_path = tmp_path / "plan.json"
        output = tmp_path / "results.jsonl"
        plan_path.write_text(
            json.dumps({"hosts": ["complete:5,3", "complete:6,3"], "pipeline": "b53", "trials": 2, "output": str(output)})
        )
        assert relturan("experiment", "run", str(plan_path)) == EXIT_OK
        assert "2 records" in capsys.readouterr().out
        assert output.is_file()
        # a second run would overwrite the results
        assert relturan("experiment", "run", str(plan_path)) == EXIT_INPUT

    def test_out_override(self, relturan, tmp_path):
        plan_path = tmp_path / "plan.json"
        plan_path.write_text(json.dumps({"hosts": ["complete:5,3"], "pipeline": "b53", "output": "unused.jsonl"}))
        output = tmp_path / "override.jsonl"
        assert relturan("experiment", "run", str(plan_path), "--out", str(output), "--trials", "2") == EXIT_OK
        assert output.is_file()

    def test_failures(self, relturan, tmp_path, monkeypatch):
        def failed(*args, **kwargs):
            return {"key": args[0], "host": "complete:5,3", "seed": 0, "verified_free": False, "error": "boom"}

        monkeypatch.setattr("relturan.experiments.runner.run_point", failed)
        plan_path = tmp_path / "plan.json"
        plan_path.write_text(
            json.dumps({"hosts": ["complete:5,3"], "pipeline": "b53", "output": str(tmp_path / "out.jsonl")})
        )
        assert relturan("experiment", "run", str(plan_path)) == EXIT_VERIFICATION

    def test_fit(self, relturan, tmp_path, capsys):
        results = tmp_path / "results.jsonl"
        records = [
            {"key": str(delta), "host": "complete:9,3", "pipeline": "f5", "delta": delta, "ratio": delta**-0.6, "verified_free": True}
            for delta in (10, 100, 1000)
        ]
        results.write_text("".join(dumps(record) + "\n" for record in records))
        assert relturan("experiment", "fit", str(results)) == EXIT_OK
        content = output_json(capsys)
        assert content["slope"] == pytest.approx(-0.6)
        assert content["reference"] == pytest.approx(-0.6)

    def test_fit_too_few_points(self, relturan, tmp_path):
        results = tmp_path / "results.jsonl"
        results.write_text(dumps({"key": "a", "host": "fano", "pipeline": "f5", "delta": 3, "ratio": 0.5, "verified_free": True}) + "\n")
        assert relturan("experiment", "fit", str(results)) == EXIT_INPUT


class TestConfig:
    def test_create(self, relturan, tmp_path):
        assert relturan("config", "create") == EXIT_OK
        assert (tmp_path / "config.toml").is_file()
        assert relturan("config", "create") == EXIT_INPUT
        assert relturan("config", "create", "--force") == EXIT_OK

    def test_show(self, relturan, capsys):
        assert relturan("config", "show") == EXIT_OK
        assert "[extractors]" in capsys.readouterr().out
