import json

import numpy as np
import pytest

from sepwitness.cli import main
from sepwitness.errors import ConfigError
from sepwitness.experiments import (
    KINDS,
    dump_strategy_json,
    load_config_file,
    load_strategy_json,
    normalize_config,
    read_record_lines,
    record_lines,
    records_from_file,
    run,
    summarize,
    write_csv,
    write_jsonl,
)
from sepwitness.games import FiniteStrategy, orthogonal_encoding_strategy

QUICK_ARGS = {
    "ccr-check": ["--trials", "20"],
    "lemma-witness": ["--trials", "10"],
    "epr-witness": ["--trials", "12"],
    "gns-demo": ["--trials", "20"],
    "game-nonseparable": ["--trials", "15"],
    "game-finite": ["--dim", "2", "--num-inputs", "4"],
    "game-optimize": ["--restarts", "3", "--iterations", "100"],
    "game-epsilon": ["--metric", "standard", "--epsilon", "1/4", "--trials", "10"],
    "chain-roundtrip": ["--trials", "30", "--sites", "4,16"],
}


def deterministic_lines(path):
    """Record lines with wall-clock stripped, re-serialized canonically."""
    out = []
    for line in read_record_lines(path):
        line.pop("duration_ms", None)
        out.append(json.dumps(line, sort_keys=True))
    return out


@pytest.mark.parametrize("kind", KINDS)
def test_every_subcommand_passes(kind, tmp_path, capsys):
    out = tmp_path / f"{kind}.jsonl"
    code = main([kind, *QUICK_ARGS[kind], "--seed", "9", "--out", str(out)])
    assert code == 0
    assert out.exists()
    lines = read_record_lines(out)
    assert lines[0]["record"] == "header"
    assert lines[-1]["record"] == "aggregate"
    assert lines[-1]["pass"] is True
    assert capsys.readouterr().out.startswith("[PASS]")


class TestDeterminism:
    def test_identical_config_and_seed_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        main(["ccr-check", "--trials", "25", "--seed", "123", "--out", str(a)])
        main(["ccr-check", "--trials", "25", "--seed", "123", "--out", str(b)])
        assert deterministic_lines(a) == deterministic_lines(b)

    def test_different_seed_changes_payload(self):
        r1 = run({"kind": "lemma-witness", "trials": 5, "seed": 1})
        r2 = run({"kind": "lemma-witness", "trials": 5, "seed": 2})
        assert r1.payload_sha256 != r2.payload_sha256

    def test_rerun_from_record_config_echo(self, tmp_path):
        out = tmp_path / "opt.jsonl"
        record = run({"kind": "game-optimize", "dim": 2, "num_inputs": 3, "restarts": 4, "seed": 31})
        write_jsonl(record, out)
        rerun = run(load_config_file(out))
        assert rerun.aggregate == record.aggregate
        assert rerun.payload_sha256 == record.payload_sha256

    def test_run_subcommand_with_record_file(self, tmp_path, capsys):
        out = tmp_path / "r.jsonl"
        main(["gns-demo", "--trials", "10", "--seed", "4", "--out", str(out)])
        first = capsys.readouterr().out
        assert main(["run", "--config", str(out)]) == 0
        assert capsys.readouterr().out == first


class TestConfigFiles:
    def test_ini_config(self, tmp_path, capsys):
        ini = tmp_path / "exp.ini"
        ini.write_text(
            "[experiment]\nkind = game-finite\ndim = 2\nnum_inputs = 5\nseed = 2\n",
            encoding="utf-8",
        )
        assert main(["run", "--config", str(ini)]) == 0
        assert "game-finite" in capsys.readouterr().out

    def test_flags_override_config(self, tmp_path):
        ini = tmp_path / "exp.ini"
        ini.write_text("[experiment]\nkind = ccr-check\ntrials = 5\nseed = 1\n", encoding="utf-8")
        record_flags = run({"kind": "ccr-check", "trials": 5, "seed": 77})
        out = tmp_path / "o.jsonl"
        main(["ccr-check", "--config", str(ini), "--seed", "77", "--out", str(out)])
        assert read_record_lines(out)[0]["config"]["seed"] == 77
        assert read_record_lines(out)[-1]["payload_sha256"] == record_flags.payload_sha256

    def test_kind_mismatch_rejected(self, tmp_path):
        ini = tmp_path / "exp.ini"
        ini.write_text("[experiment]\nkind = ccr-check\n", encoding="utf-8")
        assert main(["gns-demo", "--config", str(ini)]) == 2

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            normalize_config({"kind": "ccr-check", "bogus": 1})

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError):
            normalize_config({"kind": "nope"})

    def test_missing_config_file_exit_2(self):
        assert main(["run", "--config", "/nonexistent/x.ini"]) == 2

    def test_bad_parameter_exit_2(self):
        assert main(["ccr-check", "--trials", "0"]) == 2

    def test_bad_theta_exit_2(self):
        assert main(["epr-witness", "--theta", "pi/3"]) == 2

    def test_tolerance_surfaces_in_config_and_gates_pass(self):
        record = run({"kind": "ccr-check", "trials": 10, "seed": 1})
        assert record.config["tolerance"] == 1e-12
        # an absurdly tight tolerance flips the verdict on the same data
        strict = run({"kind": "ccr-check", "trials": 10, "seed": 1, "tolerance": 1e-20})
        assert strict.passed is False
        assert main(["ccr-check", "--trials", "10", "--tolerance", "1e-20"]) == 1

    def test_unwritable_out_path_exit_2(self):
        assert main(["gns-demo", "--trials", "3", "--out", "/nonexistent/dir/r.jsonl"]) == 2


class TestStrategyFixtures:
    def test_roundtrip(self, tmp_path):
        strategy = orthogonal_encoding_strategy(3, 4)
        path = tmp_path / "s.json"
        dump_strategy_json(strategy, path)
        loaded = load_strategy_json(path)
        assert loaded.dim == 3
        assert np.array_equal(loaded.states, strategy.states)
        assert np.array_equal(loaded.effects, strategy.effects)

    def test_valid_fixture_exit_0(self, tmp_path):
        path = tmp_path / "s.json"
        dump_strategy_json(orthogonal_encoding_strategy(2, 3), path)
        assert main(["game-finite", "--strategy", str(path)]) == 0

    def test_invalid_fixture_exit_1(self, tmp_path, capsys):
        base = orthogonal_encoding_strategy(2, 3)
        effects = np.array(base.effects, copy=True)
        effects[2] = np.eye(2) * 1.5  # sum of effects now exceeds the identity
        path = tmp_path / "bad.json"
        dump_strategy_json(FiniteStrategy(dim=2, states=base.states, effects=effects), path)
        code = main(["game-finite", "--strategy", str(path)])
        assert code == 1
        assert capsys.readouterr().out.startswith("[FAIL]")

    def test_malformed_fixture_exit_2(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"dim\": 2}", encoding="utf-8")
        assert main(["game-finite", "--strategy", str(path)]) == 2


class TestReportsAndSummaries:
    def test_csv_trial_table(self, tmp_path):
        record = run({"kind": "chain-roundtrip", "trials": 7, "seed": 5, "sites": "4"})
        path = tmp_path / "t.csv"
        write_csv(record, path)
        rows = path.read_text(encoding="utf-8").strip().splitlines()
        assert rows[0].split(",")[:2] == ["index", "x"]
        assert len(rows) == 8

    def test_cli_csv_format(self, tmp_path):
        out = tmp_path / "t.csv"
        assert main(["gns-demo", "--trials", "5", "--format", "csv", "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8").startswith("index")

    def test_summarize_empty(self, capsys):
        assert main(["summarize"]) == 0
        assert capsys.readouterr().out == ""

    def test_summarize_groups_in_kind_order(self, tmp_path, capsys):
        paths = []
        for kind in ("game-optimize", "ccr-check"):
            out = tmp_path / f"{kind}.jsonl"
            main([kind, *QUICK_ARGS[kind], "--seed", "2", "--out", str(out)])
            paths.append(str(out))
        capsys.readouterr()
        assert main(["summarize", *paths]) == 0
        text = capsys.readouterr().out
        assert text.index("== ccr-check ==") < text.index("== game-optimize ==")
        assert "PASS" in text

    def test_summarize_text_function(self):
        record = run({"kind": "game-finite", "dim": 2, "num_inputs": 4, "seed": 0})
        text = summarize([record])
        assert "game-finite" in text and "PASS" in text
        assert summarize([]) == ""

    def test_record_lines_exclude_duration_from_hash(self):
        r1 = run({"kind": "gns-demo", "trials": 5, "seed": 8})
        lines = record_lines(r1)
        assert "duration_ms" in lines[-1]
        body = [
            {k: v for k, v in line.items() if k != "duration_ms"} for line in lines
        ]
        r2 = run({"kind": "gns-demo", "trials": 5, "seed": 8})
        lines2 = record_lines(r2)
        body2 = [
            {k: v for k, v in line.items() if k != "duration_ms"} for line in lines2
        ]
        assert body == body2

    def test_records_from_file_roundtrip(self, tmp_path):
        record = run({"kind": "ccr-check", "trials": 6, "seed": 3})
        path = tmp_path / "r.jsonl"
        write_jsonl(record, path)
        loaded = records_from_file(path)
        assert len(loaded) == 1
        assert loaded[0].kind == "ccr-check"
        assert loaded[0].aggregate["pass"] is True
        assert len(loaded[0].trials) == 6
