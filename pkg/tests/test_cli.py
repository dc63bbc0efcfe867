"""End-to-end command-line behaviour, including exit codes."""

import json
import subprocess
import sys

import pytest

from triconfig.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_classify(capsys):
    assert run_cli("classify", "--m", "6", "--t1", "0,2,4", "--t2", "1,3,5") == 0
    assert capsys.readouterr().out.strip() == "david"
    assert run_cli("classify", "--m", "4", "--t1", "0,1,2", "--t2", "0,2,3",
                   "--geometric") == 0
    assert capsys.readouterr().out.strip() == "mariposa"


def test_ex_prints_value(capsys):
    assert run_cli("ex", "--n", "7", "--x", "taco,nested,crossing,swords,david") == 0
    assert capsys.readouterr().out.strip() == "5"


def test_ex_json_record(capsys):
    assert run_cli("ex", "--n", "6", "--x", "all", "--json") == 0
    record = json.loads(capsys.readouterr().out)
    assert record["optimum"] == 1 and record["exact"] is True


def test_bad_mnemonic_is_usage_error(capsys):
    assert run_cli("ex", "--n", "6", "--x", "taco,spoon") == 2
    assert "spoon" in capsys.readouterr().err


def test_construct_verify_roundtrip(tmp_path, capsys):
    out = tmp_path / "fan6.json"
    assert run_cli("construct", "--id", "fan", "--n", "6", "--out", str(out)) == 0
    assert run_cli("verify", "--file", str(out),
                   "--x", "taco,nested,crossing,swords,david") == 0
    capsys.readouterr()
    # the fan contains bat pairs, so verifying against bat must fail
    assert run_cli("verify", "--file", str(out), "--x", "bat") == 1
    assert "bat" in capsys.readouterr().out


def test_construct_rejects_bad_n(capsys):
    assert run_cli("construct", "--id", "tripod-half", "--n", "8") == 2


def test_puzzle_solution_file_and_hash(tmp_path, capsys):
    out = tmp_path / "sol.json"
    assert run_cli("puzzle", "--grid", "square", "--n", "3", "--x", "taco,nested",
                   "--strategy", "dfs-exact", "--out", str(out)) == 0
    capsys.readouterr()
    data = json.loads(out.read_text())
    assert sum(len(r) for r in data["rounds"]) == 5
    assert run_cli("verify", "--file", str(out)) == 0
    capsys.readouterr()
    assert run_cli("verify", "--file", str(out), "--hash") == 0
    digest = capsys.readouterr().out.strip()
    assert len(digest) == 64 and all(c in "0123456789abcdef" for c in digest)


def test_verify_rejects_corrupt_solution(tmp_path, capsys):
    out = tmp_path / "bad.json"
    sol = {
        "grid": {"kind": "triangular", "n": 4},
        "X": ["nested"],
        "rounds": [[[4, 2]], [[3, 2]]],  # (3,2) is directly left of (4,2)
    }
    out.write_text(json.dumps(sol))
    assert run_cli("verify", "--file", str(out)) == 1
    assert "nested" in capsys.readouterr().out


def test_verify_missing_file(capsys):
    assert run_cli("verify", "--file", "/nonexistent/file.json") == 2


def test_tripods_commands(tmp_path, capsys):
    out = tmp_path / "max.json"
    assert run_cli("tripods", "max", "--encoding", "triples", "--n", "3",
                   "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["maximum"] == 5
    witness = tmp_path / "witness.json"
    witness.write_text(json.dumps(payload["witness"]))
    assert run_cli("tripods", "verify", "--file", str(witness)) == 0
    capsys.readouterr()
    assert run_cli("tripods", "convert", "--file", str(witness),
                   "--to", "monotone-matrix") == 0
    converted = json.loads(capsys.readouterr().out)
    assert converted["encoding"] == "monotone-matrix"
    assert len(converted["entries"]) == 5


def test_table_csv(tmp_path):
    out = tmp_path / "table.csv"
    assert run_cli("table", "--n-max", "6", "--out", str(out)) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 257
    assert lines[0].startswith("mask,X,ex_n3,ex_n4,ex_n5,ex_n6")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "triconfig", "classify", "--m", "5",
         "--t1", "0,1,4", "--t2", "0,2,3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "nested"


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_ex_json_to_file_and_canonical(tmp_path):
    out = tmp_path / "record.json"
    assert run_cli("ex", "--n", "6", "--x", "crossing", "--canonical",
                   "--json", str(out)) == 0
    record = json.loads(out.read_text())
    assert record["exact"] is True
    assert record["witness"] == sorted(record["witness"])
