"""CLI surface: exit codes, JSON payloads, seeding, determinism."""

import json

import numpy as np
import pytest

from witnesskit.cli import main
from witnesskit.grassmann import (
    flag_to_dict,
    quadric_to_dict,
    random_flag,
    random_quadric,
)
from witnesskit.polysys import PolySystem, system_to_dict, variables
from witnesskit.seeding import subsystem_rng


@pytest.fixture
def circle_line_path(tmp_path):
    x, y = variables(2)
    system = PolySystem([x**2 + y**2 - 1, x - y])
    path = tmp_path / "circle_line.json"
    path.write_text(json.dumps(system_to_dict(system)))
    return str(path)


@pytest.fixture
def circle_path(tmp_path):
    x, y = variables(2)
    path = tmp_path / "circle.json"
    path.write_text(json.dumps(system_to_dict(PolySystem([x**2 + y**2 - 1]))))
    return str(path)


def run_cli(capsys, *argv) -> tuple[int, dict | None]:
    code = main(list(argv))
    out = capsys.readouterr().out
    payload = json.loads(out) if out.strip() else None
    return code, payload


def test_solve_payload(capsys, circle_line_path):
    code, payload = run_cli(capsys, "solve", "--system", circle_line_path, "--seed", "7")
    assert code == 0
    assert len(payload["solutions"]) == 2
    for sol in payload["solutions"]:
        assert sol["certified"] is True
        assert sol["multiplicity"] == 1
        x, y = (complex(*pair) for pair in sol["point"])
        assert abs(x * x + y * y - 1) < 1e-9 and abs(x - y) < 1e-9
    assert payload["summary"]["paths"] == 2
    assert payload["summary"]["seed"] == 7


def test_usage_error_exits_two(capsys):
    assert main(["solve"]) == 2
    assert main(["no-such-command"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_missing_file_is_io_error(capsys, tmp_path):
    code, payload = run_cli(
        capsys, "solve", "--system", str(tmp_path / "absent.json"), "--seed", "1"
    )
    assert code == 1
    assert payload["error"]["kind"] == "io"


def test_malformed_system_is_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vars": ["x"], "polys": "junk"}')
    code, payload = run_cli(capsys, "solve", "--system", str(bad), "--seed", "1")
    assert code == 1
    assert payload["error"]["kind"] == "parse"


def test_env_seed_fallback(capsys, monkeypatch, circle_line_path):
    monkeypatch.setenv("WITNESSKIT_SEED", "99")
    code, payload = run_cli(capsys, "solve", "--system", circle_line_path)
    assert code == 0
    assert payload["summary"]["seed"] == 99
    monkeypatch.setenv("WITNESSKIT_SEED", "not-a-number")
    code, payload = run_cli(capsys, "solve", "--system", circle_line_path)
    assert code == 1
    assert payload["error"]["kind"] == "parse"


def test_output_flag_writes_file(capsys, tmp_path, circle_line_path):
    out = tmp_path / "result.json"
    code = main(
        ["solve", "--system", circle_line_path, "--seed", "7", "--output", str(out)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    payload = json.loads(out.read_text())
    assert len(payload["solutions"]) == 2


def test_witness_pipeline(capsys, tmp_path, circle_path):
    wpath = tmp_path / "ws.json"
    code = main(
        ["witness", "compute", "--system", circle_path, "--dim", "1",
         "--seed", "3", "--output", str(wpath)]
    )
    assert code == 0
    ws = json.loads(wpath.read_text())
    assert sorted(ws) == ["dim", "points", "slice", "system"]
    assert len(ws["points"]) == 2

    code, moved = run_cli(
        capsys, "witness", "move", "--witness", str(wpath), "--seed", "5"
    )
    assert code == 0 and len(moved["points"]) == 2

    code, sample = run_cli(
        capsys, "witness", "sample", "--witness", str(wpath), "--seed", "5"
    )
    assert code == 0
    x, y = (complex(*pair) for pair in sample["point"])
    assert abs(x * x + y * y - 1) < 1e-8

    code, res = run_cli(
        capsys, "witness", "member", "--witness", str(wpath),
        "--point", "[[0.6,0],[0.8,0]]", "--seed", "11",
    )
    assert code == 0 and res["member"] is True
    code, res = run_cli(
        capsys, "witness", "member", "--witness", str(wpath),
        "--point", "[[5,0],[0,0]]", "--seed", "11",
    )
    assert code == 0 and res["member"] is False


def test_product_witness_payload(capsys, tmp_path):
    x, y = variables(2)
    path = tmp_path / "parabola.json"
    path.write_text(json.dumps(system_to_dict(PolySystem([y - x**2]))))
    code, payload = run_cli(
        capsys, "product-witness", "--system", str(path),
        "--blocks", "1,1", "--dim", "1", "--seed", "4",
    )
    assert code == 0
    assert payload["bidegrees"] == {"0,1": 2, "1,0": 1}
    assert len(payload["witness_sets"]["0,1"]["points"]) == 2


def test_class_recover_payloads(capsys):
    code, payload = run_cli(
        capsys, "class", "recover", "--space", "g14",
        "--grade", "3", "--degrees", "4,0",
    )
    assert code == 0
    assert payload == {"coeffs": [["4", "1"], ["0", "1"]], "labels": ["13", "04"]}

    code, payload = run_cli(
        capsys, "class", "recover", "--space", "blowup-p2",
        "--grade", "1", "--degrees", "0,-1",
    )
    assert code == 0
    assert payload["coeffs"] == [["0", "1"], ["1", "1"]]


def test_class_pair_and_duality(capsys):
    code, payload = run_cli(
        capsys, "class", "pair", "--space", "blowup-p2",
        "--grade", "1", "--row", "1", "--col", "1",
    )
    assert code == 0 and payload["degree"] == -1
    code, payload = run_cli(capsys, "class", "duality", "--space", "g14")
    assert code == 0
    assert payload["all"] is True
    code, payload = run_cli(capsys, "class", "duality", "--space", "blowup-p2")
    assert code == 0
    assert payload["all"] is False and payload["grades"]["1"] is False


def test_grassmann_poset_and_dual(capsys):
    code, payload = run_cli(capsys, "grassmann", "poset")
    assert code == 0
    assert payload["rank_counts"] == [1, 1, 2, 2, 2, 1, 1]
    assert len(payload["elements"]) == 10
    assert len(payload["covers"]) == 12
    assert payload["ranks"]["34"] == 6

    code, payload = run_cli(capsys, "grassmann", "dual", "--index", "13")
    assert code == 0
    assert payload == {"index": "13", "dual": "13", "rank": 3, "dual_rank": 3}
    code, payload = run_cli(capsys, "grassmann", "dual", "--index", "0,1")
    assert code == 0 and payload["dual"] == "34"


def test_grassmann_witness_and_member(capsys, tmp_path):
    rng = subsystem_rng(30, "test.cli")
    qpath = tmp_path / "q.json"
    qpath.write_text(json.dumps(quadric_to_dict(random_quadric(rng))))
    fpath = tmp_path / "f.json"
    fpath.write_text(json.dumps(flag_to_dict(random_flag(rng))))
    wpath = tmp_path / "w.json"

    code = main(
        ["grassmann", "witness", "--quadric", str(qpath), "--seed", "13",
         "--output", str(wpath)]
    )
    assert code == 0
    ws = json.loads(wpath.read_text())
    assert len(ws["w13"]) == 4 and ws["w04"] == []

    code, moved = run_cli(
        capsys, "grassmann", "move", "--witness", str(wpath),
        "--flag", str(fpath), "--seed", "17",
    )
    assert code == 0 and len(moved["w13"]) == 4

    code, sample = run_cli(
        capsys, "grassmann", "sample", "--witness", str(wpath), "--seed", "19"
    )
    assert code == 0
    lpath = tmp_path / "line.json"
    lpath.write_text(json.dumps(sample["line"]))
    code, res = run_cli(
        capsys, "grassmann", "member", "--witness", str(wpath),
        "--line", str(lpath), "--seed", "23",
    )
    assert code == 0 and res["member"] is True


def test_solve_determinism_bytes(capsys, circle_line_path):
    main(["solve", "--system", circle_line_path, "--seed", "21"])
    first = capsys.readouterr().out
    main(["solve", "--system", circle_line_path, "--seed", "21"])
    second = capsys.readouterr().out
    assert first == second
    main(["solve", "--system", circle_line_path, "--seed", "22"])
    third = capsys.readouterr().out
    assert third != first


def test_bad_index_is_parse_error(capsys):
    code, payload = run_cli(capsys, "grassmann", "dual", "--index", "xy")
    assert code == 1
    assert payload["error"]["kind"] == "parse"
