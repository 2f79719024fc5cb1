import json

import pytest

from tek import checks, cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket_degree_derivations(capsys):
    code, out, _ = run(capsys, "bracket", '{"d": ["1", "0"]}', '{"d": ["0", "1"]}')
    assert code == 0
    assert json.loads(out) == {"d": ["0", "0"], "k": [], "loop": [], "skew": []}


def test_bracket_skew_with_cocycle(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text('{"algebra": {"rank": 1, "mu": "1"}}')
    code, out, _ = run(capsys, "bracket", '{"skew": [[1, 0, "1"]]}', '{"skew": [[0, 1, "1"]]}', "--config", str(cfg))
    assert code == 0
    assert json.loads(out) == {"d": ["0", "0"], "k": [[1, 1, "1", "0"]], "loop": [], "skew": [[1, 1, "1"]]}


def test_bracket_reads_files(capsys, tmp_path):
    x = tmp_path / "x.json"
    x.write_text('{"loop": [[1, 0, 0, "1"]]}')
    code, out, _ = run(capsys, "bracket", "@" + str(x), '{"loop": [[0, 1, 2, "1"]]}')
    assert code == 0
    assert json.loads(out)["loop"] == [[1, 1, 1, "1"]]


def test_form_command(capsys):
    code, out, _ = run(capsys, "form", '{"d": ["1", "0"]}', '{"k": [[0, 0, "1", "0"]]}')
    assert code == 0 and json.loads(out) == {"form": "1"}


def test_malformed_json_exit_2(capsys):
    code, _, err = run(capsys, "bracket", "{not json", "{}")
    assert code == 2 and "parse error" in err


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "check", "nosuchsuite")[0] == 2
    assert run(capsys)[0] == 2


def test_algebra_mismatch_exit_3(capsys):
    code, _, _ = run(capsys, "bracket", '{"loop": [[0, 0, 5, "1"]]}', "{}")
    assert code == 3


def test_bad_config_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run(capsys, "check", "lambda", "--config", str(bad))[0] == 2
    worse = tmp_path / "worse.json"
    worse.write_text('{"sweep": {"exponent_box": 0}}')
    assert run(capsys, "check", "invariance", "--config", str(worse))[0] == 3


def test_check_jacobi_pass(capsys):
    code, out, _ = run(capsys, "check", "jacobi", "--box", "1", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["suite"] == "jacobi"


def test_check_jacobi_fault_injection(capsys, monkeypatch, corrupted_sl2):
    monkeypatch.setattr(checks, "build_type_a", lambda rank: corrupted_sl2)
    code, out, _ = run(capsys, "check", "jacobi", "--box", "1", "--json")
    assert code == 1
    rep = json.loads(out)
    bad = [s for s in rep["sections"] if s["violation_count"]]
    assert bad and len(bad[0]["violations"][0]) == 4


def test_check_heisenberg_r2(capsys, tmp_path):
    cfg = tmp_path / "h.json"
    cfg.write_text('{"heisenberg": {"fixture": "r2"}}')
    code, out, _ = run(capsys, "check", "heisenberg", "--config", str(cfg), "--json")
    assert code == 0
    sec = json.loads(out)["sections"][0]
    assert sec["stats"]["r"] == 2 and sec["stats"]["components"] == 2


def test_check_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "check", "invariance", "--seed", "9", "--json", "--out", str(a))[0] == 0
    assert run(capsys, "check", "invariance", "--seed", "9", "--json", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.endswith("\n") and "\r" not in text and '\n  "passed"' in text


def test_module_weights(capsys):
    code, out, _ = run(capsys, "module", "weights", "--spec", '{"variant": "Realization", "lambda": [2], "U": 2}')
    assert code == 0
    slots = json.loads(out)["slots"]
    assert len(slots) == 75 and all(s["dim"] == 2 for s in slots)


def test_module_nilpotence(capsys):
    args = ["module", "nilpotence", "--spec", '{"variant": "Realization", "lambda": [2]}',
            "--element", '{"loop": [[0, 0, 2, "1"]]}', "--vector", '{"terms": [[0, 0, 0, 0, "1"]]}']
    code, out, _ = run(capsys, *args)
    assert code == 0 and json.loads(out) == {"nilpotence": 3}
    code, out, _ = run(capsys, *args, "--bound", "2")
    assert code == 4 and json.loads(out)["failure"] == {"bound": 2}


def test_module_act_k_is_zero(capsys):
    code, out, _ = run(capsys, "module", "act", "--spec", '{"variant": "Realization", "lambda": [1], "U": 2}',
                       "--element", '{"k": [[0, 0, "1", "0"], [2, 3, "1", "0"]]}',
                       "--vector", '{"terms": [[1, 0, 1, 1, "1"]]}')
    assert code == 0 and json.loads(out)["terms"] == []


def test_module_invalid_spec_exit_3(capsys):
    assert run(capsys, "module", "weights", "--spec", '{"variant": "TypeI", "lambda": [0]}')[0] == 3
    assert run(capsys, "module", "weights")[0] == 3
    code = run(capsys, "module", "act", "--spec", '{"variant": "GMod", "lambda": [1]}',
               "--element", '{"k": [[0, 0, "1", "0"]]}', "--vector", '{"terms": [[0, 0, 0, "1"]]}')[0]
    assert code == 3


def test_text_output(capsys):
    code, out, _ = run(capsys, "check", "heisenberg")
    assert code == 0 and out.startswith("heisenberg: PASS")
