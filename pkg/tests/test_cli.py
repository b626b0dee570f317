import json
import subprocess
import sys

import pytest

from finring.cli import main

ZMOD6 = {"kind": "zmod", "n": 6}
KXY = {
    "kind": "nilpotent_algebra",
    "p": 2,
    "vars": ["x", "y"],
    "truncation_degree": 2,
    "extra_relations": [],
}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture
def zmod6(tmp_path):
    return write(tmp_path, "zmod6.json", ZMOD6)


@pytest.fixture
def kxy(tmp_path):
    return write(tmp_path, "kxy.json", KXY)


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_json(zmod6, capsys):
    code, out, err = run_main(
        ["check", zmod6, "--properties", "bezout,hermite,edr,clean"], capsys
    )
    assert code == 0 and err == ""
    reports = json.loads(out)
    assert [r["property"] for r in reports] == [
        "bezout",
        "hermite",
        "elementary_divisor",
        "clean",
    ]
    assert all(r["holds"] for r in reports)
    assert out.endswith("\n") and out.count("\n") == 1


def test_check_text(zmod6, capsys):
    code, out, _ = run_main(
        ["check", zmod6, "--properties", "bezout", "--format", "text"], capsys
    )
    assert code == 0
    assert out == "bezout: true\n"


def test_check_false_verdict_still_exit_zero(kxy, capsys):
    code, out, _ = run_main(
        ["check", kxy, "--properties", "arithmetical", "--format", "text"], capsys
    )
    assert code == 0
    assert out.startswith("arithmetical: false counterexample=")
    assert '"generators"' in out


def test_check_unknown_property(zmod6, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", zmod6, "--properties", "bezout,flatness"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "unknown properties: flatness" in err


def test_check_bad_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(SystemExit) as exc:
        main(["check", str(bad), "--properties", "bezout"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", str(tmp_path / "absent.json"), "--properties", "bezout"])
    assert exc.value.code == 2
    nondict = write(tmp_path, "arr.json", [1, 2])
    with pytest.raises(SystemExit) as exc:
        main(["check", nondict, "--properties", "bezout"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_seq_descriptor_rejected(tmp_path, capsys):
    seq = write(tmp_path, "seq.json", {"kind": "vasconcelos"})
    with pytest.raises(SystemExit) as exc:
        main(["check", seq, "--properties", "bezout"])
    assert exc.value.code == 2
    assert "use the library API" in capsys.readouterr().err


def test_caps(zmod6, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", zmod6, "--properties", "bezout", "--cap-elements", "3"])
    assert exc.value.code == 3
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["check", zmod6, "--properties", "bezout", "--cap-ideals", "2"])
    assert exc.value.code == 3
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["check", zmod6, "--properties", "bezout", "--cap-elements", "-1"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_spec_json(zmod6, capsys):
    code, out, _ = run_main(["spec", zmod6], capsys)
    assert code == 0
    obj = json.loads(out)
    assert len(obj["spec"]) == 2
    assert len(obj["pspec"]) == 2
    assert obj["boolean_ring_size"] == 4


def test_spec_text_and_dot(zmod6, tmp_path, capsys):
    code, out, _ = run_main(["spec", zmod6, "--format", "text"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "primes: 2"
    assert lines[1] == "blocks: 2"
    assert lines[2] == "boolean ring size: 4"
    assert len(lines) == 5

    dot_file = tmp_path / "out.dot"
    code, out, _ = run_main(
        ["spec", zmod6, "--format", "dot", "--dot", str(dot_file)], capsys
    )
    assert code == 0
    assert out.startswith("digraph spec {")
    assert dot_file.read_text(encoding="utf-8") == out


def test_spec_deterministic(zmod6, capsys):
    _, first, _ = run_main(["spec", zmod6], capsys)
    _, second, _ = run_main(["spec", zmod6], capsys)
    assert first == second


def test_snf_json(zmod6, tmp_path, capsys):
    mat = write(tmp_path, "m.json", [[2, 3], [4, 1]])
    code, out, _ = run_main(["snf", zmod6, mat], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["diagonal"] == [1, 2]
    assert obj["PAQ_equals_D"] is True
    assert obj["fitting_oracle"] is True
    assert obj["PAQ"] == obj["D"]


def test_snf_text(zmod6, tmp_path, capsys):
    mat = write(tmp_path, "m.json", [[2, 0], [0, 3]])
    code, out, _ = run_main(["snf", zmod6, mat, "--format", "text"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "diagonal: [1,0]"
    assert "P A Q = D: true" in out
    assert "fitting ideals match: true" in out


def test_snf_not_edr(kxy, tmp_path, capsys):
    mat = write(tmp_path, "m.json", [[[1, 0, 0], [0, 1, 0]], [[0, 0, 1], [0, 0, 0]]])
    with pytest.raises(SystemExit) as exc:
        main(["snf", kxy, mat])
    assert exc.value.code == 4
    assert "not an elementary divisor ring" in capsys.readouterr().err


def test_snf_bad_matrix(zmod6, tmp_path, capsys):
    ragged = write(tmp_path, "m.json", [[1, 2], [3]])
    with pytest.raises(SystemExit) as exc:
        main(["snf", zmod6, ragged])
    assert exc.value.code == 2
    capsys.readouterr()
    junk = write(tmp_path, "m2.json", "zebra")
    with pytest.raises(SystemExit) as exc:
        main(["snf", zmod6, junk])
    assert exc.value.code == 2
    capsys.readouterr()


def test_suite_families(capsys):
    code, out, _ = run_main(["suite", "families"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "2/2 sweeps passed"
    assert all("PASS" in line for line in lines[:-1])


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["suite", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_module_entry_point(zmod6):
    proc = subprocess.run(
        [sys.executable, "-m", "finring.cli", "check", zmod6, "--properties", "pp"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["holds"] is True
