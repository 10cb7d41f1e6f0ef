import json

import pytest

from klcells.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_duflo_command(capsys):
    code, out, _ = run_cli(capsys, "duflo", "--type", "A2")
    assert code == 0
    data = json.loads(out)
    assert data["duflo"] == ["", "1", "2", "1-2-1"]
    assert data["P"] == "all pass"


def test_asph_bound_check(capsys):
    code, out, _ = run_cli(capsys, "asph", "--type", "A1", "--affine",
                           "--max-length", "8", "--bound-check")
    assert code == 0
    data = json.loads(out)
    assert data["bound_report"]["max_deg"] == 1
    assert data["bound_report"]["violations"] == []


def test_asph_requires_affine(capsys):
    code, _, err = run_cli(capsys, "asph", "--type", "A1")
    assert code == 2 and "affine" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli(capsys, "kl", "--type")  # missing value
    assert exc.value.code == 2


def test_bad_type_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "kl", "--type", "H3", "--max-length", "2")
    assert code == 2
    assert "unsupported" in err


def test_cyclic_classify(capsys):
    code, out, _ = run_cli(capsys, "cyclic", "classify", "--p", "2", "--n", "3")
    assert code == 0
    data = json.loads(out)
    # every power of p, including p^n (the zero ideal), is prime
    assert data["report"]["primes"] == [1, 2, 4, 8]
    assert data["passed"] is True


def test_cyclic_decompose_table_format(capsys):
    code, out, _ = run_cli(capsys, "cyclic", "decompose", "--p", "3", "--n", "1",
                           "--a", "2", "--b", "2", "--format", "table")
    assert code == 0
    assert "2,2" in out


def test_dot_format(capsys):
    code, out, _ = run_cli(capsys, "orbits", "--algebra", "so5",
                           "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    code2, _, _ = run_cli(capsys, "lattice-a2", "--format", "dot")
    assert code2 == 0


def test_dot_format_unavailable(capsys):
    with pytest.raises(SystemExit):
        run_cli(capsys, "duflo", "--type", "A1", "--format", "dot")


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(capsys, "duflo", "--type", "A1",
                           "--output", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["duflo"] == ["", "1"]


def test_kl_cache_roundtrip(tmp_path, capsys):
    cache = tmp_path / "cache"
    code1, out1, _ = run_cli(capsys, "kl", "--type", "B2", "--max-length", "3",
                             "--cache-dir", str(cache))
    assert code1 == 0
    assert (cache / "kl-B2.json").exists()
    code2, out2, _ = run_cli(capsys, "kl", "--type", "B2", "--max-length", "3",
                             "--cache-dir", str(cache))
    assert code2 == 0
    assert out1 == out2


def test_reruns_are_byte_identical(capsys):
    _, out1, _ = run_cli(capsys, "tilt", "census", "--type", "A2",
                         "--ell", "5", "--max-length", "6")
    _, out2, _ = run_cli(capsys, "tilt", "census", "--type", "A2",
                         "--ell", "5", "--max-length", "6")
    assert out1 == out2


def test_tilt_hom(capsys):
    code, out, _ = run_cli(capsys, "tilt", "hom", "--type", "A2",
                           "--ell", "5", "--x", "", "--y", "0")
    assert code == 0
    assert json.loads(out)["poly"] == {"lo": 1, "coeffs": [1]}


def test_b2_family(capsys):
    code, out, _ = run_cli(capsys, "b2-family", "--ell", "5",
                           "--i-min", "3", "--i-max", "3")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_cells_diagnostic(capsys):
    code, out, _ = run_cli(capsys, "cells", "--type", "A1", "--affine",
                           "--side", "twosided", "--max-length", "6",
                           "--diagnostic")
    assert code == 0
    assert json.loads(out)["diagnostic"]["cells_meeting_coset"] == 2


def test_cyclic_custom_fgl(capsys):
    law = '{"1,0": 1, "0,1": 1, "1,1": 1}'
    code, out, _ = run_cli(capsys, "cyclic", "decompose", "--p", "3", "--n", "1",
                           "--a", "2", "--b", "2", "--fgl", law)
    assert code == 0
    assert json.loads(out)["report"]["table"] == {"2,2": [3, 1]}
    assert json.loads(out)["report"]["fgl"] == "custom"


def test_cyclic_bad_fgl(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli(capsys, "cyclic", "decompose", "--p", "3", "--n", "1",
                "--fgl", "not json")
    assert exc.value.code == 2
