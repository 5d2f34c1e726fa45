import json
import subprocess
import sys

import pytest

from depthlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_resolve_reports_betti_table_and_growth(capsys):
    code, out, _ = run(capsys, "resolve", "R1", "k", "--bound", "4")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["resolution"]["betti"]["totals"] == [1, 2, 4, 8, 16]
    assert data["complexity"]["verdict"] == "at-least-exponential"


def test_ambient_resolution_is_finite(capsys):
    code, out, _ = run(capsys, "resolve", "R2", "Mx", "--ring", "ambient")
    assert code == 0
    assert json.loads(out)["resolution"]["complete"] is True


@pytest.mark.parametrize("instance, expected", [
    ("hypersurface-xy-pair", 0),
    ("hypersurface-xy-depth0-classic-refused", 3),
    ("hypersurface-xy-bounds-no-certificate", 3),
])
def test_check_exit_codes(capsys, instance, expected):
    code, out, _ = run(capsys, "check", "R2", instance)
    assert code == expected
    assert json.loads(out)["instance"] == instance


def test_check_mode_override(capsys):
    code, out, _ = run(capsys, "check", "R2", "hypersurface-xy-depth0-derived", "--mode", "classic")
    assert code == 3
    assert json.loads(out)["verdict"] == "unconditioned"


def test_failed_certificate_exits_one(tmp_path, capsys):
    from depthlab.corpus import corpus_files
    text = corpus_files()["R1"].replace("beta 1 | 0 ; 0 | 1", "beta 0 | 0 ; 0 | 0")
    assert "beta 0 | 0 ; 0 | 0" in text
    path = tmp_path / "broken.txt"
    path.write_text(text)
    code, out, _ = run(capsys, "check", str(path), "artinian-k-redpd")
    assert code == 1
    data = json.loads(out)
    assert data["verdict"] == "failed"
    assert data["report"]["failed_check"] == "surjectivity"


@pytest.mark.parametrize("argv", [
    ["depth", "R2", "nosuch"],
    ["check", "R2", "nosuch"],
    ["tor", "missing-file.txt", "M", "N"],
    ["resolve"],
    ["corpus", "--name", "no-such-instance*"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_malformed_description_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("var x\nmodule M\n  cyclic x +\nend\n")
    code, _, err = run(capsys, "depth", str(path), "M")
    assert code == 2
    assert "bad.txt:3:" in err


def test_json_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        code, out, _ = run(capsys, "tor", "R2", "Mx2", "Nxy", "--json", str(target), "--seed", "3")
        assert code == 0
        assert "q = 1" in out
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert [t["rank"] for t in data["tor"]][:3] == [1, 1, 0]
    assert data["q"] == {"certified_below": 7, "saturated": False, "value": 1}


def test_ext_and_depth(capsys):
    code, out, _ = run(capsys, "ext", "R2", "Mx", "Mx", "--bound", "3")
    assert code == 0 and json.loads(out)["p"]["value"] >= 1
    code, out, _ = run(capsys, "depth", "R4", "k")
    assert code == 0 and json.loads(out)["depth"]["value"] == 0


def test_search_command(capsys):
    code, out, _ = run(capsys, "search-redpd", "R1", "k", "--pd-bound", "0", "--min-n", "1")
    assert code == 0
    assert json.loads(out)["result"]["r"] == 1
    code, out, _ = run(capsys, "search-redpd", "R1", "k", "--max-n", "0", "--max-ab", "1", "--pd-bound", "0")
    assert code == 3


def test_corpus_all_passes(capsys):
    code, out, _ = run(capsys, "corpus", "--all")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("instances passed")
    assert "FAIL" not in out


def test_randomized_corpus_is_seeded(tmp_path, capsys):
    paths = [tmp_path / "r1.json", tmp_path / "r2.json"]
    for p in paths:
        code, _, _ = run(capsys, "corpus", "--name", "veronese*", "--random", "5", "--seed", "11", "--json", str(p))
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "depthlab.cli", "depth", "R2", "Mx"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["depth"]["value"] == 1
