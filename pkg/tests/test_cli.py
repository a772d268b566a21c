import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from specorder.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ["a3", "ch2", "kst"])
def test_analyze_matches_golden(capsys, name):
    code, out, _ = run(capsys, "analyze", str(GOLDEN / f"{name}.json"))
    assert code == 0
    assert out == (GOLDEN / f"{name}.analyze.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", ["a3", "ch2", "kst"])
def test_analyze_json_matches_golden(capsys, name):
    code, out, _ = run(capsys, "analyze", "--json", str(GOLDEN / f"{name}.json"))
    assert code == 0
    assert out == (GOLDEN / f"{name}.analyze.json").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", ["a3", "ch2", "kst"])
def test_export_dot_matches_golden(capsys, tmp_path, name):
    target = tmp_path / f"{name}.dot"
    code, _, _ = run(capsys, "export-dot", str(GOLDEN / f"{name}.json"), "-o", str(target))
    assert code == 0
    assert target.read_bytes() == (GOLDEN / f"{name}.dot").read_bytes()


def test_export_dot_to_stdout(capsys):
    code, out, _ = run(capsys, "export-dot", str(GOLDEN / "kst.json"))
    assert code == 0 and out == (GOLDEN / "kst.dot").read_text(encoding="utf-8")


def test_kst_report_content(capsys):
    _, out, _ = run(capsys, "analyze", "--json", str(GOLDEN / "kst.json"))
    r = json.loads(out)
    assert len(r["components"]) == 1
    assert r["generic_points"] == ["e2"] and r["closed_points"] == ["m"]
    assert r["dim"] == r["length"] == 2
    assert r["presentation"] == ["e2", "ht", "m"]


def test_a3_report_content(capsys):
    _, out, _ = run(capsys, "analyze", "--json", str(GOLDEN / "a3.json"))
    r = json.loads(out)
    assert len(r["components"]) == 3 and r["length"] == 0


def test_non_t0_space_is_reported_not_rejected(capsys, tmp_path):
    p = tmp_path / "n.json"
    p.write_text(json.dumps({"name": "N", "points": ["x", "y"], "specializations": [["x", "y"], ["y", "x"]]}))
    code, out, _ = run(capsys, "analyze", "--json", str(p))
    r = json.loads(out)
    assert code == 0 and r["t0"] is False and r["uip"]["witness"] == ["x", "y"]
    assert r["quotient"] == {"points": ["x"], "classes": {"x": ["x", "y"]}}


def test_parse_error_names_location(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"name": "B", "points": ["a"], "specializations": [["a", "b"]]}))
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2
    assert "$.specializations[0][1]" in err


def test_invalid_json_and_missing_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("[1, 2")
    assert run(capsys, "analyze", str(p))[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "nothing.json"))[0] == 2


def test_duplicate_points_exit_3(capsys, tmp_path):
    p = tmp_path / "dup.json"
    p.write_text(json.dumps({"name": "D", "points": ["a", "a"], "specializations": []}))
    assert run(capsys, "analyze", str(p))[0] == 3


def test_partial_map_exit_3(capsys, tmp_path):
    shutil.copy(GOLDEN / "ch2.json", tmp_path)
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"source": "ch2.json", "target": "ch2.json", "map": {"x0": "x0"}}))
    assert run(capsys, "analyze-morphism", str(p))[0] == 3


def test_projection_report(capsys):
    code, out, _ = run(capsys, "analyze-morphism", "--json", str(GOLDEN / "proj.json"))
    r = json.loads(out)
    assert code == 0
    assert r["norm"] == "1"
    assert r["flags"]["length_preserving"] is False
    assert r["counterexamples"]["length_preserving"] == ["e2", "hs"]
    assert r["flags"]["condition_star"] is True
    assert r["theorems"]["thm33"]["consistent"] is True


def test_projection_text_matches_golden(capsys):
    code, out, _ = run(capsys, "analyze-morphism", str(GOLDEN / "proj.json"))
    assert code == 0
    assert out == (GOLDEN / "proj.analyze.txt").read_text(encoding="utf-8")


def test_constant_map_report(capsys):
    _, out, _ = run(capsys, "analyze-morphism", "--json", str(GOLDEN / "const.json"))
    r = json.loads(out)
    assert r["norm"] == "0" and r["flags"]["null"] is True


def test_discontinuous_map_exit_4(capsys):
    code, _, err = run(capsys, "analyze-morphism", str(GOLDEN / "ch2_a3.json"))
    assert code == 4
    assert "x0 -> x1" in err


def test_allow_discontinuous(capsys):
    code, out, _ = run(capsys, "analyze-morphism", "--allow-discontinuous", "--json", str(GOLDEN / "ch2_a3.json"))
    r = json.loads(out)
    assert code == 0
    assert r["specialization_preserving"] is False and r["ip_preserving"] is False
    assert "norm" not in r


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("proj_kst_kt"))
    assert "Example 3.2(ii)" in line


def test_catalog_build_round_trip(capsys, tmp_path):
    target = tmp_path / "a3.json"
    assert run(capsys, "catalog", "build", "antichain(3)", "-o", str(target))[0] == 0
    doc = json.loads(target.read_text())
    assert doc["points"] == ["a", "b", "c"] and doc["specializations"] == []


def test_catalog_build_unknown(capsys):
    assert run(capsys, "catalog", "build", "spec_qq(2)")[0] == 2
    assert run(capsys, "catalog", "build")[0] == 2


def test_catalog_embedding_carries_caveat(capsys, tmp_path):
    target = tmp_path / "e.json"
    run(capsys, "catalog", "build", "embed_kt_zt", "-o", str(target))
    code, out, _ = run(capsys, "analyze-morphism", "--json", str(target))
    r = json.loads(out)
    assert code == 0 and r["norm"] == "1" and "not reproduced" in r["note"]


def test_fuzz_clean_checks(capsys, tmp_path):
    code, out, _ = run(
        capsys, "fuzz", "--checks", "lemma21", "--trials", "0", "--cert-dir", str(tmp_path / "c")
    )
    assert code == 0
    assert "n=4: 219" in out
    assert "inconsistent=0" in out
    assert not (tmp_path / "c").exists()


def test_fuzz_json_summary_is_reproducible(capsys, tmp_path):
    argv = ["fuzz", "--checks", "lemma21,rem23,lemma17,prop42", "--trials", "50", "--seed", "3",
            "--json", "--cert-dir", str(tmp_path)]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    s = json.loads(out1)
    assert s["inconsistencies"] == 0
    assert s["checks"]["lemma21"]["applicable"] == 1 + 1 + 3 + 19 + 219 + 50


def test_fuzz_inconsistency_exit_5_and_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "fuzz", "--checks", "thm33", "--trials", "200", "--seed", "7",
                       "--cert-dir", str(tmp_path))
    assert code == 5
    certs = sorted(tmp_path.glob("thm33-*.json"))
    assert certs and f"certificate: {certs[0]}" in out
    code, out, _ = run(capsys, "replay", str(certs[0]))
    assert code == 5 and "INCONSISTENT" in out


def test_fuzz_unknown_check(capsys):
    assert run(capsys, "fuzz", "--checks", "lemma99")[0] == 2


def test_replay_bad_file(capsys, tmp_path):
    assert run(capsys, "replay", str(tmp_path / "none.json"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "specorder", "analyze", str(GOLDEN / "ch2.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "ch2.analyze.txt").read_text(encoding="utf-8")
