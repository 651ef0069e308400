import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from nearplat.cli import main
from nearplat.counting import Signature
from nearplat.families import FamilyId, generate_family
from nearplat.formats import HEADER, read_planar_code, write_planar_code

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_then_classify_in_one_pipe():
    cmd = [sys.executable, "-m", "nearplat.cli"]
    gen = subprocess.run(cmd + ["generate", "--family", "prism", "--d", "4"], capture_output=True, check=True)
    assert gen.stdout.startswith(HEADER)
    cls = subprocess.run(cmd + ["classify"], input=gen.stdout, capture_output=True, check=True)
    assert cls.stdout.decode().strip() == "(3; 4^6)  # isomorphic to the cube"


def test_generate_to_file_and_classify(tmp_path, capsys):
    path = tmp_path / "m.pc"
    assert run(capsys, "generate", "--family", "antiprism", "--d", "5", "--out", str(path))[0] == 0
    (pm,) = read_planar_code(path.read_bytes())
    assert pm == generate_family(FamilyId.ANTIPRISM, 5)
    code, out, _ = run(capsys, "classify", "--in", str(path))
    assert code == 0
    assert Signature.parse(out.strip()) == Signature(4, {5: 2, 3: 10})


def test_generate_platonic(tmp_path, capsys):
    path = tmp_path / "ico.pc"
    assert run(capsys, "generate", "--platonic", "icosahedron", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "classify", "--in", str(path))
    assert out.strip() == "(5; 3^20)  # isomorphic to the icosahedron"


def test_classify_reports_genus(tmp_path, capsys):
    path = tmp_path / "k4.pc"
    path.write_bytes(HEADER + bytes([4, 2, 3, 4, 0, 1, 3, 4, 0, 1, 2, 4, 0, 1, 2, 3, 0]))
    code, out, _ = run(capsys, "classify", "--in", str(path))
    assert code == 0 and "genus 1" in out


def test_classify_output_parses_back(tmp_path, capsys):
    maps = [generate_family(f, 4) for f in (FamilyId.TETRA_THIN_CYCLE, FamilyId.ICOSA_FAR_VERTEX_CYCLE)]
    path = tmp_path / "two.pc"
    path.write_bytes(write_planar_code(maps))
    _, out, _ = run(capsys, "classify", "--in", str(path))
    lines = out.strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        sig = Signature.parse(line.split("#")[0].strip())
        assert str(sig) == line.split("  #")[0]


def test_feasible_square_among_triangles(capsys):
    code, out, _ = run(capsys, "feasible", "--k", "3", "--d2", "3", "--f1", "1", "--d1", "4")
    assert code == 0
    assert out.splitlines() == [
        "vertex count forced by Euler: 14/3",
        "INFEASIBLE: one-disparate vertex count non-integral (14/3)",
    ]


def test_feasible_hexagon_among_triangles(capsys):
    code, out, _ = run(capsys, "feasible", "--k", "3", "--d2", "3", "--f1", "1", "--d1", "6")
    assert code == 0
    assert out.splitlines()[0] == "vertex count forced by Euler: 6"
    assert out.splitlines()[1].endswith("FEASIBLE")


def test_export_dot(tmp_path, capsys):
    path = tmp_path / "p.pc"
    path.write_bytes(write_planar_code([generate_family(FamilyId.PRISM, 3)]))
    code, out, _ = run(capsys, "export-dot", "--in", str(path))
    assert code == 0 and out.count(" -- ") == 9 and "face vector {3: 2, 4: 3}" in out
    _, bare, _ = run(capsys, "export-dot", "--in", str(path), "--no-faces")
    assert "/*" not in bare


def test_search_report(capsys):
    code, out, _ = run(capsys, "search", "--k", "3", "--d2", "4", "--f1", "2", "--vmax", "8")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    # the four-sided prism is the cube and has no disparate faces
    assert [w["signature"] for w in doc["witnesses"]] == ["(3; 3^2 4^3)"]


def test_verify_theorem_report(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, _, _ = run(capsys, "verify-theorem1", "--vmax", "12", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["cells"] and all(c["status"] == "COMPLETE" and c["class_count"] == 0 for c in doc["cells"])
    assert doc["summary"]["holds_in_range"] is True


def test_check_conjecture_report(capsys):
    code, out, _ = run(capsys, "check-conjecture1", "--vmax", "10", "--pair", "3,4")
    assert code == 0
    summary = json.loads(out)["summary"]["3,4"]
    assert summary["unequal_witnesses"] == []
    assert summary["recovered_families"] == ["prism(3)", "prism(5)"]


# -- exit codes ----------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["generate", "--family", "nope", "--d", "3"],
        ["generate", "--family", "prism"],
        ["generate", "--family", "prism", "--d", "2"],
        ["feasible", "--k", "3", "--d2", "3", "--f1", "1", "--d1", "3"],
        ["search", "--k", "3", "--d2", "6", "--f1", "1", "--vmax", "8"],
        ["search", "--k", "3", "--d2", "4", "--f1", "2", "--vmax", "8", "--lemma3-pruning", "on"],
        ["search", "--k", "3", "--d2", "4", "--f1", "2", "--vmax", "8", "--lemma3-pruning", "maybe"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_missing_file_exits_two(tmp_path, capsys):
    code, _, err = run(capsys, "classify", "--in", str(tmp_path / "absent.pc"))
    assert code == 2 and err


def test_bad_format_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.pc"
    path.write_bytes(b"not a planar code stream")
    assert run(capsys, "export-dot", "--in", str(path))[0] == 2


def test_budget_exhaustion_exits_three(capsys):
    code, out, _ = run(capsys, "verify-theorem1", "--vmax", "14", "--budget-nodes", "5")
    assert code == 3
    doc = json.loads(out)
    assert doc["complete"] is False
    assert any(c["status"] == "UNKNOWN" for c in doc["cells"])


def test_threads_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("NEARPLAT_THREADS", "2")
    code, out, _ = run(capsys, "search", "--k", "4", "--d2", "3", "--f1", "2", "--vmax", "10")
    assert code == 0
    monkeypatch.setenv("NEARPLAT_THREADS", "1")
    code, out1, _ = run(capsys, "search", "--k", "4", "--d2", "3", "--f1", "2", "--vmax", "10")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "elapsed_seconds"}
    a, b = strip(out), strip(out1)
    for doc in (a, b):
        for c in doc["cells"]:
            c.pop("seconds")
    assert a == b
