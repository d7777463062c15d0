import json
import subprocess
import sys

import pytest

from rapoly.cli import main
from rapoly.corpus import cube, prism, tetrahedron
from rapoly.gluing import compose
from rapoly.lobell import build_lobell
from rapoly.polyhedron import dump, load


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, p in [
        ("cube", cube()),
        ("tri", prism(3)),
        ("pent", prism(5)),
        ("tet", tetrahedron()),
        ("l5", build_lobell(5)),
        ("l6", build_lobell(6)),
        ("dd", compose(build_lobell(5), 0, build_lobell(5), 0, 0, True)[0]),
    ]:
        path = tmp_path / f"{name}.json"
        dump(p, path)
        paths[name] = str(path)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lvol(capsys):
    code, out, _ = run(capsys, "lvol", "5")
    assert code == 0 and out.strip() == "4.30620760073"
    code, out, _ = run(capsys, "lvol", "--table", "5..20")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 9
    assert lines[1].split()[0] == "5" and lines[1].split()[2] == "13"
    code, _, err = run(capsys, "lvol", "4")
    assert code == 2 and "n >= 5" in err


@pytest.mark.parametrize("name, reason", [("cube", "prismatic-4-circuit"), ("tri", "prismatic-3-circuit"),
                                          ("pent", "prismatic-4-circuit"), ("tet", "excluded type")])
def test_validate_negatives(capsys, files, name, reason):
    code, out, _ = run(capsys, "validate", files[name])
    assert code == 1 and reason in out


def test_validate_json(capsys, files):
    code, out, _ = run(capsys, "--json", "validate", files["cube"])
    doc = json.loads(out)
    assert code == 1 and doc["reason"] == "prismatic-4-circuit"
    assert len(doc["witness"]["crossed_edges"]) == 4
    code, out, _ = run(capsys, "validate", files["l5"], "--json")
    assert code == 0 and json.loads(out)["admissible"]


def test_reduce_and_bound(capsys, files):
    trace = str(files["dir"] / "t.json")
    code, out, _ = run(capsys, "reduce", files["dd"], "--trace", trace)
    assert code == 0 and "8.61241520146" in out
    doc = json.loads(open(trace).read())
    assert len(doc["steps"]) == 1 and doc["terminal"] == [5, 5]
    assert abs(doc["bound"] - 8.612) < 1e-3
    code, out, _ = run(capsys, "bound", trace)
    assert code == 0 and out.startswith("8.61241520146")


def test_polyhedron_outputs_reparse(capsys, files):
    d = files["dir"]
    cases = [
        ("lobell", "7", "-o", str(d / "a.json")),
        ("compose", files["l5"], "0", files["l6"], "3", "--offset", "2", "-o", str(d / "b.json")),
        ("double", files["l6"], "0", "-o", str(d / "c.json")),
    ]
    for argv in cases:
        code, _, _ = run(capsys, *argv)
        assert code == 0
    for name in "abc":
        p = load(d / f"{name}.json")
        code, out, _ = run(capsys, "validate", str(d / f"{name}.json"))
        assert code == 0
    # stdout form also re-parses
    code, out, _ = run(capsys, "lobell", "6")
    (d / "s.json").write_text(out)
    code, out, _ = run(capsys, "iso", str(d / "s.json"), files["l6"])
    assert code == 0 and out.strip() == "isomorphic"


def test_surgery_and_decompose(capsys, files):
    d = files["dir"]
    run(capsys, "double", files["l6"], "0", "-o", str(d / "d6.json"))
    code, out, _ = run(capsys, "--json", "info", str(d / "d6.json"))
    assert json.loads(out)["counts"] == [36, 54, 20]
    code, out, err = run(capsys, "surgery", str(d / "d6.json"), "0")
    assert code == 1 and "NotVeryGood" in err
    from rapoly.reduction import classify_edges

    e = classify_edges(load(d / "d6.json")).very_good[0]
    code, out, _ = run(capsys, "surgery", str(d / "d6.json"), str(e), "-o", str(d / "s.json"))
    assert code == 0 and "f=19" in out
    code, out, _ = run(capsys, "--json", "circuits", files["dd"], "--k", "5")
    ids = [c["id"] for c in json.loads(out)["circuits"]]
    code, out, _ = run(capsys, "profile", files["dd"], "--circuit", "2,5,8,11,14")
    assert code == 0 and "flats side 1: [] side 2: []" in out
    assert "2,5,8,11,14" in ids
    code, out, _ = run(capsys, "decompose", files["dd"], "--circuit", "2,5,8,11,14", "-o", str(d / "h"))
    assert code == 0
    for i in (1, 2):
        code, out, _ = run(capsys, "recognize", str(d / f"h.{i}.json"))
        assert out.strip() == "L(5)"


def test_cover_and_polar(capsys, files):
    d = files["dir"]
    export = d / "gamma.txt"
    code, out, _ = run(capsys, "cover", files["l5"], "--export-presentation", str(export))
    bundle = json.loads(out)
    assert code == 0 and bundle["h_certificate"]["certificate_ok"]
    assert set(bundle) == {"face_coloring", "edge_coloring", "presentations", "h_certificate"}
    assert export.read_text().splitlines()[0] == "r0"
    code, out, _ = run(capsys, "polar", files["l5"])
    assert code == 0 and "all exceed 2pi: yes" in out
    code, out, err = run(capsys, "polar", files["l5"], "--edge", "0")
    assert code == 2


def test_canon_and_iso(capsys, files):
    code, out1, _ = run(capsys, "canon", files["l5"])
    code, out2, _ = run(capsys, "canon", files["dd"])
    assert out1 != out2 and len(out1.strip()) == 16
    code, out, _ = run(capsys, "iso", files["l5"], files["l6"])
    assert code == 1


def test_input_errors(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "rap-polyhedron/1", "faces": [[0, 1, 2], [0, 1, 3], [1, 3, 2], [2, 3, 0]]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and err.count("\n") == 1
    code, _, _ = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2


def test_quiet(capsys, files):
    code, out, _ = run(capsys, "--quiet", "validate", files["cube"])
    assert code == 1 and out == ""


def test_deterministic_output(files):
    argv = [sys.executable, "-m", "rapoly", "reduce", files["dd"], "--json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
