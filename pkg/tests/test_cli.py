import json
import subprocess
import sys

import pytest

from lefschetz_lab import samples
from lefschetz_lab.cli import main


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(p)

    return {
        "octahedron": write("octahedron.json", samples.octahedron().to_json()),
        "hollow": write("triangle-hollow.json", {"facets": [[0, 1], [1, 2], [0, 2]]}),
        "full": write("triangle-full.json", {"facets": [[0, 1, 2]]}),
        "point": write("point.json", {"facets": [[0]]}),
        "c4": write("c4.json", {"facets": [[0, 1], [1, 2], [2, 3], [0, 3]]}),
        "rot": write("rot.json", {"perm": [1, 2, 3, 0]}),
        "bad_perm": write("bad.json", {"perm": [1, 0, 2, 3]}),
        "garbage": write("garbage.json", "{not json"),
        "nan": write("nan.json", '{"facets": [[0, NaN]]}'),
        "cp2pt": write("cfg.json", {"ambient_dim": 6, "components": [{"label": "CP2"}, {"label": "pt"}]}),
        "cp2cp2": write("cfg2.json", {"ambient_dim": 6, "components": [{"label": "CP2"}, {"label": "CP2"}]}),
        "tmp": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_euler(files, capsys):
    code, rep = run(capsys, "euler", files["octahedron"])
    assert code == 0 and rep["status"] == "ok"
    assert rep["results"]["euler"] == 2
    assert rep["command"] == "euler" and rep["inputs"]["complex"] == files["octahedron"]


def test_betti(files, capsys):
    assert run(capsys, "betti", files["octahedron"])[1]["results"]["betti"] == [1, 0, 1]


def test_spectrum(files, capsys):
    code, rep = run(capsys, "spectrum", files["hollow"], "-k", "0")
    assert code == 0
    assert rep["results"]["eigenvalues"] == pytest.approx([0, 3, 3], abs=1e-10)


def test_spectrum_degree_out_of_range(files, capsys):
    assert run(capsys, "spectrum", files["hollow"], "-k", "4")[0] == 2


def test_lefschetz_all(files, capsys):
    code, rep = run(capsys, "lefschetz", files["octahedron"], "--all-automorphisms")
    assert code == 0
    assert rep["results"]["count"] == 48
    assert all(r["verdict"] for r in rep["results"]["reports"])


def test_lefschetz_rotation(files, capsys):
    code, rep = run(capsys, "lefschetz", files["c4"], "--automorphism", files["rot"])
    r = rep["results"]["reports"][0]
    assert code == 0 and r["lefschetz_number"] == 0 and r["index_sum"] == 0


def test_lefschetz_identity_default(files, capsys):
    code, rep = run(capsys, "lefschetz", files["full"])
    assert rep["results"]["reports"][0]["lefschetz_number"] == 1 == rep["results"]["euler"]


def test_lefschetz_not_simplicial(files, capsys):
    code, rep = run(capsys, "lefschetz", files["c4"], "--automorphism", files["bad_perm"])
    assert code == 2 and rep is None


def test_lefschetz_vertex_cap(files, capsys):
    assert run(capsys, "lefschetz", files["octahedron"], "--all-automorphisms", "--vertex-cap", "5")[0] == 2


def test_mckean_singer(files, capsys):
    code, rep = run(capsys, "mckean-singer", files["octahedron"], "--t-grid", "0,1,5")
    assert code == 0 and rep["results"]["max_deviation"] < 1e-8
    code, rep = run(capsys, "mckean-singer", files["point"])
    assert all(v["supertrace"] == 1 for v in rep["results"]["values"])


def test_mckean_singer_violation_exit(files, capsys):
    code, rep = run(capsys, "mckean-singer", files["octahedron"], "--tol", "0")
    assert code == 1 and rep["status"] == "violation"


def test_supersymmetry(files, capsys):
    code, rep = run(capsys, "supersymmetry", files["full"])
    assert code == 0 and rep["results"]["ok"]
    assert rep["results"]["supertrace_of_powers"] == {"1": 0, "2": 0, "3": 0}


def test_enumerate(capsys):
    code, rep = run(capsys, "enumerate", "--dim", "6")
    rows = rep["results"]["configurations"]
    hit = [r for r in rows if sorted(r["components"]) == ["S2", "S2", "pt", "pt"]]
    assert code == 0 and hit[0]["implied_euler"] == 6
    assert rep["results"]["all_positive"]


def test_enumerate_budget(capsys, monkeypatch):
    monkeypatch.setenv("LEFSCHETZ_LAB_BUDGET", "5")
    assert run(capsys, "enumerate", "--dim", "8")[0] == 2


def test_classify(files, capsys):
    code, rep = run(capsys, "classify", files["cp2pt"])
    assert code == 0 and rep["results"]["classification"]["outcome"] == "complex_projective"
    code, rep = run(capsys, "classify", files["cp2cp2"])
    assert code == 1 and not rep["results"]["constraints"]["frankel_ok"]


def test_gap(capsys):
    assert run(capsys, "gap", "--dim", "8")[1]["results"]["gaps"] == []
    gaps = run(capsys, "gap", "--dim", "10")[1]["results"]["gaps"]
    assert {"dims": [6], "reason": gaps[0]["reason"]} in gaps


@pytest.mark.parametrize("s, h, chi", [(0, 1.1, 2), (1, 0.62, 2), (0, 0.5, 12)])
def test_sample_sphere(files, capsys, s, h, chi):
    out = files["tmp"] / f"sphere{s}.json"
    code, rep = run(capsys, "sample-sphere", "--subdivisions", str(s), "--h", str(h), "--out", str(out))
    assert code == 0 and rep["results"]["euler"] == chi
    written = json.loads(out.read_text())
    assert set(written) == {"points", "graph", "complex"}
    assert run(capsys, "euler", str(out))[1]["results"]["euler"] == chi


def test_sample_sphere_bad_h(capsys):
    assert run(capsys, "sample-sphere", "--h", "0")[0] == 2


@pytest.mark.parametrize("name", ["garbage", "nan"])
def test_parse_errors(files, capsys, name):
    assert run(capsys, "euler", files[name])[0] == 2


def test_missing_file(capsys):
    assert run(capsys, "euler", "/nonexistent.json")[0] == 2


def test_numerical_failure_exit(files, capsys, monkeypatch):
    from lefschetz_lab import hodge
    from lefschetz_lab.errors import EigensolverFailure

    def boom(*a, **k):
        raise EigensolverFailure("forced")

    monkeypatch.setattr(hodge, "heat_supertrace", boom)
    code, rep = run(capsys, "mckean-singer", files["point"])
    assert code == 3 and rep["status"] == "numerical_failure"
    assert "EigensolverFailure" in rep["failing_operation"]


def test_deterministic_bytes(files, capsys):
    main(["lefschetz", files["octahedron"], "--all-automorphisms"])
    first = capsys.readouterr().out
    main(["lefschetz", files["octahedron"], "--all-automorphisms"])
    assert capsys.readouterr().out == first
    assert json.loads(json.dumps(json.loads(first))) == json.loads(first)


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "lefschetz_lab.cli", "--pretty", "euler", files["full"]],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["euler"] == 1
