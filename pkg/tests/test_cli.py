import json
import subprocess
import sys

import pytest

from djspectra.cli import main

T32_C4 = "djoin(msub(C4; h1=empty; h2=empty), C3, C3)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_energy_k4(capsys):
    assert run(capsys, "energy", "K4")[:2] == (0, "6.000000000\n")


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", T32_C4, "--json")
    report = json.loads(out)
    assert code == 0 and report["ok"] and report["max_gap"] <= 1e-8
    assert report["clause3"]["matches_oracle"] == "engine"


def test_families_example(capsys):
    code, out, _ = run(capsys, "families", "--case", "i", "--g", "C4", "--vary", "g1",
                       "--fixed", "K4", "--n", "9", "--json")
    report = json.loads(out)
    assert code == 0
    assert len(report["members"]) == 4 and report["max_deviation"] <= 1e-6


def test_families_text_and_files(capsys, tmp_path):
    out_json, out_csv = tmp_path / "r.json", tmp_path / "r.csv"
    code, out, _ = run(capsys, "families", "--case", "iv", "--g", "C6", "--h", "line", "--vary", "g2",
                       "--fixed", "C3", "--n", "7", "--out", str(out_json), "--csv", str(out_csv))
    assert code == 0 and out == ""
    assert json.loads(out_json.read_text())["theorem_case"] == "iv"
    assert out_csv.read_text().startswith("partition,energy,deviation\n")
    code, out, _ = run(capsys, "families", "--case", "i", "--g", "C4", "--vary", "g2",
                       "--fixed", "C3", "--n", "7")
    assert code == 0 and "2 members" in out


@pytest.mark.parametrize("argv,code", [
    (["energy", "C4 )"], 2),
    (["verify", "msub(C4; h1=nope)"], 2),
    (["energy", "union(C3, C3)"], 3),
    (["graph", "line(E3)"], 3),
    (["verify", "djoin(msub(K4; h1=empty; h2=comp), C3, C3)"], 4),
    (["spectrum", "C5", "--method", "closed"], 4),
    (["spectrum", "djoin(msub(C4; h1=line; h2=same), C3, C3)", "--method", "closed"], 4),
    (["verify", T32_C4, "--tol", "1e-20"], 5),
    (["families", "--case", "ii", "--g", "K4", "--h", "line", "--vary", "g1", "--fixed", "C3", "--n", "7"], 3),
    (["energy", "@/nonexistent/file.json"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_spectrum_modes(capsys):
    code, out, _ = run(capsys, "spectrum", T32_C4, "--method", "both", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["max_gap"] <= 1e-8
    assert payload["closed_form"]["provenance"] == "closed_form"
    assert payload["numeric"]["values"][0] == 23
    code, out, _ = run(capsys, "spectrum", "C4")
    assert code == 0 and out.split() == ["4.000000000000", "0.000000000000", "-2.000000000000", "-2.000000000000"]
    code, out, _ = run(capsys, "spectrum", T32_C4, "--method", "both")
    assert out.strip().splitlines()[-1].startswith("max gap")


def test_graph_export_and_reload(capsys, tmp_path):
    path, csv_path = tmp_path / "g.json", tmp_path / "d.csv"
    assert run(capsys, "graph", T32_C4, "--out", str(path), "--distance-csv", str(csv_path))[0] == 0
    data = json.loads(path.read_text())
    assert data["blocks"] == {"m": 4, "n": 4, "p": 3, "q": 3} and len(data["edges"]) == 38
    assert len(csv_path.read_text().splitlines()) == 14
    code, out, _ = run(capsys, "verify", "@" + str(path))
    assert code == 0 and "theorem   T32" in out
    code, out, _ = run(capsys, "graph", "C3")
    assert json.loads(out) == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}


def test_module_entry_point_is_byte_stable():
    cmd = [sys.executable, "-m", "djspectra", "verify", T32_C4, "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.endswith(b"\n")
