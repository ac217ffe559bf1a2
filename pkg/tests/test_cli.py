import json
import subprocess
import sys
from pathlib import Path

import pytest

from basiscoalg import __version__
from basiscoalg.cli import COMMANDS, main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ["check-algebra", DATA / "square.json"],
        ["check-basis", DATA / "square_atoms.json"],
        ["extract-basis", DATA / "square_atoms.json"],
        ["extreme-points", DATA / "triangle.json"],
        ["way-below", DATA / "square.json"],
        ["kz-check", DATA / "vee.json"],
        ["adjoint-check", DATA / "square.json"],
        ["adjoint-chain", DATA / "vee.json"],
        ["compact-freeness", DATA / "square.json"],
        ["comonoid", DATA / "pauli_y.json"],
        ["diagonalise", DATA / "sigma_x.json", DATA / "pauli_x.json"],
        ["tensor-basis", DATA / "pauli_x.json", DATA / "pauli_y.json"],
        ["pauli-demo"],
        ["multirel-diag", DATA / "relation.json"],
        ["exception-roundtrip", DATA / "exceptions.json"],
        ["search-basis", DATA / "chain3.json"],
    ],
)
def test_passing_commands(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0
    assert doc["verdict"] == "pass"
    assert doc["tool"] == "basiscoalg" and doc["version"] == __version__


def test_every_command_is_exercised():
    assert len(COMMANDS) == 17


def test_atoms_of_chain_fails(capsys):
    code, doc = run_json(capsys, "atoms", DATA / "chain3.json")
    assert code == 1
    assert doc["verdict"] == "fail"
    assert doc["checks"][0]["witness"] == "1"


def test_singular_basis_exit_1_with_witness(capsys):
    code, doc = run_json(capsys, "check-basis", DATA / "singular.json")
    assert code == 1
    assert doc["witness"] == {"column": 1, "combination": {"0": "2"}}


def test_diagonalise_failure(capsys):
    code, doc = run_json(capsys, "diagonalise", DATA / "sigma_x.json", DATA / "pauli_y.json")
    assert code == 1


def test_compact_freeness_on_non_lattice(capsys):
    code, _, _ = run(capsys, "compact-freeness", DATA / "vee.json")
    assert code == 1


def test_guard_exit_3(capsys):
    code, doc = run_json(capsys, "way-below", DATA / "square.json", "--guard", "2")
    assert code == 3
    assert doc["witness"] == {"size": 4, "guard": 2}


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"kind": "poset", "elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}',
        '{"kind": "poset", "elements": ["a"], "leq": [["a", "q"]]}',
        '{"kind": "poset", "as": "lattice", "elements": ["a", "b"], "leq": []}',
        '{"kind": "module", "dim": -1}',
        '{"kind": "convex", "points": [["1/0"]]}',
    ],
)
def test_malformed_input_exit_2(capsys, tmp_path, text):
    f = tmp_path / "bad.json"
    f.write_text(text)
    code, _, err = run(capsys, "check-algebra", f)
    assert code == 2
    assert err.startswith("error:")


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "kz-check", tmp_path / "absent.json")
    assert code == 2


def test_bad_scalar_in_basis_exit_2(capsys, tmp_path):
    f = tmp_path / "b.json"
    f.write_text(json.dumps({"kind": "basis", "of": {"kind": "module", "scalars": "gaussian_rational",
                                                     "dim": 1}, "E": [["2+i"]]}))
    code, _, _ = run(capsys, "check-basis", f)
    assert code == 2


def test_coalgebra_with_separate_algebra(capsys, tmp_path):
    doc = json.loads((DATA / "square_atoms.json").read_text())
    lattice = doc.pop("of")
    (tmp_path / "c.json").write_text(json.dumps(doc))
    (tmp_path / "l.json").write_text(json.dumps(lattice))
    code, _, _ = run(capsys, "check-basis", tmp_path / "c.json", "--algebra", tmp_path / "l.json")
    assert code == 0
    code, _, _ = run(capsys, "check-basis", tmp_path / "c.json")
    assert code == 2


def test_explicit_structure_map(capsys, tmp_path):
    doc = json.loads((DATA / "chain3.json").read_text())
    doc["structure"] = [[[], "0"], [["0"], "0"], [["0", "m"], "m"], [["0", "m", "1"], "1"]]
    f = tmp_path / "s.json"
    f.write_text(json.dumps(doc))
    code, out = run_json(capsys, "adjoint-check", f)
    assert code == 0
    assert out["data"]["algebra"] is True and out["data"]["reflection"] is True


def test_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "check-basis", DATA / "pauli_x.json", "--json", "--seed", "7")
    _, second, _ = run(capsys, "check-basis", DATA / "pauli_x.json", "--json", "--seed", "7")
    assert first == second
    assert json.loads(first)["seed"] == 7


def test_timing_flag(capsys):
    _, doc = run_json(capsys, "pauli-demo", "--timing")
    assert doc["seconds"] < 1


def test_text_output(capsys):
    code, out, _ = run(capsys, "kz-check", DATA / "vee.json")
    assert code == 0
    assert "[ok" in out


def test_console_script_version():
    proc = subprocess.run([sys.executable, "-m", "basiscoalg", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert __version__ in proc.stdout


def test_unknown_command_exit_2(capsys):
    assert main(["frobnicate"]) == 2
