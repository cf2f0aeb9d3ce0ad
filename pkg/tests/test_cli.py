"""Problem-file parsing, output determinism, and exit codes."""

import json

import pytest

from latcoh.cli import EXIT_BAD_INPUT, EXIT_CAP, EXIT_OK, EXIT_UNSOLVED, main

INTS = {
    "ambient": {"free_rank": "1", "torsion": []},
    "subgroups": {"A": [["4"]], "B": [["6"]]},
    "families": {"main": ["A", "B"]},
    "residues": {"A": ["2"], "B": ["0"]},
}

KLEIN = {
    "ambient": {"free_rank": "0", "torsion": ["2", "2"]},
    "subgroups": {"P1": [["1", "0"]], "P2": [["0", "1"]], "P3": [["1", "1"]]},
    "families": {"main": ["P1", "P2", "P3"]},
    "residues": {"P1": ["0", "0"], "P2": ["0", "0"], "P3": ["0", "1"]},
}


@pytest.fixture
def problem(tmp_path):
    def write(doc, name="problem.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


def test_crt_solved_document(problem, capsys):
    rc, out = run(capsys, ["crt", problem(INTS)])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["status"] == "solved"
    assert doc["solution_class"] == ["6"]
    assert doc["intersection_basis"] == [["12"]]
    # canonical serialization: sorted keys, two-space indent, one newline
    assert out == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_output_is_byte_deterministic(problem, capsys):
    path = problem(INTS)
    rc1, first = run(capsys, ["homology", path])
    rc2, second = run(capsys, ["homology", path, "--threads", "4"])
    assert rc1 == rc2 == EXIT_OK
    assert first == second
    # every integer in the document is a decimal string
    doc = json.loads(first)

    def only_strings(node):
        if isinstance(node, dict):
            return all(only_strings(v) for v in node.values())
        if isinstance(node, list):
            return all(only_strings(v) for v in node)
        return isinstance(node, (str, bool)) or node is None

    assert only_strings(doc)


def test_unsolvable_system_exits_3(problem, capsys):
    rc, out = run(capsys, ["crt", problem(KLEIN)])
    assert rc == EXIT_UNSOLVED
    doc = json.loads(out)
    assert doc["status"] == "no_solution"
    assert len(doc["certificate"]) == 3


def test_incompatible_system_exits_3(problem, capsys):
    doc = dict(INTS)
    doc["residues"] = {"A": ["1"], "B": ["0"]}
    rc, out = run(capsys, ["crt", problem(doc)])
    assert rc == EXIT_UNSOLVED
    assert json.loads(out)["status"] == "incompatible"
    assert json.loads(out)["incompatible_pair"] == ["0", "1"]


def test_cap_exceeded_exits_4(problem, capsys):
    doc = {
        "ambient": {"free_rank": "1", "torsion": []},
        "subgroups": {"A": [["4"]], "B": [["6"]], "C": [["10"]]},
        "families": {"main": ["A", "B", "C"]},
    }
    rc, out = run(capsys, ["closure", problem(doc), "--cap", "3"])
    assert rc == EXIT_CAP
    assert json.loads(out)["status"] == "cap_exceeded"


def test_malformed_input_exits_2(problem, capsys):
    doc = {"ambient": {"free_rank": "1"}, "subgroups": {"A": [["4", "7"]]}}
    rc, out = run(capsys, ["homology", problem(doc)])
    assert rc == EXIT_BAD_INPUT
    parsed = json.loads(out)
    assert parsed["status"] == "error"
    assert "subgroups.A[0]" in parsed["diagnostic"]


def test_bad_torsion_chain_reported(problem, capsys):
    doc = {"ambient": {"free_rank": "0", "torsion": ["3", "4"]}}
    rc, out = run(capsys, ["closure", problem(doc)])
    assert rc == EXIT_BAD_INPUT
    assert "ambient.torsion[1]" in json.loads(out)["diagnostic"]


def test_missing_file_exits_2(capsys):
    rc, out = run(capsys, ["homology", "/nonexistent/problem.json"])
    assert rc == EXIT_BAD_INPUT
    assert json.loads(out)["status"] == "error"


def test_family_flag_selects_and_validates(problem, capsys):
    doc = dict(INTS)
    doc["families"] = {"left": ["A"], "right": ["B"]}
    path = problem(doc)
    rc, out = run(capsys, ["homology", path, "--family", "left"])
    assert rc == EXIT_OK
    assert json.loads(out)["family"] == "left"
    rc, out = run(capsys, ["homology", path])
    assert rc == EXIT_BAD_INPUT  # ambiguous without --family
    rc, out = run(capsys, ["homology", path, "--family", "missing"])
    assert rc == EXIT_BAD_INPUT


def test_augment_flag_adds_degree(problem, capsys):
    path = problem(INTS)
    rc, out = run(capsys, ["cohomology", path, "--augment"])
    assert rc == EXIT_OK
    assert "-1" in json.loads(out)["degrees"]


def test_closure_document(problem, capsys):
    rc, out = run(capsys, ["closure", problem(INTS)])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["size"] == "4"
    assert [m[0] for m in doc["members"]] == [["4"], ["6"], ["2"], ["12"]]


def test_distributive_document_klein(problem, capsys):
    rc, out = run(capsys, ["distributive", problem(KLEIN)])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["distributive"] is False
    assert doc["witness_triple"] == ["0", "1", "2"]
    assert doc["witness_element"] == ["1", "0"]


def test_h1_witness_document(problem, capsys):
    rc, out = run(capsys, ["h1-witness", problem(KLEIN)])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["h1"] == ["2"]
    assert doc["witness"] == [["0", "0"], ["0", "1"], ["0", "1"]]


def test_pattern_document(problem, capsys):
    rc, out = run(capsys, ["pattern", problem(INTS), "--flavor", "ideal"])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["degrees"]["0"] == ["0"]
    assert doc["gluing"]["holds"] is True
    rc, out = run(capsys, ["pattern", problem(KLEIN), "--flavor", "quotient"])
    assert rc == EXIT_OK
    assert json.loads(out)["euler_consistency"] is True


def test_ext_tor_documents(problem, capsys):
    path = problem(INTS)
    rc, out = run(capsys, ["ext", path, "--module", "8", "--degrees", "1"])
    assert rc == EXIT_OK
    assert json.loads(out)["degrees"] == {"0": ["8"], "1": []}
    rc, out = run(capsys, ["tor", path, "--module", "4"])
    assert rc == EXIT_OK
    assert json.loads(out)["degrees"] == {"0": ["4"], "1": []}
    rc, out = run(capsys, ["ext", path, "--module", "1,x"])
    assert rc == EXIT_BAD_INPUT


def test_oracle_recompute(problem, capsys):
    rc, out = run(capsys, ["oracle", problem(KLEIN)])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["homology"]["chain"]["matches_exact"] is True
    assert doc["homology"]["cochain"]["matches_exact"] is True


@pytest.mark.parametrize(
    "command,extra",
    [
        (["crt"], []),
        (["distributive"], []),
        (["h1-witness"], []),
        (["equalizer"], []),
        (["cohomology"], []),
    ],
)
def test_oracle_replay_roundtrip(problem, capsys, tmp_path, command, extra):
    path = problem(KLEIN)
    rc, out = run(capsys, command + [path] + extra)
    assert rc in (EXIT_OK, EXIT_UNSOLVED)
    result = tmp_path / "result.json"
    result.write_text(out)
    rc, out = run(capsys, ["oracle", path, "--check", str(result)])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["verified"] is True
    assert doc["checked"] == command[0]


def test_oracle_replay_rejects_tampered_witness(problem, capsys, tmp_path):
    path = problem(KLEIN)
    rc, out = run(capsys, ["distributive", path])
    doc = json.loads(out)
    doc["witness_element"] = ["0", "0"]  # zero is in every subgroup
    result = tmp_path / "tampered.json"
    result.write_text(json.dumps(doc))
    rc, out = run(capsys, ["oracle", path, "--check", str(result)])
    assert rc == EXIT_OK
    assert json.loads(out)["verified"] is False


def test_equalizer_document(problem, capsys):
    rc, out = run(capsys, ["equalizer", problem(KLEIN)])
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["equalizer"] is False
    assert len(doc["counterexample_residues"]) == 3
    rc, out = run(capsys, ["equalizer", problem(INTS)])
    assert rc == EXIT_OK
    assert json.loads(out)["equalizer"] is True


def test_plain_integers_also_accepted(problem, capsys):
    doc = {
        "ambient": {"free_rank": 1, "torsion": []},
        "subgroups": {"A": [[4]], "B": [[6]]},
        "families": {"main": ["A", "B"]},
    }
    rc, out = run(capsys, ["closure", problem(doc)])
    assert rc == EXIT_OK
    assert json.loads(out)["size"] == "4"
