import json

import pytest

from conftest import fixture_path
from corridor_det.cli import main
from corridor_det.poly import parse_poly


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def report(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_validate_expr(capsys):
    code, rep = report(capsys, "validate", fixture_path("expr_graph.json"))
    assert code == 0
    assert rep["status"] == "ok"
    assert rep["payload"]["ok"] is True


def test_validate_perturbed_graph(tmp_path, capsys):
    obj = json.loads(fixture_path("expr_graph.json").read_text())
    for e in obj["edges"]:
        if (e["from"], e["to"]) == ("1", "2"):
            e["label"] = "2/5"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, rep = report(capsys, "validate", path)
    assert code == 1
    assert rep["status"] == "violation"


def test_partition(capsys):
    code, rep = report(capsys, "partition", fixture_path("expr_graph.json"), fixture_path("expr_corridor.json"))
    assert code == 0
    assert rep["payload"]["blocks"] == [["1", "2"], ["3", "5"], ["4", "6"]]


@pytest.mark.parametrize("algo", ["laplace", "dfree", "bareiss", "auto"])
def test_det_exdi(capsys, algo):
    code, rep = report(capsys, "det", fixture_path("exdi_graph.json"), "--algo", algo)
    assert code == 0
    expected = parse_poly("1")
    for v in "abcde":
        expected = expected * parse_poly(f"1 - {v}+*{v}-")
    assert rep["payload"]["det"] == str(expected)


def test_factor_th2_final_example(capsys):
    code, rep = report(capsys, "factor", fixture_path("final_example_system.json"), "--theorem", "th2")
    assert code == 0
    assert rep["payload"]["equal"] is True
    assert rep["command"] == "factor th2"


def test_factor_th1_reports_the_mismatch(capsys):
    code, rep = report(capsys, "factor", fixture_path("expr_graph.json"), fixture_path("expr_corridor.json"),
                       "--theorem", "th1")
    assert code == 1
    assert rep["status"] == "violation"
    assert rep["payload"]["lhs"] == "122018/244140625"


@pytest.mark.parametrize("argv", [
    ["factor", "--theorem", "lemat", "--n", "5"],
    ["factor", fixture_path("exdi_graph.json"), "--theorem", "ledi"],
    ["factor", fixture_path("exdi_graph.json"), "--theorem", "prop1"],
    ["factor", fixture_path("final_example_system.json"), "--theorem", "prop2"],
    ["factor", fixture_path("three_lines.json"), "--theorem", "varchenko"],
    ["arrange", "varchenko", fixture_path("parallel_lines.json")],
])
def test_factor_commands_pass(capsys, argv):
    code, rep = report(capsys, *argv)
    assert code == 0, rep
    assert rep["payload"]["equal"] is True


def test_arrange_listings(capsys):
    _, rep = report(capsys, "arrange", "chambers", fixture_path("two_lines.json"))
    assert rep["payload"] == ["++", "+-", "-+", "--"]
    _, rep = report(capsys, "arrange", "faces", fixture_path("one_hyperplane.json"))
    assert [f["sign"] for f in rep["payload"]] == ["+", "0", "-"]
    assert rep["payload"][1]["multiplicity"] == 1
    _, rep = report(capsys, "arrange", "graph", fixture_path("one_hyperplane.json"))
    assert rep["payload"]["mode"] == "distance"


def test_pretty_output(capsys):
    code, out = run(capsys, "--output", "pretty", "validate", fixture_path("exdi_graph.json"))
    assert code == 0
    assert out.startswith("{\n  ")


def test_random_is_deterministic(capsys):
    _, a = run(capsys, "random", "--kind", "tree", "--seed", "7")
    _, b = run(capsys, "random", "--kind", "tree", "--seed", "7")
    assert a == b
    _, c = run(capsys, "random", "--kind", "tree", "--seed", "8")
    assert a != c


@pytest.mark.parametrize("kind,mode", [
    ("blocks", "distance"), ("tree", "distance"), ("corridor-system", "distance"),
    ("corridor-system", "probabilistic"), ("arrangement", "distance")])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_random_output_round_trips(tmp_path, capsys, kind, mode, seed):
    path = tmp_path / "inst.json"
    assert main(["random", "--kind", kind, "--mode", mode, "--seed", str(seed), "-o", str(path)]) == 0
    code, rep = report(capsys, "validate", path)
    assert code == 0, rep


def test_random_systems_satisfy_theorem_2(tmp_path, capsys):
    path = tmp_path / "sys.json"
    main(["random", "--kind", "corridor-system", "--seed", "4", "-o", str(path)])
    code, rep = report(capsys, "factor", path, "--theorem", "th2")
    assert code == 0 and rep["payload"]["equal"]


def test_blocks_file_for_thmat(tmp_path, capsys):
    path = tmp_path / "blocks.json"
    main(["random", "--kind", "blocks", "--seed", "5", "-o", str(path)])
    code, rep = report(capsys, "factor", path, "--theorem", "thmat")
    assert code == 0 and rep["payload"]["equal"]


def test_input_files_are_untouched(capsys):
    path = fixture_path("expr_graph.json")
    before = path.read_bytes()
    run(capsys, "factor", path, fixture_path("expr_corridor.json"), "--theorem", "th1")
    assert path.read_bytes() == before


class TestExitCodes:
    def test_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{")
        code, rep = report(capsys, "validate", path)
        assert code == 2
        assert rep["status"] == "error"

    def test_bad_label(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"mode": "distance", "rooms": ["1"], "edges": [
            {"from": "1", "to": "1", "label": "x^"}]}))
        assert run(capsys, "validate", path)[0] == 2

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, "validate", tmp_path / "nope.json")[0] == 2

    def test_size_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("CORRIDOR_DET_MAX_N", "3")
        code, rep = report(capsys, "det", fixture_path("exdi_graph.json"), "--algo", "laplace")
        assert code == 3

    def test_not_a_corridor(self, tmp_path, capsys):
        path = tmp_path / "u.json"
        path.write_text(json.dumps({"entrances": ["1", "3"], "label": "1/5"}))
        code, rep = report(capsys, "partition", fixture_path("expr_graph.json"), path)
        assert code == 1
        assert rep["status"] == "violation"

    def test_mode_mismatch(self, capsys):
        code, _ = run(capsys, "factor", fixture_path("expr_graph.json"), fixture_path("expr_corridor.json"),
                      "--theorem", "th2")
        assert code == 2

    def test_missing_input_file_argument(self, capsys):
        with pytest.raises(SystemExit):
            main(["factor", "--theorem", "th2"])
