import json

import pytest

from nodalic import bott, cli, points
from nodalic.points import ProjectivePointSet

SYMPLECTIC4 = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]

DEFECTIVE_DOC = {
    "dim": 4,
    "pairing": SYMPLECTIC4,
    "cycles": [[1, 0, 0, 0], [1, 0, 0, 0]],
    "h_ambient": 1,
}


def write_doc(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


class TestIcStalkCommand:
    def test_defective_document_json(self, tmp_path, capsys):
        path = write_doc(tmp_path, "monodromy.json", DEFECTIVE_DOC)
        assert cli.run(["ic-stalk", "--input", path, "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["h0"] == 3
        assert report["h1"] == 1
        assert report["defect"] == 1
        assert report["filtration"] == [1, 1]

    def test_text_output(self, tmp_path, capsys):
        path = write_doc(tmp_path, "monodromy.json", DEFECTIVE_DOC)
        assert cli.run(["ic-stalk", "--input", path]) == 0
        out = capsys.readouterr().out
        assert "h0: 3" in out
        assert "defect: 1" in out
        assert "graded 1 piece 1" in out

    def test_sign_choice_is_irrelevant(self, tmp_path, capsys):
        path = write_doc(tmp_path, "monodromy.json", DEFECTIVE_DOC)
        outputs = []
        for sign in ("-1", "1"):
            assert cli.run(["ic-stalk", "--input", path, "--sign", sign, "--json"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_skew_violation_exits_two(self, tmp_path, capsys):
        doc = dict(DEFECTIVE_DOC, pairing=[[1, 0], [0, 1]], dim=2, cycles=[[1, 0]])
        path = write_doc(tmp_path, "bad.json", doc)
        assert cli.run(["ic-stalk", "--input", path]) == 2
        assert "pairing not skew" in capsys.readouterr().err

    def test_zero_cycle_exits_two(self, tmp_path, capsys):
        doc = dict(DEFECTIVE_DOC, dim=2, pairing=[[0, 1], [-1, 0]], cycles=[[0, 0]])
        path = write_doc(tmp_path, "bad.json", doc)
        assert cli.run(["ic-stalk", "--input", path]) == 2
        assert "zero vanishing cycle unsupported" in capsys.readouterr().err

    def test_non_orthogonal_exits_two(self, tmp_path, capsys):
        doc = dict(
            DEFECTIVE_DOC, dim=2, pairing=[[0, 1], [-1, 0]],
            cycles=[[1, 0], [0, 1]],
        )
        path = write_doc(tmp_path, "bad.json", doc)
        assert cli.run(["ic-stalk", "--input", path]) == 2
        assert "not pairwise orthogonal" in capsys.readouterr().err


class TestPointsCommand:
    def test_grid25_degree_five(self, tmp_path, capsys):
        path = write_doc(tmp_path, "grid25.json", points.grid_nodes(2, 5).to_json())
        assert cli.run(["points", "--input", path, "--degree", "5", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["conditions"]["h1_ideal"] == 1
        assert report["conditions"]["rank"] == 15
        assert report["node_span_dim"] == 2

    def test_text_output(self, tmp_path, capsys):
        path = write_doc(tmp_path, "grid.json", points.grid_nodes(2, 4).to_json())
        assert cli.run(["points", "--input", path, "--degree", "4"]) == 0
        out = capsys.readouterr().out
        assert "independent: true" in out
        assert "h1_ideal: 0" in out

    def test_schema_violation_exits_one(self, tmp_path, capsys):
        path = write_doc(tmp_path, "bad.json", {"points": [[1, 0]]})
        assert cli.run(["points", "--input", path, "--degree", "1"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_duplicate_points_exit_one(self, tmp_path):
        doc = {"ambient_dim": 1, "points": [[1, 1], [2, 2]]}
        path = write_doc(tmp_path, "dup.json", doc)
        assert cli.run(["points", "--input", path, "--degree", "1"]) == 1

    def test_negative_degree_exits_one(self, tmp_path):
        path = write_doc(tmp_path, "grid.json", points.grid_nodes(1, 2).to_json())
        assert cli.run(["points", "--input", path, "--degree", "-1"]) == 1


class TestChaseCommands:
    def test_chase_resolution_document(self, tmp_path, capsys):
        doc = bott.koszul_resolution(2, [4, 4]).to_json()
        path = write_doc(tmp_path, "res.json", doc)
        assert cli.run(["chase", "--input", path, "--twist", "5", "--json"]) == 0
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["vanishes"] is False
        assert verdict["exact_h1"] == 1
        assert verdict["obstructions"] == [
            {"position": 2, "twist": -3, "value": 1}
        ]

    def test_koszul_vanishing_text(self, capsys):
        assert cli.run(["koszul", "--n", "2", "--degrees", "3,3", "--twist", "4"]) == 0
        assert "vanishes: true" in capsys.readouterr().out

    def test_koszul_without_twist_lists_terms(self, capsys):
        assert cli.run(["koszul", "--n", "3", "--degrees", "2,2,2"]) == 0
        out = capsys.readouterr().out
        assert "term 1: O(-2)^3" in out
        assert "term 3: O(-6)" in out

    def test_koszul_too_many_degrees_exits_one(self, capsys):
        assert cli.run(["koszul", "--n", "2", "--degrees", "2,2,2"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_bad_degrees_flag_exits_one(self):
        assert cli.run(["koszul", "--n", "2", "--degrees", "a,b"]) == 1
        assert cli.run(["koszul", "--n", "2", "--degrees", ""]) == 1

    def test_eagon_northcott_report(self, capsys):
        assert cli.run(
            ["eagon-northcott", "--n", "2", "--quadrics", "1", "--twist", "2", "--json"]
        ) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["node_count"] == 3
        assert report["resolution"]["terms"] == [
            [{"mult": 3, "twist": 1}],
            [{"mult": 2, "twist": 0}],
        ]
        assert report["verdict"]["vanishes"] is True

    def test_eagon_northcott_obstructed(self, capsys):
        assert cli.run(
            ["eagon-northcott", "--n", "2", "--quadrics", "3", "--twist", "2"]
        ) == 0
        out = capsys.readouterr().out
        assert "vanishes: false" in out
        assert "node count: 10" in out


class TestGridCommand:
    def test_round_trip_through_points(self, tmp_path, capsys):
        out_path = tmp_path / "grid.json"
        assert cli.run(["grid", "--n", "2", "--k", "4", "--out", str(out_path)]) == 0
        capsys.readouterr()
        assert cli.run(
            ["points", "--input", str(out_path), "--degree", "4", "--json"]
        ) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["conditions"]["independent"] is True

    def test_json_output_reparses(self, capsys):
        assert cli.run(["grid", "--n", "2", "--k", "3", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        pts = ProjectivePointSet.from_json(doc)
        assert pts.delta == 4

    def test_k_one_exits_one(self):
        assert cli.run(["grid", "--n", "2", "--k", "1"]) == 1


class TestPaperExamplesCommand:
    def test_small_sweep_passes(self, capsys):
        code = cli.run(
            [
                "paper-examples", "--max-n", "3", "--max-k", "5",
                "--max-h", "3", "--grid-cap", "100", "--json",
            ]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["all_match"] is True
        cells = {(c["n"], c["k"]): c for c in report["ci_table"]}
        defective = cells[(2, 5)]
        assert defective["chase_vanishes"] is False
        assert defective["exact_h1"] == 1
        assert defective["grid_h1"] == 1
        assert defective["consistent"] is True
        assert cells[(2, 4)]["chase_vanishes"] is True
        assert cells[(2, 4)]["grid_h1"] == 0
        en = {(c["n"], c["h"]): c for c in report["en_table"]}
        assert en[(2, 1)]["node_count"] == 3
        assert en[(2, 1)]["chase_vanishes"] is True
        assert en[(3, 3)]["chase_vanishes"] is False
        assert {"N": 9, "delta": 4, "expected_dim": 5} in report["severi_samples"]

    def test_grid_cap_skips_large_cells(self, capsys):
        assert cli.run(
            [
                "paper-examples", "--max-n", "3", "--max-k", "4",
                "--max-h", "1", "--grid-cap", "5", "--json",
            ]
        ) == 0
        report = json.loads(capsys.readouterr().out)
        cells = {(c["n"], c["k"]): c for c in report["ci_table"]}
        assert cells[(3, 4)]["grid_h1"] is None
        assert cells[(3, 4)]["consistent"] is None
        assert cells[(2, 3)]["grid_h1"] == 0

    def test_text_table(self, capsys):
        assert cli.run(
            ["paper-examples", "--max-n", "2", "--max-k", "3", "--max-h", "1",
             "--grid-cap", "10"]
        ) == 0
        out = capsys.readouterr().out
        assert "all asserted verdicts match: true" in out
        assert "chase_vanishes" in out

    def test_deviation_exits_two(self, capsys, monkeypatch):
        # break the asserted table on purpose: the sweep must notice
        monkeypatch.setattr(cli, "_EXPECTED_EN_MAX_H", 1)
        code = cli.run(
            ["paper-examples", "--max-n", "2", "--max-k", "2", "--max-h", "2",
             "--grid-cap", "0", "--json"]
        )
        assert code == 2
        report = json.loads(capsys.readouterr().out)
        assert report["all_match"] is False


class TestSurface:
    def test_missing_file_exits_one(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.json")
        assert cli.run(["ic-stalk", "--input", missing]) == 1
        assert "error:" in capsys.readouterr().err

    def test_invalid_json_exits_one(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert cli.run(["ic-stalk", "--input", str(path)]) == 1

    def test_unknown_subcommand_exits_one(self, capsys):
        assert cli.run(["frobnicate"]) == 1
        capsys.readouterr()

    def test_missing_required_flag_exits_one(self, capsys):
        assert cli.run(["points", "--degree", "1"]) == 1
        capsys.readouterr()

    def test_no_arguments_exits_one(self, capsys):
        assert cli.run([]) == 1
        capsys.readouterr()

    def test_out_flag_writes_stdout_json(self, tmp_path, capsys):
        out_path = tmp_path / "report.json"
        assert cli.run(
            ["koszul", "--n", "2", "--degrees", "3,3", "--twist", "4",
             "--json", "--out", str(out_path)]
        ) == 0
        stdout = capsys.readouterr().out
        assert out_path.read_text(encoding="utf-8") == stdout

    def test_unwritable_out_exits_one(self, tmp_path, capsys):
        target = str(tmp_path / "no" / "such" / "dir" / "x.json")
        assert cli.run(
            ["koszul", "--n", "2", "--degrees", "3,3", "--twist", "4",
             "--out", target]
        ) == 1
        capsys.readouterr()


class TestDeterminism:
    def test_byte_identical_reports(self, tmp_path, capsys):
        path = write_doc(tmp_path, "monodromy.json", DEFECTIVE_DOC)
        commands = [
            ["ic-stalk", "--input", path, "--json"],
            ["koszul", "--n", "2", "--degrees", "4,4", "--twist", "5", "--json"],
            ["grid", "--n", "2", "--k", "4", "--json"],
            ["paper-examples", "--max-n", "2", "--max-k", "4", "--max-h", "2",
             "--grid-cap", "16", "--json"],
        ]
        for argv in commands:
            runs = []
            for _ in range(2):
                assert cli.run(argv) == 0
                runs.append(capsys.readouterr().out)
            assert runs[0] == runs[1]
            assert json.loads(runs[0]) == json.loads(runs[1])
            assert runs[0].endswith("\n")

    def test_reports_reparse_to_same_record(self, capsys):
        assert cli.run(
            ["eagon-northcott", "--n", "3", "--quadrics", "2", "--twist", "2",
             "--json"]
        ) == 0
        text = capsys.readouterr().out
        assert json.loads(text) == json.loads(json.dumps(json.loads(text)))
