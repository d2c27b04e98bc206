import json

from helpers import FIXTURES, expected_cases, load_fixture, space_of
from ultratree import (
    build_ultrametric,
    labeled_tree_from_dict,
    space_from_dict,
    space_to_dict,
)
from ultratree.cli import run

FIG1_PATH = str(FIXTURES / "fig1-path.json")
FIG1_SPACE = str(FIXTURES / "fig1-space.json")
STAR = str(FIXTURES / "star.json")
DOUBLE_STAR = str(FIXTURES / "double-star.json")

FIG1_CSV = (
    ",v1,v2,v3,v4,v5\n"
    "v1,0,2,3,3,3\n"
    "v2,2,0,3,3,3\n"
    "v3,3,3,0,3,3\n"
    "v4,3,3,3,0,2\n"
    "v5,3,3,3,2,0\n"
)


def star_space_file(tmp_path):
    space = build_ultrametric(labeled_tree_from_dict(load_fixture("star.json")))
    path = tmp_path / "star-space.json"
    path.write_text(json.dumps(space_to_dict(space)))
    return str(path), space


class TestDistance:
    def test_csv_output(self, capsys):
        assert run(["distance", FIG1_PATH]) == 0
        assert capsys.readouterr().out == FIG1_CSV

    def test_json_sidecar(self, capsys, tmp_path):
        out = tmp_path / "space.json"
        assert run(["distance", FIG1_PATH, "--json", str(out)]) == 0
        capsys.readouterr()
        written = space_from_dict(json.loads(out.read_text()))
        assert written == space_from_dict(load_fixture("fig1-space.json"))

    def test_degenerate_labeling(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(
            json.dumps(
                {
                    "vertices": ["a", "b"],
                    "edges": [["a", "b"]],
                    "labels": {"a": "0", "b": "0"},
                }
            )
        )
        assert run(["distance", str(bad)]) == 1
        assert "error[degenerate-labeling]" in capsys.readouterr().err


class TestCheckUS:
    def test_negative_answer(self, capsys):
        assert run(["check-us", FIG1_SPACE]) == 2
        assert capsys.readouterr().out == "NOT-US\n"

    def test_positive_answer(self, capsys, tmp_path):
        path, _ = star_space_file(tmp_path)
        out = tmp_path / "witness.json"
        assert run(["check-us", path, "--json", str(out)]) == 0
        assert capsys.readouterr().out == "c\n"
        assert json.loads(out.read_text()) == {"witness": "c"}

    def test_not_us_json(self, capsys, tmp_path):
        out = tmp_path / "witness.json"
        assert run(["check-us", FIG1_SPACE, "--json", str(out)]) == 2
        capsys.readouterr()
        assert json.loads(out.read_text()) == {"witness": None}


class TestRealize:
    def test_round_trip_through_distance(self, capsys, tmp_path):
        path, space = star_space_file(tmp_path)
        assert run(["realize", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        realized = tmp_path / "realized.json"
        realized.write_text(json.dumps(payload))
        assert run(["distance", str(realized), "--json", str(tmp_path / "back.json")]) == 0
        capsys.readouterr()
        back = space_from_dict(json.loads((tmp_path / "back.json").read_text()))
        assert back == space

    def test_star_shape(self, capsys, tmp_path):
        path, space = star_space_file(tmp_path)
        assert run(["realize", path]) == 0
        lt = labeled_tree_from_dict(json.loads(capsys.readouterr().out))
        assert all("c" in edge for edge in lt.tree.edges)
        assert build_ultrametric(lt) == space

    def test_refuses_two_level_space(self, capsys):
        assert run(["realize", FIG1_SPACE]) == 2
        assert "error[not-us]" in capsys.readouterr().err


class TestClassify:
    def test_tags(self, capsys):
        assert run(["classify", FIG1_PATH]) == 0
        assert capsys.readouterr().out == "Other\n"
        assert run(["classify", STAR]) == 0
        assert capsys.readouterr().out == "Star\n"
        assert run(["classify", DOUBLE_STAR]) == 0
        assert capsys.readouterr().out == "DoubleStar\n"

    def test_json_centers(self, capsys, tmp_path):
        out = tmp_path / "class.json"
        assert run(["classify", DOUBLE_STAR, "--json", str(out)]) == 0
        capsys.readouterr()
        assert json.loads(out.read_text()) == {
            "tag": "DoubleStar",
            "centers": ["b", "c"],
        }


class TestIsometric:
    def test_self(self, capsys):
        assert run(["isometric", FIG1_SPACE, FIG1_SPACE]) == 0
        assert capsys.readouterr().out == "true\n"

    def test_different(self, capsys, tmp_path):
        path, _ = star_space_file(tmp_path)
        out = tmp_path / "iso.json"
        assert run(["isometric", FIG1_SPACE, path, "--json", str(out)]) == 2
        assert capsys.readouterr().out == "false\n"
        assert json.loads(out.read_text()) == {"isometric": False}

    def test_renamed_copy(self, capsys, tmp_path):
        space = space_from_dict(load_fixture("fig1-space.json"))
        renamed = space_of(
            ("a", "b", "c", "d", "e"), space.dist
        )
        other = tmp_path / "renamed.json"
        other.write_text(json.dumps(space_to_dict(renamed)))
        assert run(["isometric", FIG1_SPACE, str(other)]) == 0
        assert capsys.readouterr().out == "true\n"


class TestCounterexample:
    def test_labels_long_path(self, capsys):
        assert run(["counterexample", FIG1_PATH]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["labels"] == {
            "v1": "2", "v2": "2", "v3": "3", "v4": "2", "v5": "2",
        }

    def test_short_tree(self, capsys):
        assert run(["counterexample", STAR]) == 2
        assert "error[no-long-path]" in capsys.readouterr().err


class TestVerifyCommand:
    def test_main_summary(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        assert run(
            ["verify", "--theorem", "main", "--max-order", "3", "--json", str(out)]
        ) == 0
        text = capsys.readouterr().out
        assert "theorem: main" in text
        assert "status: PASS (0 failures)" in text
        assert "subcheck [exhaustive]" in text
        assert "subcheck [sampled]" in text
        assert "subcheck [certified]" in text
        report = json.loads(out.read_text())
        assert report["status"] == "pass"
        assert report["cases_checked"] == expected_cases("main", 3, 3)

    def test_lemmas_ignores_values(self, capsys):
        assert run(["verify", "--theorem", "lemmas", "--max-order", "4"]) == 0
        text = capsys.readouterr().out
        assert "values: -" in text
        assert "cases checked: 21" in text

    def test_jobs_flag(self, capsys):
        assert run(
            ["verify", "--theorem", "lemmas", "--max-order", "5", "--jobs", "2"]
        ) == 0
        assert "status: PASS" in capsys.readouterr().out

    def test_custom_values(self, capsys):
        assert run(
            ["verify", "--theorem", "nondeg", "--max-order", "2", "--values", "0,1/2"]
        ) == 0
        text = capsys.readouterr().out
        assert "values: 0,1/2" in text
        assert "cases checked: 6" in text

    def test_budget_refusal(self, capsys):
        assert run(["verify", "--theorem", "nondeg", "--max-order", "7"]) == 1
        assert "error[budget-exceeded]" in capsys.readouterr().err

    def test_budget_raise_notes(self, capsys):
        assert run(
            [
                "verify", "--theorem", "nondeg", "--max-order", "2",
                "--values", "0,1", "--budget", "3000000",
            ]
        ) == 0
        assert "budget raised" in capsys.readouterr().err

    def test_empty_values_usage_error(self, capsys):
        assert run(["verify", "--theorem", "main", "--values", ","]) == 1
        assert "error[usage]" in capsys.readouterr().err

    def test_bad_value_string(self, capsys):
        assert run(["verify", "--theorem", "main", "--values", "0,0.5"]) == 1
        assert "error[parse-error]" in capsys.readouterr().err


class TestUsageAndIO:
    def test_no_arguments(self, capsys):
        assert run([]) == 1
        capsys.readouterr()

    def test_help(self, capsys):
        assert run(["--help"]) == 0
        assert "ultrametric" in capsys.readouterr().out.lower()

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 1
        capsys.readouterr()

    def test_unknown_flag(self, capsys):
        assert run(["classify", FIG1_PATH, "--wat"]) == 1
        capsys.readouterr()

    def test_missing_file(self, capsys):
        assert run(["classify", "/nonexistent/tree.json"]) == 1
        assert "error[io]" in capsys.readouterr().err

    def test_unreadable_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert run(["classify", str(bad)]) == 1
        assert "error[parse-error]" in capsys.readouterr().err

    def test_wrong_document_shape(self, capsys, tmp_path):
        bad = tmp_path / "list.json"
        bad.write_text("[1, 2, 3]")
        assert run(["classify", str(bad)]) == 1
        assert "error[parse-error]" in capsys.readouterr().err

    def test_invalid_tree_document(self, capsys, tmp_path):
        bad = tmp_path / "forest.json"
        bad.write_text(
            json.dumps({"vertices": ["a", "b", "c"], "edges": [["a", "b"]]})
        )
        assert run(["classify", str(bad)]) == 1
        assert "error[not-connected]" in capsys.readouterr().err

    def test_invalid_space_document(self, capsys, tmp_path):
        bad = tmp_path / "space.json"
        bad.write_text(
            json.dumps(
                {
                    "points": ["x", "y", "z"],
                    "dist": [
                        ["0", "3", "1"],
                        ["3", "0", "1"],
                        ["1", "1", "0"],
                    ],
                }
            )
        )
        assert run(["check-us", str(bad)]) == 1
        assert "error[strong-triangle-violation]" in capsys.readouterr().err
