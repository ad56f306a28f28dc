"""CLI surface: schemas, outputs, exit codes, determinism."""

import json

import pytest

from entroset import cli, jsonio

UNIFORM2 = {"support": [[0], [1]], "probs": ["1/2", "1/2"]}
SIXTHS = {"support": [[1], [2], [3]], "probs": ["1/6", "1/3", "1/2"]}
MOD2_MAP = {"table": [[[1], [1]], [[2], [0]], [[3], [1]], [[4], [0]]]}
TRIANGLE_SET = {"dimension": 2, "points": [[0, 0], [0, 1], [1, 0]]}
TRIANGLE_COVER = {"n": 3, "members": [[1, 2], [1, 3], [2, 3]], "weights": ["1/2", "1/2", "1/2"]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def invoke(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestRoundTrip:
    def test_dist(self):
        assert jsonio.dist_to_json(jsonio.dist_from_json(SIXTHS)) == SIXTHS

    def test_map(self):
        doc = jsonio.map_to_json(jsonio.map_from_json(MOD2_MAP))
        assert doc == {"table": sorted(MOD2_MAP["table"])}

    def test_pointset(self):
        assert jsonio.pointset_to_json(jsonio.pointset_from_json(TRIANGLE_SET)) == TRIANGLE_SET

    def test_cover(self):
        assert jsonio.cover_to_json(jsonio.cover_from_json(TRIANGLE_COVER)) == TRIANGLE_COVER

    def test_decimal_strings_rejected(self):
        with pytest.raises(Exception):
            jsonio.parse_rational("0.5")


class TestBasicCommands:
    def test_entropy(self, tmp_path, capsys):
        path = write(tmp_path, "d.json", UNIFORM2)
        code, out, _ = invoke(capsys, ["entropy", "--dist", path])
        assert code == 0
        assert json.loads(out) == {"entropy": 1.0}

    def test_ruzsa_size(self, tmp_path, capsys):
        path = write(tmp_path, "d.json", UNIFORM2)
        code, out, _ = invoke(capsys, ["ruzsa", "size", "--dist", path, "--k", "4"])
        assert code == 0
        assert json.loads(out) == {"size": "6"}

    def test_cover_min(self, tmp_path, capsys):
        path = write(tmp_path, "c.json", {"n": 3, "members": [[1, 2], [1, 3], [2, 3]]})
        code, out, _ = invoke(capsys, ["cover", "min", "--cover", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["objective"] == "3/2"
        assert doc["weights"] == ["1/2", "1/2", "1/2"]

    def test_pushforward(self, tmp_path, capsys):
        dist = write(tmp_path, "d.json", {"support": [[1], [2], [3], [4]], "probs": ["1/4"] * 4})
        fmap = write(tmp_path, "f.json", MOD2_MAP)
        code, out, _ = invoke(capsys, ["pushforward", "--map", fmap, "--dist", dist])
        assert code == 0
        doc = json.loads(out)
        assert doc["probs"] == ["1/2", "1/2"]

    def test_suitable(self, tmp_path, capsys):
        path = write(tmp_path, "d.json", SIXTHS)
        code, out, _ = invoke(capsys, ["suitable", "--dist", path, "--k", "9"])
        assert code == 0
        assert json.loads(out) == {"minimal_suitable_k": 6, "k": 9, "is_suitable": False}

    def test_rationalize(self, capsys):
        code, out, _ = invoke(
            capsys, ["rationalize", "--weights", "0.4999,0.5001", "--max-denominator", "2"]
        )
        assert code == 0
        assert json.loads(out)["probs"] == ["1/2", "1/2"]

    def test_project(self, tmp_path, capsys):
        path = write(tmp_path, "a.json", TRIANGLE_SET)
        code, out, _ = invoke(capsys, ["project", "--pointset", path, "--indices", "1"])
        assert code == 0
        assert json.loads(out) == {"dimension": 1, "points": [[0], [1]]}

    def test_condsize(self, tmp_path, capsys):
        path = write(tmp_path, "a.json", TRIANGLE_SET)
        code, out, _ = invoke(capsys, ["condsize", "--pointset", path, "--t", "2", "--s", "1"])
        assert code == 0
        assert json.loads(out)["size"] == pytest.approx(2 ** (2 / 3), rel=1e-12)

    def test_condentropy(self, tmp_path, capsys):
        dist = write(
            tmp_path, "x.json",
            {"support": [[0, 0], [0, 1], [1, 0]], "probs": ["1/3", "1/3", "1/3"]},
        )
        code, out, _ = invoke(capsys, ["condentropy", "--dist", dist, "--s", "2", "--c", "1"])
        assert code == 0
        assert json.loads(out)["entropy"] == pytest.approx(2 / 3, abs=1e-12)

    def test_ruzsa_lift(self, tmp_path, capsys):
        dist = write(tmp_path, "d.json", {"support": [[1], [2], [3], [4]], "probs": ["1/4"] * 4})
        fmap = write(tmp_path, "f.json", MOD2_MAP)
        code, out, _ = invoke(
            capsys,
            ["ruzsa", "lift", "--dist", dist, "--k", "4", "--map", fmap,
             "--y", "[[0],[0],[1],[1]]"],
        )
        assert code == 0
        assert json.loads(out) == {"vector": [[2], [4], [1], [3]]}

    def test_ruzsa_enum_and_converge(self, tmp_path, capsys):
        dist = write(tmp_path, "d.json", {"support": [[0], [1]], "probs": ["1/3", "2/3"]})
        code, out, _ = invoke(capsys, ["ruzsa", "enum", "--dist", dist, "--k", "3"])
        assert code == 0
        assert json.loads(out)["count"] == 3
        code, out, _ = invoke(capsys, ["ruzsa", "converge", "--dist", dist, "--ks", "3,6,12"])
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [row["k"] for row in rows] == [3, 6, 12]

    def test_witness_lemma2(self, tmp_path, capsys):
        pts = write(tmp_path, "a.json", {"dimension": 1, "points": [[1], [2], [3]]})
        fmap = write(tmp_path, "f.json", {"table": [[[1], [0]], [[2], [0]], [[3], [1]]]})
        code, out, _ = invoke(capsys, ["witness", "lemma2", "--map", fmap, "--points", pts])
        assert code == 0
        assert json.loads(out) == {"support": [[1], [3]], "probs": ["1/2", "1/2"]}


class TestCheckCommands:
    def test_shearer_sets(self, tmp_path, capsys):
        cover = write(tmp_path, "c.json", {"n": 3, "members": [[1, 2], [1, 3], [2, 3]]})
        pts = write(
            tmp_path, "a.json",
            {"dimension": 3, "points": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]},
        )
        code, out, _ = invoke(
            capsys,
            ["check", "shearer", "--cover", cover, "--input", pts, "--k", "2", "--side", "sets"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "holds"
        assert doc["lhs_count"] == "16"

    def test_projection_entropy_chain(self, tmp_path, capsys):
        cover = write(tmp_path, "c.json", {"n": 2, "members": [[1], [2]], "weights": ["1", "1"]})
        dist = write(
            tmp_path, "x.json",
            {"support": [[0, 0], [0, 1], [1, 0]], "probs": ["1/3", "1/3", "1/3"]},
        )
        code, out, _ = invoke(
            capsys,
            ["check", "projection", "--cover", cover, "--input", dist, "--side", "entropy"],
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "holds"

    def test_violated_exit_code(self, tmp_path, capsys):
        # identity lhs against one lossy projection: strictly violated
        spec = write(
            tmp_path, "s.json",
            {
                "lhs_map": {"table": [[[a, b], [a, b]] for a in range(2) for b in range(2)]},
                "rhs_maps": [{"table": [[[a, b], [a]] for a in range(2) for b in range(2)]}],
                "coefficients": ["1"],
            },
        )
        pts = write(tmp_path, "a.json", {"dimension": 2, "points": [[0, 0], [0, 1], [1, 0], [1, 1]]})
        code, out, _ = invoke(capsys, ["check", "cardinality", "--spec", spec, "--input", pts])
        assert code == 1
        assert json.loads(out)["verdict"] == "violated"

    def test_schema_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = invoke(capsys, ["entropy", "--dist", str(bad)])
        assert code == 2
        assert "error:" in err

    def test_infeasible_cover_exit_code(self, tmp_path, capsys):
        cover = write(tmp_path, "c.json", {"n": 3, "members": [[1, 2]]})
        code, _, err = invoke(capsys, ["cover", "min", "--cover", cover])
        assert code == 2

    def test_cover_check_uniform(self, tmp_path, capsys):
        cover = write(tmp_path, "c.json", {"n": 3, "members": [[1, 2], [1, 3], [2, 3]]})
        code, out, _ = invoke(capsys, ["cover", "check", "--cover", cover, "--k", "2"])
        assert code == 0
        assert json.loads(out)["verdict"] == "uniform"

    def test_check_lemma1(self, tmp_path, capsys):
        spec = write(
            tmp_path, "s.json",
            {
                "lhs_map": {"table": [[[a, b], [a, b]] for a in range(2) for b in range(2)]},
                "rhs_maps": [
                    {"table": [[[a, b], [a]] for a in range(2) for b in range(2)]},
                    {"table": [[[a, b], [b]] for a in range(2) for b in range(2)]},
                ],
                "coefficients": ["1", "1"],
            },
        )
        dist = write(
            tmp_path, "x.json",
            {"support": [[0, 0], [0, 1], [1, 0]], "probs": ["1/3", "1/3", "1/3"]},
        )
        code, out, _ = invoke(
            capsys, ["check", "lemma1", "--spec", spec, "--input", dist, "--kmax", "9"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "holds"
        assert [row["k"] for row in doc["rows"]] == [3, 6, 9]


class TestDeterminism:
    def test_demo_holds_and_is_deterministic(self, capsys):
        code1, out1, _ = invoke(capsys, ["--seed", "7", "demo"])
        code2, out2, _ = invoke(capsys, ["--seed", "7", "demo"])
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["all_hold"] is True

    def test_different_seeds_differ(self, capsys):
        _, out1, _ = invoke(capsys, ["--seed", "1", "demo"])
        _, out2, _ = invoke(capsys, ["--seed", "2", "demo"])
        assert json.loads(out1)["points"] != json.loads(out2)["points"]

    def test_table_format(self, tmp_path, capsys):
        path = write(tmp_path, "d.json", UNIFORM2)
        code, out, _ = invoke(capsys, ["--format", "table", "entropy", "--dist", path])
        assert code == 0
        assert out.strip() == "entropy: 1.0"
