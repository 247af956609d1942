"""CLI surface: subcommands, exit codes, determinism, env overrides."""

import json
from pathlib import Path

import pytest

from knotdist import rectangle, serialize_vertices, torus_knot
from knotdist.cli import main


@pytest.fixture()
def square_file(tmp_path: Path) -> Path:
    path = tmp_path / "square.knot"
    path.write_text(serialize_vertices(rectangle(1, 1)), encoding="utf-8")
    return path


@pytest.fixture()
def rect14_file(tmp_path: Path) -> Path:
    path = tmp_path / "rect1x4.knot"
    path.write_text(serialize_vertices(rectangle(1, 4)), encoding="utf-8")
    return path


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_ok(self, capsys, square_file):
        code, out, _ = run(capsys, ["validate", str(square_file)])
        assert code == 0
        assert out.strip() == "ok"

    def test_violations_reported(self, capsys, tmp_path):
        bad = tmp_path / "bad.knot"
        bad.write_text("latticeknot v1\n0 0 0\n1 0 0\n0 0 0\n0 1 0\n", encoding="utf-8")
        code, _, err = run(capsys, ["validate", str(bad)])
        assert code == 1
        assert "not_embedded" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, ["validate", str(tmp_path / "nope.knot")])
        assert code == 1
        assert err


class TestCompute:
    def test_square_report(self, capsys, square_file):
        code, out, _ = run(capsys, ["compute", str(square_file)])
        assert code == 0
        doc = json.loads(out)
        assert doc["n_edges"] == 4
        assert doc["delta"] == {"num": 1, "den": 1, "decimal": "1.000000"}
        assert doc["gromov1"]["num"] == 2
        assert doc["certificate"]["verdict"] == "unknot_certified"
        assert "heatmap" not in doc

    def test_no_prune_byte_identical(self, capsys, square_file, rect14_file, tmp_path):
        trefoil_file = tmp_path / "t23.knot"
        trefoil_file.write_text(serialize_vertices(torus_knot(2, 3, 2)), encoding="utf-8")
        for path in (square_file, rect14_file, trefoil_file):
            _, fast, _ = run(capsys, ["compute", str(path)])
            _, slow, _ = run(capsys, ["compute", "--no-prune", str(path)])
            assert fast == slow

    def test_threads_byte_identical(self, capsys, rect14_file):
        _, one, _ = run(capsys, ["compute", "--threads", "1", str(rect14_file)])
        _, four, _ = run(capsys, ["compute", "--threads", "4", str(rect14_file)])
        assert one == four

    def test_env_threads_default(self, capsys, rect14_file, monkeypatch):
        monkeypatch.setenv("KNOTDIST_THREADS", "3")
        _, out, _ = run(capsys, ["compute", str(rect14_file)])
        monkeypatch.delenv("KNOTDIST_THREADS")
        _, base, _ = run(capsys, ["compute", str(rect14_file)])
        assert out == base

    def test_pretty_is_equivalent(self, capsys, square_file):
        _, compact, _ = run(capsys, ["compute", str(square_file)])
        _, pretty, _ = run(capsys, ["compute", "--pretty", str(square_file)])
        assert json.loads(compact) == json.loads(pretty)

    def test_with_heatmap(self, capsys, rect14_file):
        _, out, _ = run(capsys, ["compute", "--with-heatmap", str(rect14_file)])
        doc = json.loads(out)
        assert len(doc["heatmap"]) == 10
        best = max(r["num"] / r["den"] for r in doc["heatmap"])
        assert best == doc["delta"]["num"] / doc["delta"]["den"]

    def test_witnesses_sorted(self, capsys, tmp_path):
        path = tmp_path / "sq22.knot"
        path.write_text(serialize_vertices(rectangle(2, 2)), encoding="utf-8")
        _, out, _ = run(capsys, ["compute", str(path)])
        doc = json.loads(out)
        assert doc["witnesses"] == sorted(doc["witnesses"])
        assert [[0, 1, 0], [2, 1, 0]] in doc["witnesses"]


class TestGromov1:
    def test_square(self, capsys, square_file):
        code, out, _ = run(capsys, ["gromov1", str(square_file)])
        assert code == 0
        doc = json.loads(out)
        assert doc["gromov1"] == {"num": 2, "den": 1, "decimal": "2.000000"}
        assert [[0, 0.5, 0], [1, 0.5, 0]] in doc["witnesses"]


class TestCertify:
    def test_square_certified(self, capsys, square_file):
        code, out, _ = run(capsys, ["certify", str(square_file)])
        assert code == 0
        assert out.startswith("unknot_certified")

    def test_rect14_inconclusive(self, capsys, rect14_file):
        code, out, _ = run(capsys, ["certify", str(rect14_file)])
        assert code == 0
        assert out.startswith("inconclusive")


class TestScaleGenerate:
    def test_scale_roundtrip(self, capsys, square_file, tmp_path):
        out_path = tmp_path / "sq2.knot"
        code, _, _ = run(
            capsys, ["scale", str(square_file), "--factor", "2", "-o", str(out_path)]
        )
        assert code == 0
        _, out, _ = run(capsys, ["compute", str(out_path)])
        assert json.loads(out)["n_edges"] == 8

    def test_scale_bad_factor(self, capsys, square_file):
        code, _, err = run(capsys, ["scale", str(square_file), "--factor", "0"])
        assert code == 1
        assert err

    def test_generate_rectangle_stdout(self, capsys):
        code, out, _ = run(capsys, ["generate", "--kind", "rectangle", "--m", "1", "--n", "1"])
        assert code == 0
        assert out == serialize_vertices(rectangle(1, 1))

    def test_generate_random_moves_form(self, capsys, tmp_path):
        out_path = tmp_path / "rand.knot"
        code, _, _ = run(
            capsys,
            ["generate", "--kind", "random", "--length", "12", "--seed", "5",
             "-o", str(out_path), "--form", "moves"],
        )
        assert code == 0
        text = out_path.read_text(encoding="utf-8")
        assert text.startswith("latticeknot v1\nmoves: ")
        _, out, _ = run(capsys, ["compute", str(out_path)])
        assert json.loads(out)["n_edges"] == 12

    def test_generate_bad_params(self, capsys):
        code, _, err = run(capsys, ["generate", "--kind", "torus", "--p", "2", "--q", "4"])
        assert code == 1
        assert "coprime" in err


class TestHeatmapCommand:
    def test_csv_matches_report(self, capsys, rect14_file, tmp_path):
        csv_path = tmp_path / "rows.csv"
        code, _, _ = run(capsys, ["heatmap", str(rect14_file), "--csv", str(csv_path)])
        assert code == 0
        lines = csv_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "index,x,y,z,value_num,value_den,value_decimal"
        assert len(lines) == 11
        values = [tuple(map(int, row.split(",")[4:6])) for row in lines[1:]]
        _, out, _ = run(capsys, ["compute", str(rect14_file)])
        doc = json.loads(out)
        best = max(values, key=lambda nd: nd[0] / nd[1])
        assert best[0] * doc["delta"]["den"] == doc["delta"]["num"] * best[1]


class TestEnumerate:
    def test_jsonl_output(self, capsys):
        code, out, _ = run(capsys, ["enumerate", "--max-edges", "6"])
        assert code == 0
        docs = [json.loads(line) for line in out.splitlines()]
        assert len(docs) == 4
        assert {d["n_edges"] for d in docs} == {4, 6}
        deltas = {(d["delta"]["num"], d["delta"]["den"]) for d in docs}
        assert (1, 1) in deltas


class TestErrors:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, ["frobnicate"])
        assert code == 1
        assert err

    def test_syntax_error_exit_one(self, capsys, tmp_path):
        bad = tmp_path / "syntax.knot"
        bad.write_text("latticeknot v1\n0 0\n", encoding="utf-8")
        code, _, err = run(capsys, ["compute", str(bad)])
        assert code == 1
        assert "line" in err

    def test_overflow_exit_two(self, capsys, tmp_path):
        # validates as-is but cannot be doubled within 64-bit coordinates
        big = 3 * 2**60
        lines = ["latticeknot v1"] + [
            f"{big + x} {y} 0" for x, y in [(0, 0), (1, 0), (1, 1), (0, 1)]
        ]
        path = tmp_path / "huge.knot"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        assert run(capsys, ["validate", str(path)])[0] == 0
        code, _, err = run(capsys, ["compute", str(path)])
        assert code == 2
        assert "64-bit" in err
