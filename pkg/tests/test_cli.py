import json

import pytest

from bibound.cli import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_LIMIT,
    EXIT_OK,
    EXIT_VERIFY,
    EXPERIMENT_COLUMNS,
    format_coloring,
    main,
    parse_coloring,
)
from bibound.graphs import Coloring, ParseError

C4 = "n 4\n0 1\n1 2\n2 3\n0 3\n"
K33 = "n 6\n" + "".join(f"{i} {j}\n" for i in range(3) for j in range(3, 6))


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.txt"
    p.write_text(C4)
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def json_out(out):
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    return doc


class TestColoringFormat:
    def test_round_trip(self):
        col = Coloring(5, (0, 4, 2))
        assert parse_coloring(format_coloring(col)) == col

    def test_exact_bytes(self):
        assert format_coloring(Coloring(3, (0, 1))) == "s 3\n0 0\n1 1\n"

    def test_comments_and_blanks(self):
        text = "# hi\n\ns 4\n0 1  # vertex zero\n1 0\n"
        assert parse_coloring(text) == Coloring(4, (1, 0))

    def test_header_required_first(self):
        with pytest.raises(ParseError, match="header"):
            parse_coloring("0 1\ns 4\n")

    def test_vertex_colored_twice(self):
        with pytest.raises(ParseError, match="twice"):
            parse_coloring("s 4\n0 1\n0 2\n")

    def test_missing_vertex(self):
        with pytest.raises(ParseError, match="vertex 1"):
            parse_coloring("s 4\n0 1\n2 0\n")

    def test_malformed_line(self):
        with pytest.raises(ParseError, match="malformed"):
            parse_coloring("s 4\n0 1 2\n")


class TestColor:
    def test_success(self, capsys, tmp_path, c4_file):
        out_path = tmp_path / "col.txt"
        code, out = run(
            capsys,
            ["color", c4_file, "-m", "2", "--colors", "8", "-o", str(out_path)],
        )
        assert code == EXIT_OK
        doc = json_out(out)
        assert doc["command"] == "color"
        assert doc["inputs"]["palette"] == 8
        assert doc["results"]["success"] is True
        col = parse_coloring(out_path.read_text())
        assert len(col.assignment) == 4

        code, _ = run(capsys, ["verify", c4_file, str(out_path), "-m", "2"])
        assert code == EXIT_OK

    def test_constant_drives_palette(self, capsys, tmp_path, c4_file):
        out_path = tmp_path / "col.txt"
        code, out = run(
            capsys,
            ["color", c4_file, "-m", "2", "--constant", "16", "-o", str(out_path)],
        )
        assert code == EXIT_OK
        assert json_out(out)["inputs"]["palette"] == 46

    def test_budget_exhausted(self, capsys, tmp_path, c4_file):
        out_path = tmp_path / "col.txt"
        code, out = run(
            capsys,
            [
                "color", c4_file, "-m", "2", "--colors", "3",
                "--mode", "faithful", "--max-rounds", "50",
                "-o", str(out_path),
            ],
        )
        assert code == EXIT_BUDGET
        assert json_out(out)["results"]["success"] is False
        assert not out_path.exists()

    def test_missing_input(self, capsys, tmp_path):
        code, _ = run(
            capsys,
            ["color", str(tmp_path / "nope.txt"), "-m", "1", "--colors", "4",
             "-o", str(tmp_path / "c.txt")],
        )
        assert code == EXIT_INPUT

    def test_missing_required_flag(self, capsys, c4_file, tmp_path):
        code, _ = run(capsys, ["color", c4_file, "-m", "2"])
        assert code == EXIT_INPUT

    def test_deterministic(self, capsys, tmp_path, c4_file):
        argv = ["color", c4_file, "-m", "2", "--colors", "8",
                "-o", str(tmp_path / "col.txt")]
        _, first = run(capsys, argv)
        bytes_first = (tmp_path / "col.txt").read_bytes()
        _, second = run(capsys, argv)
        assert first == second
        assert (tmp_path / "col.txt").read_bytes() == bytes_first


class TestVerify:
    def test_violation_reported(self, capsys, tmp_path, c4_file):
        bad = tmp_path / "bad.txt"
        bad.write_text("s 2\n0 0\n1 1\n2 0\n3 1\n")  # whole C4 bicolored
        code, out = run(capsys, ["verify", c4_file, str(bad), "-m", "2"])
        assert code == EXIT_VERIFY
        doc = json_out(out)
        assert doc["results"]["ok"] is False
        assert doc["results"]["proper"] is True
        assert doc["results"]["m_bounded"] is False
        assert doc["results"]["worst"] is not None

    def test_structure_check_fails(self, capsys, tmp_path):
        g = tmp_path / "k33.txt"
        g.write_text(K33)
        col = tmp_path / "col.txt"
        col.write_text("s 2\n0 0\n1 0\n2 0\n3 1\n4 1\n5 1\n")
        code, out = run(capsys, ["verify", str(g), str(col), "--check", "planar"])
        assert code == EXIT_VERIFY
        results = json_out(out)["results"]
        assert results["structural"]["planar"][0] is False
        assert results["proper"] is True

    def test_length_mismatch(self, capsys, tmp_path, c4_file):
        short = tmp_path / "short.txt"
        short.write_text("s 4\n0 0\n1 1\n")
        code, _ = run(capsys, ["verify", c4_file, str(short), "-m", "1"])
        assert code == EXIT_INPUT


class TestCertify:
    def test_pass_and_fail(self, capsys, c4_file):
        code, out = run(capsys, ["certify", "--graph", c4_file, "-m", "2", "-s", "64"])
        assert code == EXIT_OK
        doc = json_out(out)
        assert doc["results"]["verdict"] is True
        fams = doc["results"]["families"]
        assert fams["edge"]["events"] == 4
        assert fams["tuple:2"]["events"] == 2

        code, out = run(capsys, ["certify", "--graph", c4_file, "-m", "2", "-s", "45"])
        assert code == EXIT_VERIFY
        assert json_out(out)["results"]["verdict"] is False

    def test_size_limit(self, capsys, tmp_path):
        big = tmp_path / "big.txt"
        big.write_text("n 31\n" + "".join(f"{i} {i + 1}\n" for i in range(30)))
        code, _ = run(capsys, ["certify", "--graph", str(big), "-m", "2", "-s", "10"])
        assert code == EXIT_LIMIT


class TestOracle:
    def test_c4(self, capsys, c4_file):
        code, out = run(capsys, ["oracle", c4_file, "-m", "2"])
        assert code == EXIT_OK
        assert json_out(out)["results"]["min_colors"] == 3


class TestClaims:
    def test_single(self, capsys):
        code, out = run(capsys, ["claims", "k5_splits_have_triangle"])
        assert code == EXIT_OK
        row = json_out(out)["results"]["k5_splits_have_triangle"]
        assert row["verdict"] is True
        assert row["classes_enumerated"] == 21
        assert "seconds" not in row

    def test_unknown(self, capsys):
        code, _ = run(capsys, ["claims", "nonsense"])
        assert code == EXIT_INPUT

    def test_all_deterministic(self, capsys):
        code, first = run(capsys, ["claims", "all"])
        assert code == EXIT_OK
        assert len(json.loads(first)["results"]) == 5
        _, second = run(capsys, ["claims", "all"])
        assert first == second


class TestExperiment:
    def test_csv_contract(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        argv = [
            "experiment", "-m", "1", "--delta", "2", "--constant", "4",
            "--trials", "3", "-o", str(out_path),
        ]
        code, out = run(capsys, argv)
        assert code == EXIT_OK
        lines = out_path.read_text().splitlines()
        assert lines[0] == ",".join(EXPERIMENT_COLUMNS)
        assert len(lines) == 2
        row = dict(zip(EXPERIMENT_COLUMNS, lines[1].split(",")))
        assert row["trials"] == "3"
        assert row["mode"] == "violation_driven"
        assert int(row["successes"]) <= 3
        assert json_out(out)["results"]["rows"] == 1

        first = out_path.read_bytes()
        run(capsys, argv)
        assert out_path.read_bytes() == first

    def test_grid_of_rows(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        code, _ = run(
            capsys,
            ["experiment", "-m", "1", "--delta", "1", "2", "--constant", "2", "4",
             "--trials", "1", "-o", str(out_path)],
        )
        assert code == EXIT_OK
        assert len(out_path.read_text().splitlines()) == 5

    def test_zero_trials(self, capsys, tmp_path):
        code, _ = run(
            capsys,
            ["experiment", "-m", "1", "--delta", "2", "--constant", "4",
             "--trials", "0", "-o", str(tmp_path / "x.csv")],
        )
        assert code == EXIT_INPUT
