import json
import subprocess
import sys

import pytest

from alibi_query.cli import main
from strategies import write_csv

FIGURE_ROWS = [("a", 0, 0, 0, 1.9), ("a", 2, 0, 2, 1.9), ("b", 0, 3, 0, 1.9), ("b", 2, 3, 2, 1.9)]
FIGURE_BEADS = ["0", "0", "0", "2", "0", "2", "1.9", "0", "3", "0", "2", "3", "2", "1.9"]


@pytest.fixture
def figure_db(tmp_path):
    p = tmp_path / "db.csv"
    write_csv(p, FIGURE_ROWS)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestLoadCheck:
    def test_text(self, capsys, figure_db):
        code, out, _ = run(capsys, "load-check", figure_db)
        assert code == 0 and out.startswith("ok: 4 samples, 2 labels")

    def test_json(self, capsys, figure_db):
        code, out, _ = run(capsys, "load-check", figure_db, "--json")
        assert json.loads(out)["labels"]["a"] == {"samples": 2, "t_start": 0.0, "t_end": 2.0}

    def test_bad_file(self, capsys, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("label,t,x,y,v\na,0,0,0,1\na,0,0,0,1\n")
        code, _, err = run(capsys, "load-check", str(p))
        assert code == 1 and "line 3" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "load-check", str(tmp_path / "nope.csv"))
        assert code == 1 and err.startswith("error:")


class TestAlibi:
    def test_text(self, capsys, figure_db):
        code, out, _ = run(capsys, "alibi", figure_db, "a", "b")
        assert code == 0 and "no alibi" in out and "case II" in out

    def test_json(self, capsys, figure_db):
        code, out, _ = run(capsys, "alibi", figure_db, "a", "b", "--json", "--exhaustive", "--naive")
        report = json.loads(out)
        assert report["verdict"] == {"alibi": False}
        assert report["pairs_pruned"] == 0

    def test_unknown_label(self, capsys, figure_db):
        code, _, err = run(capsys, "alibi", figure_db, "a", "q")
        assert code == 1 and "unknown label" in err

    def test_alibi_at(self, capsys, figure_db):
        code, out, _ = run(capsys, "alibi-at", figure_db, "a", "b", "1", "--json")
        assert code == 0 and json.loads(out)["verdict"]["met_possible"] is True
        code, out, _ = run(capsys, "alibi-at", figure_db, "a", "b", "5")
        assert code == 0 and out.rstrip().endswith("alibi")


class TestBead:
    def test_counterexample(self, capsys):
        code, out, _ = run(capsys, "bead", *FIGURE_BEADS, "--json")
        res = json.loads(out)
        assert code == 0 and res["intersects"] and res["case"] == "II"
        assert len(res["witness"]) == 3

    def test_text_disjoint(self, capsys):
        code, out, _ = run(capsys, "bead", "0", "0", "0", "1", "0", "0", "1", "5", "0", "0", "6", "0", "0", "1")
        assert code == 0 and out.startswith("intersects: false (case none)")

    def test_wrong_arity(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bead", "1", "2"])
        assert exc.value.code == 2


class TestBench:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "bench", "--table", "--slices", "256", "--json")
        report = json.loads(out)
        assert code == 0 and report["verdict"]["all_agree"] and report["stats"]["source"] == "table"

    def test_text(self, capsys):
        code, out, _ = run(capsys, "bench", "--pairs", "3", "--seed", "4", "--slices", "64")
        assert code == 0 and "agreement" in out

    def test_invalid_pairs(self, capsys):
        code, _, err = run(capsys, "bench", "--pairs", "0")
        assert code == 1 and "pairs" in err


def test_module_entry_point(figure_db):
    proc = subprocess.run(
        [sys.executable, "-m", "alibi_query", "alibi", figure_db, "a", "b", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["alibi"] is False
