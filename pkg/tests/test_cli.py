import csv
import io
import json
import subprocess
import sys

import pytest

from radial import oracle
from radial.cli import main
from radial.expansion import RadialVector


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestExpand:
    def test_g4(self, capsys):
        code, out, _ = run(capsys, "expand", "--N", "2", "--n", "4")
        assert code == 0
        assert json.loads(out)["coefficients"] == {"0": "28", "2": "10", "4": "1"}

    def test_g1(self, capsys):
        _, out, _ = run(capsys, "expand", "--N", "2", "--n", "1")
        assert json.loads(out)["coefficients"] == {"1": "1"}

    def test_g8(self, capsys):
        _, out, _ = run(capsys, "expand", "--n", "8")
        assert '"958"' in out and '"2092"' in out

    def test_pretty(self, capsys):
        _, out, _ = run(capsys, "expand", "--n", "8", "--format", "pretty")
        assert out == "G^8 = X_8 + 22·X_6 + 202·X_4 + 958·X_2 + 2092·e\n"

    def test_csv(self, capsys):
        _, out, _ = run(capsys, "expand", "--n", "4", "--format", "csv")
        assert out.splitlines() == ["k,coefficient", "0,28", "2,10", "4,1"]

    @pytest.mark.parametrize("argv", [
        ["expand", "--n", "0"],
        ["expand", "--N", "1", "--n", "3"],
        ["expand", "--N", "27", "--n", "3"],
        ["expand"],
        ["expand", "--n", "3", "--format", "xml"],
        ["frobnicate"],
    ])
    def test_invalid_flags_exit_2(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == 2


class TestMoments:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "moments", "--N", "2", "--max", "6", "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows == [["n", "moment"], ["1", "0"], ["2", "4"], ["3", "0"], ["4", "28"], ["5", "0"], ["6", "232"]]

    def test_max1(self, capsys):
        _, out, _ = run(capsys, "moments", "--max", "1")
        assert out.splitlines() == ["n,moment", "1,0"]

    def test_n3(self, capsys):
        _, out, _ = run(capsys, "moments", "--N", "3", "--max", "2")
        assert out.splitlines()[-1] == "2,6"

    def test_json(self, capsys):
        _, out, _ = run(capsys, "moments", "--max", "4", "--format", "json")
        d = json.loads(out)
        assert d["schema"] == "radial.moments.v1"
        assert d["rows"][-1] == {"n": 4, "moment": "28"}

    def test_big_integers_are_exact(self, capsys):
        _, out, _ = run(capsys, "moments", "--N", "26", "--max", "4000", "--format", "csv")
        last = out.splitlines()[-1].split(",")
        assert last[0] == "4000" and len(last[1]) > 4300


class TestOpval:
    def test_g4(self, capsys):
        _, out, _ = run(capsys, "opval", "--N", "2", "--n", "4")
        assert json.loads(out)["laurent"] == {"-1": "1", "0": "28", "1": "1"}

    def test_odd_is_zero(self, capsys):
        _, out, _ = run(capsys, "opval", "--n", "3")
        assert json.loads(out)["laurent"] == {}

    def test_g8(self, capsys):
        _, out, _ = run(capsys, "opval", "--n", "8")
        assert json.loads(out)["laurent"] == {"-2": "1", "-1": "202", "0": "2092", "1": "202", "2": "1"}

    def test_series_json_and_pretty(self, capsys):
        _, out, _ = run(capsys, "opval", "--max", "4")
        docs = json.loads(out)
        assert [d["n"] for d in docs] == [1, 2, 3, 4]
        _, out, _ = run(capsys, "opval", "--max", "4", "--format", "pretty")
        assert out.splitlines()[1] == "E(G^2) = 4·h^0"

    def test_n_and_max_exclusive(self, capsys):
        code, _, _ = run(capsys, "opval", "--n", "2", "--max", "3")
        assert code == 2


class TestVerify:
    def test_passes_with_note(self, capsys):
        code, out, _ = run(capsys, "verify", "--N", "2", "--max-brute", "10")
        assert code == 0
        reports = json.loads(out)
        assert all(r["schema"] == "radial.verify.v1" for r in reports)
        assert all(row["status"] == "match" for r in reports for row in r["results"])
        note = " ".join(reports[0]["notes"])
        assert "744" in note and "1316" in note and "958" in note and "2092" in note

    def test_trivial(self, capsys):
        code, _, _ = run(capsys, "verify", "--max-brute", "1")
        assert code == 0

    def test_pretty(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-brute", "8", "--format", "pretty")
        assert code == 0 and "note: " in out and out.rstrip().endswith("OK")

    def test_injected_fault_exits_1(self, capsys, monkeypatch):
        real = oracle.expand_power

        def broken(spec, n):
            v = real(spec, n)
            return RadialVector(spec, n, (v.c[0] + 1,) + v.c[1:]) if n == 4 else v

        monkeypatch.setattr(oracle, "expand_power", broken)
        code, out, _ = run(capsys, "verify", "--max-brute", "6")
        assert code == 1
        rows = [row for row in json.loads(out)[0]["results"] if row["status"] == "mismatch"]
        assert [row["n"] for row in rows] == [4]
        assert rows[0]["values"]["walk"] == "28" and rows[0]["values"]["recurrence"] == "29"

    def test_term_limit_skips(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-brute", "10", "--term-limit", "500")
        assert code == 0
        statuses = [row["status"] for row in json.loads(out)[0]["results"]]
        assert "skipped-resource" in statuses and "mismatch" not in statuses

    def test_env_limit(self, capsys, monkeypatch):
        monkeypatch.setenv("RADIAL_TERM_LIMIT", "500")
        _, out, _ = run(capsys, "verify", "--max-brute", "10")
        assert "skipped-resource" in out
        monkeypatch.setenv("RADIAL_TERM_LIMIT", "-3")
        code, _, _ = run(capsys, "verify", "--max-brute", "3")
        assert code == 2


class TestBench:
    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "bench", "--max", "1", "--format", "csv")
        assert code == 0
        assert out.splitlines()[1].startswith("recurrence,1,")

    def test_brute_growth(self, capsys):
        code, out, _ = run(capsys, "bench", "--max", "10", "--brute-max", "9", "--format", "json")
        assert code == 0
        brute = [r for r in json.loads(out)["rows"] if r["method"] == "brute"]
        assert [r["n"] for r in brute] == list(range(1, 10))
        assert all(r["terms"] == r["predicted_terms"] for r in brute)

    def test_brute_refused_by_limit(self, capsys):
        code, out, _ = run(capsys, "bench", "--max", "5", "--max-brute", "12", "--term-limit", "1000", "--format", "json")
        assert code == 0
        brute = [r for r in json.loads(out)["rows"] if r["method"] == "brute"]
        assert "error" in brute[-1] and brute[-1]["terms"] is None


class TestOutput:
    def test_out_file_and_determinism(self, capsys, tmp_path):
        target = tmp_path / "g8.json"
        for _ in range(2):
            assert main(["expand", "--n", "8", "--out", str(target)]) == 0
            first = target.read_bytes()
        _, out, _ = run(capsys, "expand", "--n", "8")
        assert out.encode() == first
        assert [p.name for p in tmp_path.iterdir()] == ["g8.json"]

    @pytest.mark.parametrize("argv", [
        ["moments", "--max", "30", "--format", "json"],
        ["opval", "--max", "12", "--format", "csv"],
        ["expand", "--N", "3", "--n", "9"],
    ])
    def test_byte_identical(self, capsys, argv):
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b

    def test_resource_error_exit_3(self, capsys, monkeypatch):
        import radial.cli as cli
        from radial.algebra import TermLimitError

        def boom(args):
            raise TermLimitError(10, 5)

        monkeypatch.setitem(cli.COMMANDS, "expand", boom)
        code, _, err = run(capsys, "expand", "--n", "3")
        assert code == 3 and "term limit" in err

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "radial", "moments", "--max", "4"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[-1] == "4,28"
