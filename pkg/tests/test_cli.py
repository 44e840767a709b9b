import numpy as np
import pytest

from vmvt.cli import run
from vmvt.counting import load_profile
from vmvt.experiments import CSV_HEADER


def _run(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


class TestCount:
    def test_windowed_count_floor(self, capsys):
        code, out = _run(["count", "--d", "3", "--s", "5", "--zero", "1,3",
                          "--window-power", "2", "--window-h", "20",
                          "--n", "20"], capsys)
        assert code == 0
        count = float(out.strip().splitlines()[-1].split(",")[1])
        assert count >= 20**5

    def test_engines_agree(self, capsys):
        code1, out1 = _run(["count", "--d", "2", "--s", "2", "--n", "6",
                            "--engine", "mitm"], capsys)
        code2, out2 = _run(["count", "--d", "2", "--s", "2", "--n", "6",
                            "--engine", "brute"], capsys)
        assert code1 == code2 == 0
        v1 = out1.strip().splitlines()[-1].split(",")[1]
        v2 = out2.strip().splitlines()[-1].split(",")[1]
        assert v1 == v2


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self, capsys):
        assert run(["count", "--d", "2", "--s", "2", "--n", "4",
                    "--bogus", "1"]) == 2
        capsys.readouterr()

    def test_missing_subcommand(self, capsys):
        assert run([]) == 2
        capsys.readouterr()

    def test_budget_refusal(self, capsys):
        assert run(["count", "--d", "3", "--s", "5", "--n", "1000"]) == 3
        capsys.readouterr()

    def test_sweep_verdict_failure_exit_1(self, capsys):
        # tight tolerance forces an outside_tol verdict
        code, out = _run(["sweep", "--d", "2", "--p", "6", "--u", "0.5",
                          "--grid", "8,16,32", "--tolerance", "1e-9"],
                         capsys)
        assert code == 1
        assert "outside_tol" in out


class TestProfile:
    def test_dump_roundtrip(self, capsys, tmp_path):
        dump = tmp_path / "prof.bin"
        code, _ = _run(["profile", "--d", "2", "--s", "2", "--n", "8",
                        "--profile-power", "2", "--dump", str(dump)], capsys)
        assert code == 0
        with open(dump, "rb") as fh:
            counts = load_profile(fh)
        assert counts[0] > 0
        assert all(counts[b] == counts.get(-b) for b in counts)
        assert sum(counts.values()) == 8**4


class TestMomentAndSweep:
    def test_moment_row(self, capsys):
        code, out = _run(["moment", "--d", "2", "--s", "1", "--u", "0.5",
                          "--n", "16"], capsys)
        assert code == 0
        val = float(out.strip().splitlines()[-1].split(",")[1])
        assert val == pytest.approx(16**0.5, rel=1e-9)

    def test_sweep_csv_and_exit_0(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        code, _ = _run(["sweep", "--d", "2", "--p", "2", "--u", "0.5",
                        "--restricted-power", "1",
                        "--grid", "32,64,128", "--out", str(out_path)],
                       capsys)
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert any(ln == CSV_HEADER for ln in lines)
        assert any(ln.startswith("# ") for ln in lines)

    def test_mc_rows_reproducible_excluding_runtime(self, capsys, tmp_path):
        def data_rows(path):
            code, _ = _run(["sweep", "--d", "2", "--p", "4", "--u", "0.5",
                            "--grid", "8,16,32", "--method", "mc",
                            "--samples", "2000", "--seed", "7",
                            "--out", str(path)], capsys)
            assert code == 0
            lines = path.read_text().splitlines()
            start = lines.index(CSV_HEADER) + 1
            return [",".join(ln.split(",")[:4]) for ln in lines[start:]
                    if ln and not ln.startswith("#")]
        a = data_rows(tmp_path / "a.csv")
        b = data_rows(tmp_path / "b.csv")
        assert a == b


class TestOtherCommands:
    def test_arcs_summary(self, capsys):
        code, out = _run(["arcs", "--n", "64", "--u", "0.5"], capsys)
        assert code == 0
        assert "total_measure" in out

    def test_kernels(self, capsys):
        code, out = _run(["kernels", "--phi-hat-max", "2",
                          "--phi-hat-step", "1"], capsys)
        assert code == 0
        lines = [ln for ln in out.strip().splitlines()
                 if not ln.startswith("#")]
        assert lines[0] == "xi,phi_hat"
        first = float(lines[1].split(",")[1])
        assert first == pytest.approx(3.462863338382640, abs=1e-12)

    def test_selftest(self, capsys):
        code, out = _run(["selftest"], capsys)
        assert code == 0
        assert out.count("PASS") >= 6 and "FAIL" not in out
