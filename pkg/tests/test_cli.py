import json
import math
from fractions import Fraction as F

import pytest

from kolmconj.cli import (main, read_field_file, run_minimize, run_sweep,
                          write_field_file)
from kolmconj.trigpoly import COS, SIN, KolmogorovFlow, Mode, TrigPoly


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerifyCommand:
    def test_drivas(self, capsys):
        code, out, _ = run(capsys, "verify", "drivas")
        assert code == 0
        assert "-3/200" in out
        assert out.strip().endswith("PASS")

    def test_offdiag(self, capsys):
        code, out, _ = run(capsys, "verify", "offdiag", "3", "2")
        assert code == 0
        assert "[OK]" in out and "[FAIL]" not in out
        assert "-23779/25721" in out

    def test_offdiag_bad_order_is_usage_error(self, capsys):
        code, _, err = run(capsys, "verify", "offdiag", "2", "2")
        assert code == 2
        assert "m > n" in err

    def test_offdiag_missing_params_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "verify", "offdiag", "3")
        assert code == 2

    def test_diag(self, capsys):
        code, out, _ = run(capsys, "verify", "diag", "2")
        assert code == 0
        assert "-802799/3798226" in out

    def test_diag_n1_reports_without_failing(self, capsys):
        code, out, _ = run(capsys, "verify", "diag", "1")
        assert code == 0
        assert "without sign assertion" in out

    def test_signs(self, capsys):
        code, out, _ = run(capsys, "verify", "signs")
        assert code == 0
        assert "[FAIL]" not in out

    def test_all(self, capsys):
        code, out, _ = run(capsys, "verify", "all")
        assert code == 0
        assert "[FAIL]" not in out
        assert out.strip().endswith("PASS")


class TestMinimizeCommand:
    def test_detects_32(self, capsys, tmp_path):
        out_file = tmp_path / "min32.json"
        code, out, _ = run(capsys, "minimize", "--m", "3", "--n", "2",
                           "--N", "8", "--out", str(out_file))
        assert code == 0
        assert "conjugate point detected" in out
        flow, field, _ = read_field_file(str(out_file))
        assert (flow.m, flow.n) == (3, 2)
        assert max(abs(c) for c in field.terms.values()) == 1

    def test_deterministic_output(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "minimize", "--m", "2", "--n", "1", "--N", "6",
            "--out", str(a))
        run(capsys, "minimize", "--m", "2", "--n", "1", "--N", "6",
            "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_constraint_accepted(self, capsys):
        code, out, _ = run(capsys, "minimize", "--m", "2", "--n", "2",
                           "--N", "8", "--constrain", "0,1")
        assert code == 0
        assert "conjugate point detected" in out

    def test_bad_constraint_is_usage_error(self, capsys):
        code, _, err = run(capsys, "minimize", "--m", "2", "--n", "1",
                           "--constrain", "nonsense")
        assert code == 2
        assert "constraint" in err

    def test_cos_subspace_11_not_detected(self, capsys):
        # the (1,1) cosine minimum is numerically zero; the rationalized
        # witness certifies a nonnegative value, so no detection
        code, out, _ = run(capsys, "minimize", "--m", "1", "--n", "1",
                           "--subspace", "cos")
        assert code == 0
        assert "not detected" in out

    def test_sine_fallback_certifies_11(self, capsys):
        code, out, _ = run(capsys, "minimize", "--m", "1", "--n", "1",
                           "--subspace", "sin")
        assert code == 0
        assert "conjugate point detected" in out


class TestMiCommand:
    def test_round_trip_reproduces_certified_value(self, capsys, tmp_path):
        res = run_minimize(KolmogorovFlow(3, 2), N=8)
        path = tmp_path / "f.json"
        write_field_file(str(path), res.flow, res.certified.field, "test")
        code, out, _ = run(capsys, "mi", str(path))
        assert code == 0
        assert f"MI/pi^2 = {res.certified.mi_over_pi2} " in out
        assert "conjugate point detected" in out

    def test_positive_field_not_detected(self, capsys, tmp_path):
        path = tmp_path / "cosx.json"
        write_field_file(str(path), KolmogorovFlow(3, 2),
                         TrigPoly.cosine(1, 0), "plain cosine")
        code, out, _ = run(capsys, "mi", str(path))
        assert code == 0
        assert "MI/pi^2 = 2 " in out
        assert "not detected" in out

    def test_kernel_field_fails(self, capsys, tmp_path):
        flow = KolmogorovFlow(2, 1)
        path = tmp_path / "psi.json"
        write_field_file(str(path), flow, flow.stream(), "stream function")
        code, out, _ = run(capsys, "mi", str(path))
        assert code == 1
        assert "kernel" in out

    def test_flow_override(self, capsys, tmp_path):
        path = tmp_path / "cosx.json"
        write_field_file(str(path), KolmogorovFlow(3, 2),
                         TrigPoly.cosine(1, 0), "plain cosine")
        code, out, _ = run(capsys, "mi", str(path), "--m", "4", "--n", "1")
        assert code == 0
        assert "m=4 n=1" in out and "MI/pi^2 = 1/2 " in out

    def test_partial_override_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "cosx.json"
        write_field_file(str(path), KolmogorovFlow(3, 2),
                         TrigPoly.cosine(1, 0), "plain cosine")
        code, _, _ = run(capsys, "mi", str(path), "--m", "4")
        assert code == 2

    def test_missing_file_is_usage_error(self, capsys, tmp_path):
        code, _, _ = run(capsys, "mi", str(tmp_path / "nope.json"))
        assert code == 2


class TestSweepCommand:
    def test_small_sweep(self, capsys, tmp_path):
        out_file = tmp_path / "sweep.csv"
        code, _, _ = run(capsys, "sweep", "--mmax", "2", "--N", "8",
                         "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().strip().splitlines()
        assert lines[0] == "m,n,subspace,eigenvalue,certified_q,verdict"
        detected = [ln for ln in lines[1:] if ln.endswith("conjugate point detected")]
        pairs = {tuple(ln.split(",")[:2]) for ln in detected}
        assert pairs == {("1", "1"), ("2", "1"), ("2", "2")}

    def test_run_sweep_cos_fallback_to_sin(self):
        rows = run_sweep(1, N=10)
        assert [r["subspace"] for r in rows] == ["cos", "sin"]
        assert rows[1]["verdict"] == "conjugate point detected"


class TestFieldCommand:
    def test_stream_grid(self, capsys, tmp_path):
        out_file = tmp_path / "stream.csv"
        code, _, _ = run(capsys, "field", "stream", "--m", "1", "--n", "1",
                         "--grid", "16", "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().strip().splitlines()
        assert lines[0] == "x,y,value"
        assert len(lines) == 1 + 16 * 16
        x0, y0, v0 = lines[1].split(",")
        assert (float(x0), float(y0)) == (0.0, 0.0)
        assert float(v0) == pytest.approx(-1.0)

    def test_deformed_zero_epsilon_equals_stream(self, capsys, tmp_path):
        stream_file = tmp_path / "s.csv"
        run(capsys, "field", "stream", "--m", "2", "--n", "1",
            "--grid", "16", "--out", str(stream_file))
        field_file = tmp_path / "f.json"
        write_field_file(str(field_file), KolmogorovFlow(2, 1),
                         TrigPoly.cosine(1, 0), "probe")
        deformed_file = tmp_path / "d.csv"
        code, _, _ = run(capsys, "field", "deformed", "--field", str(field_file),
                         "--epsilon", "0", "--grid", "16",
                         "--out", str(deformed_file))
        assert code == 0
        assert deformed_file.read_text() == stream_file.read_text()

    def test_minimizer_grid_matches_eval(self, capsys, tmp_path):
        field_file = tmp_path / "f.json"
        f = TrigPoly.cosine(1, 0) + TrigPoly.sine(2, 3, F(1, 4))
        write_field_file(str(field_file), KolmogorovFlow(1, 1), f, "probe")
        out_file = tmp_path / "g.csv"
        code, _, _ = run(capsys, "field", "minimizer", "--field", str(field_file),
                         "--grid", "16", "--out", str(out_file))
        assert code == 0
        for line in out_file.read_text().strip().splitlines()[1:9]:
            x, y, v = (float(t) for t in line.split(","))
            assert v == pytest.approx(f.eval(x, y), abs=1e-12)

    def test_small_grid_is_usage_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "field", "stream", "--m", "1", "--n", "1",
                           "--grid", "8", "--out", str(tmp_path / "x.csv"))
        assert code == 2
        assert "grid" in err

    def test_missing_field_arg_is_usage_error(self, capsys, tmp_path):
        code, _, _ = run(capsys, "field", "minimizer",
                         "--out", str(tmp_path / "x.csv"))
        assert code == 2


class TestFieldFiles:
    def test_round_trip_exact(self, tmp_path):
        f = (TrigPoly.cosine(1, 0, F(22, 7))
             + TrigPoly.sine(0, 3, F(-1, 10 ** 12)))
        path = tmp_path / "f.json"
        write_field_file(str(path), KolmogorovFlow(3, 2), f, "round trip")
        flow, back, desc = read_field_file(str(path))
        assert back == f
        assert (flow.m, flow.n) == (3, 2)
        assert desc == "round trip"

    def test_values_are_fraction_strings(self, tmp_path):
        path = tmp_path / "f.json"
        write_field_file(str(path), KolmogorovFlow(1, 1),
                         TrigPoly.cosine(1, 0, F(1, 3)), "fmt")
        doc = json.loads(path.read_text())
        assert doc["modes"][0]["value"] == "1/3"

    def test_malformed_file_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, _ = run(capsys, "mi", str(path))
        assert code == 2
