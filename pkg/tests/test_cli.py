import io
import math
import sys

import pytest

from cswsat.automaton import Pfa, parse_pfa, serialize_pfa
from cswsat.cli import (
    REFERENCE_CURVE,
    ComparisonRow,
    ExperimentRow,
    FitResult,
    comparison_csv,
    compare_backends,
    experiment_csv,
    fit_cubic,
    main,
    run_experiment,
    write_gnuplot,
)
from cswsat.encoder import parse_dimacs
from cswsat.generators import pn

from test_solver import SHIM_LIAR, shim_command

A1_TEXT = "2 2\n1 2\n1 0\n"
C3_TEXT = "3 2\n2 2\n3 2\n1 3\n"
FROZEN_TEXT = "2 2\n1 1\n2 2\n"


def cubic(c0, c1, c2, c3):
    return lambda x: c0 + c1 * x + c2 * x * x + c3 * x**3


class TestFitCubic:
    def test_recovers_exact_cubic(self):
        poly = cubic(1.0, 2.0, -0.5, 0.01)
        points = [(n, poly(n)) for n in range(4, 16)]
        result = fit_cubic(points)
        for got, want in zip(result.coefficients, (1.0, 2.0, -0.5, 0.01)):
            assert abs(got - want) < 1e-9
        assert result.residual < 1e-12

    def test_constant_data(self):
        result = fit_cubic([(n, 5.0) for n in (3, 7, 11, 19, 25)])
        assert abs(result.coefficients[0] - 5.0) < 1e-9
        for c in result.coefficients[1:]:
            assert abs(c) < 1e-9

    def test_reference_curve_trend(self):
        c0, c1, c2, c3 = fit_cubic(REFERENCE_CURVE).coefficients
        assert abs(c0 - 3.92) / 3.92 < 0.15
        assert abs(c1 - 0.49) / 0.49 < 0.15
        assert abs(c2 - (-0.005)) / 0.005 < 0.30
        assert abs(c3 - 0.000024) / 0.000024 < 0.30

    def test_too_few_distinct_points(self):
        with pytest.raises(ValueError):
            fit_cubic([(1, 1.0), (2, 2.0), (3, 3.0)])
        with pytest.raises(ValueError):
            fit_cubic([(1, 1.0), (1, 2.0), (2, 2.0), (2, 3.0), (3, 1.0)])

    def test_normal_equations_are_optimal(self):
        result = fit_cubic(REFERENCE_CURVE)

        def rss(coeffs):
            return sum(
                (y - sum(c * x**k for k, c in enumerate(coeffs))) ** 2
                for x, y in REFERENCE_CURVE
            )

        base = rss(result.coefficients)
        for i in range(4):
            for factor in (0.99, 1.01):
                nudged = list(result.coefficients)
                nudged[i] *= factor
                assert rss(nudged) >= base - 1e-12

    def test_predict(self):
        result = FitResult(coefficients=(1.0, 2.0, 3.0, 4.0), residual=0.0)
        assert result.predict(2.0) == 1 + 4 + 12 + 32


class TestRunExperiment:
    def test_constant_map_family(self):
        # both letters send every state to 1: each instance needs one step
        family = lambda n, seed: Pfa(n=2, m=2, delta=((1, 1), (1, 1)))
        (row,) = run_experiment([2], samples=10, seed=0, family=family)
        assert row.mean_length == 1.0
        assert row.rsd == 0.0
        assert row.discards == 0

    def test_engines_agree(self):
        sat_rows = run_experiment([6], samples=30, seed=5, engine="sat")
        bfs_rows = run_experiment([6], samples=30, seed=5, engine="oracle")
        for a, b in zip(sat_rows, bfs_rows):
            assert (a.mean_length, a.rsd, a.discards) == (
                b.mean_length,
                b.rsd,
                b.discards,
            )

    def test_reproducible_except_timing(self):
        kwargs = dict(samples=8, seed=3, engine="oracle")
        a = run_experiment([4, 5], **kwargs)
        b = run_experiment([4, 5], **kwargs)
        strip = lambda rows: [
            (r.n, r.samples, r.discards, r.mean_length, r.rsd, r.budget_hits)
            for r in rows
        ]
        assert strip(a) == strip(b)
        trim = lambda text: [
            line.rsplit(",", 1)[0] for line in text.splitlines()
        ]
        assert trim(experiment_csv(a)) == trim(experiment_csv(b))

    def test_budget_overrun_is_recorded_not_fatal(self):
        # first attempt draws a chain too big for the subset budget, the
        # retry draws a small one; the row must carry the overrun count
        family = lambda n, s: pn(8) if s < (1 << 48) else pn(4)
        (row,) = run_experiment(
            [8], samples=1, seed=0, family=family, engine="oracle", max_visited=10
        )
        assert row.budget_hits == 1
        assert row.discards == 0
        assert row.mean_length >= 1

    def test_never_synchronizing_family_fails_loudly(self):
        family = lambda n, seed: Pfa(n=2, m=2, delta=((1, 2), (1, 2)))
        with pytest.raises(RuntimeError, match="no synchronizing instance"):
            run_experiment([2], samples=1, seed=0, family=family, max_attempts=5)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            run_experiment([4], samples=0)
        with pytest.raises(ValueError):
            run_experiment([4], samples=1, engine="quantum")


class TestCompareBackends:
    def test_small_run_agrees(self):
        (row,) = compare_backends([6], samples=15, seed=0)
        assert row.mismatches == 0
        assert row.samples == 15
        assert row.sat_mean_s > 0
        assert row.oracle_mean_s > 0

    def test_cap_enforced(self):
        with pytest.raises(ValueError, match="cap"):
            compare_backends([65], samples=1)

    def test_csv_shape(self):
        row = ComparisonRow(
            n=6,
            samples=5,
            discards=1,
            sat_mean_s=0.25,
            oracle_mean_s=0.0125,
            mismatches=0,
        )
        text = comparison_csv([row])
        header, data = text.splitlines()
        assert header == "n,samples,discards,sat_mean_s,oracle_mean_s,mismatches"
        assert data == "6,5,1,0.250000,0.012500,0"


class TestTableOutput:
    ROW = ExperimentRow(
        n=10, samples=4, discards=2, mean_length=7.5, rsd=0.375, mean_time_s=0.001
    )

    def test_csv(self):
        header, data = experiment_csv([self.ROW]).splitlines()
        assert header == "n,samples,discards,mean_length,rsd,mean_time_s"
        assert data == "10,4,2,7.500000,0.375000,0.001000"

    def test_tsv(self):
        text = experiment_csv([self.ROW], fmt="tsv")
        assert "\t" in text and "," not in text

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            experiment_csv([self.ROW], fmt="xml")

    def test_gnuplot_pair(self, tmp_path):
        dat, gp = write_gnuplot(tmp_path / "curve", [self.ROW])
        assert dat.read_text().splitlines()[1].startswith("10 7.500000")
        assert dat.name in gp.read_text()


class TestCommandSurface:
    def _pfa_file(self, tmp_path, text, name="input.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    def test_encode_stdout(self, tmp_path, capsys):
        assert main(["encode", self._pfa_file(tmp_path, A1_TEXT), "-l", "2"]) == 0
        out = capsys.readouterr().out
        instance = parse_dimacs(out)
        assert instance.var_count == 10
        assert instance.layout is not None

    def test_encode_to_file(self, tmp_path):
        target = tmp_path / "out.cnf"
        code = main(
            ["encode", self._pfa_file(tmp_path, A1_TEXT), "-l", "1", "-o", str(target)]
        )
        assert code == 0
        assert target.read_text().startswith("c layout n=2 m=2 l=1")

    def test_encode_missing_file(self, tmp_path, capsys):
        assert main(["encode", str(tmp_path / "absent.txt"), "-l", "1"]) == 1
        assert "error" in capsys.readouterr().err

    def test_solve_table_needs_length(self, tmp_path, capsys):
        assert main(["solve", self._pfa_file(tmp_path, A1_TEXT)]) == 1
        assert "--length" in capsys.readouterr().err

    def test_solve_table_sat(self, tmp_path, capsys):
        assert main(["solve", self._pfa_file(tmp_path, A1_TEXT), "-l", "1"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("s SATISFIABLE")
        assert "c word a" in out

    def test_solve_table_unsat(self, tmp_path, capsys):
        assert main(["solve", self._pfa_file(tmp_path, FROZEN_TEXT), "-l", "3"]) == 0
        assert capsys.readouterr().out == "s UNSATISFIABLE\n"

    def test_solve_dimacs_stdin(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("p cnf 2 2\n1 -2 0\n2 0\n"))
        assert main(["solve", "-"]) == 0
        out = capsys.readouterr().out
        assert "s SATISFIABLE" in out
        assert "v 1 2 0" in out

    def test_solve_lying_external_backend(self, tmp_path, capsys):
        cnf = tmp_path / "hard.cnf"
        cnf.write_text("p cnf 2 2\n-1 0\n-2 0\n")
        cmd = shim_command(tmp_path, SHIM_LIAR, "liar")
        code = main(["--backend", f"external:{cmd}", "solve", str(cnf)])
        assert code == 3
        assert "verification" in capsys.readouterr().err

    def test_min_found(self, tmp_path, capsys):
        probes = tmp_path / "probes.csv"
        code = main(
            [
                "min",
                self._pfa_file(tmp_path, C3_TEXT),
                "--emit-probes",
                str(probes),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "status: FOUND" in out
        assert "min_length: 4" in out
        assert probes.read_text().startswith("length,status,seconds")

    def test_min_bound_exhausted(self, tmp_path, capsys):
        assert main(["min", self._pfa_file(tmp_path, C3_TEXT), "--max-length", "3"]) == 2
        out = capsys.readouterr().out
        assert "status: UNKNOWN_UP_TO_BOUND" in out
        assert "bound: 3" in out

    def test_min_not_synchronizing(self, tmp_path, capsys):
        assert main(["min", self._pfa_file(tmp_path, FROZEN_TEXT)]) == 0
        assert "status: NOT_SYNCHRONIZING" in capsys.readouterr().out

    def test_min_budget_exit(self, tmp_path, capsys):
        code = main(
            ["--max-decisions", "0", "min", self._pfa_file(tmp_path, C3_TEXT)]
        )
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_oracle(self, tmp_path, capsys):
        assert main(["oracle", self._pfa_file(tmp_path, A1_TEXT)]) == 0
        out = capsys.readouterr().out
        assert "min_length: 1" in out
        assert "visited: 1" in out

    def test_oracle_state_gate(self, tmp_path, capsys):
        path = self._pfa_file(tmp_path, "4 1\n1\n1\n1\n1\n")
        assert main(["oracle", path, "--max-states", "3"]) == 1
        assert "--max-states" in capsys.readouterr().err

    def test_oracle_budget(self, tmp_path, capsys):
        path = self._pfa_file(tmp_path, serialize_pfa(pn(8)))
        assert main(["oracle", path, "--max-visited", "5"]) == 2

    def test_gen_stdout_roundtrip(self, capsys):
        assert main(["--seed", "9", "gen", "--n", "6", "--k", "2"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# family=random n=6 k=2 seed=9")
        pfa = parse_pfa(out)
        assert (pfa.n, pfa.undefined_count()) == (6, 2)

    def test_gen_directory(self, tmp_path):
        out_dir = tmp_path / "batch"
        code = main(
            ["gen", "--n", "5", "--count", "3", "--output", str(out_dir)]
        )
        assert code == 0
        files = sorted(out_dir.iterdir())
        assert len(files) == 3
        assert all(parse_pfa(f.read_text()).n == 5 for f in files)

    def test_gen_pn(self, tmp_path, capsys):
        assert main(["gen", "--family", "pn", "--n", "4"]) == 0
        assert parse_pfa(capsys.readouterr().out).delta == pn(4).delta
        assert main(["gen", "--family", "pn", "--n", "4", "--count", "2"]) == 1

    def test_bench_curve(self, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        prefix = tmp_path / "plot"
        code = main(
            [
                "bench",
                "curve",
                "--n-list",
                "4,5",
                "--samples",
                "3",
                "--engine",
                "oracle",
                "--output",
                str(out),
                "--gnuplot",
                str(prefix),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n,samples,discards,mean_length,rsd,mean_time_s"
        assert len(lines) == 3
        assert (tmp_path / "plot.dat").exists()
        assert (tmp_path / "plot.gp").exists()

    def test_bench_compare(self, tmp_path, capsys):
        out = tmp_path / "compare.tsv"
        code = main(
            [
                "--format",
                "tsv",
                "bench",
                "compare",
                "--n-list",
                "5",
                "--samples",
                "3",
                "--output",
                str(out),
            ]
        )
        assert code == 0
        assert out.read_text().startswith("n\tsamples\tdiscards")

    def test_bench_compare_flags_disagreement(self, monkeypatch, capsys):
        bogus = ComparisonRow(
            n=6,
            samples=1,
            discards=0,
            sat_mean_s=0.1,
            oracle_mean_s=0.1,
            mismatches=1,
        )
        monkeypatch.setattr(
            "cswsat.cli.compare_backends", lambda *a, **k: [bogus]
        )
        code = main(["bench", "compare", "--n-list", "6", "--samples", "1"])
        assert code == 3
        assert "disagree" in capsys.readouterr().err

    def test_fit_from_file(self, tmp_path, capsys):
        poly = cubic(2.0, 0.5, 0.0, 0.0)
        rows = ["n,mean_length"] + [f"{n},{poly(n)}" for n in range(4, 10)]
        path = tmp_path / "data.csv"
        path.write_text("\n".join(rows) + "\n")
        assert main(["fit", str(path)]) == 0
        out = dict(
            line.split(": ") for line in capsys.readouterr().out.splitlines()
        )
        assert math.isclose(float(out["c0"]), 2.0, abs_tol=1e-9)
        assert math.isclose(float(out["c1"]), 0.5, abs_tol=1e-9)

    def test_fit_reference(self, capsys):
        assert main(["fit", "--reference"]) == 0
        assert "c3:" in capsys.readouterr().out

    def test_fit_needs_input(self, capsys):
        assert main(["fit"]) == 1

    def test_usage_errors(self, capsys):
        assert main(["frobnicate"]) == 1
        assert main([]) == 1
        assert main(["--help"]) == 0
        assert main(["min"]) == 1
