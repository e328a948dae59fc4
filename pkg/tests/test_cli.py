import csv
import json

import pytest

from netcomm import load_graph
from netcomm.cli import (TRAJECTORY_HEADER, build_parser, config_from_args,
                         main, parse_method)


def run_cli(tmp_path, *argv, name="run"):
    prefix = tmp_path / name
    code = main([*argv, "--out-prefix", str(prefix)])
    return code, prefix


def read_rows(csv_path):
    lines = csv_path.read_text().splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


class TestParseMethod:
    def test_strips_oneshot_suffix(self):
        assert parse_method("eigenvector.no") == ("eigenvector", False)
        assert parse_method("nodeTC.no") == ("nodeTC", False)

    def test_plain_uses_flag(self):
        assert parse_method("degree", True) == ("degree", True)
        assert parse_method("degree", False) == ("degree", False)


class TestParser:
    def test_defaults(self):
        cfg = config_from_args(build_parser().parse_args([]))
        assert cfg.mode == "analyze"
        assert cfg.budget == 10 and cfg.greedy and cfg.pct == 0.1

    def test_list_flags_split(self):
        args = build_parser().parse_args(
            ["--sizes", "100,200", "--methods", "nodeTC, random"])
        cfg = config_from_args(args)
        assert cfg.sizes == (100, 200)
        assert cfg.methods == ("nodeTC", "random")

    def test_no_greedy(self):
        cfg = config_from_args(build_parser().parse_args(["--no-greedy"]))
        assert cfg.greedy is False

    def test_mode_choices_enforced(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["--mode", "destroy"])


class TestAnalyze:
    def test_writes_trajectory_and_manifest(self, tmp_path, capsys):
        code, prefix = run_cli(tmp_path, "--input", "zachary")
        assert code == 0
        header, rows = read_rows(prefix.with_suffix(".trajectory.csv"))
        assert header == TRAJECTORY_HEADER
        assert len(rows) == 1 and rows[0][0] == "0" and rows[0][1] == "init"
        man = json.loads(prefix.with_suffix(".manifest.json").read_text())
        assert man["tool"] == "netcomm"
        assert man["input"] == {"kind": "dataset", "value": "zachary",
                                "n": 34, "m": 78}
        assert man["metrics"]["lambda1"] == pytest.approx(6.7256977, rel=1e-6)
        assert "thermodynamics" in man
        out = capsys.readouterr().out
        assert "n=34 m=78" in out

    def test_thermo_skipped_above_cap(self, tmp_path):
        code, prefix = run_cli(tmp_path, "--input", "zachary",
                               "--oracle-cap", "10")
        assert code == 0
        man = json.loads(prefix.with_suffix(".manifest.json").read_text())
        assert "thermodynamics" not in man


class TestModify:
    def test_update_trajectory_monotone(self, tmp_path):
        code, prefix = run_cli(tmp_path, "--input", "zachary", "--mode",
                               "update", "--method", "nodeTC", "--budget", "3")
        assert code == 0
        _, rows = read_rows(prefix.with_suffix(".trajectory.csv"))
        assert len(rows) == 4
        tc = [float(r[4]) for r in rows]
        assert tc == sorted(tc)
        man = json.loads(prefix.with_suffix(".manifest.json").read_text())
        assert len(man["plans"]) == 1
        assert len(man["plans"][0]["records"]) == 3
        assert man["plans"][0]["records"][0]["kind"] == "update"

    def test_downdate_trajectory_monotone(self, tmp_path):
        code, prefix = run_cli(tmp_path, "--input", "zachary", "--mode",
                               "downdate", "--budget", "3")
        assert code == 0
        _, rows = read_rows(prefix.with_suffix(".trajectory.csv"))
        tc = [float(r[4]) for r in rows]
        assert tc == sorted(tc, reverse=True)

    def test_rewire_interleaves_and_reports_steps(self, tmp_path, capsys):
        code, prefix = run_cli(tmp_path, "--input", "zachary", "--mode",
                               "rewire", "--budget", "2")
        assert code == 0
        _, rows = read_rows(prefix.with_suffix(".trajectory.csv"))
        assert [r[1] for r in rows] == ["init", "downdate", "update",
                                        "downdate", "update"]
        assert "selected 2/2" in capsys.readouterr().out

    def test_write_graph(self, tmp_path):
        code, prefix = run_cli(tmp_path, "--input", "zachary", "--mode",
                               "update", "--budget", "2", "--write-graph")
        assert code == 0
        g = load_graph(prefix.with_suffix(".graph.mtx"))
        assert (g.n, g.m) == (34, 80)

    def test_chan_is_update_only(self, tmp_path, capsys):
        code, _ = run_cli(tmp_path, "--input", "zachary", "--mode", "downdate",
                          "--method", "chan", "--budget", "1")
        assert code == 1
        assert "only performs updates" in capsys.readouterr().err

    def test_chan_runs(self, tmp_path):
        code, prefix = run_cli(tmp_path, "--input", "zachary", "--mode",
                               "update", "--method", "chan", "--chan-t", "5",
                               "--budget", "2")
        assert code == 0
        man = json.loads(prefix.with_suffix(".manifest.json").read_text())
        assert man["plans"][0]["method"] == "chan"


class TestBounds:
    def test_row_brackets_exact_value(self, tmp_path, capsys):
        code, prefix = run_cli(tmp_path, "--input", "zachary", "--mode", "bounds")
        assert code == 0
        header, rows = read_rows(prefix.with_suffix(".bounds.csv"))
        assert header == "n,m,omega1,gamma1,alpha,beta,lower,upper,tc_normalized"
        row = rows[0]
        lower, upper, tcn = float(row[6]), float(row[7]), float(row[8])
        assert lower <= tcn <= upper
        assert "<= TC/n <=" in capsys.readouterr().out


class TestGenerate:
    def test_round_trips_through_mtx(self, tmp_path):
        code, prefix = run_cli(tmp_path, "--generate", "pref(50,2)", "--mode",
                               "generate", "--seed", "3")
        assert code == 0
        g = load_graph(prefix.with_suffix(".graph.mtx"))
        assert g.n == 50 and g.m == 2 * 47 + 3
        man = json.loads(prefix.with_suffix(".manifest.json").read_text())
        assert man["input"]["kind"] == "generate"
        assert man["input"]["value"] == "pref(50,2)"


class TestCompare:
    def test_methods_side_by_side(self, tmp_path):
        code, prefix = run_cli(
            tmp_path, "--input", "zachary", "--mode", "compare", "--budget", "2",
            "--methods", "eigenvector,random", "--op", "update")
        assert code == 0
        header, rows = read_rows(prefix.with_suffix(".compare.csv"))
        assert header == ("step,eigenvector:tc_normalized,"
                          "eigenvector:natural_connectivity,"
                          "random:tc_normalized,random:natural_connectivity")
        assert len(rows) == 3
        man = json.loads(prefix.with_suffix(".manifest.json").read_text())
        assert [p["method"] for p in man["plans"]] == ["eigenvector", "random"]


class TestBench:
    def test_grid_of_sizes_and_methods(self, tmp_path):
        code, prefix = run_cli(
            tmp_path, "--mode", "bench", "--generate", "pref(50,2)", "--sizes",
            "50,60", "--methods", "degree,degree.no", "--budget", "3")
        assert code == 0
        with open(prefix.with_suffix(".bench.csv"), newline="") as fh:
            header, *rows = list(csv.reader(fh))
        assert header == ["model", "n", "m", "op", "method", "budget",
                          "selected", "seconds"]
        assert len(rows) == 4
        assert {r[1] for r in rows} == {"50", "60"}
        assert {r[0] for r in rows} == {"pref(50,2)", "pref(60,2)"}
        assert all(r[3] == "downdate" for r in rows)
        assert all(int(r[6]) == 3 for r in rows)


class TestReplay:
    def test_generated_input_byte_identical(self, tmp_path):
        code, first = run_cli(tmp_path, "--generate", "pref(40,2)", "--mode",
                              "update", "--budget", "3", "--seed", "5",
                              "--pct", "0.3", name="first")
        assert code == 0
        manifest = first.with_suffix(".manifest.json")
        code, second = run_cli(tmp_path, "--replay", str(manifest), name="second")
        assert code == 0
        a = first.with_suffix(".trajectory.csv").read_bytes()
        b = second.with_suffix(".trajectory.csv").read_bytes()
        assert a == b

    def test_dataset_input_byte_identical(self, tmp_path):
        code, first = run_cli(tmp_path, "--input", "zachary", "--mode",
                              "downdate", "--budget", "4", name="first")
        assert code == 0
        code, second = run_cli(tmp_path, "--replay",
                               str(first.with_suffix(".manifest.json")),
                               name="second")
        assert code == 0
        assert (first.with_suffix(".trajectory.csv").read_bytes()
                == second.with_suffix(".trajectory.csv").read_bytes())

    def test_mismatched_input_rejected(self, tmp_path, capsys):
        code, first = run_cli(tmp_path, "--input", "zachary", "--mode",
                              "update", "--budget", "2", name="first")
        assert code == 0
        man_path = first.with_suffix(".manifest.json")
        man = json.loads(man_path.read_text())
        man["input"]["m"] = 9999
        man_path.write_text(json.dumps(man))
        code, _ = run_cli(tmp_path, "--replay", str(man_path), name="second")
        assert code == 1
        assert "does not match the manifest" in capsys.readouterr().err


class TestErrors:
    def test_no_input(self, tmp_path, capsys):
        code, _ = run_cli(tmp_path)
        assert code == 1
        assert "no input" in capsys.readouterr().err

    def test_unknown_dataset(self, tmp_path, capsys):
        code, _ = run_cli(tmp_path, "--input", "not_a_graph.mtx")
        assert code == 1
        assert "neither a file nor a known dataset" in capsys.readouterr().err

    def test_bad_generator_spec(self, tmp_path, capsys):
        code, _ = run_cli(tmp_path, "--generate", "pref(2)")
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_zero_budget(self, tmp_path, capsys):
        code, _ = run_cli(tmp_path, "--input", "zachary", "--mode", "update",
                          "--budget", "0")
        assert code == 1

    def test_missing_named_dataset_guidance(self, tmp_path, capsys):
        code, _ = run_cli(tmp_path, "--input", "dolphins", "--data-dir",
                          str(tmp_path))
        assert code == 1
        assert "dolphins" in capsys.readouterr().err


class TestFileInput:
    def test_edge_list_path(self, tmp_path):
        src = tmp_path / "tiny.txt"
        src.write_text("# n=4 m=3\n0\t1\n1\t2\n2\t3\n")
        code, prefix = run_cli(tmp_path, "--input", str(src))
        assert code == 0
        man = json.loads(prefix.with_suffix(".manifest.json").read_text())
        assert man["input"]["kind"] == "path"
        assert man["input"]["n"] == 4 and man["input"]["m"] == 3
