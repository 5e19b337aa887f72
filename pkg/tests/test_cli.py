import subprocess
import sys

import pytest

from nhc.cli import bench_summary, log2_histogram, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    return dict(line.split("\t", 1) for line in out.splitlines() if "\t" in line and not line.startswith("#"))


def test_cluster_karate(capsys, karate_path, tmp_path):
    code, out, _ = run(capsys, "cluster", karate_path, "--min-degree", 13, "-o", tmp_path / "a.tsv")
    r = rows(out)
    assert code == 0 and r["hubs"] == "2" and r["clusters"] == "2" and r["unassigned"] == "0"
    assert len((tmp_path / "a.tsv").read_text().splitlines()) == 34


def test_cluster_missing_input(capsys, tmp_path):
    code, _, err = run(capsys, "cluster", tmp_path / "nope.txt", "--min-degree", 3)
    assert code != 0 and "nope.txt" in err


def test_policy_flags_are_exclusive(karate_path):
    with pytest.raises(SystemExit):
        main(["cluster", str(karate_path), "--min-degree", "3", "--top-hubs", "2"])


def test_stream_empty_script_matches_cluster(capsys, karate_path, tmp_path):
    (tmp_path / "s.txt").write_text("")
    run(capsys, "cluster", karate_path, "--min-degree", 13, "-o", tmp_path / "c.tsv")
    code, out, _ = run(capsys, "stream", karate_path, tmp_path / "s.txt", "--min-degree", 13, "-o", tmp_path / "s.tsv")
    assert code == 0 and rows(out)["events"] == "0"
    assert (tmp_path / "c.tsv").read_bytes() == (tmp_path / "s.tsv").read_bytes()


def test_stream_verify(capsys, tmp_path):
    edges, script = tmp_path / "g.txt", tmp_path / "s.txt"
    run(capsys, "generate", "--n", 200, "--m", 4, "--p", 0.7, "-o", edges, "--script", script, "--adds", 30, "--removes", 30)
    code, out, _ = run(capsys, "stream", edges, script, "--min-degree", 12, "--verify", "--trace", tmp_path / "t.tsv")
    assert code == 0 and out.rstrip().endswith("verified")
    assert len((tmp_path / "t.tsv").read_text().splitlines()) == 61


def test_stream_invalid_event_names_index(capsys, karate_path, tmp_path):
    (tmp_path / "s.txt").write_text("add 1 2\nremove 1 3\nremove 1 99\n")
    code, _, err = run(capsys, "stream", karate_path, tmp_path / "s.txt", "--min-degree", 13)
    # 1-2 and 1-3 already exist in karate; removing 1-99 fails
    assert code != 0 and "event 2" in err


def test_bench_smoke(capsys, tmp_path):
    code, out, _ = run(capsys, "bench-dynamic", "--n", 100, "--m", 3, "--graphs", 1, "--events", 0)
    assert code == 0 and rows(out)["events"] == "0"
    code, out, _ = run(
        capsys, "bench-dynamic", "--n", 100, "--m", 3, "--graphs", 2, "--events", 5,
        "--kind", "remove", "--counts-out", tmp_path / "c.tsv",
    )
    r = rows(out)
    assert code == 0 and r["events"] == "10" and r["floor"] == "0"
    assert len((tmp_path / "c.tsv").read_text().splitlines()) == 11


def test_bench_jobs_do_not_change_counts(capsys):
    args = ["bench-dynamic", "--n", 150, "--m", 3, "--graphs", 3, "--events", 5]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", 2)
    assert serial == parallel


def test_summary_and_histogram():
    assert dict(bench_summary([2, 2, 3, 10], "add")) == {
        "events": 4, "floor": 2, "fraction_at_floor": 0.5, "mean": 4.25, "max": 10,
    }
    assert log2_histogram([0, 1, 2, 3, 4, 9]) == [(0, 0, 1), (1, 1, 1), (2, 3, 2), (4, 7, 1), (8, 15, 1)]


def test_eval_identical(capsys, karate_path, tmp_path):
    a = tmp_path / "a.tsv"
    run(capsys, "cluster", karate_path, "--min-degree", 13, "-o", a)
    code, out, _ = run(capsys, "eval", a, "--truth-labels", a, "--graph", karate_path)
    r = rows(out)
    assert code == 0 and r["v_measure"] == "1.000000" and r["nmi"] == "1.000000"


def test_eval_node_mismatch(capsys, tmp_path):
    (tmp_path / "a.tsv").write_text("1\t0\n2\t0\n")
    (tmp_path / "b.tsv").write_text("1\t0\n3\t0\n")
    code, _, err = run(capsys, "eval", tmp_path / "a.tsv", "--truth-labels", tmp_path / "b.tsv")
    assert code != 0 and "node sets differ" in err


def test_louvain_karate(capsys, karate_path, tmp_path):
    code, out, _ = run(capsys, "louvain", karate_path, "--levels-prefix", tmp_path / "lvl")
    r = rows(out)
    assert code == 0 and r["communities"] == "4"
    assert float(r["modularity"]) >= 0.40
    assert (tmp_path / "lvl0.tsv").exists()
    code, out, _ = run(capsys, "louvain", karate_path, "--level", 0)
    assert int(rows(out)["communities"]) >= 4


def test_louvain_two_triangles(capsys, tmp_path):
    (tmp_path / "t.txt").write_text("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n")
    code, out, _ = run(capsys, "louvain", tmp_path / "t.txt")
    r = rows(out)
    assert code == 0 and r["communities"] == "2"
    assert float(r["modularity"]) == pytest.approx(5 / 14, abs=1e-6)


def test_seed_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NHC_SEED", "7")
    run(capsys, "generate", "--n", 50, "--m", 2, "-o", tmp_path / "env.txt")
    monkeypatch.delenv("NHC_SEED")
    run(capsys, "generate", "--n", 50, "--m", 2, "-o", tmp_path / "flag.txt", "--seed", 7)
    run(capsys, "generate", "--n", 50, "--m", 2, "-o", tmp_path / "zero.txt")
    assert (tmp_path / "env.txt").read_bytes() == (tmp_path / "flag.txt").read_bytes()
    assert (tmp_path / "env.txt").read_bytes() != (tmp_path / "zero.txt").read_bytes()


def test_bad_seed_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NHC_SEED", "abc")
    code, _, err = run(capsys, "generate", "--n", 50, "--m", 2, "-o", tmp_path / "g.txt")
    assert code != 0 and "NHC_SEED" in err


def test_console_entry_point(karate_path):
    proc = subprocess.run(
        [sys.executable, "-m", "nhc.cli", "cluster", str(karate_path), "--top-hubs", "2"],
        capture_output=True, text=True, check=True,
    )
    assert "hubs\t2" in proc.stdout
