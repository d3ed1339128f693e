"""End-to-end tests of the command line tool."""

import os
import subprocess

import pytest

CLI = os.environ.get("BIBDEDUP_CLI")
DATA = os.environ.get("BIBDEDUP_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))

pytestmark = pytest.mark.skipif(not CLI, reason="BIBDEDUP_CLI not set")

PM = os.path.join(DATA, "pm_sample.txt")
WOS = os.path.join(DATA, "wos_sample.txt")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_parse_writes_canonical(tmp_path):
    out = tmp_path / "pm.canon"
    r = run("parse", "--input", PM, "--output", str(out))
    assert r.returncode == 0, r.stderr
    assert "parsed 4 PM record(s)" in r.stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "ID\t20166753"
    assert lines[1] == "SRC\tPM"


def test_parse_failure_exits_2(tmp_path):
    r = run("parse", "--input", str(tmp_path / "missing.txt"), "--output", str(tmp_path / "x"))
    assert r.returncode == 2


def test_unknown_method_exits_64(tmp_path):
    r = run("dedup", "--test", PM, "--target", WOS, "--method", "bogus",
            "--output", str(tmp_path / "pairs.tsv"))
    assert r.returncode == 64
    assert "unknown method" in r.stderr


def test_dedup_merge_evaluate_roundtrip(tmp_path):
    pairs = tmp_path / "pairs.tsv"
    r = run("dedup", "--test", PM, "--target", WOS, "--method", "mgf", "--output", str(pairs))
    assert r.returncode == 0, r.stderr
    rows = [line.split("\t") for line in pairs.read_text().splitlines()]
    assert ["20166753", "WOS:000275711400021", "mgf", "1.000000"] in rows
    # the monogram key survives the printed-title line cut
    assert ["20188552", "WOS:000275805900058", "mgf", "1.000000"] in rows

    merged = tmp_path / "merged.canon"
    r = run("merge", "--test", PM, "--target", WOS, "--pairs", str(pairs),
            "--output", str(merged))
    assert r.returncode == 0, r.stderr
    text = merged.read_text()
    assert "ID\tWOS:000275711400021" in text  # target side kept
    assert "ID\t20166753" not in text         # duplicate purged
    assert "ID\t18774337" in text             # unmatched test record kept

    gold = tmp_path / "gold.tsv"
    gold.write_text(
        "20166753\tWOS:000275711400021\n"
        "20188552\tWOS:000275805900058\n"
        "18774337\t-\n"
        "16954285\t-\n"
    )
    report = tmp_path / "report.tsv"
    r = run("evaluate", "--protocol", "gold", "--test", PM, "--target", WOS,
            "--gold", str(gold), "--method", "mgf,tf,af", "--output", str(report))
    assert r.returncode == 0, r.stderr
    lines = report.read_text().splitlines()
    assert lines[0].startswith("method\tgold_duplicates")
    mgf_row = next(line for line in lines if line.startswith("mgf\t"))
    assert mgf_row == "mgf\t2\t2\t2\t0\t0\t1.000\t1.000"


def test_evaluate_all_ten_methods(tmp_path):
    gold = tmp_path / "gold.tsv"
    gold.write_text(
        "20166753\tWOS:000275711400021\n"
        "20188552\tWOS:000275805900058\n"
        "18774337\t-\n"
        "16954285\t-\n"
    )
    report = tmp_path / "report.tsv"
    r = run("evaluate", "--protocol", "gold", "--test", PM, "--target", WOS,
            "--gold", str(gold),
            "--method", "af,tf,mtf,ardf,ssf,mgf,smgf,bgf,svs,csb",
            "--output", str(report))
    assert r.returncode == 0, r.stderr
    lines = report.read_text().splitlines()
    assert len(lines) == 11  # header + one row per method
    rows = {line.split("\t")[0]: line.split("\t") for line in lines[1:]}
    # the monogram key absorbs both title variations; the plain title key
    # misses both; the prefix-bigram key misses only the line-cut title
    assert rows["mgf"][7] == "1.000"
    assert rows["tf"][7] == "0.000"
    assert rows["ssf"][7] == "0.500"
    assert all(row[6] == "1.000" for row in rows.values())


def test_evaluate_json_report(tmp_path):
    import json

    report = tmp_path / "fpm.json"
    r = run("evaluate", "--protocol", "fpm", "--test", PM, "--method", "mgf",
            "--report-format", "json", "--output", str(report))
    assert r.returncode == 0, r.stderr
    doc = json.loads(report.read_text())
    assert doc[0]["method"] == "mgf"
    assert doc[0]["precision"] == 1.0 and doc[0]["recall"] == 1.0


def test_evaluate_gold_requires_gold_file(tmp_path):
    r = run("evaluate", "--protocol", "gold", "--test", PM, "--target", WOS,
            "--method", "mgf", "--output", str(tmp_path / "x"))
    assert r.returncode == 64


def test_evaluate_fpm_is_perfect_for_key_methods(tmp_path):
    out = tmp_path / "fpm.tsv"
    r = run("evaluate", "--protocol", "fpm", "--test", PM, "--method", "mgf,tf,mtf",
            "--output", str(out))
    assert r.returncode == 0, r.stderr
    for line in out.read_text().splitlines()[1:]:
        cols = line.split("\t")
        assert cols[6] == "1.000" and cols[7] == "1.000"


def test_split_creates_disjoint_halves(tmp_path):
    a, b = tmp_path / "a.canon", tmp_path / "b.canon"
    r = run("split", "--input", WOS, "--seed", "3", "--out-a", str(a), "--out-b", str(b))
    assert r.returncode == 0, r.stderr
    ids_a = {l.split("\t")[1] for l in a.read_text().splitlines() if l.startswith("ID\t")}
    ids_b = {l.split("\t")[1] for l in b.read_text().splitlines() if l.startswith("ID\t")}
    assert len(ids_a) == 3 and len(ids_b) == 2
    assert not ids_a & ids_b


def test_benchmark_small(tmp_path):
    out = tmp_path / "bench.tsv"
    r = run("benchmark", "--test-size", "500", "--target-size", "800",
            "--method", "mgf,ssf", "--output", str(out))
    assert r.returncode == 0, r.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "method\ttest_records\ttarget_records\tpairs\tmillis"
    assert len(lines) == 3


def test_keys_command_reproduces_worked_example(tmp_path):
    out = tmp_path / "keys.tsv"
    r = run("keys", "--input", WOS, "--method", "ssf", "--ssf-n", "10",
            "--output", str(out))
    assert r.returncode == 0, r.stderr
    keys = dict(line.split("\t", 1) for line in out.read_text().splitlines())
    assert keys["WOS:000276160700023"] == "hy in of ph 3- (p an th ma ta ay"


def test_identical_config_gives_identical_bytes(tmp_path):
    out1, out2 = tmp_path / "p1.tsv", tmp_path / "p2.tsv"
    for out in (out1, out2):
        r = run("dedup", "--test", PM, "--target", WOS, "--method", "mgf,af,ardf",
                "--output", str(out))
        assert r.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
