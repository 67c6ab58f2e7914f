"""CLI contract: commands, reports, exit codes, reproducibility."""

import json
import subprocess
import sys

import pytest

from skewmm import RatMatrix, read_matrix_file, serialize_matrix, write_matrix_file
from skewmm.cli import (EXIT_CHECK_FAILED, EXIT_FORMAT, EXIT_IO, EXIT_NOT_EQUAL,
                        EXIT_OK, EXIT_USAGE, main)


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture
def workdir(tmp_path):
    return tmp_path


def gen(workdir, name, *, p=7, layers="0", seed=1, extra=()):
    path = workdir / name
    rc = run_cli("gen", "--p", str(p), "--layers", layers, "--seed", str(seed),
                 "-o", str(path), *extra)
    assert rc == EXIT_OK
    return path


# ---------------------------------------------------------------------------
# gen / analyze
# ---------------------------------------------------------------------------

def test_gen_is_deterministic(workdir):
    a = gen(workdir, "a.mat", seed=5)
    b = gen(workdir, "b.mat", seed=5)
    assert a.read_bytes() == b.read_bytes()
    c = gen(workdir, "c.mat", seed=6)
    assert c.read_bytes() != a.read_bytes()


def test_gen_layered_analyze_roundtrip(workdir, capsys):
    path = gen(workdir, "a.mat", p=7, layers="0", seed=1)
    assert run_cli("analyze", str(path)) == EXIT_OK
    out = capsys.readouterr().out
    assert "p: 7" in out
    assert "skew-sparsity: 1" in out
    assert "support: {0}" in out
    assert "norm[0]:" in out


def test_gen_dense_is_generically_full(workdir, capsys):
    path = gen(workdir, "a.mat", p=7, layers="dense", seed=1)
    run_cli("analyze", str(path))
    assert "skew-sparsity: 6" in capsys.readouterr().out


def test_analyze_zero_matrix(workdir, capsys):
    path = workdir / "z.mat"
    write_matrix_file(path, RatMatrix.zeros(7))
    assert run_cli("analyze", str(path)) == EXIT_OK
    out = capsys.readouterr().out
    assert "skew-sparsity: 0" in out
    assert "support: {}" in out


def test_gen_rejects_bad_input(workdir):
    out = workdir / "x.mat"
    assert run_cli("gen", "--p", "9", "--layers", "0", "-o", str(out)) == EXIT_USAGE
    assert run_cli("gen", "--p", "7", "--layers", "8", "-o", str(out)) == EXIT_USAGE
    assert run_cli("gen", "--p", "7", "--layers", "zz", "-o", str(out)) == EXIT_USAGE
    assert run_cli("gen", "--p", "7", "--layers", "0", "--seed", "-1", "-o", str(out)) == EXIT_USAGE
    assert run_cli("gen", "--p", "7", "--layers", "0", "--coeff-range", "0",
                   "-o", str(out)) == EXIT_USAGE


# ---------------------------------------------------------------------------
# mul
# ---------------------------------------------------------------------------

def test_mul_det_identity_files(workdir, capsys):
    ident = workdir / "i.mat"
    write_matrix_file(ident, RatMatrix.identity(7))
    out = workdir / "c.mat"
    rc = run_cli("mul", "--algo", "det", str(ident), str(ident), "-o", str(out))
    assert rc == EXIT_OK
    report = json.loads(capsys.readouterr().err)
    assert report["algorithm"] == "det"
    assert report["t_used"] == 1
    assert read_matrix_file(out) == RatMatrix.identity(7)


def test_mul_all_algorithms_agree(workdir, capsys):
    a = gen(workdir, "a.mat", layers="0,2", seed=3)
    b = gen(workdir, "b.mat", layers="dense", seed=4)
    outputs = {}
    for algo, extra in (("naive", ()), ("det", ()), ("mc", ("--nu", "0.01", "--seed", "7"))):
        out = workdir / f"c_{algo}.mat"
        rc = run_cli("mul", "--algo", algo, str(a), str(b), "-o", str(out), *extra)
        assert rc == EXIT_OK
        outputs[algo] = out.read_bytes()
    assert outputs["naive"] == outputs["det"] == outputs["mc"]
    capsys.readouterr()


def test_mul_check_flag(workdir, capsys):
    a = gen(workdir, "a.mat", layers="1", seed=9)
    b = gen(workdir, "b.mat", layers="0,1", seed=10)
    out = workdir / "c.mat"
    rc = run_cli("mul", "--algo", "det", str(a), str(b), "-o", str(out), "--check")
    assert rc == EXIT_OK
    assert json.loads(capsys.readouterr().err)["correct"] is True


def test_mul_check_failure_exits_4(workdir, monkeypatch, capsys):
    # force the oracle to disagree so the det --check guard path is exercised
    from skewmm import matmul as matmul_mod

    a = gen(workdir, "a.mat", layers="1", seed=9)
    b = gen(workdir, "b.mat", layers="0,1", seed=10)
    monkeypatch.setattr(matmul_mod, "naive_mul",
                        lambda A, B, counter=None: RatMatrix.zeros(A.p))
    rc = run_cli("mul", "--algo", "det", str(a), str(b),
                 "-o", str(workdir / "c.mat"), "--check")
    assert rc == EXIT_CHECK_FAILED
    capsys.readouterr()


def test_mul_flag_validation(workdir):
    a = gen(workdir, "a.mat")
    b = gen(workdir, "b.mat", seed=2)
    out = workdir / "c.mat"
    # mc needs --nu; det must not get mc-only flags
    assert run_cli("mul", "--algo", "mc", str(a), str(b), "-o", str(out)) == EXIT_USAGE
    assert run_cli("mul", "--algo", "mc", "--nu", "2", str(a), str(b), "-o", str(out)) == EXIT_USAGE
    assert run_cli("mul", "--algo", "det", "--nu", "0.5", str(a), str(b), "-o", str(out)) == EXIT_USAGE
    assert run_cli("mul", "--algo", "bogus", str(a), str(b), "-o", str(out)) == EXIT_USAGE


def test_mul_p_mismatch_is_format_error(workdir):
    a = gen(workdir, "a.mat", p=7)
    b = gen(workdir, "b.mat", p=5)
    assert run_cli("mul", "--algo", "det", str(a), str(b),
                   "-o", str(workdir / "c.mat")) == EXIT_FORMAT


def test_missing_file_is_io_error(workdir):
    a = gen(workdir, "a.mat")
    assert run_cli("mul", "--algo", "det", str(a), str(workdir / "nope.mat"),
                   "-o", str(workdir / "c.mat")) == EXIT_IO


def test_corrupt_file_is_format_error(workdir):
    bad = workdir / "bad.mat"
    bad.write_text("skewmm-matrix v1 p=7\nnot a matrix\n")
    a = gen(workdir, "a.mat")
    assert run_cli("mul", "--algo", "det", str(a), str(bad),
                   "-o", str(workdir / "c.mat")) == EXIT_FORMAT


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_true_product(workdir, capsys):
    a = gen(workdir, "a.mat", layers="dense", seed=11)
    b = gen(workdir, "b.mat", layers="dense", seed=12)
    c = workdir / "c.mat"
    run_cli("mul", "--algo", "naive", str(a), str(b), "-o", str(c))
    capsys.readouterr()
    rc = run_cli("verify", str(c), str(a), str(b), "--mu", "0.01", "--seed", "3")
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "rounds: 7" in out
    assert "equal" in out


def test_verify_detects_corruption(workdir, capsys):
    a = gen(workdir, "a.mat", layers="dense", seed=11)
    b = gen(workdir, "b.mat", layers="dense", seed=12)
    c = workdir / "c.mat"
    run_cli("mul", "--algo", "naive", str(a), str(b), "-o", str(c))
    M = read_matrix_file(c)
    rows = [list(r) for r in M.rows]
    rows[0][0] += 1
    write_matrix_file(c, RatMatrix(M.p, rows))
    rc = run_cli("verify", str(c), str(a), str(b), "--mu", "0.001", "--seed", "3")
    assert rc == EXIT_NOT_EQUAL
    assert "not equal" in capsys.readouterr().out


def test_verify_validation(workdir):
    a = gen(workdir, "a.mat")
    assert run_cli("verify", str(a), str(a), str(a), "--mu", "1") == EXIT_USAGE


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def test_bench_records(workdir):
    out = workdir / "bench.jsonl"
    rc = run_cli("bench", "--p-list", "7", "--t-list", "1,2", "--algos", "naive,det,mc",
                 "--seeds", "1..2", "--check", "--json", str(out))
    assert rc == EXIT_OK
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 2 * 3 * 2
    for rec in records:
        assert rec["p"] == 7
        assert rec["correct"] is True
        assert rec["I"] == [0]
    det = {rec["t_used"]: rec["rational_mul_count"]
           for rec in records if rec["algorithm"] == "det"}
    assert det == {1: 72, 2: 144}  # 2 * t * 36
    naive_counts = {rec["rational_mul_count"] for rec in records if rec["algorithm"] == "naive"}
    assert naive_counts == {216}   # t-independent baseline


def test_bench_deterministic_counts(workdir):
    out1, out2 = workdir / "b1.jsonl", workdir / "b2.jsonl"
    for out in (out1, out2):
        assert run_cli("bench", "--p-list", "5", "--t-list", "1,2", "--algos", "det,mc",
                       "--seeds", "1,2,3", "--json", str(out)) == EXIT_OK
    strip = lambda rec: {k: v for k, v in rec.items() if k != "wall_time_ms"}
    r1 = [strip(json.loads(line)) for line in out1.read_text().splitlines()]
    r2 = [strip(json.loads(line)) for line in out2.read_text().splitlines()]
    assert r1 == r2


def test_bench_threaded_matches_serial(workdir, monkeypatch):
    serial, threaded = workdir / "s.jsonl", workdir / "t.jsonl"
    assert run_cli("bench", "--p-list", "5", "--t-list", "1,2", "--algos", "det",
                   "--seeds", "1..3", "--json", str(serial)) == EXIT_OK
    monkeypatch.setenv("SKEWMM_THREADS", "3")
    assert run_cli("bench", "--p-list", "5", "--t-list", "1,2", "--algos", "det",
                   "--seeds", "1..3", "--json", str(threaded)) == EXIT_OK
    strip = lambda rec: {k: v for k, v in rec.items() if k != "wall_time_ms"}
    assert ([strip(json.loads(l)) for l in serial.read_text().splitlines()]
            == [strip(json.loads(l)) for l in threaded.read_text().splitlines()])


def test_bench_validation(workdir):
    out = str(workdir / "b.jsonl")
    assert run_cli("bench", "--p-list", "7", "--t-list", "9", "--json", out) == EXIT_USAGE
    assert run_cli("bench", "--p-list", "8", "--t-list", "1", "--json", out) == EXIT_USAGE
    assert run_cli("bench", "--p-list", "7", "--t-list", "1", "--algos", "fast",
                   "--json", out) == EXIT_USAGE
    assert run_cli("bench", "--p-list", "7", "--t-list", "1", "--seeds", "5..1",
                   "--json", out) == EXIT_USAGE


def test_bench_bad_thread_env(workdir, monkeypatch):
    monkeypatch.setenv("SKEWMM_THREADS", "zero")
    assert run_cli("bench", "--p-list", "5", "--t-list", "1",
                   "--json", str(workdir / "b.jsonl")) == EXIT_USAGE


# ---------------------------------------------------------------------------
# selftest and entry points
# ---------------------------------------------------------------------------

def test_selftest_passes(capsys):
    rc = run_cli("selftest")
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "VW = pI verified for p in {3, 5, 7, 11, 13}" in out
    assert "phi orientation: reversed" in out
    assert "layer-0 conjugation side: A^-1 (P - Q) A" in out
    assert "selftest: all properties hold" in out


def test_usage_error_exit_code():
    assert run_cli("no-such-command") == EXIT_USAGE
    assert run_cli() == EXIT_USAGE


def test_console_entry_point(workdir):
    out = workdir / "a.mat"
    proc = subprocess.run(
        [sys.executable, "-m", "skewmm.cli", "gen", "--p", "5", "--layers", "0,1",
         "--seed", "2", "-o", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    M = read_matrix_file(out)
    assert M.p == 5
    assert serialize_matrix(M).encode() == out.read_bytes()
