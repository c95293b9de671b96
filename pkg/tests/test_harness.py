import json
import math

import pytest

from sscosamp import cli, harness
from sscosamp.errors import EnumerationSizeError, HypothesisViolatedError
from sscosamp.harness import ExperimentSpec, ResultTable


def spec(kind, **kw):
    return ExperimentSpec(kind=kind, **kw)


def test_spec_validation():
    with pytest.raises(ValueError):
        spec("plot")
    with pytest.raises(ValueError):
        spec("phase", trials=0)
    with pytest.raises(ValueError):
        spec("phase", n=16, d=32, m_grid=(17,))
    with pytest.raises(ValueError):
        spec("phase", n=64, d=32)
    assert spec("bounds", modes=("brute-force",)).modes == ("brute",)


def test_spec_dict_roundtrip():
    s = spec("phase", m_grid=(64, 128), backends=("omp",)).resolved()
    assert ExperimentSpec.from_dict(json.loads(json.dumps(s.to_dict()))) == s


def test_phase_trivial():
    s = spec("phase", n=16, d=32, k=1, m_grid=(16,), trials=1, backends=("oracle",),
             structures=("separated",), matrix="identity")
    t = harness.run_phase(s, workers=1)
    assert t.column("success_rate") == [1.0]


def test_phase_rows_tagged():
    s = spec("phase", n=32, d=64, k=2, m_grid=(16, 32), trials=3, backends=("omp", "cosamp"))
    t = harness.run_phase(s, workers=1)
    assert len(t.rows) == 2 * 2 * 2
    for row in t.rows:
        assert 0 <= row["success_rate"] <= 1
        assert (row["trial_first"], row["trial_last"]) == (0, 2)
        assert row["master_seed"] == 0
    # backends in a cell share instances, so they share the seed key
    assert t.rows[0]["seed_key"] == t.rows[1]["seed_key"]


def test_phase_instance_rebuild():
    s = spec("phase", n=32, d=64, k=2, m_grid=(16,), trials=1)
    inst = harness.phase_instance(s, 16, "clustered", 0)
    assert inst.m == 16 and inst.alpha.k == 2


def test_csv_roundtrip():
    t = harness.run_bounds(spec("bounds", n=8, d=16, k_grid=(1, 2, 5), h_min_grid=(1, 3, 4),
                                modes=("exact", "brute")))
    text = t.to_csv()
    again = ResultTable.from_csv(text)
    assert again.to_csv() == text
    assert again.spec == t.spec
    with pytest.raises(ValueError):
        ResultTable.from_csv("a,b\n1,2\n")


def test_bounds_rows():
    t = harness.run_bounds(spec("bounds", k_grid=(1, 4, 8, 16), epsilon=1e-3))
    rows = [r for r in t.rows if r["status"] == "ok"]
    for r in rows:
        if r["k"] == 1:
            assert r["eta"] == 0 and r["B"] == r["eta_prime"]
        assert math.isfinite(r["omp_threshold"]) == (r["eta"] + r["eta_prime"] < 1)
    infeasible = [r for r in t.rows if r["status"] == "infeasible"]
    assert infeasible and all(r["k"] * r["h_min"] > 1024 for r in infeasible)


def test_bounds_exact_curves():
    t = harness.run_bounds(spec("bounds"))
    for k in (4, 8, 16):
        ex = [r for r in t.rows if r["mode"] == "exact" and r["k"] == k and r["status"] == "ok"]
        env = [r for r in t.rows if r["mode"] == "envelope" and r["k"] == k and r["status"] == "ok"]
        etas = [r["eta"] for r in ex]
        assert all(b <= a + 1e-12 for a, b in zip(etas, etas[1:]))
        assert min(etas) < 1
        for a, b in zip(ex, env):
            assert a["eta"] <= b["eta"] + 1e-12 and a["eta_prime"] <= b["eta_prime"] + 1e-12


def test_bounds_brute_too_large():
    t = harness.run_bounds(spec("bounds", k_grid=(8,), h_min_grid=(16,), modes=("brute",)))
    assert t.rows[0]["status"] == "too-large"


def test_gram_table():
    t = harness.run_gram(spec("gram", n=8, d=16))
    assert t.column("offset") == list(range(9))
    assert t.rows[0]["gram"] == 1.0 and t.rows[0]["envelope"] == math.inf
    assert all(r["gram"] <= r["envelope"] + 1e-12 for r in t.rows)


def test_verify_theorem_noiseless():
    t = harness.run_verify_theorem(spec("verify-theorem", k=8, trials=20), workers=1)
    row = t.rows[0]
    assert row["h_min"] == 107 and row["rate"] == 1.0 and t.passed


def test_verify_theorem_low_margin_not_asserted():
    t = harness.run_verify_theorem(spec("verify-theorem", k=8, trials=10, epsilon=1e-3,
                                        margin=0.1), workers=1)
    assert not t.rows[0]["asserted"] and t.passed


def test_verify_theorem_rejects_bad_cell():
    with pytest.raises(HypothesisViolatedError):
        harness.run_verify_theorem(spec("verify-theorem", k=8, h_min_grid=(50,), trials=1))


def test_verify_lemma_orthonormal():
    t = harness.run_verify_lemma(spec("verify-lemma", n=16, d=16, k_grid=(4,), h_min_grid=(1, 2),
                                      trials=50), workers=1)
    assert all(r["max_deviation"] <= 1e-10 for r in t.rows) and t.passed


def test_verify_lemma_exhaustive():
    t = harness.run_verify_lemma(spec("verify-lemma", n=8, d=16, k_grid=(2, 3), h_min_grid=(2, 4),
                                      exhaustive=True))
    assert t.passed and all(r["eigen_gap"] <= 1e-8 for r in t.rows)


def test_verify_lemma_flags_infeasible():
    t = harness.run_verify_lemma(spec("verify-lemma", n=8, d=16, k_grid=(4,), h_min_grid=(5,),
                                      trials=2))
    assert t.rows[0]["status"] == "infeasible" and not t.rows[0]["asserted"]


def test_verify_l1():
    t = harness.run_verify_l1(spec("verify-l1", k=1, trials=3), workers=1)
    assert t.rows[0]["exact"] == 3 and t.rows[0]["asserted"]
    t = harness.run_verify_l1(spec("verify-l1", k=8, h_min_grid=(2,), trials=2), workers=1)
    assert not t.rows[0]["asserted"] and t.passed


def test_oracle_compare():
    s = spec("oracle-compare", n=8, d=16, k=2, trials=10)
    t = harness.run_oracle_compare(s, workers=1)
    oracle_rows = [r for r in t.rows if r["backend"] == "oracle"]
    assert all(r["median_C"] == 1 and r["max_C"] == 1 and r["min_c"] == 1 for r in oracle_rows)
    assert all(r["dominance_violations"] == 0 for r in t.rows)
    with pytest.raises(EnumerationSizeError):
        harness.run_oracle_compare(spec("oracle-compare", k=4, trials=1))


def test_worker_count(monkeypatch):
    monkeypatch.setenv(harness.WORKERS_ENV, "3")
    assert harness.worker_count() == 3
    monkeypatch.setenv(harness.WORKERS_ENV, "0")
    with pytest.raises(ValueError):
        harness.worker_count()


def test_worker_count_does_not_change_output():
    s = spec("phase", n=32, d=64, k=2, m_grid=(24,), trials=4, backends=("omp", "l1"))
    assert harness.run(s, workers=1).to_csv() == harness.run(s, workers=2).to_csv()


# CLI

def test_cli_bounds_stdout(capsys):
    assert cli.main(["bounds", "--n", "8", "--d", "16", "--k-grid", "2", "--hmin", "1:3"]) == 0
    t = ResultTable.from_csv(capsys.readouterr().out)
    assert t.spec.h_min_grid == (1, 2, 3) and len(t.rows) == 6


def test_cli_out_file(tmp_path):
    out = tmp_path / "g.csv"
    assert cli.main(["gram", "--n", "8", "--d", "16", "--out", str(out)]) == 0
    assert ResultTable.load(out).column("offset")[-1] == 8


def test_cli_verify_failure_exit(monkeypatch, capsys):
    failing = ResultTable(spec("verify-l1"), ("asserted", "passed"), [dict(asserted=True,
                                                                           passed=False)])
    monkeypatch.setattr(harness, "run", lambda s, workers=None: failing)
    assert cli.main(["verify-l1"]) == 1


def test_cli_bad_hypothesis(capsys):
    assert cli.main(["verify-theorem", "--hmin", "50", "--trials", "1"]) == 2


def test_cli_save_failures_and_replay(tmp_path, capsys):
    fails = tmp_path / "fails"
    rc = cli.main(["phase", "--n", "64", "--d", "256", "--k", "4", "--m", "16", "--trials", "2",
                   "--backend", "omp", "--structure", "clustered", "--workers", "1",
                   "--out", str(tmp_path / "p.csv"), "--save-failures", str(fails)])
    assert rc == 0
    saved = sorted(fails.iterdir())
    assert saved
    capsys.readouterr()
    assert cli.main(["replay", str(saved[0]), "--backend", "omp"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["perfect"] is False and len(report["true_support"]) == 4


def test_int_list_parser():
    assert cli._ints("1,3:7:2,10") == (1, 3, 5, 7, 10)
