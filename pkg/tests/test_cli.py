import json
import subprocess
import sys
from fractions import Fraction

import pytest

from koornwinder_lr.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, RunConfig, UsageError, main, run
from koornwinder_lr.coeff_field import EvalPoint, evaluate, from_json
from koornwinder_lr.koornwinder import e_poly_ramyip, rank2_closed_forms


def test_emu_zero_prints_one():
    assert run(["emu", "--rank", "1", "--weight", "0"]) == (EXIT_OK, "1")


def test_emu_one_has_two_terms():
    code, text = run(["emu", "--rank", "1", "--weight", "1"])
    assert code == EXIT_OK
    assert text.startswith("tn^(1/2)*x1 + ")
    assert text.count("*x1") == 1


def test_emu_eval_is_the_exact_result_evaluated():
    code, text = run(["emu", "--rank", "2", "--weight", "1,0", "--mode", "eval", "--seed", "7", "--output", "json"])
    assert code == EXIT_OK
    out = json.loads(text)
    assert out["seed"] == 7
    point = {k: Fraction(v) for k, v in out["point"].items()}
    exact = e_poly_ramyip((1, 0))
    got = {tuple(t["wt"]): Fraction(int(t["coeff"]["num"]), int(t["coeff"]["den"])) for t in out["terms"]}
    assert got == {wt: evaluate(c, point) for wt, c in exact.terms.items()}


def test_eval_point_comes_from_seed():
    import random

    _, text = run(["lr", "--lambda", "1", "--mu", "1", "--mode", "eval", "--seed", "3", "--output", "json"])
    want = EvalPoint.random(random.Random(3))
    assert json.loads(text)["point"] == {k: str(v) for k, v in want.as_dict().items()}


def test_lr_trivial():
    assert run(["lr", "--rank", "1", "--lambda", "0", "--mu", "3"]) == (EXIT_OK, "{3: 1}")


def test_lr_verify_rank1():
    assert run(["lr", "--rank", "1", "--lambda", "1", "--mu", "1", "--verify"])[0] == EXIT_OK


def test_lr_verify_rank2_reproduces_corrected_forms():
    code, text = run(["lr", "--rank", "2", "--lambda", "1,0", "--mu", "1,1", "--verify", "--output", "json"])
    assert code == EXIT_OK
    F, G = rank2_closed_forms("corrected")
    terms = {tuple(t["nu"]): t["coeff"] for t in json.loads(text)["terms"]}
    assert set(terms) == {(2, 1), (1, 1), (1, 0)}
    assert from_json(terms[(1, 1)]) == F and from_json(terms[(1, 0)]) == G


def test_lr_verify_failure_exit_code(monkeypatch):
    import koornwinder_lr.cli as cli
    from koornwinder_lr.koornwinder import LRExpansion

    monkeypatch.setattr(cli, "lr_oracle", lambda lam, mu, rep: LRExpansion(lam, mu, {}))
    code, text = run(["lr", "--lambda", "1", "--mu", "1", "--verify"])
    assert code == EXIT_VERIFY
    assert "walk sum:" in text and "oracle:" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["lr", "--lambda", "1,0", "--mu", "1"],
        ["lr", "--rank", "3", "--lambda", "1,0", "--mu", "1,0"],
        ["lr", "--lambda", "0,1", "--mu", "1,0"],
        ["emu", "--weight", "a,b"],
        ["emu", "--weight", "1", "--mode", "eval"],
        ["emu", "--weight", "1", "--mode", "fast"],
        ["emu", "--weight", "1", "--jobs", "0"],
        ["emu", "--weight", "1", "--output", "csv", "--dump-walks"],
        ["verify", "--suite", "nope"],
        [],
    ],
)
def test_usage_errors(argv):
    code, text = run(argv)
    assert code == EXIT_USAGE and text.startswith("error:")


def test_run_config_invariants():
    with pytest.raises(UsageError):
        RunConfig(rank=0)
    with pytest.raises(UsageError):
        RunConfig(rank=1, mode="eval")


def test_outputs_are_deterministic():
    argv = ["lr", "--lambda", "1,0", "--mu", "1,0", "--output", "json"]
    assert run(argv) == run(argv)
    argv = ["lr", "--lambda", "1", "--mu", "2", "--mode", "eval", "--seed", "5"]
    assert run(argv) == run(argv)


def test_csv_and_dump_walks():
    code, text = run(["lr", "--lambda", "1", "--mu", "1", "--output", "csv"])
    lines = text.splitlines()
    assert code == EXIT_OK and lines[0] == "nu,coeff" and lines[1] == "2,1"
    code, text = run(["lr", "--lambda", "1", "--mu", "1", "--dump-walks", "--output", "json"])
    out = json.loads(text)
    assert len(out["walks"]) == out["walk_count"]
    assert {"A", "B", "C", "bits", "colors", "target"} <= set(out["walks"][0])
    code, text = run(["emu", "--weight", "-1", "--dump-walks"])
    assert len(text.splitlines()) == 1 + 4


def test_lr_jobs_matches_serial():
    serial = run(["lr", "--lambda", "1,0", "--mu", "1,1"])
    assert run(["lr", "--lambda", "1,0", "--mu", "1,1", "--jobs", "2"]) == serial


def test_verify_suite_report():
    code, text = run(["verify", "--suite", "walks", "--rank", "2", "--output", "json"])
    report = json.loads(text)
    assert code == EXIT_OK and report["seed"] == 0 and report["suite"] == "walks"
    names = [c["invariant"] for c in report["checks"]]
    assert any("2^length" in s for s in names) and any("p1, p2" in s for s in names)
    assert all({"invariant", "instances", "status"} <= set(c) for c in report["checks"])


def test_verify_hecke_pretty():
    code, text = run(["verify", "--suite", "hecke", "--rank", "1", "--seed", "4"])
    assert code == EXIT_OK and text.splitlines()[0].startswith("suite=hecke rank=1 seed=4")
    assert text.endswith("PASSED")


def test_main_writes_usage_errors_to_stderr(capsys):
    assert main(["emu", "--weight", "1,x"]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "koornwinder_lr", "lr", "--lambda", "0", "--mu", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "{3: 1}"


def test_verify_failure_exit_code(monkeypatch):
    import koornwinder_lr.suites as suites

    def broken(run, n, rng):
        run.check("always false", [1, 2], lambda _: False)

    monkeypatch.setitem(suites.SUITES, "walks", broken)
    code, text = run(["verify", "--suite", "walks"])
    assert code == EXIT_VERIFY and "FAIL" in text and text.endswith("FAILED")
