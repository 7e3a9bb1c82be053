"""CLI: job parsing, report payloads, exit codes, round trips."""

import json

import pytest

from padic_dm import ParseError
from padic_dm.cli import main, parse_job, run
from padic_dm.grammar import (matrix_str, parse_matrix, parse_operator,
                              parse_scalar, scalar_str)


def job_args(*extra):
    return ["--field", "gauss:p=5:vars=x", "--cmd", "radii",
            "--op", "T^2 - (1/5)*T + x", *extra]


def test_parse_job_basic():
    job = parse_job(job_args())
    assert job.field.kind == "gauss" and job.field.p == 5
    assert job.field.variables == ("x",)
    assert job.command == "radii"
    assert job.op_text.startswith("T^2")


def test_parse_job_missing_input():
    with pytest.raises(ParseError):
        parse_job(["--field", "gauss:p=5:vars=x", "--cmd", "radii"])


def test_parse_job_multi():
    job = parse_job(["--field", "gauss:p=5:vars=x,y", "--cmd",
                     "multi-decompose", "--mat", "1/5,0;0,0",
                     "--mat", "0,0;0,1/5"])
    assert job.field.nderiv == 2
    assert len(job.mat_texts) == 2


def test_parse_job_bad_field():
    with pytest.raises(ParseError):
        parse_job(["--field", "gauss:vars=x", "--cmd", "radii", "--op", "T"])
    with pytest.raises(ParseError):
        parse_job(["--field", "frob:z", "--cmd", "radii", "--op", "T"])


def test_run_radii_report():
    report, code = run(parse_job(job_args()))
    assert code == 0 and report["ok"]
    entries = report["result"]["profile"]["entries"]
    assert [(e["lv"], e["mult"]) for e in entries] == [("1/4", 1), ("5/4", 1)]
    assert report["result"]["rationality"]["ok"]
    assert report["schema"] == 1


def test_run_radii_boundary_flag():
    # a root norm exactly at the derivation norm is clipped and flagged
    report, code = run(parse_job(
        ["--field", "gauss:p=5:vars=x", "--cmd", "radii", "--op", "T - x"]))
    assert code == 0
    assert report["result"]["profile"]["boundary_clipped"] is True


def test_run_decompose_pure():
    report, code = run(parse_job(
        ["--field", "gauss:p=5:vars=x", "--cmd", "decompose",
         "--op", "T - 1/5", "--precision", "N=10,d=32"]))
    assert code == 0
    comps = report["result"]["decomposition"]["components"]
    assert len(comps) == 1 and comps[0]["exact"]


def test_run_decompose_budget_abort():
    report, code = run(parse_job(
        ["--field", "gauss:p=5:vars=x", "--cmd", "decompose",
         "--op", "T^2 - (1/5)*T + x", "--precision", "N=10,d=32,max_iter=0"]))
    assert code == 3
    assert report["error"]["code"] == "iteration-budget"


def test_env_override(monkeypatch):
    monkeypatch.setenv("PADIC_DM_MAX_ITER", "0")
    report, code = run(parse_job(
        ["--field", "gauss:p=5:vars=x", "--cmd", "decompose",
         "--op", "T^2 - (1/5)*T + x", "--precision", "N=10,d=32"]))
    assert code == 3


def test_run_multi_decompose():
    report, code = run(parse_job(
        ["--field", "gauss:p=5:vars=x,y", "--cmd", "multi-decompose",
         "--mat", "1/5,0;0,0", "--mat", "0,0;0,1/5",
         "--precision", "N=10,d=28"]))
    assert code == 0
    keys = sorted(tuple(c["key"]) for c in
                  report["result"]["decomposition"]["components"])
    assert keys == [("1/4", "5/4"), ("5/4", "1/4")]


def test_run_dual_and_verify():
    report, code = run(parse_job(
        ["--field", "gauss:p=5:vars=x", "--cmd", "dual", "--mat", "1/5,0;0,x"]))
    assert code == 0 and report["result"]["profiles_equal"]
    report2, code2 = run(parse_job(
        ["--field", "gauss:p=5:vars=x", "--cmd", "verify",
         "--mat", "1/5,0;0,x", "--precision", "N=10,d=32"]))
    assert code2 == 0 and report2["ok"]
    assert "decomposition" in report2["result"]


def test_determinism():
    args = job_args()
    r1, _ = run(parse_job(args))
    r2, _ = run(parse_job(args))
    r1.pop("timing_ms")
    r2.pop("timing_ms")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_main_exit_codes(capsys):
    assert main(job_args()) == 0
    out = capsys.readouterr().out
    json.loads(out)
    assert main(["--field", "gauss:p=5:vars=x", "--cmd", "radii"]) == 1


def test_scalar_roundtrip(gauss5):
    samples = ["(x^2+1)/(5*x)", "1/5", "-x", "3*x^2 - 2*x + 7/25",
               "(x+1)/(1+5*x)"]
    for text in samples:
        value = parse_scalar(text, gauss5)
        again = parse_scalar(scalar_str(value), gauss5)
        assert again == value


def test_operator_roundtrip(gauss5):
    p = parse_operator("T^2 - (1/5)*T + x", gauss5)
    assert p.degree == 2
    q = parse_operator(str(p), gauss5)
    assert q == p
    # coefficient notation: T*x and x*T denote the same operator
    assert parse_operator("T*x", gauss5) == parse_operator("x*T", gauss5)


def test_matrix_roundtrip(gauss5):
    m = parse_matrix("1/5,0;x,(x+1)/(1+5*x)", gauss5)
    m2 = parse_matrix(matrix_str(m), gauss5)
    assert all((a - b).is_zero() for ra, rb in zip(m, m2)
               for a, b in zip(ra, rb))


def test_parse_errors_have_positions(gauss5):
    with pytest.raises(ParseError) as err:
        parse_scalar("x + $", gauss5)
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse_scalar("T + 1", gauss5)   # T not allowed in scalar input
    with pytest.raises(ParseError):
        parse_scalar("x + w", gauss5)   # unknown symbol
    with pytest.raises(ParseError):
        parse_operator("1/T", gauss5)   # operator in a denominator
