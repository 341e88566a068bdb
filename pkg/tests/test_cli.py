import json

import pytest

from imtv.verify.checks import (REGISTRY, UNDECIDABLE, CheckSpec, InvalidParams, UnknownCheck,
                                Report, exit_code, report_json, run_check, run_checks)
from imtv.verify.cli import main


def test_unknown_check_id():
    with pytest.raises(UnknownCheck):
        CheckSpec("no-such-check")


def test_invalid_params():
    with pytest.raises(InvalidParams):
        CheckSpec("example-k3", {"nonsense": 1})
    with pytest.raises(ValueError, match="residue must satisfy"):
        CheckSpec("thm-main-exact", {"levels": [[2, 3]]})


def test_thm_main_example():
    rep = run_check(CheckSpec("thm-main-exact", {"levels": [[2, 1]], "M": 41, "max_weight": 7}))
    assert rep.status == "pass"
    assert rep.cases[0].coeff_diff == "0 mismatched"


def test_example_k3_pass_and_skip():
    rep = run_check(CheckSpec("example-k3", {"a": 1, "P": 30}))
    assert rep.status == "pass" and all(float(c.delta) < 1e-10 for c in rep.cases)
    rep = run_check(CheckSpec("example-k3", {"tol": "1e-50", "P": 20}))
    assert rep.status == "skipped" and rep.reason == UNDECIDABLE


def test_failures_carry_counterexamples():
    rep = run_check(CheckSpec("example-k3", {"_nudge": "1e-6"}))
    assert rep.status == "fail" and rep.counterexamples
    rep = run_check(CheckSpec("thm-main-exact", {"levels": [[1, 1]], "M": 8, "max_weight": 4, "_drop": 0}))
    assert rep.status == "fail"
    bad = rep.counterexamples[1]
    assert bad.lhs != bad.rhs and bad.coeff_diff not in ("0", None)


def test_negative_controls_check():
    rep = run_check(CheckSpec("negative-controls"))
    assert rep.status == "pass"
    assert all(c.lhs == "fail" for c in rep.cases)


def test_exit_codes():
    mk = lambda status: Report("x", "exact", {}, status)
    assert exit_code([mk("pass")]) == 0
    assert exit_code([mk("pass"), mk("skipped")]) == 0
    assert exit_code([mk("pass"), mk("fail")]) == 1
    assert exit_code([mk("skipped")]) == 3


def test_report_is_deterministic():
    specs = [CheckSpec("reductions"), CheckSpec("example-k3"), CheckSpec("specialization-exact", {"count": 5})]
    a = json.dumps(report_json(run_checks(specs), with_time=False))
    b = json.dumps(report_json(run_checks(list(reversed(specs)), jobs=2), with_time=False))
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] and doc["tool_version"]
    assert [c["id"] for c in doc["checks"]] == sorted(c["id"] for c in doc["checks"])
    assert set(doc["checks"][0]) >= {"id", "params", "status", "cases"}


def test_catalogue_entries_have_statements():
    for info in REGISTRY.values():
        assert info.kind in ("exact", "numeric") and info.statement


def test_cli_eval(capsys):
    assert main(["eval", "--level", "2", "--residue", "1", "--index", "2,1", "--r", "1",
                 "--precision", "30", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"].startswith("1.3810359531144620679683203399")
    assert float(out["err"]) < 1e-30


@pytest.mark.parametrize("argv, message", [
    (["eval", "--level", "2", "--residue", "3", "--index", "2"], "residue must satisfy 1 ≤ a ≤ N"),
    (["eval", "--level", "2", "--residue", "1", "--index", "2,x"], "malformed index"),
    (["eval", "--level", "2", "--residue", "1", "--index", "1,2"], "not admissible"),
    (["verify", "--check", "nope"], "unknown check id"),
])
def test_cli_errors(argv, message, capsys):
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert message in err and "usage:" in err


def test_cli_unknown_flag():
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--bogus"])
    assert exc.value.code == 2


def test_cli_verify_json_stdout(capsys):
    assert main(["verify", "--check", "thm-main-exact", "--param", "M=20", "--param", "max_weight=5",
                 "--json", "-"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["checks"][0]["status"] == "pass"


def test_cli_verify_skipped_exit(capsys):
    assert main(["verify", "--check", "example-k3", "--param", "tol=1e-50", "--param", "P=20"]) == 3
    assert "SKIPPED" in capsys.readouterr().out


def test_cli_config_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"precision": 15, "r": "1/2", "checks": {"example-k3": {"P": 20}}}))
    assert main(["--config", str(cfg), "eval", "--level", "2", "--residue", "1", "--index", "2,1",
                 "--precision", "25", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["precision"] == 25 and out["r"] == "1/2"
    assert main(["--config", str(cfg), "verify", "--check", "example-k3", "--json", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["checks"][0]["params"]["P"] == 20


def test_cli_expand(capsys):
    assert main(["expand", "--index", "2,1,1"]) == 0
    assert capsys.readouterr().out.split("\n")[:4] == ["t(2,1,1)", "r t(2,2)", "r t(3,1)", "r^2 t(4)"]
    assert main(["expand", "--level", "2", "--residue", "1", "--orders", "3", "--max-weight", "3"]) == 0
    assert "z^3 u^0 v^1 w^0: 1/9 + 1/27*r" in capsys.readouterr().out
    assert main(["expand", "--level", "2", "--residue", "1", "--orders", "5", "--oracle"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows and all(r["equal"] for r in rows)
    assert set(rows[0]) == {"level", "k", "n", "s", "m", "lhs", "rhs", "equal"}


def test_cli_cache(tmp_path, capsys):
    d = str(tmp_path)
    assert main(["--cache-dir", d, "eval", "--level", "2", "--residue", "1", "--index", "2,1"]) == 0
    capsys.readouterr()
    assert main(["--cache-dir", d, "cache", "inspect"]) == 0
    assert "2:1:2,1:30:none" in capsys.readouterr().out
    assert main(["--cache-dir", d, "cache", "clear"]) == 0
    assert "removed 1" in capsys.readouterr().out
