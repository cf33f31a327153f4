"""Command-line front end: exit codes, output formats, determinism."""

from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from gabriel_loc.cli import (
    RunConfig,
    SpecError,
    build_parser,
    main,
    parse_module,
    parse_system,
    run,
)
from gabriel_loc.rings import build_ring
from gabriel_loc.theorems import TheoremReport


def invoke(*argv: str) -> tuple[int, str, str]:
    args = build_args(argv)
    out, err = io.StringIO(), io.StringIO()
    code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


def build_args(argv) -> RunConfig:
    a = build_parser().parse_args(list(argv))
    return RunConfig(a.command, a.ring_spec, a.system_spec, a.module_spec,
                     "json" if a.json else "text", a.budget, a.seed, a.timings)


# ============================================================================
# commands
# ============================================================================


def test_verify_z6_passes():
    code, out, _ = invoke("verify", "--ring", "Z/6")
    assert code == 0
    assert out.rstrip().endswith("reports passed")
    assert "FAIL" not in out


def test_localize_worked_example():
    code, out, _ = invoke("localize", "--ring", "Z/12", "--system", "meets:{4}", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["ring_order"] == 3
    assert rec["kernel"] == "{0,3,6,9}"
    assert rec["torsion"] == "{0,3,6,9}"


def test_localize_a_quotient_module():
    code, out, _ = invoke("localize", "--ring", "Z/12", "--system", "explicit:{1;3}",
                          "--module", "R/{4}", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["order"] == 4 and rec["closed"]


def test_analyze_zero_ring():
    code, out, _ = invoke("analyze-ring", "--ring", "Z/1", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["order"] == 1 and rec["zero_ring"] and rec["primes"] == []


def test_analyze_text_output():
    code, out, _ = invoke("analyze-ring", "--ring", "Z/12")
    assert code == 0
    assert out.startswith("[analyze-ring]")
    assert "primes" in out


def test_systems_of_z12():
    code, out, _ = invoke("systems", "--ring", "Z/12", "--json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert len(recs) == 4
    assert sorted(r["localized_order"] for r in recs) == [1, 3, 4, 12]
    assert {r["method"] for r in recs} == {"exhaustive"}


def test_classify_klein_ring():
    code, out, _ = invoke("classify-epis", "--ring", "Z/2 x Z/2")
    assert code == 0
    assert out.splitlines()[-1] == "5/5 reports passed"


def test_main_entry(capsys):
    assert main(["analyze-ring", "--ring", "Z/7", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["primes"] == ["{0}"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gabriel_loc", "localize", "--ring", "Z/6",
                           "--system", "comax:{3}", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["ring_order"] == 3


# ============================================================================
# errors
# ============================================================================


@pytest.mark.parametrize("argv", [
    ("localize", "--ring", "Z/4", "--system", "explicit:{2;1}"),
    ("localize", "--ring", "Z/12", "--system", "bogus"),
    ("localize", "--ring", "Z/12"),
    ("localize", "--ring", "Z/12", "--system", "meets:{13}"),
    ("localize", "--ring", "Z/12", "--system", "unit", "--module", "S"),
    ("analyze-ring", "--ring", "Q"),
    ("analyze-ring",),
    ("localize", "--ring", "Z/6", "--system", "primes-avoid:{1}"),
])
def test_bad_input_exits_2(argv):
    code, out, err = invoke(*argv)
    assert code == 2
    assert err.startswith("error:")


def test_budget_exits_3():
    code, _, err = invoke("classify-epis", "--ring", "Z/12", "--budget", "10")
    assert code == 3
    assert "budget" in err


def test_invalid_config():
    with pytest.raises(SpecError):
        RunConfig("verify", None, budget=0)
    with pytest.raises(SpecError):
        RunConfig("dance", None)
    assert main(["verify", "--budget", "0"]) == 2


def test_spec_grammars():
    R = build_ring("Z/12")
    assert len(parse_system("map:Z/4", R)) == 2
    # ideals not inside (2): (1) and (3)
    assert len(parse_system("primes-avoid:{2}", R)) == 2
    assert parse_module("R/{4} + R/{6}", R).size == 24
    with pytest.raises(SpecError):
        parse_system("map:Z/4:{0,1}", R)


# ============================================================================
# output properties
# ============================================================================


def test_json_lines_round_trip_byte_identical():
    code, out, _ = invoke("verify", "--ring", "Z/12", "--json")
    assert code == 0
    for line in out.splitlines():
        assert TheoremReport.from_json(line).to_json() == line
        assert set(json.loads(line)) == {"theorem", "instance", "verdict", "witness", "ms"}


def test_same_seed_same_bytes():
    a = invoke("verify", "--ring", "Z/4 x Z/2", "--json", "--seed", "3")[1]
    b = invoke("verify", "--ring", "Z/4 x Z/2", "--json", "--seed", "3")[1]
    assert a == b


def test_reports_are_sorted():
    out = invoke("verify", "--ring", "Z/6", "--json")[1]
    reports = [TheoremReport.from_json(line) for line in out.splitlines()]
    assert [r.sort_key() for r in reports] == sorted(r.sort_key() for r in reports)


def test_timings_are_opt_in():
    out = invoke("classify-epis", "--ring", "Z/12", "--json", "--timings")[1]
    assert all(isinstance(json.loads(line)["ms"], int) for line in out.splitlines())
    out = invoke("classify-epis", "--ring", "Z/12", "--json")[1]
    assert {json.loads(line)["ms"] for line in out.splitlines()} == {0}
