"""Report serialization round-trips, CLI behavior, exit codes, determinism."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

import pytest

from projnorm.cli import main
from projnorm.report import Row, ScanReport


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def sample_report():
    return ScanReport.build(
        title="sample",
        params=("d", "r"),
        columns=("status", "margin", "ok", "note"),
        provenance=("op",) * 4,
        rows=[
            ((2, 1), ("fine", Fraction(3, 7), True, None)),
            ((2, 2), ("bad", Fraction(-14, 1), False, "x")),
        ],
    )


def test_report_json_round_trip():
    report = sample_report()
    assert ScanReport.from_json(report.to_json()) == report


def test_report_rejects_fraction_lookalike_strings():
    with pytest.raises(ValueError):
        ScanReport.build(
            "t", ("a",), ("b",), ("p",), [((1,), ("3/4",))]
        ).to_json()


def test_report_sorting_and_shape_checks():
    report = ScanReport.build(
        "t", ("a",), ("b",), ("p",), [((2,), (1,)), ((1,), (2,))], sort=True
    )
    assert [row.params for row in report.rows] == [(1,), (2,)]
    with pytest.raises(ValueError):
        ScanReport("t", ("a",), ("b",), (), (Row((1,), (2,)),))
    with pytest.raises(ValueError):
        ScanReport("t", ("a",), ("b",), ("p",), (Row((1, 2), (3,)),))


def test_report_csv_and_table_render():
    report = sample_report()
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0] == "d,r,status,margin,ok,note"
    assert "3/7" in csv_text and "-14" in csv_text and "true" in csv_text
    table = report.to_table()
    assert table.startswith("# sample")
    with pytest.raises(ValueError):
        report.render("yaml")


def test_cli_check_surface_hyp_json():
    code, out, _ = run_cli("--format", "json", "check", "surface-hyp", "--d", "4", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    rows = {(row["params"]["kind"], row["params"]["name"]): row["values"] for row in doc["rows"]}
    verdict = rows[("verdict", "2-normality-count")]
    assert verdict["status"] == "not-2-normal"
    assert verdict["lhs"] == "36/1" and verdict["rhs"] == "40/1"
    assert rows[("value", "c2")]["value"] == "14/1"
    report = ScanReport.from_json(out)
    assert ScanReport.from_json(report.to_json()) == report


def test_cli_parity_error_exit_code():
    code, out, err = run_cli("check", "surface-hyp", "--d", "4", "--r", "3")
    assert code == 2
    assert "r*(d-1) must be even" in err
    assert out == ""


def test_cli_verify_formulas_pass():
    code, out, _ = run_cli("verify-formulas", "--ranks", "1..3", "--trials", "4", "--seed", "7")
    assert code == 0
    assert "false" not in out


def test_cli_verify_formulas_deterministic():
    runs = [run_cli("--format", "json", "verify-formulas", "--ranks", "1..2", "--trials", "3", "--seed", "9") for _ in range(2)]
    assert runs[0] == runs[1]


def test_cli_seed_env_default(monkeypatch):
    monkeypatch.setenv("PROJNORM_SEED", "13")
    a = run_cli("verify-formulas", "--ranks", "1..2", "--trials", "3")
    b = run_cli("verify-formulas", "--ranks", "1..2", "--trials", "3", "--seed", "13")
    assert a == b


def test_cli_preset_quartic_k3():
    code, out, _ = run_cli("--format", "json", "check", "preset", "quartic-k3", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    assert "d=4" in doc["title"]
    code, _, err = run_cli("check", "preset", "no-such-variety")
    assert code == 2 and "unknown preset" in err


def test_cli_check_surface_matches_hypersurface_route():
    code, out, _ = run_cli(
        "--format", "json", "check", "surface",
        "--h2", "4", "--hk", "0", "--k2", "0", "--chi", "2",
        "--r", "2", "--c1", "3", "--c2", "14",
    )
    assert code == 0
    doc = json.loads(out)
    rows = {(row["params"]["kind"], row["params"]["name"]): row["values"] for row in doc["rows"]}
    assert rows[("verdict", "acm-degeneracy")]["status"] == "not-2-normal"
    assert rows[("value", "degeneracy_h1_lower")]["value"] == "17/1"
    assert rows[("value", "casnati_c2_reference")]["value"] == "14/1"


def test_cli_check_curve_rules():
    code, out, _ = run_cli(
        "--format", "json", "check", "curve", "--g", "3", "--d", "4",
        "--p", "2", "--cliff", "1", "--general", "--very-ample",
    )
    assert code == 0
    doc = json.loads(out)
    status = {
        row["params"]["name"]: row["values"]["status"]
        for row in doc["rows"]
        if row["params"]["kind"] == "verdict"
    }
    assert status["general-sharp-degree"] == "positive"
    assert status["mrc-count"] == "positive"
    assert status["pn-degree"] == "inconclusive"
    assert status["low-degree-window"] == "positive"  # d = g+1


def test_cli_threefold_boundary():
    code, out, _ = run_cli("--format", "json", "check", "threefold-hyp", "--d", "5", "--r", "3")
    assert code == 0
    doc = json.loads(out)
    rows = {(row["params"]["kind"], row["params"]["name"]): row["values"] for row in doc["rows"]}
    plain = rows[("verdict", "2-normality-count")]
    assert plain["status"] == "inconclusive" and plain["relation"] == "="
    strong = rows[("verdict", "strong-2-normality-count")]
    assert strong["status"] == "not-strongly-2-normal"


def test_cli_scans_sorted_and_deterministic():
    for argv in (
        ("scan", "ci", "--rmax", "9"),
        ("scan", "p3", "--dmax", "5", "--rmax", "4"),
        ("scan", "p4", "--dmax", "6", "--rmax", "4"),
        ("scan", "curve", "--gmax", "4", "--dmax", "6"),
        ("kko-audit",),
    ):
        first = run_cli("--format", "json", *argv)
        second = run_cli("--format", "json", *argv)
        assert first == second and first[0] == 0
        doc = json.loads(first[1])
        params = [tuple(row["params"].values()) for row in doc["rows"]]
        assert params == sorted(params)


def test_cli_csv_format():
    code, out, _ = run_cli("--format", "csv", "scan", "p3", "--dmax", "4", "--rmax", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "d,r,parity,status,dim_sym2_h0,h0_sym2,slack3"
    assert len(lines) == 1 + 3 * 3


def test_cli_verification_failure_exit_code(monkeypatch):
    import projnorm.cli as cli_mod

    def fake_suite(ranks, trials, seed):
        return sample_report(), False

    monkeypatch.setattr(cli_mod, "formula_suite", fake_suite)
    code, out, _ = run_cli("verify-formulas")
    assert code == 3
    assert out.startswith("# sample")


from fractions import Fraction as _F

from hypothesis import given
from hypothesis import strategies as st

_cells = st.one_of(
    st.integers(min_value=-10**9, max_value=10**9),
    st.booleans(),
    st.none(),
    st.fractions(min_value=-100, max_value=100, max_denominator=97),
    st.text(alphabet="abz -_:", max_size=8),
)


@given(st.lists(st.tuples(st.integers(0, 50), _cells, _cells), min_size=0, max_size=8))
def test_report_round_trip_property(rows):
    report = ScanReport.build(
        "prop",
        ("i",),
        ("x", "y"),
        ("p", "p"),
        [((i,), (x, y)) for i, x, y in rows],
    )
    assert ScanReport.from_json(report.to_json()) == report


def test_cli_format_flag_after_subcommand():
    before = run_cli("--format", "json", "check", "surface-hyp", "--d", "4", "--r", "2")
    after = run_cli("check", "surface-hyp", "--d", "4", "--r", "2", "--format", "json")
    assert before == after


def test_cli_parse_ranks_single_value():
    from projnorm.cli import _parse_ranks

    assert list(_parse_ranks("4")) == [4]
    assert list(_parse_ranks("2..5")) == [2, 3, 4, 5]


def test_cli_divisor_spec_error():
    code, _, err = run_cli(
        "check", "surface", "--h2", "4", "--hk", "0", "--k2", "0", "--chi", "2",
        "--r", "2", "--c1", "1,2,3", "--c2", "14",
    )
    assert code == 2 and "divisor spec" in err


def test_cli_preset_unsupported_kind(tmp_path, monkeypatch):
    import projnorm.cli as cli_mod

    monkeypatch.setattr(cli_mod, "_load_presets", lambda: {"odd": ("curve-hyp", {"d": "3"})})
    code, _, err = run_cli("check", "preset", "odd")
    assert code == 2 and "unsupported kind" in err


def test_cross_process_determinism_under_hash_randomization():
    import os
    import subprocess
    import sys

    def run(hashseed):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        return subprocess.run(
            [sys.executable, "-m", "projnorm", "--format", "json", "scan", "ci", "--rmax", "9"],
            capture_output=True,
            env=env,
            check=True,
        ).stdout

    assert run("0") == run("4242")
