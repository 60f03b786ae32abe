"""Command surface: one JSON document per run, meaningful exit codes."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stdout

import pytest

from potalg.brace import FiniteBrace
from potalg.cli import main
from potalg.fields import QQ
from potalg.parsing import parse_poly, render

DIM8 = "x^3 + y^3 + cyc(x y x y)"
DIM9A = "cyc(x^2 y) + y^4"
DIM9B = "cyc(x^2 y) + y^4 + y^5"


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    text = buf.getvalue()
    doc = json.loads(text) if text.startswith("{") else None
    return code, doc, text


def dim_file(tmp_path, text, name, cap="8"):
    code, _, raw = run_cli("dim", "--potential", text, "--cap", cap)
    assert code == 0
    path = tmp_path / name
    path.write_text(raw)
    return str(path)


def z9_brace_file(tmp_path, with_chain=True):
    add = [[(a + b) % 9 for b in range(9)] for a in range(9)]
    star = [[(3 * a * b) % 9 for b in range(9)] for a in range(9)]
    doc = FiniteBrace(add, star).to_json()
    if with_chain:
        doc["filtration"] = [[0, 3, 6]]
    path = tmp_path / "z9.json"
    path.write_text(json.dumps(doc))
    return str(path)


# -- derive ----------------------------------------------------------------

def test_derive_ginzburg_default():
    code, doc, _ = run_cli("derive", "--potential", DIM8)
    assert code == 0 and doc["mode"] == "ginzburg"
    assert doc["relations"] == {"x": "3 x^2 + 8 y x y",
                                "y": "3 y^2 + 8 x y x"}


def test_derive_simple_mode():
    code, doc, _ = run_cli("derive", "--potential", "x y", "--mode", "simple")
    assert code == 0
    assert doc["relations"] == {"x": "y", "y": "0"}


def test_derive_syntax_error_exits_2():
    code, doc, _ = run_cli("derive", "--potential", "x^^2")
    assert code == 2 and doc["error"] == "parse"


# -- gb ----------------------------------------------------------------

def test_gb_from_relations():
    code, doc, _ = run_cli("gb", "--relations", "x y + y x, x^2 + y^3",
                           "--cap", "8")
    assert code == 0 and doc["command"] == "gb"
    assert doc["field"] == "QQ" and doc["cap"] == 8
    assert doc["elements"] and doc["leading_words"]


def test_gb_mode_changes_leading_words():
    local = run_cli("gb", "--relations", "x - x^2, y", "--cap", "6")[1]
    glob = run_cli("gb", "--relations", "x - x^2, y", "--cap", "6",
                   "--mode", "global")[1]
    assert "x" in local["leading_words"]
    assert "x" not in glob["leading_words"]


def test_gb_needs_a_source():
    code, doc, _ = run_cli("gb", "--cap", "8")
    assert code == 2 and doc is None  # argparse reports on stderr


# -- dim ----------------------------------------------------------------

def test_dim_golden_with_oracle():
    code, doc, _ = run_cli("dim", "--potential", DIM8, "--cap", "8",
                           "--oracle")
    assert code == 0 and doc["finite"] and doc["total"] == 8
    assert doc["hilbert"][:5] == [1, 2, 2, 2, 1]
    assert doc["oracle"]["agrees"]
    assert len(doc["algebra"]["basis"]) == 8


def test_dim_order_flag_round_trips():
    code, doc, _ = run_cli("dim", "--potential", DIM8, "--cap", "8",
                           "--order", "yx")
    assert code == 0 and doc["total"] == 8
    assert doc["order"]["precedence"] == "yx"


def test_dim_auto_extends_once():
    code, doc, _ = run_cli("dim", "--potential", "cyc(x^2 y) + y^6")
    assert code == 0 and doc["extended"] and doc["cap"] == 16
    assert doc["total"] == 15


def test_dim_infinite_case_has_no_algebra():
    code, doc, _ = run_cli("dim", "--potential", "cyc(x^2 y) + y^5",
                           "--cap", "10")
    assert code == 0 and not doc["finite"] and doc["total"] is None
    assert doc["growth"] == "bounded-constant" and "algebra" not in doc


def test_dim_cap_below_degree_exits_2():
    code, doc, _ = run_cli("dim", "--potential", "y^8", "--cap", "4")
    assert code == 2 and doc["error"] == "config"


# -- canon ----------------------------------------------------------------

def test_canon_lands_on_9b():
    code, doc, _ = run_cli("canon", "--potential", DIM9B + " + y^6",
                           "--cap", "8")
    assert code == 0 and doc["command"] == "canon"
    assert doc["dimension"] == 9 and doc["representative"] == "9B"


def test_canon_rejects_quadratic_input():
    code, doc, _ = run_cli("canon", "--potential", "x^2 + y^4")
    assert code == 2 and doc["error"] == "config"


# -- iso ----------------------------------------------------------------

def test_iso_auto_separates_the_nine_dimensional_pair(tmp_path):
    a = dim_file(tmp_path, DIM9A, "a.json")
    b = dim_file(tmp_path, DIM9B, "b.json")
    code, doc, _ = run_cli("iso", "--a", a, "--b", b)
    assert code == 0 and doc["status"] == "not_isomorphic"
    assert doc["certificate"]["method"] == "lift-exhaustion"
    assert doc["certificate"]["field"] == "GF(3)"


def test_iso_self_is_identity(tmp_path):
    a = dim_file(tmp_path, DIM9A, "a.json")
    code, doc, _ = run_cli("iso", "--a", a, "--b", a)
    assert code == 0 and doc["status"] == "isomorphic"


def test_iso_brute_mod_2_self(tmp_path):
    a = dim_file(tmp_path, DIM8, "a.json")
    code, doc, _ = run_cli("iso", "--a", a, "--b", a, "--field", "2",
                           "--strategy", "brute")
    assert code == 0 and doc["status"] == "isomorphic"
    assert doc["witness"] is not None


def test_iso_brute_over_budget_exits_3(tmp_path):
    a = dim_file(tmp_path, DIM9A, "a.json")
    code, doc, _ = run_cli("iso", "--a", a, "--b", a, "--field", "3",
                           "--strategy", "brute")
    assert code == 3 and doc["error"] == "resource"


def test_iso_invariants_strategy(tmp_path):
    a = dim_file(tmp_path, DIM8, "a.json")
    b = dim_file(tmp_path, DIM9A, "b.json")
    code, doc, _ = run_cli("iso", "--a", a, "--b", b,
                           "--strategy", "invariants")
    assert code == 0 and doc["status"] == "not_isomorphic"
    assert doc["certificate"]["invariant"] == "dimension"
    code, doc, _ = run_cli("iso", "--a", a, "--b", a,
                           "--strategy", "invariants")
    assert code == 0 and doc["status"] == "inconclusive"


def test_iso_lift_needs_a_finite_field(tmp_path):
    a = dim_file(tmp_path, DIM9A, "a.json")
    code, doc, _ = run_cli("iso", "--a", a, "--b", a, "--strategy", "lift")
    assert code == 2 and doc["error"] == "config"


def test_iso_missing_file_exits_2(tmp_path):
    a = dim_file(tmp_path, DIM9A, "a.json")
    code, doc, _ = run_cli("iso", "--a", a, "--b", str(tmp_path / "no.json"))
    assert code == 2 and doc["error"] == "config"


# -- brace ----------------------------------------------------------------

def test_brace_check_graded_prelie(tmp_path):
    path = z9_brace_file(tmp_path)
    code, doc, _ = run_cli("brace", "check", "--input", path)
    assert code == 0 and doc["structure"] == "brace"
    assert doc["axioms"]["ok"] and doc["filtration"]["ok"]

    code, doc, _ = run_cli("brace", "graded", "--input", path)
    assert code == 0 and doc["component_orders"] == [3, 3]
    assert doc["nonzero_products"]

    code, doc, _ = run_cli("brace", "prelie", "--input", path)
    assert code == 0 and doc["left_symmetric"] and doc["witness"] is None


def test_brace_graded_falls_back_to_star_powers(tmp_path):
    path = z9_brace_file(tmp_path, with_chain=False)
    code, doc, _ = run_cli("brace", "graded", "--input", path)
    assert code == 0 and doc["component_orders"] == [3, 3]


def test_brace_series(tmp_path):
    path = z9_brace_file(tmp_path)
    code, doc, _ = run_cli("brace", "series", "--input", path,
                           "--series-args", "1,2,4,3")
    assert code == 0 and doc["exact"] and doc["direct"] == 0
    assert doc["partial_sums"] == [0, 0, 0]

    code, doc, _ = run_cli("brace", "series", "--input", path)
    assert code == 2 and doc["error"] == "config"


def test_brace_invalid_axioms_is_a_computed_verdict(tmp_path):
    add = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    star = [[a for _ in range(4)] for a in range(4)]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(FiniteBrace(add, star).to_json()))
    code, doc, _ = run_cli("brace", "check", "--input", str(path))
    assert code == 0 and not doc["axioms"]["ok"]
    assert "distributive" in doc["axioms"]["reason"]


def test_brace_malformed_file_exits_2(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"order": 2}))
    code, doc, _ = run_cli("brace", "check", "--input", str(path))
    assert code == 2 and doc["error"] == "config"


# -- reproduce -------------------------------------------------------------

@pytest.mark.parametrize("theorem",
                         ["dim8", "dim9", "cor1-grid", "x3-bound", "prelie"])
def test_reproduce_reports_pass(theorem):
    code, doc, _ = run_cli("reproduce", "--theorem", theorem)
    assert code == 0 and doc["theorem"] == theorem
    assert doc["pass"], [c["name"] for c in doc["checks"] if not c["pass"]]


def test_reproduce_seed_only_changes_data():
    code, doc, _ = run_cli("reproduce", "--theorem", "x3-bound",
                           "--seed", "7")
    assert code == 0 and doc["pass"] and doc["seed"] == 7


def test_reproduce_unknown_theorem_exits_2():
    code, doc, _ = run_cli("reproduce", "--theorem", "nope")
    assert code == 2 and doc is None


# -- output discipline -------------------------------------------------

def test_render_parse_round_trip_on_goldens():
    for text in (DIM8, DIM9A, DIM9B, "x^3 - 1/2 y^3 + 2 x y x",
                 "cyc(x^2 y) + y^4 + y^5 + y^6"):
        f = parse_poly(text, QQ, 8)
        assert parse_poly(render(f), QQ, 8) == f


def test_worker_count_does_not_change_bytes():
    outs = [run_cli("dim", "--potential", DIM8, "--cap", "8",
                    "--workers", w)[2] for w in ("1", "8")]
    assert outs[0] == outs[1]


def test_help_exits_zero():
    code, _, _ = run_cli("--help")
    assert code == 0


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "potalg", "derive", "--potential", "x^3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["relations"]["x"] == "3 x^2"
