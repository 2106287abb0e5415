"""CLI parsing, JSON reports, round-trips and exit codes."""

import json

import pytest

from ffec.cli import main, parse_context, parse_curve_spec, parse_places
from ffec.errors import ParseError
from ffec.funfield import Place

WORKED_SPEC = "p=5 s=1; a=(1); b=(T)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_parse_context():
    ctx = parse_context("p=5 s=1")
    assert (ctx.p, ctx.s, ctx.q) == (5, 1, 5)
    assert parse_context("p=7").q == 7
    with pytest.raises(ParseError):
        parse_context("q=5")


def test_parse_curve_spec():
    ctx, E, label = parse_curve_spec("p=5 s=1; a=(1); b=(T); label=worked")
    assert label == "worked"
    assert str(E.a) == "1" and str(E.b) == "T"
    with pytest.raises(ParseError):
        parse_curve_spec("p=5; a=(1)")


def test_parse_places():
    ctx, _, _ = parse_curve_spec(WORKED_SPEC)
    places = parse_places(ctx, "T, T^2+2, inf")
    assert places[2] == Place.infinity()
    assert places[0].degree == 1 and places[1].degree == 2


def test_analyze_worked_curve(capsys):
    code, rep = run_json(capsys, "analyze", WORKED_SPEC)
    assert code == 0
    res = rep["results"]
    assert res["hF"] == "1"
    assert res["hFg"] == "1/6"
    assert res["degN"] == "4"
    assert res["heightConjecture"] == {"lhs": "1", "rhs": "1", "holds": True}
    kinds = {row["place"]: row["kodaira"] for row in res["places"]}
    assert kinds == {"T^2+2": "I1", "inf": "II*"}


def test_analyze_round_trip(capsys):
    code, rep = run_json(capsys, "analyze", WORKED_SPEC)
    code2, rep2 = run_json(capsys, "analyze", rep["inputs"]["spec"])
    assert code2 == 0
    assert rep2["results"] == rep["results"]


def test_analyze_isotrivial_skips_conjecture(capsys):
    code, rep = run_json(capsys, "analyze", "p=5; a=(0); b=(1)")
    assert code == 0
    assert rep["results"]["admissible"] is False
    assert rep["results"]["heightConjecture"] is None


def test_analyze_singular_exit_code(capsys):
    assert main(["analyze", "p=5; a=(0); b=(0)"]) == 2


def test_analyze_small_characteristic(capsys):
    assert main(["analyze", "p=3; a=(1); b=(T)"]) == 2


def test_sweep_degree_zero(capsys):
    code, rep = run_json(capsys, "sweep", "--p", "5", "--deg-bound", "0")
    assert code == 0
    assert rep["results"]["admissible"] == "0"
    violations = rep["results"]["violations"]
    assert set(violations.values()) == {"0"}


def test_sweep_cap_exit(capsys):
    assert main(["sweep", "--p", "5", "--deg-bound", "4", "--cap", "100"]) == 3


def test_tate_order_three(capsys):
    code, rep = run_json(capsys, "tate", "--order", "3")
    assert code == 0
    j = rep["results"]["j"]
    assert j["start"] == "-1"
    assert j["coefficients"] == ["1", "744", "196884"]
    assert rep["results"]["a4"]["coefficients"] == ["-5", "-45", "-140"]


def test_gamma_order(capsys):
    code, rep = run_json(capsys, "gamma", "--r", "5", "--n", "3")
    assert code == 0
    assert rep["results"]["gammaOrder"] == "48"
    dist = rep["results"]["distribution"]
    total = sum(int(row["freq-num"]) / int(row["freq-den"]) for row in dist)
    assert abs(total - 1) < 1e-12


def test_lemmas_commutator(capsys):
    code, rep = run_json(capsys, "lemmas", "commutator", "--ell", "2", "--n", "2")
    assert code == 0
    assert rep["results"]["holds"] is True


def test_lemmas_cap_exit(capsys):
    assert main(["lemmas", "commutator", "--ell", "3", "--n", "2"]) == 3


def test_lemmas_sl2gen(capsys):
    code, rep = run_json(capsys, "lemmas", "sl2gen", "--ell", "5")
    assert code == 0
    assert rep["results"]["order"] == "120"
    assert rep["results"]["matches"] is True


def test_lemmas_psl2_and_gammacheck(capsys):
    code, rep = run_json(capsys, "lemmas", "psl2", "--ell", "5")
    assert code == 0 and rep["results"]["simple"] is True
    code, rep = run_json(capsys, "lemmas", "gammacheck", "--r", "5")
    assert code == 0 and rep["results"]["allMatch"] is True


def test_twists_default_s(capsys):
    code, rep = run_json(capsys, "twists", WORKED_SPEC)
    assert code == 0
    # S = exactly the bad places: squarefree products of one finite place
    # polynomial times a constant class
    assert rep["results"]["count"] == "4"


def test_twists_explicit_s(capsys):
    code, rep = run_json(capsys, "twists", WORKED_SPEC, "--places", "T,T^2+2,inf")
    assert code == 0
    assert rep["results"]["count"] == "8"
    assert "1" in rep["results"]["representatives"]


def test_frobenius_survey_report(capsys):
    code, rep = run_json(capsys, "frobenius", WORKED_SPEC, "--ell", "3", "--dmax", "2")
    assert code == 0
    res = rep["results"]
    assert res["mode"] == "survey"
    assert res["allDetInH"] is True
    assert res["subsetOfGamma"] is True
    assert len(res["tvDistance"].split(".")[1]) == 6  # fixed 6-decimal rendering


def test_frobenius_isotrivial_routing(capsys):
    code, rep = run_json(capsys, "frobenius", "p=7; a=(0); b=(1)", "--ell", "5", "--dmax", "2")
    assert code == 0
    res = rep["results"]
    assert res["mode"] == "isotriviality-contrast"
    assert res["twoDivisionTag"] == "trivial"
    assert res["tagAbelian"] is True


def test_seed_echoed(capsys):
    code, rep = run_json(capsys, "tate", "--order", "2", "--seed", "42")
    assert rep["seed"] == "42"


def test_text_output_mode(capsys):
    code, out = run(capsys, "gamma", "--r", "5", "--n", "3")
    assert code == 0
    assert "gammaOrder: 48" in out
