"""Expression language and command-line behavior."""

import json
import random
from fractions import Fraction

import pytest

from rbshuffle import exprs
from rbshuffle.algebra import (HurwitzHandle, Poly, SampleBudget, ShaHandle,
                               alg_eq, random_element)
from rbshuffle.cli import bench_product, main
from rbshuffle.coeffs import RATIONALS, residues
from rbshuffle.exprs import (EvalContext, EvalError, ParseError, eval_text,
                             parse, parse_handle)
from rbshuffle.freerb import Tensor, interleavings

Q = RATIONALS
HALF = Q.from_fraction(Fraction(1, 2))


def ctx(ring=Q, lam=None, precision=4):
    return EvalContext(ring=ring, weight=lam if lam is not None else ring.zero(),
                       precision=precision)


def test_parse_shapes():
    tree = parse("x # 1 + 2*(y # y)")
    assert isinstance(tree, exprs.BinOp) and tree.op == "#"
    call = parse("P(x # y)")
    assert isinstance(call, exprs.Call) and call.fn == "P"
    with pytest.raises(ParseError) as err:
        parse("x +")
    assert err.value.col == 4
    with pytest.raises(ParseError):
        parse("frobnicate(x)")
    with pytest.raises(ParseError):
        parse("x $ y")


def test_eval_prepend_on_tensors():
    c = ctx(lam=HALF)
    h = parse_handle("sha(poly(x,y))", Q, c.weight, 4)
    out = eval_text("P(x)", h, c)
    x = Poly.variable(h.inner, "x")
    one = Poly.one(h.inner)
    assert out == Tensor.from_factors(h, (one, x))


def test_eval_worked_example_with_units():
    c = ctx(lam=HALF)
    h = parse_handle("sha(poly(x,y))", Q, c.weight, 4)
    out = eval_text("(x # 1) * (y # 1 # 1)", h, c)
    x = Poly.variable(h.inner, "x")
    y = Poly.variable(h.inner, "y")
    one = Poly.one(h.inner)
    expect = (Tensor.from_factors(h, (x * y, one, one, one), Q.from_int(3))
              + Tensor.from_factors(h, (x * y, one, one)))
    assert out == expect


def test_eval_counit_with_integration():
    c = ctx()
    h = parse_handle("sha(poly(x))", Q, c.weight, 4)
    x = Poly.variable(h.inner, "x")
    assert eval_text("eps(x)", h, c) == x
    assert eval_text("eps(1 # x)", h, c) == (x * x).scale(HALF)


def test_eval_type_errors_carry_spans():
    c = ctx()
    h = parse_handle("sha(poly(x))", Q, c.weight, 4)
    with pytest.raises(EvalError):
        eval_text("beta(x)", h, c)          # factors are not series
    with pytest.raises(EvalError):
        eval_text("z + 1", h, c)            # unknown variable
    with pytest.raises(EvalError):
        eval_text("P(eps(x))", h, c)        # descending map not at top level
    hh = parse_handle("hur(poly(x),4)", Q, c.weight, 4)
    with pytest.raises(EvalError):
        eval_text("x # 1", hh, c)           # no tensor layer on a series carrier
    with pytest.raises(EvalError):
        eval_text("partial([x])", hh, c)    # nothing left to shift


def test_eval_mu_and_beta_shapes():
    c = ctx(lam=HALF)
    s2 = parse_handle("sha(sha(poly(x)))", Q, c.weight, 4)
    out = eval_text("mu(eta(x # 1) # eta(1 # x))", s2, c)
    assert out.handle == s2.inner
    sh = parse_handle("sha(hur(poly(x),4))", Q, c.weight, 4)
    series = eval_text("beta([x; 1; 0; 0; 0] # [1; x; 0; 0; 0])", sh, c)
    assert series.handle == HurwitzHandle(ShaHandle(sh.inner.inner), 4)
    assert series.precision == 4


def test_handle_parsing():
    h = parse_handle("hur(sha(poly(x,y)),3)", Q, Q.zero(), 4)
    assert isinstance(h, HurwitzHandle) and h.precision == 3
    assert parse_handle("hur(poly(x))", Q, Q.zero(), 4).precision == 4
    with pytest.raises(ParseError):
        parse_handle("ring(x)", Q, Q.zero(), 4)
    with pytest.raises(ValueError):
        parse_handle("sha(sha(sha(sha(poly(x)))))", Q, Q.zero(), 4)


ROUND_TRIP_HANDLES = ("poly(x,y)", "sha(poly(x,y))", "hur(poly(x,y),4)",
                      "sha(hur(poly(x),4))", "hur(sha(poly(x)),4)",
                      "sha(sha(poly(x)))", "hur(hur(poly(x),2),2)")


@pytest.mark.parametrize("spec", ROUND_TRIP_HANDLES)
def test_print_parse_round_trip(spec):
    c = ctx(lam=HALF)
    handle = parse_handle(spec, Q, c.weight, 4)
    rng = random.Random(17)
    budget = SampleBudget(max_tensor_len=2, max_terms=2)
    for _ in range(500):
        element = random_element(handle, budget, rng)
        again = eval_text(str(element), handle, c)
        assert alg_eq(element, again), f"{element} reparsed as {again}"


def test_print_parse_round_trip_residue_ring():
    ring = residues(5)
    c = ctx(ring=ring, lam=ring.one())
    handle = parse_handle("sha(poly(x,y))", ring, ring.one(), 4)
    rng = random.Random(23)
    for _ in range(200):
        element = random_element(handle, SampleBudget(), rng)
        assert alg_eq(element, eval_text(str(element), handle, c))


def test_bench_counts_match_brute_force():
    for m in range(6):
        for n in range(6):
            report = bench_product(m, n, Q, Q.one())
            weaves = list(interleavings(tuple(range(m)), tuple(range(m, m + n))))
            assert report["top_terms"] == len(weaves) == report["top_expected"]


def test_cli_eval_and_exit_codes(capsys):
    assert main(["eval", "--handle", "sha(poly(x,y))", "P(x)"]) == 0
    assert capsys.readouterr().out.strip() == "1 # x"
    assert main(["eval", "--handle", "sha(poly(x))", "x +"]) == 2
    assert main(["eval", "--handle", "nope(x)", "x"]) == 2
    assert main(["eval", "--ring", "zmod:1", "--handle", "poly(x)", "x"]) == 2
    assert main(["bench", "-m", "9", "-n", "1"]) == 2
    assert main(["check", "--suite", "nosuch"]) == 2


def test_cli_eval_json(capsys):
    assert main(["eval", "--json", "--lambda", "1/2",
                 "--handle", "hur(poly(x),2)", "[x; 1; 0] * [1; x; x]"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "rb-shuffle/1"
    assert payload["weight"] == "1/2"
    assert payload["value"]["precision"] == 2


def test_cli_check_named_suite(capsys):
    assert main(["check", "--suite", "worked_example", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "worked_example" in out


def test_cli_check_json_payload(capsys):
    assert main(["check", "--json", "--seed", "7",
                 "--suite", "worked_example", "--suite", "shuffle_counts"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "rb-shuffle/1"
    assert [r["law"] for r in payload["reports"]] == ["worked_example",
                                                      "shuffle_counts"]
    assert all(r["passed"] for r in payload["reports"])
    assert all("wall" not in key for r in payload["reports"] for key in r)


def test_cli_check_single_weight(capsys):
    assert main(["check", "--lambda", "1", "--suite", "hurwitz_algebra",
                 "--seed", "3"]) == 0
    capsys.readouterr()
    assert main(["check", "--lambda", "nonsense", "--suite", "hurwitz_algebra"]) == 2


def test_cli_bench_text(capsys):
    assert main(["bench", "-m", "1", "-n", "2", "--lambda", "0"]) == 0
    out = capsys.readouterr().out
    assert "top stratum 3 (expected 3)" in out


def test_cli_repl(monkeypatch, capsys):
    lines = iter(["P(x)", ":handle sha(poly(x,y))", "x # y", "bad +", ":quit"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
    assert main(["repl", "--handle", "sha(poly(x))"]) == 0
    out = capsys.readouterr().out
    assert "1 # x" in out and "x # y" in out and "error" in out
