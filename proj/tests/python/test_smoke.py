"""Smoke tests for the Python module: parse, decide, quantify, file io."""

import os

import pytest

import monaut

DATA = os.environ.get("MONAUT_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def test_parse_and_print_round_trip():
    f = monaut.parse("forall x1. exists x2. x1 < x2 & X1(x2)")
    assert str(f) == "forall x1. exists x2. x1 < x2 & X1(x2)"
    assert monaut.parse(str(f)) == f
    assert f.signature.so_vars == ["X1"]
    assert f.signature.fo_vars == []


def test_parse_errors_raise():
    with pytest.raises(monaut.Error):
        monaut.parse("x1 <")
    with pytest.raises(monaut.Error):
        monaut.parse("forall x1. forall x1. true")
    monaut.parse("exists x1. exists x2. x2 = x1 + 65", max_offset=100)
    with pytest.raises(monaut.Error):
        monaut.parse("exists x1. exists x2. x2 = x1 + 65")


def test_decide_sat_with_verified_witness():
    result = monaut.decide(monaut.parse("forall x1. exists x2. x1 < x2 & X1(x2)"))
    assert result.satisfiable
    assert result

    x1 = result.witness.so_values["X1"]
    members = [n for n in range(30) if n in x1]
    assert len(members) >= 10, "the witness set must be infinite"

    assert monaut.lasso_membership(result.automaton, result.witness_lasso)
    assert monaut.evaluate(monaut.parse("forall x1. exists x2. x1 < x2 & X1(x2)"), result.witness)


def test_decide_unsat():
    result = monaut.decide(monaut.parse("exists x1. x1 < x1"))
    assert not result.satisfiable
    assert result.witness is None
    assert result.automaton.is_empty


def test_compile_agrees_with_evaluate():
    f = monaut.parse("exists x2. x2 = x1 + 2 & X1(x2)")
    a = monaut.compile(f)
    sig = f.signature

    good = monaut.Interpretation(fo={"x1": 1}, so={"X1": monaut.PeriodicSet.from_members([3])})
    bad = monaut.Interpretation(fo={"x1": 1}, so={"X1": monaut.PeriodicSet.from_members([4])})
    assert monaut.evaluate(f, good)
    assert not monaut.evaluate(f, bad)
    assert monaut.lasso_membership(a, monaut.encode(good, sig))
    assert not monaut.lasso_membership(a, monaut.encode(bad, sig))


def test_universal_quantification_matches_figure():
    body = monaut.read_aut(os.path.join(DATA, "fig1b.aut"))
    expected = monaut.read_aut(os.path.join(DATA, "x_inf_often.aut"))

    quantified = monaut.universal_quantify(body, "x1")
    assert quantified.signature == expected.signature
    assert monaut.equal_on_lassos(quantified, expected, 4, 4) is None


def test_projection_drops_a_track():
    body = monaut.read_aut(os.path.join(DATA, "fig1b.aut"))
    projected = monaut.project(body, "x1")
    assert projected.signature.fo_vars == []
    assert projected.signature.so_vars == ["X1"]


def test_aut_round_trip(tmp_path):
    a = monaut.compile(monaut.parse("exists x1. X1(x1)"))
    path = tmp_path / "out.aut"
    monaut.write_aut(path, a, "compiled")
    b = monaut.read_aut(path)
    assert b.state_count == a.state_count
    assert b.transitions == a.transitions
    assert monaut.equal_on_lassos(a, b) is None


def test_to_dot_renders():
    a = monaut.compile(monaut.parse("exists x1. X1(x1)"))
    dot = monaut.to_dot(a, name="smoke")
    assert dot.startswith('digraph "smoke"')


def test_witness_and_lasso_enumeration():
    a = monaut.read_aut(os.path.join(DATA, "x_inf_often.aut"))
    w = monaut.witness(a)
    assert w is not None
    assert monaut.lasso_membership(a, w)

    accepted = monaut.accepted_lassos(a, 1, 2)
    assert all(monaut.lasso_membership(a, lw) for lw in accepted)
    assert monaut.Lasso([], ["1"]) in accepted
    assert monaut.Lasso([], ["0"]) not in accepted


def test_periodic_set_behaviour():
    evens = monaut.PeriodicSet(prefix="", period="10")
    assert 0 in evens and 2 in evens and 17 not in evens
    assert not evens.is_finite
    assert monaut.PeriodicSet.from_members([0, 2, 4]).is_finite
    assert evens.normalized() == evens


def test_decode_rejects_invalid_encoding():
    sig = monaut.Signature(fo_vars=["x1"], so_vars=[])
    with pytest.raises(monaut.Error):
        monaut.decode(monaut.Lasso([], ["0"]), sig)
