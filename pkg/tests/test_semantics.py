"""Exact evaluation clauses, valuation validation, and the JSON format."""

from fractions import Fraction

import pytest

from goedel.semantics import (
    ONE,
    ZERO,
    SemanticsError,
    Valuation,
    as_truth_value,
    assignment_valuation,
    evaluate,
    models,
    product_valuations,
    valuation_from_dict,
    valuation_from_json,
    valuation_to_dict,
    valuation_to_json,
)
from goedel.syntax import (
    BOT,
    Atom,
    Delta,
    Signature,
    delta_neg,
    iff,
    neg,
    parse_formula,
    parse_open_formula,
)

from conftest import make_rng, random_assignment, random_prop

F = Fraction


def val(p=None, q=None):
    tables = {}
    if p is not None:
        tables["p"] = {(): F(p)}
    if q is not None:
        tables["q"] = {(): F(q)}
    return Valuation(("e0",), tables)


def test_connective_clauses():
    v = val(p=F(1, 2), q=F(1, 3))
    assert evaluate(v, BOT) == ZERO
    assert evaluate(v, parse_formula("p & q")) == F(1, 3)
    assert evaluate(v, parse_formula("p | q")) == F(1, 2)
    assert evaluate(v, parse_formula("p -> q")) == F(1, 3)
    assert evaluate(v, parse_formula("q -> p")) == ONE
    assert evaluate(v, parse_formula("p -> p")) == ONE
    assert evaluate(v, parse_formula("D p")) == ZERO
    assert evaluate(val(p=1), parse_formula("D p")) == ONE


def test_derived_connective_values():
    for a in (F(0), F(1, 3), F(1)):
        v = val(p=a)
        assert evaluate(v, neg(Atom("p"))) == (ONE if a == 0 else ZERO)
        assert evaluate(v, delta_neg(Atom("p"))) == (ONE if a < 1 else ZERO)
    v = val(p=F(1, 2), q=F(1, 3))
    # equal values give 1, unequal give the minimum
    assert evaluate(v, iff(Atom("p"), Atom("q"))) == F(1, 3)
    assert evaluate(v, iff(Atom("p"), Atom("p"))) == ONE


def test_quantifier_clauses():
    sig = Signature({"P": 1}, {"c"})
    v = Valuation(
        ("a", "b"),
        {"P": {("a",): F(1), ("b",): F(1, 2)}},
        {"c": "b"},
    )
    assert evaluate(v, parse_formula("forall x. P(x)", sig)) == F(1, 2)
    assert evaluate(v, parse_formula("exists x. P(x)", sig)) == ONE
    assert evaluate(v, parse_formula("P(c)", sig)) == F(1, 2)


def test_quantifier_shadowing_restores_outer_binding():
    sig = Signature({"P": 1})
    v = Valuation(("a", "b"), {"P": {("a",): F(1), ("b",): F(0)}})
    f = parse_formula("forall x. ((exists x. P(x)) -> P(x))", sig)
    # inner exists is 1, so each body reduces to P(x) at the outer binding
    assert evaluate(v, f) == ZERO


def test_open_formula_env():
    sig = Signature({"R": 2}, {"c"})
    v = Valuation(
        ("a", "b"),
        {"R": {("a", "a"): F(0), ("a", "b"): F(1), ("b", "a"): F(1, 2), ("b", "b"): F(1)}},
        {"c": "a"},
    )
    f = parse_open_formula("R(x,c)", ["x"], sig)
    assert evaluate(v, f, {"x": "b"}) == F(1, 2)
    with pytest.raises(SemanticsError):
        evaluate(v, f)  # x unbound


def test_evaluate_uninterpreted_symbols():
    v = val(p=1)
    with pytest.raises(SemanticsError):
        evaluate(v, Atom("q"))
    with pytest.raises(SemanticsError):
        evaluate(v, parse_formula("P(c)", Signature({"P": 1}, {"c"})))


def test_as_truth_value():
    assert as_truth_value(F(1, 2)) == F(1, 2)
    assert as_truth_value(1) == ONE
    assert as_truth_value("2/3") == F(2, 3)
    with pytest.raises(SemanticsError):
        as_truth_value(0.5)
    with pytest.raises(SemanticsError):
        as_truth_value(F(3, 2))
    with pytest.raises(SemanticsError):
        as_truth_value(-1)


def test_valuation_validation():
    with pytest.raises(SemanticsError):
        Valuation((), {})
    with pytest.raises(SemanticsError):
        Valuation(("a", "a"), {})
    with pytest.raises(SemanticsError):
        Valuation(("a", "b"), {"P": {("a",): F(1)}})  # not total
    with pytest.raises(SemanticsError):
        Valuation(("a",), {"p": {}})  # 0-ary table missing the () entry
    with pytest.raises(SemanticsError):
        Valuation(("a",), {"P": {("a",): F(1), (): F(0)}})  # mixed arity
    with pytest.raises(SemanticsError):
        Valuation(("a",), {"P": {("z",): F(1)}})
    with pytest.raises(SemanticsError):
        Valuation(("a",), {}, {"c": "z"})
    with pytest.raises(SemanticsError):
        Valuation(("a",), {"p": {(): 0.5}})  # float entry


def test_with_constant_and_signature():
    v = Valuation(("a", "b"), {"R": {
        ("a", "a"): F(0), ("a", "b"): F(0), ("b", "a"): F(0), ("b", "b"): F(0),
    }}, {"c": "a"})
    w = v.with_constant("d", "b")
    assert w.constants == {"c": "a", "d": "b"}
    assert v.constants == {"c": "a"}  # original untouched
    sig = w.signature()
    assert sig.relations == {"R": 2}
    assert sig.constants == frozenset({"c", "d"})


def test_json_format_frozen():
    v = Valuation(
        ("a", "b"),
        {"R": {("a", "a"): F(1, 2), ("a", "b"): F(0), ("b", "a"): F(1), ("b", "b"): F(1, 3)}},
        {"c": "a"},
    )
    d = valuation_to_dict(v)
    assert d == {
        "universe": ["a", "b"],
        "relations": {
            "R": {
                "(a,a)": "1/2",
                "(a,b)": "0",
                "(b,a)": "1",
                "(b,b)": "1/3",
            }
        },
        "constants": {"c": "a"},
    }


def test_json_zero_ary_key():
    v = val(p=F(2, 3))
    d = valuation_to_dict(v)
    assert d["relations"]["p"] == {"()": "2/3"}
    assert valuation_from_dict(d).relations["p"][()] == F(2, 3)


def test_json_roundtrip():
    rng = make_rng("json")
    for _ in range(50):
        assignment = random_assignment(rng, ("p", "q", "r"))
        v = assignment_valuation(assignment, constants=("c",))
        w = valuation_from_json(valuation_to_json(v))
        assert w.universe == v.universe
        assert w.relations == v.relations
        assert w.constants == v.constants


def test_json_errors():
    with pytest.raises(SemanticsError):
        valuation_from_json("{not json")
    with pytest.raises(SemanticsError):
        valuation_from_json('{"relations": {}}')  # no universe
    with pytest.raises(SemanticsError):
        valuation_from_dict({"universe": ["a"], "relations": {"p": {"no-parens": "1"}}})


def test_assignment_valuation():
    v = assignment_valuation({"p": F(1, 2)})
    assert v.universe == ("e0",)
    assert evaluate(v, Atom("p")) == F(1, 2)


def test_models():
    v = val(p=1, q=F(1, 2))
    assert models(v, [Atom("p")])
    assert not models(v, [Atom("p"), Atom("q")])
    assert models(v, [])


def test_product_valuations_count_and_determinism():
    sig = Signature({"P": 1}, {"c"})
    vals = (ZERO, F(1, 2), ONE)
    stream = list(product_valuations(sig, ("a", "b"), vals))
    # 2 constant choices x 3^2 tables
    assert len(stream) == 18
    again = list(product_valuations(sig, ("a", "b"), vals))
    assert [valuation_to_json(v) for v in stream] == [valuation_to_json(v) for v in again]


def test_residuation_property():
    # min(a,b) <= c exactly when a <= b -> c
    rng = make_rng("residuation")
    p, r = Atom("p"), Atom("r")
    for _ in range(400):
        v = assignment_valuation(random_assignment(rng, ("p", "q", "r")))
        lhs = evaluate(v, parse_formula("p & q")) <= evaluate(v, r)
        rhs = evaluate(v, p) <= evaluate(v, parse_formula("q -> r"))
        assert lhs == rhs, valuation_to_json(v)


def test_delta_distributes_property():
    from goedel.syntax import And

    rng = make_rng("delta-laws")
    for _ in range(400):
        f = random_prop(rng, max_depth=3)
        g = random_prop(rng, max_depth=3)
        v = assignment_valuation(random_assignment(rng, ("p", "q", "r")))
        df = evaluate(v, Delta(f))
        assert df in (ZERO, ONE)
        assert evaluate(v, Delta(Delta(f))) == df
        assert evaluate(v, Delta(And(f, g))) == min(df, evaluate(v, Delta(g)))
