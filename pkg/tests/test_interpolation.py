"""Clone closure, separator search, Craig interpolation, constant
abstraction, Henkin extension, and countermodel synthesis.

Clone-table sizes asserted here are frozen regression values; saturation
itself is the local-finiteness witness.  The expensive two-atom table with
Delta belongs to the acceptance suite, so these tests stay on one-atom
common languages.
"""

import json
from fractions import Fraction

import pytest

from goedel.decision import assignment_space, one_entails, satisfiable
from goedel.interpolation import (
    MAX_CLONE_ATOMS,
    CloneBudgetError,
    CommonLanguageError,
    PreconditionError,
    SeparableTheories,
    abstract_constants,
    clone_closure,
    countermodel_synthesize,
    find_separator,
    henkin_extend,
    interpolate,
    separates,
)
from goedel.semantics import ONE, evaluate
from goedel.syntax import (
    BOT,
    And,
    Atom,
    Const,
    Delta,
    Exists,
    Forall,
    Or,
    Signature,
    Var,
    delta_neg,
    is_g_formula,
    language_of,
    neg,
    parse_formula,
    parse_open_formula,
)

from conftest import make_rng, random_prop

F = Fraction
P, Q, R = Atom("p"), Atom("q"), Atom("r")

# frozen saturated clone sizes: (atom count, delta_allowed) -> vectors
FROZEN_CLONE_SIZES = {
    (0, False): 2,
    (0, True): 2,
    (1, False): 6,
    (1, True): 12,
    (2, False): 342,
}


def test_clone_closure_empty_atoms():
    table = clone_closure((), delta_allowed=False)
    assert len(table) == 2
    assert (F(0),) in table and (F(1),) in table
    assert table.saturated
    assert len(clone_closure((), delta_allowed=True)) == 2


def test_clone_closure_frozen_sizes():
    assert len(clone_closure(("p",), False)) == FROZEN_CLONE_SIZES[(1, False)]
    assert len(clone_closure(("p",), True)) == FROZEN_CLONE_SIZES[(1, True)]
    assert len(clone_closure(("p", "q"), False)) == FROZEN_CLONE_SIZES[(2, False)]


def test_clone_with_delta_contains_clone_without():
    small = clone_closure(("p",), False)
    big = clone_closure(("p",), True)
    assert small.vectors <= big.vectors
    two_small = clone_closure(("p", "q"), False)
    assert all(len(v) == 16 for v in two_small.vectors)


def test_clone_table_invariants():
    for atoms, delta_allowed in ((("p",), True), (("p", "q"), False)):
        table = clone_closure(atoms, delta_allowed)
        space = assignment_space(atoms)
        n = len(space)
        assert (F(0),) * n in table  # falsum vector
        assert (F(1),) * n in table  # verum vector
        for a in atoms:
            assert space.vector(Atom(a)) in table  # projections
        # every witness's semantics is exactly its key
        for theta in table.formulas():
            assert space.vector(theta) in table.vectors
        for vec, theta in table.witness.items():
            assert space.vector(theta) == vec
            if not delta_allowed:
                assert is_g_formula(theta)


def test_clone_closed_under_operations():
    table = clone_closure(("p",), True)
    vectors = sorted(table.vectors)

    def imp(a, b):
        return tuple(ONE if x <= y else y for x, y in zip(a, b))

    for a in vectors:
        assert tuple(ONE if x == ONE else F(0) for x in a) in table  # Delta
        for b in vectors:
            assert tuple(map(min, a, b)) in table
            assert tuple(map(max, a, b)) in table
            assert imp(a, b) in table


def test_clone_budget_error():
    with pytest.raises(CloneBudgetError) as err:
        clone_closure(("x", "y"), True, budget=60)
    partial = err.value.partial
    assert not partial.saturated
    assert len(partial) == 60
    assert err.value.work > 0
    space = assignment_space(("x", "y"))
    for vec, theta in partial.witness.items():
        assert space.vector(theta) == vec


def test_clone_atom_cap():
    with pytest.raises(ValueError):
        clone_closure(("a", "b", "c", "d"), True)
    assert MAX_CLONE_ATOMS == 3


def test_separates_examples():
    cert = separates(P, [P], [delta_neg(P)])
    assert cert is not None
    assert cert.separator == P
    assert cert.t_proof.holds and cert.u_proof.holds
    assert separates(P, [P], [P]) is None
    assert separates(And(P, P), [P], [P]) is None
    cert2 = separates(P, [And(P, Q)], [delta_neg(Or(P, R))])
    assert cert2 is not None


def test_separates_common_language_error():
    with pytest.raises(CommonLanguageError):
        separates(Q, [And(P, Q)], [delta_neg(P)])


def test_find_separator_examples():
    cert = find_separator([P], [delta_neg(P)])
    assert cert.separator == P
    cert2 = find_separator([And(P, Q)], [delta_neg(P)])
    assert cert2.separator == P
    assert find_separator([P], [Q]) is None


def test_find_separator_g_only():
    cert = find_separator([Delta(P)], [delta_neg(Delta(P))], g_only=True)
    assert cert is not None
    assert is_g_formula(cert.separator)
    # Delta-mode finds a separator where the G clone has none: theta must be
    # 1 at p in {0, 1/2} and below 1 at p = 1, a shape no G vector realizes
    assert find_separator([delta_neg(P)], [Delta(P)], g_only=True) is None
    cert2 = find_separator([delta_neg(P)], [Delta(P)], g_only=False)
    assert cert2 is not None
    assert not is_g_formula(cert2.separator)


def test_interpolate_examples():
    assert interpolate(And(P, Q), Or(P, R)) == P
    assert interpolate(P, P) == P
    assert interpolate(BOT, Q) == BOT


def test_interpolate_precondition():
    with pytest.raises(PreconditionError) as err:
        interpolate(P, Q)
    verdict = err.value.verdict
    assert not verdict.holds
    assert verdict.witness == {"p": F(1), "q": F(0)}


def test_interpolate_g_only_gap():
    # tilde-p entails tilde-Delta-p, but no Delta-free interpolant exists
    phi, psi = delta_neg(P), delta_neg(Delta(P))
    assert one_entails([phi], psi).holds
    assert interpolate(phi, psi, g_only=True) is None
    theta = interpolate(phi, psi, g_only=False)
    assert theta is not None
    assert one_entails([phi], theta).holds and one_entails([theta], psi).holds


def test_interpolation_soundness_random():
    rng = make_rng("interp-sound")
    found = 0
    for _ in range(400):
        phi = random_prop(rng, atoms=("p", "q"), max_depth=3)
        psi = random_prop(rng, atoms=("q", "r"), max_depth=3)
        if not one_entails([phi], psi).holds:
            continue
        found += 1
        theta = interpolate(phi, psi)
        assert theta is not None
        assert one_entails([phi], theta).holds
        assert one_entails([theta], psi).holds
        assert set(language_of([theta]).relations) <= {"q"}
        g_theta = interpolate(phi, psi, g_only=True)
        if is_g_formula(phi) and is_g_formula(psi):
            assert g_theta is not None
        if g_theta is not None:
            assert is_g_formula(g_theta)
    assert found > 30


def test_separator_interpolant_duality():
    rng = make_rng("duality")
    for _ in range(200):
        phi = random_prop(rng, atoms=("p", "q"), max_depth=3)
        psi = random_prop(rng, atoms=("q", "r"), max_depth=3)
        holds = one_entails([phi], psi).holds
        cert = find_separator([phi], [delta_neg(psi)])
        if holds:
            assert cert is not None
            theta = cert.separator
            # a separator of ({phi}, {~psi}) is an interpolant and back
            assert one_entails([phi], theta).holds
            assert one_entails([theta], psi).holds
            assert separates(theta, [phi], [delta_neg(psi)]) is not None
        else:
            assert cert is None


def test_abstract_constants_examples():
    sig = Signature({"R": 2, "S": 2}, {"c", "d", "e"})
    phi = parse_formula("R(d,c)", sig)
    psi = parse_formula("S(e,c)", sig)
    a, b = abstract_constants(phi, psi)
    assert a == Exists("v0", Atom("R", (Var("v0"), Const("c"))))
    assert b == Forall("v0", Atom("S", (Var("v0"), Const("c"))))

    shared_only = parse_formula("R(c,c)", sig)
    same = abstract_constants(shared_only, shared_only)
    assert same == (shared_only, shared_only)

    both_private = parse_formula("R(d1,d2)", Signature({"R": 2}, {"d1", "d2"}))
    a2, _ = abstract_constants(both_private, P)
    assert a2 == Exists(
        "v0", Exists("v1", Atom("R", (Var("v0"), Var("v1"))))
    )


def test_abstract_constants_avoids_bound_variables():
    sig = Signature({"R": 2}, {"d"})
    phi = parse_formula("exists v0. R(v0,d)", sig)
    a, _ = abstract_constants(phi, P)
    assert a.var == "v1"  # v0 is taken inside phi
    assert not a.free_vars


def test_henkin_extend_basic():
    trace = henkin_extend([P], [Q])
    assert not trace.fo_bounded and not trace.g_only
    assert P in trace.t_theory and Q in trace.u_theory
    assert trace.steps
    for step in trace.steps:
        assert step.recheck_ok
        if step.accepted:
            assert step.added == step.offered
        else:
            assert step.added == delta_neg(step.offered)
    # both sides stay satisfiable throughout (checked at the end; every
    # prefix of an unsatisfiable-free run is itself a run)
    assert satisfiable(list(trace.t_theory)).holds
    assert satisfiable(list(trace.u_theory)).holds
    assert find_separator(list(trace.t_theory), list(trace.u_theory)) is None


def test_henkin_extend_identical_theories():
    trace = henkin_extend([P], [P])
    assert set(trace.t_theory) == set(trace.u_theory)


def test_henkin_extend_separable_raises():
    with pytest.raises(SeparableTheories) as err:
        henkin_extend([P], [delta_neg(P)])
    assert err.value.certificate.separator == P


def test_henkin_extend_custom_enumeration():
    stream = [P, Delta(P), Or(P, Q)]
    trace = henkin_extend([P], [Q], enumeration=stream, budget=2)
    assert {s.offered for s in trace.steps} <= {P, Delta(P)}  # budget cut
    with pytest.raises(ValueError):
        henkin_extend(
            [P], [Q],
            enumeration=[parse_open_formula("R(x)", ["x"], Signature({"R": 1}))],
        )


def check_assembled_trace(trace, phi, psi):
    """The pipeline invariants every full run must satisfy."""
    assert trace.phi == phi and trace.psi == psi
    for e in trace.b0_chain.elements:
        assert trace.amalgam.g1(trace.f1(e)) == trace.amalgam.g2(trace.f2(e))
    h = trace.embedding
    am = trace.amalgam.amalgam
    assert h[am.bottom] == F(0) and h[am.top] == F(1)
    values = [h[e] for e in am.elements]
    assert values == sorted(set(values))
    assert evaluate(trace.valuation, phi) == ONE
    assert evaluate(trace.valuation, psi) != ONE
    json.dumps(trace.to_dict())  # schema-stable, serializable


def test_countermodel_double_negation():
    v, trace = countermodel_synthesize(neg(neg(P)), P)
    assert evaluate(v, P) == F(1, 2)
    assert evaluate(v, neg(neg(P))) == ONE
    check_assembled_trace(trace, neg(neg(P)), P)
    assert trace.steps and all(s.recheck_ok for s in trace.steps)


def test_countermodel_disjoint_language():
    v, trace = countermodel_synthesize(P, Q)
    assert evaluate(v, P) == ONE
    assert evaluate(v, Q) == F(0)
    check_assembled_trace(trace, P, Q)


def test_countermodel_precondition():
    with pytest.raises(PreconditionError):
        countermodel_synthesize(P, Delta(P))
    open_formula = parse_open_formula("R(x)", ["x"], Signature({"R": 1}))
    with pytest.raises(ValueError):
        countermodel_synthesize(P, open_formula)


def test_countermodel_g_only():
    v, trace = countermodel_synthesize(P, And(P, Q), g_only=True)
    assert trace.g_only
    assert trace.b1.g_only
    assert evaluate(v, P) == ONE and evaluate(v, And(P, Q)) != ONE
    check_assembled_trace(trace, P, And(P, Q))


def test_countermodel_explicit_empty_enumeration():
    # disjoint languages need no extension steps at all
    v, trace = countermodel_synthesize(P, Q, enumeration=[])
    assert trace.steps == ()
    assert evaluate(v, P) == ONE and evaluate(v, Q) != ONE


def test_countermodel_random_failing_pairs():
    rng = make_rng("countermodels")
    done = 0
    for _ in range(200):
        phi = random_prop(rng, atoms=("p", "q"), max_depth=3)
        psi = random_prop(rng, atoms=("q", "r"), max_depth=3)
        if one_entails([phi], psi).holds or not satisfiable([phi]).holds:
            continue
        v, trace = countermodel_synthesize(phi, psi)
        assert evaluate(v, phi) == ONE
        assert evaluate(v, psi) != ONE
        done += 1
        if done >= 40:
            break
    assert done >= 40


def test_countermodel_first_order_best_effort():
    sig = Signature({"P": 1})
    phi = parse_formula("exists x. P(x)", sig)
    psi = parse_formula("forall x. P(x)", sig)
    v, trace = countermodel_synthesize(phi, psi, seed=3)
    assert trace.fo_bounded
    assert evaluate(v, phi) == ONE
    assert evaluate(v, psi) != ONE
    json.dumps(trace.to_dict())


def test_countermodel_trace_json_shape():
    _, trace = countermodel_synthesize(neg(neg(P)), P)
    d = trace.to_dict()
    assert {"g_only", "fo_bounded", "steps", "t_theory", "u_theory"} <= set(d)
    assert {"b0", "b1", "b2"} <= set(d["chains"])
    assert "amalgam" in d and "embedding" in d and "valuation" in d
    assert d["assignment"] == {"p": "1/2"}
