"""Seeded check suites for the three lemma groups: the eleven 1-entailment
properties, the seven constant/quantifier interaction laws, and the
agreement of the four theory-completeness conditions.

Propositional items are decided exactly on the canonical chain.  The
quantifier items run over finite universes of size up to 3 on a fixed
signature (unary P, binary R, constants c and d); when the value-grid
space is too large to sweep it is sampled under the suite seed.  The
conditional items 5-7 of the constants group are checked through their
contrapositives: every countermodel the bounded search finds against the
conclusion is transformed (by re-pointing the constant c at a witnessing
element) into a countermodel against the premise, and that transformed
valuation is verified exactly.  A transform that failed to refute the
premise would be a genuine violation, so these checks cannot fail
spuriously from sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .decision import (
    classify_completeness,
    fo_check_bounded,
    is_tautology,
    one_entails,
)
from .semantics import ONE, Valuation, evaluate, models
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Const,
    Delta,
    Exists,
    Forall,
    Formula,
    Implies,
    Or,
    Signature,
    Var,
    delta_neg,
    enumerate_closed_formulas,
    fresh_constants,
    iff,
    pretty,
    substitute,
)

PROP_ATOMS = ("p", "q", "r")
FO_SAMPLE = 400
FO_MAX_UNIVERSE = 3


@dataclass(frozen=True)
class ItemReport:
    """One lemma item: how many cases ran and the serialized failures."""

    item: str
    cases: int
    failures: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    items: Tuple[ItemReport, ...]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "ok": self.ok,
            "items": [
                {
                    "item": i.item,
                    "cases": i.cases,
                    "failures": list(i.failures),
                }
                for i in self.items
            ],
        }


# ---------------------------------------------------------------------------
# Random instance generators
# ---------------------------------------------------------------------------


def random_formula(rng: random.Random, leaves: Sequence[Formula], max_depth: int, delta_allowed: bool) -> Formula:
    """A random formula over the given leaf pool.  Sizes vary: at every
    level there is a chance to stop at a leaf."""
    if max_depth == 0 or rng.random() < 0.25:
        return rng.choice(leaves)
    ops = ["and", "or", "implies", "neg"]
    if delta_allowed:
        ops += ["delta", "tilde"]
    op = rng.choice(ops)
    if op == "and":
        return And(
            random_formula(rng, leaves, max_depth - 1, delta_allowed),
            random_formula(rng, leaves, max_depth - 1, delta_allowed),
        )
    if op == "or":
        return Or(
            random_formula(rng, leaves, max_depth - 1, delta_allowed),
            random_formula(rng, leaves, max_depth - 1, delta_allowed),
        )
    if op == "implies":
        return Implies(
            random_formula(rng, leaves, max_depth - 1, delta_allowed),
            random_formula(rng, leaves, max_depth - 1, delta_allowed),
        )
    if op == "neg":
        return Implies(random_formula(rng, leaves, max_depth - 1, delta_allowed), BOT)
    if op == "delta":
        return Delta(random_formula(rng, leaves, max_depth - 1, delta_allowed))
    return delta_neg(random_formula(rng, leaves, max_depth - 1, delta_allowed))


def random_propositional(rng: random.Random, max_depth: int = 4, delta_allowed: bool = True) -> Formula:
    leaves = [Atom(a) for a in PROP_ATOMS] + [BOT]
    return random_formula(rng, leaves, max_depth, delta_allowed)


def random_theory(rng: random.Random, size: int, max_depth: int = 3) -> List[Formula]:
    return [random_propositional(rng, max_depth) for _ in range(rng.randint(0, size))]


# fixed first-order signature for the constants suite; sigma(x) and chi(x)
# never mention c, matching the freshness side conditions of the lemma
_X = Var("x")
_D = Const("d")
_C_NAME = "c"

_SIGMA_LEAVES = (
    Atom("P", (_X,)),
    Atom("P", (_D,)),
    Atom("R", (_X, _X)),
    Atom("R", (_X, _D)),
    Atom("R", (_D, _X)),
    Atom("R", (_D, _D)),
    BOT,
)
_THETA_LEAVES = (
    Atom("P", (_D,)),
    Atom("R", (_D, _D)),
    BOT,
)


def random_open(rng: random.Random, max_depth: int = 3) -> Formula:
    """Random formula with free variable x over the fixed signature."""
    f = random_formula(rng, _SIGMA_LEAVES, max_depth, delta_allowed=True)
    if "x" not in f.free_vars:
        f = Or(f, Atom("P", (_X,)))
    return f


def random_closed_fo(rng: random.Random, max_depth: int = 3) -> Formula:
    """Random closed c-free formula; sometimes wraps a quantifier."""
    if rng.random() < 0.4:
        body = random_open(rng, max_depth - 1)
        return Forall("x", body) if rng.random() < 0.5 else Exists("x", body)
    return random_formula(rng, _THETA_LEAVES, max_depth, delta_allowed=True)


# ---------------------------------------------------------------------------
# 1-entailment properties (eleven items)
# ---------------------------------------------------------------------------


def _show(*parts) -> str:
    return "; ".join(
        pretty(p) if isinstance(p, Formula) else str(p) for p in parts
    )


def property_suite(cases: int = 1000, seed: int = 0) -> SuiteReport:
    """The eleven 1-entailment properties on seeded random instances,
    decided exactly.  Conditional items mix random draws with constructed
    instances whose premises are guaranteed, so they are never vacuous
    throughout."""
    items: List[ItemReport] = []

    def run(name: str, check: Callable[[random.Random], Optional[str]]):
        # str seeds hash deterministically, unlike hash() of a str
        rng = random.Random(f"{seed}:property:{name}")
        failures = []
        for _ in range(cases):
            detail = check(rng)
            if detail is not None:
                failures.append(detail)
                if len(failures) >= 3:
                    break
        items.append(ItemReport(name, cases, tuple(failures)))

    def item1(rng):
        f = random_propositional(rng)
        if not is_tautology(Or(Delta(f), delta_neg(f))):
            return _show("not a tautology: D f | ~f with f =", f)
        return None

    def item2(rng):
        f = random_propositional(rng)
        if not is_tautology(Implies(Delta(f), f)):
            return _show("not a tautology: D f -> f with f =", f)
        return None

    def item3(rng):
        f = random_propositional(rng)
        if not one_entails([f], Delta(f)).holds:
            return _show("f does not 1-entail D f with f =", f)
        return None

    def item4(rng):
        f, g = random_propositional(rng), random_propositional(rng)
        if not one_entails([Delta(And(f, g))], And(Delta(f), Delta(g))).holds:
            return _show("D(f & g) does not 1-entail D f & D g:", f, g)
        return None

    def item5(rng):
        f, g = random_propositional(rng), random_propositional(rng)
        lhs = one_entails([g], f).holds
        rhs = one_entails([delta_neg(f)], delta_neg(g)).holds
        if lhs != rhs:
            return _show(f"contraposition mismatch ({lhs} vs {rhs}):", f, g)
        return None

    def item6(rng):
        f = random_propositional(rng)
        if not is_tautology(iff(Delta(delta_neg(f)), delta_neg(f))):
            return _show("D ~f <-> ~f fails for f =", f)
        if not is_tautology(iff(Delta(f), delta_neg(delta_neg(f)))):
            return _show("D f <-> ~~f fails for f =", f)
        return None

    def item7(rng):
        f = random_propositional(rng)
        if not one_entails([delta_neg(delta_neg(f))], f).holds:
            return _show("~~f does not 1-entail f for f =", f)
        if not one_entails([f], delta_neg(delta_neg(f))).holds:
            return _show("f does not 1-entail ~~f for f =", f)
        return None

    def item8(rng):
        f, g = random_propositional(rng), random_propositional(rng)
        if not one_entails([delta_neg(Implies(f, g))], Implies(g, f)).holds:
            return _show("~(f -> g) does not 1-entail g -> f:", f, g)
        return None

    def item9(rng):
        theory = random_theory(rng, 2)
        f = random_propositional(rng)
        if rng.random() < 0.5:
            # constructed so both premises provably hold
            g = And(Or(Delta(f), delta_neg(f)), theory[0] if theory else TOP)
        else:
            g = random_propositional(rng)
        with_f = one_entails([*theory, f], g).holds
        with_nf = one_entails([*theory, delta_neg(f)], g).holds
        if with_f and with_nf and not one_entails(theory, g).holds:
            return _show("case split fails:", f, g, *theory)
        return None

    def item10(rng):
        f, g = random_propositional(rng), random_propositional(rng)
        if rng.random() < 0.5:
            theory = [*random_theory(rng, 1), delta_neg(f), delta_neg(g)]
        else:
            theory = random_theory(rng, 2)
        if one_entails(theory, delta_neg(f)).holds and one_entails(theory, delta_neg(g)).holds:
            if not one_entails(theory, delta_neg(Or(f, g))).holds:
                return _show("~-closure under | fails:", f, g, *theory)
        return None

    def item11(rng):
        theory = random_theory(rng, 2)
        f, g = random_propositional(rng), random_propositional(rng)
        lhs = one_entails([*theory, f], g).holds
        rhs = one_entails(theory, Implies(Delta(f), g)).holds
        if lhs != rhs:
            return _show(f"deduction form mismatch ({lhs} vs {rhs}):", f, g, *theory)
        return None

    for name, fn in (
        ("1", item1), ("2", item2), ("3", item3), ("4", item4), ("5", item5),
        ("6", item6), ("7", item7), ("8", item8), ("9", item9), ("10", item10),
        ("11", item11),
    ):
        run(name, fn)
    return SuiteReport("property", seed, tuple(items))


# ---------------------------------------------------------------------------
# Constants and quantifiers (seven items)
# ---------------------------------------------------------------------------


def _first_failing_element(w: Valuation, sigma: Formula) -> Optional[str]:
    """Name of a fresh constant pointing at an element where sigma takes a
    value below 1; None if sigma is 1 everywhere."""
    tmp = next(fresh_constants(w.constants))
    for e in w.universe:
        we = w.with_constant(tmp, e)
        if evaluate(we, substitute(sigma, "x", tmp)) != ONE:
            return e
    return None


def _first_modeling_element(w: Valuation, sigma: Formula) -> Optional[str]:
    tmp = next(fresh_constants(w.constants))
    for e in w.universe:
        we = w.with_constant(tmp, e)
        if evaluate(we, substitute(sigma, "x", tmp)) == ONE:
            return e
    return None


def constants_suite(
    cases: int = 500,
    item7_cases: int = 200,
    seed: int = 0,
    max_universe: int = FO_MAX_UNIVERSE,
    sample: int = FO_SAMPLE,
) -> SuiteReport:
    """The seven constant/quantifier laws over bounded universes.  Items
    1-4 are direct bounded entailment checks; 5-7 are contrapositive
    witness transforms (see module docstring)."""
    items: List[ItemReport] = []

    def bounded(theory, f, k):
        return fo_check_bounded(
            list(theory), f, max_universe=max_universe, sample=sample, seed=seed * 100003 + k
        )

    def run(name: str, n: int, check: Callable[[random.Random, int], Optional[str]]):
        rng = random.Random(f"{seed}:constants:{name}")
        failures = []
        for k in range(n):
            detail = check(rng, k)
            if detail is not None:
                failures.append(detail)
                if len(failures) >= 3:
                    break
        items.append(ItemReport(name, n, tuple(failures)))

    def item1(rng, k):
        sigma = random_open(rng)
        verdict = bounded([Forall("x", sigma)], substitute(sigma, "x", _C_NAME), k)
        if not verdict.holds:
            return _show("forall x s(x) does not 1-entail s(c) for s =", sigma)
        return None

    def item2(rng, k):
        sigma = random_open(rng)
        verdict = bounded([substitute(sigma, "x", _C_NAME)], Exists("x", sigma), k)
        if not verdict.holds:
            return _show("s(c) does not 1-entail exists x s(x) for s =", sigma)
        return None

    def item3(rng, k):
        sigma = random_open(rng)
        fwd = bounded([delta_neg(Forall("x", sigma))], Exists("x", delta_neg(sigma)), k)
        if not fwd.holds:
            return _show("~forall to exists~ fails for s =", sigma)
        bwd = bounded([Exists("x", delta_neg(sigma))], delta_neg(Forall("x", sigma)), k)
        if not bwd.holds:
            return _show("exists~ to ~forall fails for s =", sigma)
        return None

    def item4(rng, k):
        sigma = random_open(rng)
        fwd = bounded([delta_neg(Exists("x", sigma))], Forall("x", delta_neg(sigma)), k)
        if not fwd.holds:
            return _show("~exists to forall~ fails for s =", sigma)
        bwd = bounded([Forall("x", delta_neg(sigma))], delta_neg(Exists("x", sigma)), k)
        if not bwd.holds:
            return _show("forall~ to ~exists fails for s =", sigma)
        return None

    def item5(rng, k):
        # contrapositive: a countermodel to T |= forall x s(x) re-points c
        # to a failing element, refuting T |= s(c); T is c-free
        sigma = random_open(rng)
        theory = [random_closed_fo(rng) for _ in range(rng.randint(0, 2))]
        verdict = bounded(theory, Forall("x", sigma), k)
        if verdict.holds:
            return None
        w = verdict.witness
        e = _first_failing_element(w, sigma)
        if e is None:
            return _show("witness has no failing element for s =", sigma)
        w2 = Valuation(w.universe, w.relations, {**w.constants, _C_NAME: e})
        if not models(w2, theory):
            return _show("re-pointed c broke a c-free theory:", sigma, *theory)
        if evaluate(w2, substitute(sigma, "x", _C_NAME)) == ONE:
            return _show("transform failed to refute s(c) for s =", sigma)
        return None

    def item6(rng, k):
        # contrapositive: a countermodel to exists x s(x) |= t re-points c
        # to a modeling element, refuting s(c) |= t; t is c-free
        sigma = random_open(rng)
        theta = random_closed_fo(rng)
        verdict = bounded([Exists("x", sigma)], theta, k)
        if verdict.holds:
            return None
        w = verdict.witness
        e = _first_modeling_element(w, sigma)
        if e is None:
            return _show("witness models exists but no element does:", sigma)
        w2 = Valuation(w.universe, w.relations, {**w.constants, _C_NAME: e})
        if evaluate(w2, substitute(sigma, "x", _C_NAME)) != ONE:
            return _show("transform lost the modeling element:", sigma)
        if evaluate(w2, theta) == ONE:
            return _show("re-pointing c changed a c-free formula:", theta)
        return None

    def item7(rng, k):
        # contrapositive: a countermodel to T + {~forall x s} |= exists x chi
        # re-points c to an element where s fails, refuting
        # T + {~forall x s, ~s(c)} |= chi(c); everything is c-free
        sigma = random_open(rng)
        chi = random_open(rng)
        theory = [random_closed_fo(rng) for _ in range(rng.randint(0, 1))]
        premise = [*theory, delta_neg(Forall("x", sigma))]
        verdict = bounded(premise, Exists("x", chi), k)
        if verdict.holds:
            return None
        w = verdict.witness
        e = _first_failing_element(w, sigma)
        if e is None:
            return _show("witness satisfies forall x s after all:", sigma)
        w2 = Valuation(w.universe, w.relations, {**w.constants, _C_NAME: e})
        full = [*premise, delta_neg(substitute(sigma, "x", _C_NAME))]
        if not models(w2, full):
            return _show("transform does not model the extended premise:", sigma, chi)
        if evaluate(w2, substitute(chi, "x", _C_NAME)) == ONE:
            return _show("transform failed to refute chi(c):", sigma, chi)
        return None

    run("1", cases, item1)
    run("2", cases, item2)
    run("3", cases, item3)
    run("4", cases, item4)
    run("5", cases, item5)
    run("6", cases, item6)
    run("7", item7_cases, item7)
    return SuiteReport("constants", seed, tuple(items))


# ---------------------------------------------------------------------------
# Completeness-condition agreement
# ---------------------------------------------------------------------------


def eqd_suite(cases: int = 200, seed: int = 0) -> SuiteReport:
    """Agreement of the four completeness conditions on random theory
    presentations over the depth-2 universe on {p, q}.  Presentations
    alternate between the 1-set of a random valuation (all four conditions
    must then hold) and a random finite theory (the four verdicts must
    still agree with each other)."""
    sig = Signature({"p": 0, "q": 0})
    universe = list(enumerate_closed_formulas(sig, max_depth=2))
    rng = random.Random(f"{seed}:eqd")
    failures = []
    leaves = [Atom("p"), Atom("q"), BOT]
    for k in range(cases):
        if k % 2 == 0:
            den = rng.choice((1, 2, 3, 5, 6))
            sigma = {
                "p": Fraction(rng.randint(0, den), den),
                "q": Fraction(rng.randint(0, den), den),
            }
            report = classify_completeness(sigma, universe)
            if not report.agree() or not report.linearly_complete:
                failures.append(f"valuation p={sigma['p']} q={sigma['q']}: {report.as_tuple()}")
        else:
            theory = [random_formula(rng, leaves, 2, True) for _ in range(rng.randint(1, 3))]
            report = classify_completeness(theory, universe)
            if not report.agree():
                failures.append(
                    "theory " + ", ".join(pretty(f) for f in theory) + f": {report.as_tuple()}"
                )
        if len(failures) >= 3:
            break
    return SuiteReport("eqd", seed, (ItemReport("agreement", cases, tuple(failures)),))
