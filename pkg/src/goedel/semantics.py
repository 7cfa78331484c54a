"""Exact [0,1]-valued semantics over finite universes.

A valuation interprets every relation symbol by a total map from tuples of
universe elements to rational truth values in [0,1], and every constant by
an element.  Evaluation clauses:

    v(bot)        = 0
    v(R(t1..tk))  = the table entry at the denoted elements
    v(f & g)      = min(v(f), v(g))
    v(f | g)      = max(v(f), v(g))
    v(f -> g)     = 1 if v(f) <= v(g), else v(g)
    v(D f)        = 1 if v(f) = 1, else 0
    v(forall x.f) = min over elements a of v(f[x:=a])
    v(exists x.f) = max over elements a of v(f[x:=a])

On a finite universe the infimum and supremum are the minimum and maximum,
so every value is computed exactly with `fractions.Fraction`; no floats
appear anywhere in a verdict.

The derived connectives need no clauses of their own, but their values
follow the usual case splits: !f is 1 when v(f)=0 and 0 otherwise; ~f is
1 when v(f)<1 and 0 otherwise; v(f <-> g) is 1 when the values are equal
and min(v(f),v(g)) otherwise.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .syntax import (
    And,
    Atom,
    Bottom,
    Const,
    Delta,
    Exists,
    Forall,
    Formula,
    Implies,
    Or,
    Signature,
    Var,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class SemanticsError(ValueError):
    """Raised for malformed valuations or evaluation of uninterpreted syntax."""


def as_truth_value(x) -> Fraction:
    """Coerce to an exact rational in [0,1]; floats are rejected."""
    if isinstance(x, float):
        raise SemanticsError(f"truth values must be exact rationals, got float {x!r}")
    q = Fraction(x)
    if q < 0 or q > 1:
        raise SemanticsError(f"truth value out of [0,1]: {q}")
    return q


class Valuation:
    """A finite model: universe, relation tables, constant denotations.

    `relations` maps each relation name to a dict from element tuples to
    truth values; the table must be total over universe^arity.  A 0-ary
    relation has the single key ().
    """

    __slots__ = ("universe", "relations", "constants")

    def __init__(
        self,
        universe: Iterable[str],
        relations: Mapping[str, Mapping[tuple, object]],
        constants: Optional[Mapping[str, str]] = None,
    ):
        universe = tuple(universe)
        if not universe:
            raise SemanticsError("universe must be non-empty")
        if len(set(universe)) != len(universe):
            raise SemanticsError("universe elements must be distinct")
        elems = set(universe)
        rels: dict[str, dict[tuple, Fraction]] = {}
        for name, table in relations.items():
            table = {tuple(k): as_truth_value(v) for k, v in table.items()}
            arities = {len(k) for k in table}
            if len(arities) > 1:
                raise SemanticsError(f"mixed tuple lengths in table for {name}")
            arity = arities.pop() if arities else 0
            if not table and arity == 0:
                raise SemanticsError(f"empty table for {name}; a 0-ary table needs the () entry")
            expected = len(universe) ** arity
            if len(table) != expected:
                raise SemanticsError(
                    f"table for {name} has {len(table)} entries, needs {expected} over this universe"
                )
            for k in table:
                if any(e not in elems for e in k):
                    raise SemanticsError(f"table for {name} mentions non-universe element {k}")
            rels[name] = table
        consts = dict(constants or {})
        for c, e in consts.items():
            if e not in elems:
                raise SemanticsError(f"constant {c} denotes non-universe element {e!r}")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "constants", consts)

    def __setattr__(self, *_):
        raise AttributeError("valuations are immutable")

    def signature(self) -> Signature:
        arities = {name: (len(next(iter(t))) if t else 0) for name, t in self.relations.items()}
        return Signature(arities, self.constants.keys())

    def with_constant(self, name: str, element: str) -> "Valuation":
        consts = dict(self.constants)
        consts[name] = element
        return Valuation(self.universe, self.relations, consts)

    def __repr__(self):
        return f"Valuation(universe={self.universe!r}, relations={sorted(self.relations)})"


def evaluate(v: Valuation, f: Formula, env: Optional[Mapping[str, str]] = None) -> Fraction:
    """The exact truth value of f under v; env assigns free variables to
    universe elements."""
    env = env or {}

    def denote(t) -> str:
        if isinstance(t, Var):
            try:
                return env_stack[t.name]
            except KeyError:
                raise SemanticsError(f"unbound variable {t.name!r}") from None
        assert isinstance(t, Const)
        try:
            return v.constants[t.name]
        except KeyError:
            raise SemanticsError(f"uninterpreted constant {t.name!r}") from None

    env_stack = dict(env)

    def go(g: Formula) -> Fraction:
        if isinstance(g, Atom):
            try:
                table = v.relations[g.name]
            except KeyError:
                raise SemanticsError(f"uninterpreted relation {g.name!r}") from None
            return table[tuple(denote(t) for t in g.terms)]
        if isinstance(g, Bottom):
            return ZERO
        if isinstance(g, And):
            return min(go(g.lhs), go(g.rhs))
        if isinstance(g, Or):
            return max(go(g.lhs), go(g.rhs))
        if isinstance(g, Implies):
            a = go(g.lhs)
            b = go(g.rhs)
            return ONE if a <= b else b
        if isinstance(g, Delta):
            return ONE if go(g.body) == ONE else ZERO
        if isinstance(g, (Forall, Exists)):
            outer = env_stack.get(g.var)
            best = None
            pick = min if isinstance(g, Forall) else max
            for a in v.universe:
                env_stack[g.var] = a
                val = go(g.body)
                best = val if best is None else pick(best, val)
            if outer is None:
                env_stack.pop(g.var, None)
            else:
                env_stack[g.var] = outer
            return best
        raise SemanticsError(f"cannot evaluate {g!r}")

    return go(f)


def models(v: Valuation, theory: Iterable[Formula]) -> bool:
    """True when every member of the theory has value 1 under v."""
    return all(evaluate(v, f) == ONE for f in theory)


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------


def _tuple_key(k: tuple) -> str:
    return "(" + ",".join(k) + ")"


def _parse_tuple_key(s: str) -> tuple:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise SemanticsError(f"bad tuple key {s!r}")
    inner = s[1:-1].strip()
    if not inner:
        return ()
    return tuple(part.strip() for part in inner.split(","))


def valuation_to_dict(v: Valuation) -> dict:
    return {
        "universe": list(v.universe),
        "relations": {
            name: {_tuple_key(k): str(val) for k, val in sorted(table.items())}
            for name, table in sorted(v.relations.items())
        },
        "constants": dict(sorted(v.constants.items())),
    }


def valuation_from_dict(d: Mapping) -> Valuation:
    try:
        universe = d["universe"]
        relations = {
            name: {_parse_tuple_key(k): Fraction(val) for k, val in table.items()}
            for name, table in d.get("relations", {}).items()
        }
        constants = d.get("constants", {})
    except (KeyError, TypeError, ValueError) as e:
        raise SemanticsError(f"malformed valuation object: {e}") from e
    return Valuation(universe, relations, constants)


def valuation_to_json(v: Valuation, indent: Optional[int] = None) -> str:
    return json.dumps(valuation_to_dict(v), indent=indent, sort_keys=True)


def valuation_from_json(text: str) -> Valuation:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise SemanticsError(f"bad valuation JSON: {e}") from e
    return valuation_from_dict(d)


def assignment_valuation(assignment: Mapping[str, object], constants: Iterable[str] = ()) -> Valuation:
    """Lift a propositional assignment (atom name -> truth value) to a
    single-element valuation with one 0-ary relation per atom."""
    tables = {name: {(): as_truth_value(val)} for name, val in assignment.items()}
    consts = {c: "e0" for c in constants}
    return Valuation(("e0",), tables, consts)


def product_valuations(
    sig: Signature, universe: tuple, values: Iterable[Fraction]
) -> Iterable[Valuation]:
    """Deterministic stream of every valuation of `sig` over the universe
    whose table entries are drawn from `values`, with constants ranging over
    all assignments.  Intended for small exhaustive sweeps."""
    values = tuple(values)
    slots = []
    for name, arity in sorted(sig.relations.items()):
        for args in itertools.product(universe, repeat=arity):
            slots.append((name, args))
    const_names = sorted(sig.constants)
    for const_choice in itertools.product(universe, repeat=len(const_names)):
        consts = dict(zip(const_names, const_choice))
        for combo in itertools.product(values, repeat=len(slots)):
            tables: dict[str, dict[tuple, Fraction]] = {
                name: {} for name in sig.relations
            }
            for (name, args), val in zip(slots, combo):
                tables[name][args] = val
            yield Valuation(universe, tables, consts)
