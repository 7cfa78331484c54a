"""Lindenbaum chains: formula classes modulo a complete theory.

A complete theory is presented by a single valuation v: its 1-set
{f : v(f) = 1} is linearly complete, because for any two formulas one of
v(f -> g), v(g -> f) is 1.  Two formulas share a class exactly when their
v-values coincide, and classes are ordered by that value, so the quotient
is a bounded linear order once the falsum and verum classes are adjoined.

With the endpoint classes present the chain is closed under all four
class operations: min and max of two class values are class values, an
implication's value is 1 or the consequent's value, and Delta yields 0
or 1.  `class_op` still checks membership and reports rather than
silently extending the chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import semantics
from .semantics import ONE, ZERO, Valuation, evaluate
from .syntax import BOT, TOP, And, Delta, Formula, Implies, Or, is_g_formula

_OPS = ("and", "or", "implies", "delta")


class ChainError(ValueError):
    """Raised for open inputs, foreign classes, or a chain not closed
    under a requested operation."""


class CompleteTheoryOracle:
    """Presents the complete theory of a single valuation."""

    __slots__ = ("valuation",)

    def __init__(self, valuation: Valuation):
        object.__setattr__(self, "valuation", valuation)

    def __setattr__(self, *_):
        raise AttributeError("oracles are immutable")

    @classmethod
    def from_assignment(cls, assignment: Mapping[str, Fraction]) -> "CompleteTheoryOracle":
        return cls(semantics.assignment_valuation(assignment))

    def value(self, f: Formula) -> Fraction:
        if f.free_vars:
            raise ChainError(f"open formula {f!r}")
        return evaluate(self.valuation, f)

    def holds(self, f: Formula) -> bool:
        return self.value(f) == ONE


@dataclass(frozen=True)
class LindClass:
    """One equivalence class: common value, members sorted in enumeration
    order, representative = least member."""

    value: Fraction
    members: tuple

    @property
    def representative(self) -> Formula:
        return self.members[0]

    def __repr__(self):
        return f"LindClass({self.value}, rep={self.representative!r}, size={len(self.members)})"


class LindChain:
    """The ordered classes of a formula list under a valuation oracle."""

    __slots__ = ("oracle", "classes", "g_only", "_by_value")

    def __init__(self, oracle: CompleteTheoryOracle, classes: Sequence[LindClass], g_only: bool):
        classes = tuple(classes)
        values = [c.value for c in classes]
        if values != sorted(set(values)):
            raise ChainError("classes must be strictly increasing by value")
        if not classes or classes[0].value != ZERO or classes[-1].value != ONE:
            raise ChainError("chain must have endpoint classes of value 0 and 1")
        object.__setattr__(self, "oracle", oracle)
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "g_only", g_only)
        object.__setattr__(self, "_by_value", {c.value: c for c in classes})

    def __setattr__(self, *_):
        raise AttributeError("chains are immutable")

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def bottom(self) -> LindClass:
        return self.classes[0]

    @property
    def top(self) -> LindClass:
        return self.classes[-1]

    def class_of(self, f: Formula) -> LindClass:
        """The class containing the formula (by its oracle value); the
        formula need not be among the original members."""
        value = self.oracle.value(f)
        got = self._by_value.get(value)
        if got is None:
            raise ChainError(f"no class of value {value} in this chain")
        return got

    def class_of_value(self, value: Fraction) -> LindClass:
        got = self._by_value.get(Fraction(value))
        if got is None:
            raise ChainError(f"no class of value {value} in this chain")
        return got

    def leq(self, a: LindClass, b: LindClass) -> bool:
        self._check_member(a)
        self._check_member(b)
        return a.value <= b.value

    def _check_member(self, c: LindClass):
        if self._by_value.get(c.value) is not c:
            raise ChainError(f"class {c!r} does not belong to this chain")


def build_chain(
    oracle: CompleteTheoryOracle,
    formulas: Iterable[Formula],
    g_only: bool = False,
) -> LindChain:
    """Partition the formulas by oracle value and order the classes by
    value.  Falsum and verum are always included, so the result is a
    bounded chain."""
    formulas = list(formulas)
    for f in formulas:
        if f.free_vars:
            raise ChainError(f"open formula {f!r}")
        if g_only and not is_g_formula(f):
            raise ChainError(f"Delta construct in g-only chain: {f!r}")
    buckets: dict[Fraction, set] = {}
    for f in [*formulas, BOT, TOP]:
        buckets.setdefault(oracle.value(f), set()).add(f)
    classes = [
        LindClass(value, tuple(sorted(buckets[value]))) for value in sorted(buckets)
    ]
    return LindChain(oracle, classes, g_only)


def class_op(chain: LindChain, op: str, *args: LindClass) -> LindClass:
    """Apply a connective on classes via representatives: the class of
    op(rep_1, rep_2).  Independent of representative choice because the
    result's value is determined by the argument values alone."""
    if op not in _OPS:
        raise ChainError(f"unknown class operation {op!r}; expected one of {_OPS}")
    expected = 1 if op == "delta" else 2
    if len(args) != expected:
        raise ChainError(f"{op} takes {expected} class argument(s), got {len(args)}")
    for c in args:
        chain._check_member(c)
    reps = [c.representative for c in args]
    if op == "and":
        combined: Formula = And(reps[0], reps[1])
    elif op == "or":
        combined = Or(reps[0], reps[1])
    elif op == "implies":
        combined = Implies(reps[0], reps[1])
    else:
        combined = Delta(reps[0])
    value = chain.oracle.value(combined)
    got = chain._by_value.get(value)
    if got is None:
        raise ChainError(
            f"chain not closed under {op}: result value {value} has no class"
        )
    return got


def chain_to_dict(chain: LindChain) -> dict:
    from .syntax import pretty

    return {
        "g_only": chain.g_only,
        "classes": [
            {
                "value": str(c.value),
                "representative": pretty(c.representative),
                "members": [pretty(m) for m in c.members],
            }
            for c in chain.classes
        ],
    }
