#!/usr/bin/env python3
"""
Evaluate formulas at exact rational truth values.

Conjunction is min, disjunction is max, and implication returns 1 when
the antecedent does not exceed the consequent and the consequent's value
otherwise.  Delta flattens: value 1 exactly at 1, value 0 below.
"""

from fractions import Fraction

from goedel import assignment_valuation, evaluate, parse_formula, pretty


def show(v, text):
    f = parse_formula(text)
    print(f"  v({pretty(f)}) = {evaluate(v, f)}")


def main():
    print("Evaluation at p = 2/3, q = 1/4")
    print("------------------------------")
    v = assignment_valuation({"p": Fraction(2, 3), "q": Fraction(1, 4)})

    show(v, "p & q")
    show(v, "p | q")
    show(v, "p -> q")   # 2/3 > 1/4, so the value collapses to q
    show(v, "q -> p")   # 1/4 <= 2/3, so the implication is true
    show(v, "!p")       # negation is p -> bot; nonzero p gives 0
    show(v, "!!p")      # but double negation recovers full truth
    show(v, "D p")      # Delta sees that p is not quite 1
    show(v, "~p")       # ~p abbreviates !(D p), true whenever p < 1
    print()

    print("The same formulas at p = 1, q = 0")
    print("---------------------------------")
    w = assignment_valuation({"p": Fraction(1), "q": Fraction(0)})
    for text in ["p & q", "p | q", "p -> q", "q -> p", "!p", "!!p", "D p", "~p"]:
        show(w, text)
    print()

    # Intermediate values matter: p | !p is not a tautology here
    print("Excluded middle at p = 1/2")
    u = assignment_valuation({"p": Fraction(1, 2)})
    show(u, "p | !p")
    show(u, "p | ~p")   # the weak form with ~ does hold


if __name__ == "__main__":
    main()
