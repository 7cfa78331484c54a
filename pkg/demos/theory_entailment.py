#!/usr/bin/env python3
"""
Theories, 1-entailment, and witness valuations.

T entails f when every valuation making all of T true (value exactly 1)
also makes f true.  The check is exact, and a failed entailment returns
an assignment that models the theory but not the conclusion.
"""

from goedel import evaluate, one_entails, parse_theory, parse_formula, pretty, satisfiable


def report(theory_text, conclusion_text):
    theory = parse_theory(theory_text)
    conclusion = parse_formula(conclusion_text)
    verdict = one_entails(theory, conclusion)
    premises = ", ".join(pretty(f) for f in theory) or "(empty)"
    if verdict.holds:
        print(f"{premises}  entails  {pretty(conclusion)}")
        return
    print(f"{premises}  does NOT entail  {pretty(conclusion)}")
    v = verdict.witness_valuation()
    for f in theory:
        assert evaluate(v, f) == 1
    print(f"  witness: {({a: str(x) for a, x in sorted(verdict.witness.items())})}"
          f"  gives conclusion value {evaluate(v, conclusion)}")


def main():
    report("p -> q\np", "q")          # modus ponens
    report("p | q\n~p", "q")          # fails: ~p only says p < 1
    report("p | q\n!p", "q")          # strict negation does rule p out
    report("!!p", "p")                # fails at p = 1/2
    report("D p", "p")                # Delta is stronger than plain truth
    print()

    # satisfiable() searches the same grid for a model of the whole theory
    t = parse_theory("p -> q\nq -> p\n~D p")
    verdict = satisfiable(t)
    print("theory {p -> q, q -> p, ~D p} satisfiable:", verdict.holds)
    print("  model:", {a: str(x) for a, x in sorted(verdict.witness.items())})

    t2 = parse_theory("p\n!p")
    print("theory {p, !p} satisfiable:", satisfiable(t2).holds)


if __name__ == "__main__":
    main()
