#!/usr/bin/env python3
"""
Decide propositional validity over the canonical chain.

A formula with n atoms is a tautology exactly when it takes value 1 at
every assignment into {0, 1/(n+1), ..., 1}.  Checking that finite grid
is a complete decision procedure, and failures come with an exact
rational witness.
"""

from goedel import canonical_chain, is_tautology, one_entails, parse_formula, pretty

CANDIDATES = [
    "p -> p",
    "p -> (q -> p)",
    "(p -> q) | (q -> p)",        # linearity, valid here but not intuitionistically
    "p | !p",                     # excluded middle fails
    "p | ~p",                     # the Delta-weakened form holds
    "D p | ~p",
    "!!p -> p",                   # double negation elimination fails
    "((p -> q) -> p) -> p",       # Peirce fails
    "D(p -> q) | D(q -> p)",
]


def main():
    print("chain for 1 atom:", [str(x) for x in canonical_chain(1)])
    print("chain for 2 atoms:", [str(x) for x in canonical_chain(2)])
    print()

    for text in CANDIDATES:
        f = parse_formula(text)
        if is_tautology(f):
            print(f"valid   {pretty(f)}")
        else:
            verdict = one_entails((), f)
            witness = {a: str(x) for a, x in sorted(verdict.witness.items())}
            print(f"invalid {pretty(f)}  falsified at {witness}")


if __name__ == "__main__":
    main()
