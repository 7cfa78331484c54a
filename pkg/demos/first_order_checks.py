#!/usr/bin/env python3
"""
Bounded first-order checking and constant abstraction.

Quantifiers range over finite universes with inf/sup semantics, so
refutation search over small universes is exact per universe but only
ever a bounded verdict overall: holds means "no countermodel up to the
size bound", never a proof.
"""

from goedel import (
    abstract_constants,
    fo_check_bounded,
    parse_formula,
    pretty,
)


def main():
    # forall x (P(x) | ~P(x)) survives every bounded search (it is valid)
    taut = parse_formula("forall x. (P(x) | ~P(x))")
    verdict = fo_check_bounded([], taut, max_universe=3)
    print(f"{pretty(taut)}: holds={verdict.holds}, bounded={verdict.bounded},"
          f" states checked: {verdict.states_checked}")

    # existence does not give universality: refuted on two elements
    phi = parse_formula("exists x. P(x)")
    psi = parse_formula("forall x. P(x)")
    verdict = fo_check_bounded([phi], psi, max_universe=2)
    print(f"{pretty(phi)} entails {pretty(psi)}: holds={verdict.holds}")
    if not verdict.holds:
        v = verdict.witness
        print("  countermodel universe:", sorted(v.universe))
        print("  P table:", {k: str(x) for k, x in sorted(v.relations["P"].items())})
    print()

    # interpolation pre-processing: constants private to one side are
    # generalized away so both sides speak the shared language
    left = parse_formula("R(d, c)")
    right = parse_formula("R(e, c) -> S(c)")
    a_left, a_right = abstract_constants(left, right)
    print(f"{pretty(left)}  abstracts to  {pretty(a_left)}")
    print(f"{pretty(right)}  abstracts to  {pretty(a_right)}")


if __name__ == "__main__":
    main()
