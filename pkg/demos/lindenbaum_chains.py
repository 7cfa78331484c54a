#!/usr/bin/env python3
"""
Collapse a set of formulas into a Lindenbaum chain.

Relative to a complete theory (here: the theory of one exact valuation),
formulas with the same truth value form one equivalence class, and the
classes inherit a bounded linear order from the values.  This is the
object the countermodel pipeline amalgamates.
"""

from fractions import Fraction

from goedel import (
    BoundedChain,
    CompleteTheoryOracle,
    build_chain,
    embed_into_unit,
    parse_formula,
    parse_theory,
    pretty,
)


def main():
    formulas = parse_theory("p\nq\np & q\np -> q\nq -> p\nD p\n~p\n!q")
    oracle = CompleteTheoryOracle.from_assignment(
        {"p": Fraction(1, 2), "q": Fraction(3, 4)}
    )
    chain = build_chain(oracle, formulas)

    print("classes in value order:")
    for cls in chain.classes:
        members = ", ".join(pretty(f) for f in cls.members)
        print(f"  value {cls.value}: {members}")
    print()

    # falsum and verum classes are adjoined even when no listed formula
    # lands there, so the chain is always bounded
    print("bottom class:", pretty(chain.bottom.representative))
    print("top class:", pretty(chain.top.representative))
    print()

    # any formula of the language locates itself on the chain by value
    extra = parse_formula("(q -> p) & q")
    cls = chain.class_of(extra)
    print(f"{pretty(extra)} joins the class of {pretty(cls.representative)}"
          f" at value {cls.value}")
    print()

    # forgetting the values leaves a plain bounded order on the
    # representatives, ready for uniform re-embedding into [0, 1]
    order = BoundedChain([pretty(c.representative) for c in chain.classes])
    print("representative order:", " < ".join(order.elements))
    for e, x in embed_into_unit(order).items():
        print(f"  {e} -> {x}")


if __name__ == "__main__":
    main()
