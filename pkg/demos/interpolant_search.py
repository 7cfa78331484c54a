#!/usr/bin/env python3
"""Find Craig interpolants by scanning the clone over the common atoms.

For phi entailing psi, an interpolant is a formula theta written only
with atoms shared by both sides such that phi entails theta and theta
entails psi.  The search enumerates the finitely many truth functions
over the shared atoms; every hit is re-verified semantically before it
is returned.
"""

from goedel import clone_closure, interpolate, parse_formula, pretty


PAIRS = [
    ("p & q", "p | r"),
    ("p & (p -> q)", "q | r"),
    ("D p & q", "r -> D p"),
    ("p & !p", "q"),
]


def main():
    for left, right in PAIRS:
        phi, psi = parse_formula(left), parse_formula(right)
        theta = interpolate(phi, psi)
        print(f"{pretty(phi)}  |~  {pretty(psi)}")
        print(f"    interpolant: {pretty(theta)}")
    print()

    # The search space itself: every definable truth function over the
    # shared atoms, tabulated on the canonical chain.
    table = clone_closure(("p",), delta_allowed=True)
    print(f"definable 1-atom functions with Delta: {len(table)}")
    for vector, witness in sorted(table.witness.items()):
        print(f"    {tuple(str(x) for x in vector)}  realized by  {pretty(witness)}")

    table_g = clone_closure(("p",), delta_allowed=False)
    print(f"without Delta only {len(table_g)} remain")


if __name__ == "__main__":
    main()
