#!/usr/bin/env python3
"""
Why Delta matters for interpolation.

~p entails ~(D p), and the only shared atom is p itself.  With Delta in
the target language a separator exists (indeed ~p works).  Restricted to
Delta-free formulas there is none: every Delta-free function of one atom
that is true on all of [0, 1) is constantly true, and such a function
cannot entail ~(D p).  The search reports the gap honestly by returning
None instead of inventing a near miss.
"""

from goedel import interpolate, one_entails, parse_formula, pretty


def main():
    phi = parse_formula("~p")
    psi = parse_formula("~D p")

    verdict = one_entails([phi], psi)
    print(f"{pretty(phi)} entails {pretty(psi)}: {verdict.holds}")
    print()

    theta = interpolate(phi, psi, g_only=False)
    print(f"interpolant with Delta available: {pretty(theta)}")

    theta_g = interpolate(phi, psi, g_only=True)
    print(f"interpolant restricted to Delta-free formulas: {theta_g}")
    print()

    # Contrast with a pair where the Delta-free clone does suffice
    phi2 = parse_formula("p & q")
    psi2 = parse_formula("p | r")
    print(f"{pretty(phi2)} / {pretty(psi2)}:"
          f" g-only interpolant {pretty(interpolate(phi2, psi2, g_only=True))}")


if __name__ == "__main__":
    main()
