#!/usr/bin/env python3
"""
Walk through the countermodel construction stage by stage.

When phi does not entail psi the synthesizer does not just hand back an
assignment: it executes the constructive argument.  Both sides are
extended Henkin-style to theories that decide their language, each side
is collapsed to a Lindenbaum chain, the two chains are amalgamated over
their common part, the amalgam is embedded into the rationals in [0, 1],
and atoms are read off.  Every stage is recorded in the trace.
"""

import json

from goedel import countermodel_synthesize, evaluate, parse_formula, pretty


def main():
    phi = parse_formula("!!p")
    psi = parse_formula("p")
    v, trace = countermodel_synthesize(phi, psi)

    print(f"target: {pretty(phi)} does not entail {pretty(psi)}")
    print(f"  v({pretty(phi)}) = {evaluate(v, phi)}")
    print(f"  v({pretty(psi)}) = {evaluate(v, psi)}")
    print()

    print(f"stage 1: Henkin extension ({len(trace.steps)} steps, first 8 shown)")
    for step in trace.steps[:8]:
        tag = "kept" if step.accepted else "flipped"
        print(f"  step {step.index} [{step.side}] offered {pretty(step.offered)}:"
              f" {tag}, added {pretty(step.added)}")
    print()

    print("stage 2: Lindenbaum chains")
    print(f"  common part B0: {' < '.join(trace.b0_chain.elements)}")
    print(f"  left side  B1: {' < '.join(trace.b1_chain.elements)}")
    print(f"  right side B2: {' < '.join(trace.b2_chain.elements)}")
    print()

    print("stage 3: amalgamation over B0")
    print(f"  amalgam: {' < '.join(trace.amalgam.amalgam.elements)}")
    for e in trace.b0_chain.elements:
        left = trace.amalgam.g1(trace.f1(e))
        right = trace.amalgam.g2(trace.f2(e))
        assert left == right
        print(f"  {e} lands at {left} through both sides")
    print()

    print("stage 4: embedding into [0, 1]")
    for e, x in trace.embedding.items():
        print(f"  {e} -> {x}")
    print()

    print("stage 5: atom read-off")
    for atom, x in sorted(trace.assignment.items()):
        print(f"  {atom} = {x}")
    print()

    print("the whole trace serializes to JSON:")
    print(json.dumps(trace.to_dict(), indent=2)[:400], "...")


if __name__ == "__main__":
    main()
