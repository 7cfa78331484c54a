"""Shared seeded generators: random formulas, rational assignments, and
bounded chains with strictly monotone maps.

Everything is driven by explicit random.Random instances so any failure
reproduces from the seed printed in the assertion message.
"""

import random
from fractions import Fraction

from goedel.linorder import BoundedChain, LinHom
from goedel.suites import random_formula


def make_rng(seed):
    return random.Random(f"tests:{seed}")


def random_prop(rng, atoms=("p", "q", "r"), max_depth=4, delta_allowed=True):
    from goedel.syntax import BOT, Atom

    leaves = tuple(Atom(a) for a in atoms) + (BOT,)
    return random_formula(rng, leaves, max_depth, delta_allowed)


def random_rational(rng, max_den=97):
    # includes the endpoints often enough to exercise the 0/1 case splits
    roll = rng.random()
    if roll < 0.15:
        return Fraction(0)
    if roll < 0.3:
        return Fraction(1)
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def random_assignment(rng, atoms, max_den=97):
    return {a: random_rational(rng, max_den) for a in atoms}


def random_bounded_chain(rng, size, prefix):
    # ids sorted so the chain order and the lexicographic tie-break differ
    # only through explicit shuffling downstream
    ids = [f"{prefix}{i}" for i in range(size)]
    return BoundedChain(ids)


def random_span(rng, max_side=8):
    """A span (B0, B1, B2, f1, f2) of valid Lin-homomorphisms with chain
    sizes at most max_side."""
    n0 = rng.randint(2, min(4, max_side))
    b0 = random_bounded_chain(rng, n0, "a")
    spans = []
    for prefix in ("b", "c"):
        n = rng.randint(n0, max_side)
        target = random_bounded_chain(rng, n, prefix)
        # a strictly monotone endpoint-preserving map picks interior image
        # positions as a sorted sample
        interior = sorted(rng.sample(range(1, n - 1), n0 - 2)) if n0 > 2 else []
        positions = [0] + interior + [n - 1]
        mapping = {
            e: target.elements[p] for e, p in zip(b0.elements, positions)
        }
        spans.append(LinHom(b0, target, mapping))
    f1, f2 = spans
    return b0, f1.target, f2.target, f1, f2


def four_case_pairs(side1, side2, common):
    """Independent re-derivation of the amalgamation relation on relabeled
    ids: both side orders plus the two bridging cases through the common
    sub-chain."""
    pos1 = {e: i for i, e in enumerate(side1)}
    pos2 = {e: i for i, e in enumerate(side2)}
    pairs = set()
    for seq, pos in ((side1, pos1), (side2, pos2)):
        for x in seq:
            for y in seq:
                if pos[x] < pos[y]:
                    pairs.add((x, y))
    for x in side1:
        if x in pos2:
            continue
        for y in side2:
            if any(pos1[x] <= pos1[a] and pos2[a] <= pos2[y] for a in common):
                pairs.add((x, y))
    for x in side2:
        if x in pos1:
            continue
        for y in side1:
            if any(pos2[x] <= pos2[a] and pos1[a] <= pos1[y] for a in common):
                pairs.add((x, y))
    return pairs


def merge_orders(side1, side2):
    """Every total order on the union of the two sequences that restricts
    to both sequence orders.  Shared elements are the common backbone; the
    two-pointer shuffle emits a common element only when it heads both
    sequences, so the enumeration is complete and duplicate-free and stays
    far below the permutation count of the union."""
    side1, side2 = list(side1), list(side2)
    common = set(side1) & set(side2)
    out = []

    def go(i, j, acc):
        if i == len(side1) and j == len(side2):
            out.append(tuple(acc))
            return
        a = side1[i] if i < len(side1) else None
        b = side2[j] if j < len(side2) else None
        if a is not None and a == b:
            acc.append(a)
            go(i + 1, j + 1, acc)
            acc.pop()
            return
        if a is not None and a not in common:
            acc.append(a)
            go(i + 1, j, acc)
            acc.pop()
        if b is not None and b not in common:
            acc.append(b)
            go(i, j + 1, acc)
            acc.pop()

    go(0, 0, [])
    return out
