#!/usr/bin/env python3
"""Amalgamate two bounded linear orders over a shared base.

Given embeddings f1: B0 -> B1 and f2: B0 -> B2, the amalgam is one
bounded chain containing images of both sides such that the square
commutes and each side keeps its own order.  Elements caught between
the same pair of base points are interleaved deterministically, side 1
first.
"""

from goedel import (
    BoundedChain,
    LinHom,
    amalgam_to_dot,
    amalgamate,
    embed_into_unit,
    validate_lin_hom,
)


def main():
    b0 = BoundedChain(["0", "m", "1"])
    b1 = BoundedChain(["0", "a", "m", "1"])
    b2 = BoundedChain(["0", "m", "b", "c", "1"])
    f1 = LinHom(b0, b1, {"0": "0", "m": "m", "1": "1"})
    f2 = LinHom(b0, b2, {"0": "0", "m": "m", "1": "1"})
    assert validate_lin_hom(f1) and validate_lin_hom(f2)

    result = amalgamate(b0, b1, b2, f1, f2)
    print("B0:", " < ".join(b0.elements))
    print("B1:", " < ".join(b1.elements))
    print("B2:", " < ".join(b2.elements))
    print("amalgam:", " < ".join(result.amalgam.elements))
    print()

    for e in b0.elements:
        print(f"  base {e}: g1(f1({e})) = {result.g1(f1(e))},"
              f" g2(f2({e})) = {result.g2(f2(e))}")
    print()

    embedding = embed_into_unit(result.amalgam)
    print("uniform embedding into [0, 1]:")
    for e in result.amalgam.elements:
        print(f"  {e} -> {embedding[e]}")
    print()

    print(amalgam_to_dot(result))


if __name__ == "__main__":
    main()
