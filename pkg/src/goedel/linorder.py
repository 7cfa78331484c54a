"""Bounded linear orders, their homomorphisms, order amalgamation, and the
embedding into the rational unit interval.

The amalgamation takes a span B1 <- B0 -> B2 of strictly monotone
endpoint-preserving maps and produces a bounded chain B with maps from B1
and B2 that agree on B0.  It follows the order-theoretic construction:
first relabel so that B0 literally is B1 intersect B2 (identifying exactly
the f1/f2 images), then order the union by four cases

    x, y in B1 and x <= y in B1;
    x, y in B2 and x <= y in B2;
    x in B1 only, y in B2, and some a in B0 has x <= a in B1, a <= y in B2;
    x in B2 only, y in B1, and some a in B0 has x <= a in B2, a <= y in B1;

verify the result is a partial order, and extend it to a total order with
a deterministic topological pass (B1-membership first, then id
lexicographic) in place of an appeal to Zorn's lemma.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Tuple


class OrderError(ValueError):
    """Raised for malformed chains, maps that are not Lin-homomorphisms,
    or cyclic inputs to linearization."""


class BoundedChain:
    """A finite strict total order with distinguished endpoints, stored as
    the ordered tuple of element ids (strings); first is bottom, last is
    top."""

    __slots__ = ("elements", "_pos")

    def __init__(self, elements: Iterable[str]):
        elements = tuple(elements)
        if len(elements) < 2:
            raise OrderError("a bounded chain needs at least bottom and top")
        if len(set(elements)) != len(elements):
            raise OrderError("chain elements must be distinct")
        for e in elements:
            if not isinstance(e, str):
                raise OrderError(f"element ids must be strings, got {e!r}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_pos", {e: i for i, e in enumerate(elements)})

    def __setattr__(self, *_):
        raise AttributeError("chains are immutable")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self._pos

    def __eq__(self, other):
        return isinstance(other, BoundedChain) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"BoundedChain({' < '.join(self.elements)})"

    @property
    def bottom(self) -> str:
        return self.elements[0]

    @property
    def top(self) -> str:
        return self.elements[-1]

    def position(self, e: str) -> int:
        try:
            return self._pos[e]
        except KeyError:
            raise OrderError(f"{e!r} is not an element of {self!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return self.position(a) <= self.position(b)

    def lt(self, a: str, b: str) -> bool:
        return self.position(a) < self.position(b)


@dataclass(frozen=True)
class LinHom:
    """A map between bounded chains; valid when strictly monotone and
    endpoint-preserving."""

    source: BoundedChain
    target: BoundedChain
    map: Mapping[str, str]

    def __call__(self, e: str) -> str:
        try:
            return self.map[e]
        except KeyError:
            raise OrderError(f"{e!r} outside the domain of this map") from None


def validate_lin_hom(f: LinHom) -> bool:
    """True iff f is total on its source, lands in its target, is strictly
    monotone, and sends bottom to bottom and top to top."""
    if set(f.map.keys()) != set(f.source.elements):
        return False
    if any(v not in f.target for v in f.map.values()):
        return False
    images = [f.map[e] for e in f.source.elements]
    positions = [f.target.position(v) for v in images]
    if any(a >= b for a, b in zip(positions, positions[1:])):
        return False
    return f.map[f.source.bottom] == f.target.bottom and f.map[f.source.top] == f.target.top


def _require_lin_hom(f: LinHom, name: str):
    if not validate_lin_hom(f):
        raise OrderError(f"{name} is not a Lin-homomorphism")


def linear_extension(
    elements: Iterable[str],
    pairs: Iterable[Tuple[str, str]],
    tie_break: Optional[Callable[[str], object]] = None,
) -> BoundedChain:
    """Extend a strict partial order (given as x-before-y pairs) to a total
    order.  At every step the minimal available element under `tie_break`
    (default: id lexicographic) is emitted, so the result is deterministic.
    Cycles raise OrderError."""
    elements = list(elements)
    key = tie_break if tie_break is not None else (lambda e: e)
    succ: dict[str, set] = {e: set() for e in elements}
    preds: dict[str, int] = {e: 0 for e in elements}
    seen: set = set()
    for a, b in pairs:
        if a == b:
            continue
        if a not in succ or b not in succ:
            raise OrderError(f"pair ({a!r}, {b!r}) mentions a non-element")
        if (a, b) in seen:
            continue
        seen.add((a, b))
        succ[a].add(b)
        preds[b] += 1
    heap = [(key(e), e) for e in elements if preds[e] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, e = heapq.heappop(heap)
        out.append(e)
        for b in sorted(succ[e]):
            preds[b] -= 1
            if preds[b] == 0:
                heapq.heappush(heap, (key(b), b))
    if len(out) != len(elements):
        raise OrderError("cycle detected; input is not a partial order")
    return BoundedChain(out)


@dataclass(frozen=True)
class AmalgamResult:
    """The amalgamated chain with the two inclusion maps; g1 after f1 and
    g2 after f2 agree on every element of B0."""

    amalgam: BoundedChain
    g1: LinHom
    g2: LinHom


def _relabel(b0: BoundedChain, side: BoundedChain, f: LinHom, taken: set, suffix: str):
    """New ids for one side: f-images keep their B0 preimage's id, the rest
    keep their own id unless it is already taken."""
    image_to_b0 = {f.map[a]: a for a in b0.elements}
    rename: dict[str, str] = {}
    for x in side.elements:
        if x in image_to_b0:
            rename[x] = image_to_b0[x]
        else:
            candidate = x
            while candidate in taken:
                candidate = candidate + suffix
            rename[x] = candidate
            taken.add(candidate)
    return rename


def amalgamate(
    b0: BoundedChain,
    b1: BoundedChain,
    b2: BoundedChain,
    f1: LinHom,
    f2: LinHom,
) -> AmalgamResult:
    """Amalgamate the span (f1: B0 -> B1, f2: B0 -> B2) into a single
    bounded chain.  The output order restricted to either side equals that
    side's order, and the square commutes exactly."""
    if f1.source != b0 or f2.source != b0 or f1.target != b1 or f2.target != b2:
        raise OrderError("maps must form a span f1: B0->B1, f2: B0->B2")
    _require_lin_hom(f1, "f1")
    _require_lin_hom(f2, "f2")

    taken = set(b0.elements)
    r1 = _relabel(b0, b1, f1, taken, "@1")
    r2 = _relabel(b0, b2, f2, taken, "@2")
    side1 = [r1[x] for x in b1.elements]
    side2 = [r2[x] for x in b2.elements]
    pos1 = {e: i for i, e in enumerate(side1)}
    pos2 = {e: i for i, e in enumerate(side2)}
    common = list(b0.elements)
    only1 = [e for e in side1 if e not in pos2]
    only2 = [e for e in side2 if e not in pos1]
    union = list(dict.fromkeys(side1 + side2))

    pairs = []
    for seq in (side1, side2):
        for i, x in enumerate(seq):
            for y in seq[i + 1 :]:
                pairs.append((x, y))
    for x in only1:
        for y in side2:
            if any(pos1[x] <= pos1[a] and pos2[a] <= pos2[y] for a in common):
                pairs.append((x, y))
    for x in only2:
        for y in side1:
            if any(pos2[x] <= pos2[a] and pos1[a] <= pos1[y] for a in common):
                pairs.append((x, y))

    # transitive closure, then the partial-order check the construction
    # guarantees; a failure here is an implementation bug, not bad input
    below: dict[str, set] = {e: set() for e in union}
    for x, y in pairs:
        if x != y:
            below[y].add(x)
    changed = True
    while changed:
        changed = False
        for y in union:
            extra = set()
            for x in below[y]:
                extra |= below[x] - below[y]
            if extra:
                below[y] |= extra
                changed = True
    for y in union:
        for x in below[y]:
            if x != y and y in below[x]:
                raise OrderError(f"amalgam relation not antisymmetric at {x!r}, {y!r}")

    in_side1 = set(side1)
    chain = linear_extension(
        union, pairs, tie_break=lambda e: (0 if e in in_side1 else 1, e)
    )
    if chain.bottom != b0.bottom or chain.top != b0.top:
        raise OrderError("amalgam endpoints do not come from B0")

    g1 = LinHom(b1, chain, {x: r1[x] for x in b1.elements})
    g2 = LinHom(b2, chain, {x: r2[x] for x in b2.elements})
    _require_lin_hom(g1, "g1")
    _require_lin_hom(g2, "g2")
    for a in b0.elements:
        assert g1.map[f1.map[a]] == g2.map[f2.map[a]]
    return AmalgamResult(chain, g1, g2)


def embed_into_unit(chain: BoundedChain) -> dict:
    """The uniform-spacing embedding: the i-th of k elements goes to
    i/(k-1).  Strictly monotone, endpoint-preserving, and (finite chains)
    preserves existing minima and maxima of subsets."""
    k = len(chain)
    return {e: Fraction(i, k - 1) for i, e in enumerate(chain.elements)}


# ---------------------------------------------------------------------------
# JSON and DOT
# ---------------------------------------------------------------------------


def chain_to_dict(chain: BoundedChain) -> dict:
    return {"elements": list(chain.elements)}


def chain_from_dict(d: Mapping) -> BoundedChain:
    try:
        return BoundedChain(d["elements"])
    except (KeyError, TypeError) as e:
        raise OrderError(f"malformed chain object: {e}") from e


def linhom_to_dict(f: LinHom) -> dict:
    return {"map": {e: f.map[e] for e in f.source.elements}}


def linhom_from_dict(d: Mapping, source: BoundedChain, target: BoundedChain) -> LinHom:
    try:
        return LinHom(source, target, dict(d["map"]))
    except (KeyError, TypeError) as e:
        raise OrderError(f"malformed map object: {e}") from e


def amalgam_to_dict(result: AmalgamResult) -> dict:
    return {
        "amalgam": chain_to_dict(result.amalgam),
        "g1": linhom_to_dict(result.g1),
        "g2": linhom_to_dict(result.g2),
    }


def amalgam_to_dot(result: AmalgamResult) -> str:
    """A DOT digraph of the amalgam's covering edges, annotated with which
    side(s) each element came from."""
    chain = result.amalgam
    from1 = set(result.g1.map.values())
    from2 = set(result.g2.map.values())
    lines = ["digraph amalgam {", "  rankdir=BT;"]
    for e in chain.elements:
        origin = "B1&B2" if e in from1 and e in from2 else ("B1" if e in from1 else "B2")
        lines.append(f'  "{e}" [label="{e}\\n{origin}"];')
    for a, b in zip(chain.elements, chain.elements[1:]):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines)
