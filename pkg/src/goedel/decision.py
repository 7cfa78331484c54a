"""Decision procedures for the propositional fragment, bounded first-order
checks, and completeness-notion classification.

The propositional backbone is a finite-chain reduction: the value of a
formula under an assignment of [0,1] values to its atoms depends only on
the order type of those values together with which of them are 0 or 1.
With n atoms, every order type is realized inside the canonical chain

    {0, 1/(n+1), 2/(n+1), ..., 1}

so sweeping all (n+2)^n assignments into the chain decides validity and
1-entailment exactly.  All arithmetic is exact rational arithmetic; the
random-sampling guard for this reduction lives in the test suite.

First-order entailment is undecidable, so `fo_check_bounded` searches
finite valuations up to a universe bound with table entries drawn from a
finite grid, and its verdicts are flagged `bounded`: "holds" only means
no countermodel was found in the searched space.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Union

from . import semantics
from .syntax import (
    And,
    Atom,
    Bottom,
    Const,
    Delta,
    Exists,
    Forall,
    Formula,
    Implies,
    Or,
    Var,
    delta_neg,
    language_of,
)
from .semantics import ONE, ZERO, Valuation, evaluate

DEFAULT_STATE_CAP = 250_000


class NonPropositionalError(ValueError):
    """Raised when a propositional-only operation sees quantifiers or
    relations of positive arity."""


class SearchBudgetExceeded(RuntimeError):
    """The bounded search space exceeds the configured cap.  Distinct from a
    'no countermodel found' verdict on purpose."""

    def __init__(self, states: int, cap: int):
        super().__init__(f"bounded search space has {states} states, cap is {cap}")
        self.states = states
        self.cap = cap


# ---------------------------------------------------------------------------
# Canonical chain and assignment spaces
# ---------------------------------------------------------------------------


def canonical_chain(n: int) -> tuple:
    """The n+2 values {0, 1/(n+1), ..., 1}; strictly increasing."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return tuple(Fraction(i, n + 1) for i in range(n + 2))


def prop_atoms(f: Formula) -> frozenset:
    """The 0-ary atom names of a propositional formula; raises on
    quantifiers or positive-arity atoms."""
    out: set[str] = set()

    def walk(g: Formula):
        if isinstance(g, Atom):
            if g.terms:
                raise NonPropositionalError(f"atom {g.name} has positive arity")
            out.add(g.name)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.lhs)
            walk(g.rhs)
        elif isinstance(g, Delta):
            walk(g.body)
        elif isinstance(g, (Forall, Exists)):
            raise NonPropositionalError("quantifier in propositional context")

    walk(f)
    return frozenset(out)


def _compile(f: Formula, index: Mapping[str, int]) -> Callable:
    """Compile a propositional formula to a closure over a row of atom
    values (a tuple aligned with `index`)."""
    if isinstance(f, Atom):
        if f.terms:
            raise NonPropositionalError(f"atom {f.name} has positive arity")
        i = index[f.name]
        return lambda row: row[i]
    if isinstance(f, Bottom):
        return lambda row: ZERO
    if isinstance(f, And):
        a = _compile(f.lhs, index)
        b = _compile(f.rhs, index)
        return lambda row: min(a(row), b(row))
    if isinstance(f, Or):
        a = _compile(f.lhs, index)
        b = _compile(f.rhs, index)
        return lambda row: max(a(row), b(row))
    if isinstance(f, Implies):
        a = _compile(f.lhs, index)
        b = _compile(f.rhs, index)

        def imp(row):
            bv = b(row)
            return ONE if a(row) <= bv else bv

        return imp
    if isinstance(f, Delta):
        a = _compile(f.body, index)
        return lambda row: ONE if a(row) == ONE else ZERO
    raise NonPropositionalError(f"cannot compile {f!r} propositionally")


def propositional_value(f: Formula, assignment: Mapping[str, Fraction]) -> Fraction:
    """Evaluate a propositional formula directly against an atom assignment."""
    names = sorted(assignment)
    index = {n: i for i, n in enumerate(names)}
    row = tuple(semantics.as_truth_value(assignment[n]) for n in names)
    return _compile(f, index)(row)


class AssignmentSpace:
    """All canonical-chain assignments over a fixed atom set, with cached
    value vectors and 1-value bitmasks per formula.

    Bit i of a mask refers to assignment i in enumeration order (the
    itertools.product order over the chain, atoms sorted, last atom varying
    fastest).  Masks make theory-modeling sets and entailment checks cheap:
    T's models are the AND of member masks, and T entails f exactly when
    that mask is a subset of f's mask.
    """

    __slots__ = ("atoms", "chain", "rows", "full_mask", "_index", "_vectors", "_masks")

    def __init__(self, atoms: Iterable[str]):
        atoms = tuple(sorted(set(atoms)))
        self.atoms = atoms
        self.chain = canonical_chain(len(atoms))
        self.rows = tuple(itertools.product(self.chain, repeat=len(atoms)))
        self.full_mask = (1 << len(self.rows)) - 1
        self._index = {a: i for i, a in enumerate(atoms)}
        self._vectors: dict[Formula, tuple] = {}
        self._masks: dict[Formula, int] = {}

    def __len__(self):
        return len(self.rows)

    def assignment(self, i: int) -> dict:
        return dict(zip(self.atoms, self.rows[i]))

    def assignments(self) -> Iterator[dict]:
        for row in self.rows:
            yield dict(zip(self.atoms, row))

    def vector(self, f: Formula) -> tuple:
        got = self._vectors.get(f)
        if got is None:
            fn = _compile(f, self._index)
            got = tuple(fn(row) for row in self.rows)
            self._vectors[f] = got
        return got

    def ones_mask(self, f: Formula) -> int:
        got = self._masks.get(f)
        if got is None:
            got = 0
            for i, val in enumerate(self.vector(f)):
                if val == ONE:
                    got |= 1 << i
            self._masks[f] = got
        return got

    def model_mask(self, theory: Iterable[Formula]) -> int:
        mask = self.full_mask
        for f in theory:
            mask &= self.ones_mask(f)
            if not mask:
                break
        return mask

    @staticmethod
    def first_index(mask: int) -> int:
        if mask <= 0:
            raise ValueError("empty mask has no first index")
        return (mask & -mask).bit_length() - 1


_space_cache: dict[tuple, AssignmentSpace] = {}


def assignment_space(atoms: Iterable[str]) -> AssignmentSpace:
    """Shared, memoized AssignmentSpace; vectors accumulate across calls."""
    key = tuple(sorted(set(atoms)))
    space = _space_cache.get(key)
    if space is None:
        space = _space_cache[key] = AssignmentSpace(key)
    return space


def enumerate_assignments(atoms: Sequence[str]) -> Iterator[dict]:
    """All (n+2)^n assignments of the n atoms into CanonicalChain(n), in
    deterministic order."""
    if len(set(atoms)) != len(atoms):
        raise ValueError("atoms must be distinct")
    chain = canonical_chain(len(atoms))
    for row in itertools.product(chain, repeat=len(atoms)):
        yield dict(zip(atoms, row))


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntailmentVerdict:
    """Outcome of an entailment or validity check.

    For propositional checks the witness is an atom assignment; for bounded
    first-order checks it is a full Valuation.  `bounded` marks verdicts
    whose 'holds' only covers the searched space; `exhaustive` is False when
    that space was sampled rather than swept.
    """

    holds: bool
    witness: Union[Mapping[str, Fraction], Valuation, None] = None
    bounded: bool = False
    exhaustive: bool = True
    states_checked: Optional[int] = None

    def witness_valuation(self) -> Optional[Valuation]:
        if self.witness is None:
            return None
        if isinstance(self.witness, Valuation):
            return self.witness
        return semantics.assignment_valuation(self.witness)


def one_entails(theory: Iterable[Formula], f: Formula) -> EntailmentVerdict:
    """Exact propositional 1-entailment: holds iff every assignment giving
    every member of the theory value 1 also gives f value 1.  Atoms are
    counted across theory and conclusion together.  A failing verdict
    carries the first witness in enumeration order."""
    theory = list(theory)
    names: set[str] = set()
    for g in theory:
        names |= prop_atoms(g)
    names |= prop_atoms(f)
    space = assignment_space(names)
    premise_mask = space.model_mask(theory)
    bad = premise_mask & ~space.ones_mask(f) & space.full_mask
    if not bad:
        return EntailmentVerdict(holds=True)
    witness = space.assignment(space.first_index(bad))
    val = semantics.assignment_valuation(witness)
    assert semantics.models(val, theory) and evaluate(val, f) != ONE
    return EntailmentVerdict(holds=False, witness=witness)


def is_tautology(f: Formula) -> bool:
    """True iff f has value 1 under every assignment (checked exactly on
    the canonical chain)."""
    return one_entails((), f).holds


def satisfiable(theory: Iterable[Formula]) -> EntailmentVerdict:
    """Propositional satisfiability; a holding verdict carries the first
    canonical model as witness (in the `witness` field)."""
    theory = list(theory)
    names: set[str] = set()
    for g in theory:
        names |= prop_atoms(g)
    space = assignment_space(names)
    mask = space.model_mask(theory)
    if not mask:
        return EntailmentVerdict(holds=False)
    return EntailmentVerdict(holds=True, witness=space.assignment(space.first_index(mask)))


# ---------------------------------------------------------------------------
# Bounded first-order search
# ---------------------------------------------------------------------------


def _ground_compile(f: Formula, universe, consts, slot_index, env) -> Callable:
    """Compile a closed first-order formula to a closure over a tuple of
    slot values, expanding quantifiers over the (finite) universe."""
    if isinstance(f, Atom):
        elems = []
        for t in f.terms:
            if isinstance(t, Var):
                elems.append(env[t.name])
            else:
                elems.append(consts[t.name])
        i = slot_index[(f.name, tuple(elems))]
        return lambda vals: vals[i]
    if isinstance(f, Bottom):
        return lambda vals: ZERO
    if isinstance(f, And):
        a = _ground_compile(f.lhs, universe, consts, slot_index, env)
        b = _ground_compile(f.rhs, universe, consts, slot_index, env)
        return lambda vals: min(a(vals), b(vals))
    if isinstance(f, Or):
        a = _ground_compile(f.lhs, universe, consts, slot_index, env)
        b = _ground_compile(f.rhs, universe, consts, slot_index, env)
        return lambda vals: max(a(vals), b(vals))
    if isinstance(f, Implies):
        a = _ground_compile(f.lhs, universe, consts, slot_index, env)
        b = _ground_compile(f.rhs, universe, consts, slot_index, env)

        def imp(vals):
            bv = b(vals)
            return ONE if a(vals) <= bv else bv

        return imp
    if isinstance(f, Delta):
        a = _ground_compile(f.body, universe, consts, slot_index, env)
        return lambda vals: ONE if a(vals) == ONE else ZERO
    if isinstance(f, (Forall, Exists)):
        subs = [
            _ground_compile(f.body, universe, consts, slot_index, {**env, f.var: a})
            for a in universe
        ]
        if isinstance(f, Forall):
            return lambda vals: min(s(vals) for s in subs)
        return lambda vals: max(s(vals) for s in subs)
    raise ValueError(f"cannot ground {f!r}")


def _fo_slots(sig, universe):
    slots = []
    for name, arity in sorted(sig.relations.items()):
        for args in itertools.product(universe, repeat=arity):
            slots.append((name, args))
    return slots


def _fo_witness(universe, slots, combo, consts) -> Valuation:
    tables: dict[str, dict[tuple, Fraction]] = {}
    for (name, args), val in zip(slots, combo):
        tables.setdefault(name, {})[args] = val
    return Valuation(universe, tables, consts)


def fo_check_bounded(
    theory: Iterable[Formula],
    f: Formula,
    max_universe: int = 3,
    value_grid: Optional[Sequence[Fraction]] = None,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
    sample: int = 0,
    seed: int = 0,
) -> EntailmentVerdict:
    """Bounded countermodel search for `theory entails f` over universes of
    size 1..max_universe.

    Table entries range over `value_grid` when given (it must contain 0 and
    1); otherwise over the grid induced by the slot count at each size: N
    atomic slots give the N+2 evenly spaced rationals of the canonical
    chain.  When the full space exceeds `state_cap`: with sample=0 the
    search refuses (SearchBudgetExceeded); with sample>0 it degrades to a
    seeded uniform sample of that many states and the verdict reports
    exhaustive=False.

    Any witness is re-validated through semantics.evaluate before being
    returned.  A holds=True verdict is always `bounded`: it only means no
    countermodel exists in the searched space.
    """
    theory = list(theory)
    if max_universe < 1:
        raise ValueError("max_universe must be >= 1")
    for g in [*theory, f]:
        if g.free_vars:
            raise ValueError(f"formulas must be closed, {g!r} has free {sorted(g.free_vars)}")
    if value_grid is not None:
        value_grid = tuple(semantics.as_truth_value(x) for x in value_grid)
        if ZERO not in value_grid or ONE not in value_grid:
            raise ValueError("value grid must contain 0 and 1")
    sig = language_of([*theory, f])
    const_names = sorted(sig.constants)

    sizes = []
    total_states = 0
    for m in range(1, max_universe + 1):
        universe = tuple(f"e{i}" for i in range(m))
        slots = _fo_slots(sig, universe)
        grid = value_grid if value_grid is not None else canonical_chain(len(slots))
        states = (m ** len(const_names)) * (len(grid) ** len(slots))
        sizes.append((universe, slots, grid, states))
        total_states += states

    compiled: dict = {}

    def check(universe, slots, grid, consts, combo):
        key = (len(universe), tuple(sorted(consts.items())))
        got = compiled.get(key)
        if got is None:
            slot_index = {s: i for i, s in enumerate(slots)}
            got = compiled[key] = (
                [_ground_compile(g, universe, consts, slot_index, {}) for g in theory],
                _ground_compile(f, universe, consts, slot_index, {}),
            )
        prem, concl = got
        if all(p(combo) == ONE for p in prem) and concl(combo) != ONE:
            witness = _fo_witness(universe, slots, combo, consts)
            assert semantics.models(witness, theory) and evaluate(witness, f) != ONE
            return witness
        return None

    if total_states <= state_cap:
        checked = 0
        for universe, slots, grid, _states in sizes:
            slot_index = {s: i for i, s in enumerate(slots)}
            for const_choice in itertools.product(universe, repeat=len(const_names)):
                consts = dict(zip(const_names, const_choice))
                prem = [_ground_compile(g, universe, consts, slot_index, {}) for g in theory]
                concl = _ground_compile(f, universe, consts, slot_index, {})
                for combo in itertools.product(grid, repeat=len(slots)):
                    checked += 1
                    if all(p(combo) == ONE for p in prem) and concl(combo) != ONE:
                        witness = _fo_witness(universe, slots, combo, consts)
                        assert semantics.models(witness, theory)
                        assert evaluate(witness, f) != ONE
                        return EntailmentVerdict(
                            holds=False,
                            witness=witness,
                            bounded=True,
                            states_checked=checked,
                        )
        return EntailmentVerdict(holds=True, bounded=True, exhaustive=True, states_checked=checked)

    if sample <= 0:
        raise SearchBudgetExceeded(total_states, state_cap)

    rng = random.Random(seed)
    for k in range(sample):
        universe, slots, grid, _states = sizes[rng.randrange(len(sizes))]
        consts = {c: rng.choice(universe) for c in const_names}
        combo = tuple(rng.choice(grid) for _ in slots)
        witness = check(universe, slots, grid, consts, combo)
        if witness is not None:
            return EntailmentVerdict(
                holds=False, witness=witness, bounded=True, exhaustive=False, states_checked=k + 1
            )
    return EntailmentVerdict(holds=True, bounded=True, exhaustive=False, states_checked=sample)


# ---------------------------------------------------------------------------
# Completeness classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompletenessReport:
    """The four completeness conditions of a theory, restricted to a finite
    formula universe, with one violating instance per failed condition."""

    linearly_complete: bool
    disjunction_property: bool
    delta_neg_complete: bool
    maximally_satisfiable: bool
    violations: dict = field(default_factory=dict)

    def as_tuple(self) -> tuple:
        return (
            self.linearly_complete,
            self.disjunction_property,
            self.delta_neg_complete,
            self.maximally_satisfiable,
        )

    def agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


def classify_completeness(sigma, universe_of_formulas: Sequence[Formula]) -> CompletenessReport:
    """Check, over the given finite formula universe F:

      1. linear completeness: every pair f,g has sigma entailing f->g or g->f;
      2. disjunction property: sigma entailing f|g forces sigma entailing f or g;
      3. Delta-negation completeness: sigma entails f or ~f for every f;
      4. maximal satisfiability: sigma plus f satisfiable forces sigma entails f.

    `sigma` is a finite theory (iterable of formulas), a Valuation v
    (presenting {f in F : v(f) = 1}), or a propositional assignment dict
    (same, via the lifted valuation).  Pairs are deduplicated semantically:
    equivalent universe formulas behave identically under every condition.
    """
    universe_of_formulas = list(universe_of_formulas)
    if isinstance(sigma, Valuation):
        theory = [f for f in universe_of_formulas if evaluate(sigma, f) == ONE]
    elif isinstance(sigma, Mapping):
        lifted = semantics.assignment_valuation(sigma)
        theory = [f for f in universe_of_formulas if evaluate(lifted, f) == ONE]
    else:
        theory = list(sigma)

    names: set[str] = set()
    for g in [*theory, *universe_of_formulas]:
        names |= prop_atoms(g)
    space = assignment_space(names)
    sigma_mask = space.model_mask(theory)
    full = space.full_mask

    # one representative per semantic class, first in enumeration order
    reps = []
    seen = set()
    for f in sorted(universe_of_formulas):
        vec = space.vector(f)
        if vec not in seen:
            seen.add(vec)
            reps.append((f, vec, space.ones_mask(f)))

    def entails_mask(mask: int) -> bool:
        return sigma_mask & ~mask & full == 0

    violations: dict[str, object] = {}

    linear = True
    for i, (f, vf, _mf) in enumerate(reps):
        if not linear:
            break
        for g, vg, _mg in reps[i + 1 :]:
            fwd = 0
            bwd = 0
            for b, (x, y) in enumerate(zip(vf, vg)):
                if x <= y:
                    fwd |= 1 << b
                if y <= x:
                    bwd |= 1 << b
            if not (entails_mask(fwd) or entails_mask(bwd)):
                linear = False
                violations["linearly_complete"] = (f, g)
                break

    disjunction = True
    for i, (f, _vf, mf) in enumerate(reps):
        if not disjunction:
            break
        if entails_mask(mf):
            continue
        for g, _vg, mg in reps[i:]:
            if entails_mask(mf | mg) and not entails_mask(mg):
                disjunction = False
                violations["disjunction_property"] = (f, g)
                break

    tilde = True
    for f, _vf, mf in reps:
        if not entails_mask(mf) and sigma_mask & mf:
            tilde = False
            violations["delta_neg_complete"] = (f, delta_neg(f))
            break

    maximal = True
    for f, _vf, mf in reps:
        if sigma_mask & mf and not entails_mask(mf):
            maximal = False
            violations["maximally_satisfiable"] = f
            break

    return CompletenessReport(linear, disjunction, tilde, maximal, violations)
