"""Separator search, Craig interpolation, and countermodel synthesis.

A formula θ separates theories T and U when T ⊩ θ and U ⊩ ∼θ and θ lies in
the common language.  Interpolants reduce to separators: θ interpolates
φ ⊩ ψ exactly when θ separates ({φ}, {∼ψ}), because ∼ψ ⊩ ∼θ is equivalent
to θ ⊩ ψ.

Separator candidates come from a clone table: the finite set of semantic
value-vectors over the canonical assignments of the common atoms, closed
under the pointwise connective operations.  Local finiteness makes this
closure saturate, so propositional inseparability is decided exactly by an
exhausted scan.  Each vector keeps a small witnessing formula.

The countermodel pipeline turns a failed entailment φ ⊮ ψ into an explicit
valuation: extend ({φ}, {∼ψ}) stepwise while preserving inseparability,
read one complete theory off each side, build the Lindenbaum chains of the
two sides and their common part, amalgamate the chains over the shared
part, embed the amalgam into [0,1], and pull the embedded class of each
atom back as its truth value.  The resulting valuation provably gives φ
value 1 and ψ a value below 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import semantics
from .decision import (
    EntailmentVerdict,
    NonPropositionalError,
    assignment_space,
    canonical_chain,
    fo_check_bounded,
    one_entails,
    prop_atoms,
)
from .lindenbaum import CompleteTheoryOracle, LindChain, build_chain
from .lindenbaum import chain_to_dict as lindenbaum_chain_to_dict
from .linorder import (
    AmalgamResult,
    BoundedChain,
    LinHom,
    amalgamate,
    embed_into_unit,
    linhom_to_dict,
    validate_lin_hom,
)
from .semantics import ONE, ZERO, Valuation, assignment_valuation, evaluate, valuation_to_dict
from .syntax import (
    BOT,
    TOP,
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
    Signature,
    constants_of,
    delta_neg,
    enumerate_closed_formulas,
    fresh_constants,
    fresh_variables,
    generalize_constant,
    is_g_formula,
    language_of,
    pretty,
    substitute,
)

MAX_CLONE_ATOMS = 3
DEFAULT_CLONE_BUDGET = 100_000
DEFAULT_HENKIN_BUDGET = 128

# bounded-mode knobs for first-order runs; kept small because every step
# pays for a candidate sweep of fo_check_bounded calls
_FO_CANDIDATE_CAP = 24
_FO_SAMPLE = 120
_FO_MAX_UNIVERSE = 2
_FO_STEP_CAP = 12


class CommonLanguageError(ValueError):
    """A proposed separator uses symbols outside both theories' shared
    language."""


class PreconditionError(ValueError):
    """An interpolation/countermodel precondition failed; carries the
    entailment verdict that decided it."""

    def __init__(self, message: str, verdict: Optional[EntailmentVerdict] = None):
        super().__init__(message)
        self.verdict = verdict


class SeparableTheories(ValueError):
    """Theories required to be inseparable admit a separator; carries the
    certificate."""

    def __init__(self, certificate: "SeparabilityCertificate", message: str):
        super().__init__(message)
        self.certificate = certificate


class CloneBudgetError(RuntimeError):
    """Clone closure did not saturate within budget; carries the partial
    table, so callers can report how far it got."""

    def __init__(self, partial: "CloneTable", work: int):
        super().__init__(
            f"clone closure over {partial.atoms} exceeded budget "
            f"({len(partial.witness)} vectors, {work} combination steps); inconclusive"
        )
        self.partial = partial
        self.work = work


# ---------------------------------------------------------------------------
# Clone closure
# ---------------------------------------------------------------------------


class CloneTable:
    """All semantic value-vectors over the canonical assignments of a fixed
    atom set, each with a witnessing formula.

    Vectors are tuples of truth values, one per canonical assignment in
    AssignmentSpace order.  Witnesses are deterministic and found at the
    least combination depth (atoms and ⊥ witness their own vectors), though
    not necessarily globally key-least; every consumer re-verifies, so only
    presentation depends on them.
    """

    __slots__ = ("atoms", "delta_allowed", "witness", "vectors", "saturated", "_sorted")

    def __init__(self, atoms, delta_allowed, witness, saturated):
        self.atoms = tuple(atoms)
        self.delta_allowed = bool(delta_allowed)
        self.witness = dict(witness)
        self.vectors = frozenset(self.witness)
        self.saturated = bool(saturated)
        self._sorted = None

    def __len__(self):
        return len(self.witness)

    def __contains__(self, vector):
        return tuple(vector) in self.vectors

    def formulas(self) -> tuple:
        """All witnesses, smallest key first.  Sorted lazily: size checks on
        large tables never pay for the ordering."""
        if self._sorted is None:
            self._sorted = tuple(sorted(self.witness.values(), key=lambda f: f.key))
        return self._sorted

    def __repr__(self):
        mode = "G^D" if self.delta_allowed else "G"
        tag = "" if self.saturated else ", partial"
        return f"CloneTable({self.atoms}, {mode}, {len(self)} vectors{tag})"


def _fraction_table(atoms: tuple, delta_allowed: bool, raw: Mapping, saturated: bool) -> CloneTable:
    """Lift a table keyed by chain indices to one keyed by truth values."""
    chain = canonical_chain(len(atoms))
    return CloneTable(
        atoms,
        delta_allowed,
        {tuple(chain[i] for i in vec): f for vec, f in raw.items()},
        saturated=saturated,
    )


# Vectors over ≤2 atoms fit one machine word: at most 16 canonical
# assignments, one 4-bit lane each (values 0..3 leave the lane's high bit
# free for carry-less SWAR comparisons).
_PACKED_MAX_ATOMS = 2

_EMPTY_SLOT = np.uint64(0xFFFFFFFFFFFFFFFF)  # unreachable: real lanes keep bit 2-3 clear
_SM_A = np.uint64(0x9E3779B97F4A7C15)
_SM_B = np.uint64(0xBF58476D1CE4E5B9)
_SM_C = np.uint64(0x94D049BB133111EB)
_U1 = np.uint64(1)
_U3 = np.uint64(3)
_U15 = np.uint64(15)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)

_PACKED_KERNEL = None


def _packed_kernel():
    """Compile the packed closure kernel once per process.  The numba import
    and JIT happen on first use, so code paths that never build a clone
    table pay for neither."""
    global _PACKED_KERNEL
    if _PACKED_KERNEL is not None:
        return _PACKED_KERNEL

    import numba

    @numba.njit(inline="always")
    def probe(v, code, left, right, vecs, opc, lft, rgt, tbl_key, mask, count, budget):
        # open addressing, first-insert wins; -1 signals a full budget
        z = v + _SM_A
        z = (z ^ (z >> _U30)) * _SM_B
        z = (z ^ (z >> _U27)) * _SM_C
        z = z ^ (z >> _U31)
        h = z & mask
        while True:
            k = tbl_key[h]
            if k == v:
                return count
            if k == _EMPTY_SLOT:
                if count >= budget:
                    return -1
                tbl_key[h] = v
                vecs[count] = v
                opc[count] = code
                lft[count] = left
                rgt[count] = right
                return count + 1
            h = (h + _U1) & mask

    @numba.njit
    def close(seeds, hmask, tmask, delta_on, budget, vecs, opc, lft, rgt, tbl_key, mask):
        count = 0
        work = 0
        for s in range(seeds.shape[0]):
            nxt = probe(seeds[s], 0, s, -1, vecs, opc, lft, rgt, tbl_key, mask, count, budget)
            if nxt < 0:
                return count, work, 0
            count = nxt
        start = 0
        end = count
        while start < end:
            # pairs (new round) x (everything born before this round's end);
            # every unordered pair is covered in the later member's round
            for i in range(start, end):
                a = vecs[i]
                if delta_on:
                    m = ((((a | hmask) - tmask) & hmask) >> _U3) * _U15
                    nxt = probe(tmask & m, 4, i, -1, vecs, opc, lft, rgt, tbl_key, mask, count, budget)
                    if nxt < 0:
                        return count, work, 0
                    count = nxt
                for j in range(end):
                    b = vecs[j]
                    work += 1
                    g1 = ((a | hmask) - b) & hmask  # per lane: a >= b
                    m1 = (g1 >> _U3) * _U15
                    g2 = ((b | hmask) - a) & hmask  # per lane: b >= a
                    m2 = (g2 >> _U3) * _U15
                    nm1 = ~m1
                    mn = (b & m1) | (a & nm1)
                    mx = (a & m1) | (b & nm1)
                    iab = (tmask & m2) | (b & ~m2)  # a -> b: top where a <= b
                    iba = (tmask & m1) | (a & nm1)  # b -> a: top where b <= a
                    nxt = probe(mn, 1, i, j, vecs, opc, lft, rgt, tbl_key, mask, count, budget)
                    if nxt < 0:
                        return count, work, 0
                    count = nxt
                    nxt = probe(mx, 2, i, j, vecs, opc, lft, rgt, tbl_key, mask, count, budget)
                    if nxt < 0:
                        return count, work, 0
                    count = nxt
                    nxt = probe(iab, 3, i, j, vecs, opc, lft, rgt, tbl_key, mask, count, budget)
                    if nxt < 0:
                        return count, work, 0
                    count = nxt
                    nxt = probe(iba, 3, j, i, vecs, opc, lft, rgt, tbl_key, mask, count, budget)
                    if nxt < 0:
                        return count, work, 0
                    count = nxt
            start = end
            end = count
        return count, work, 1

    _PACKED_KERNEL = close
    return close


def _close_clone_packed(atoms: tuple, delta_allowed: bool, budget: int):
    """Closure for ≤2 atoms on word-packed vectors.

    Each vector is a uint64 of 4-bit lanes, one per canonical assignment;
    min, max, → and Δ act lane-parallel through mask arithmetic, and
    membership goes through an open-addressing table, so the quadratic
    confirmation sweep runs at machine speed.  Round order is fixed, hence
    witnesses (first parents to reach a vector) are deterministic.
    """
    n = len(atoms)
    top = n + 1
    rows = tuple(itertools.product(range(n + 2), repeat=n))
    nrows = len(rows)
    hmask = np.uint64(sum(0x8 << (4 * r) for r in range(nrows)))
    tmask = np.uint64(sum(top << (4 * r) for r in range(nrows)))
    seed_formulas = [BOT] + [Atom(name) for name in atoms]
    seeds = np.array(
        [0] + [sum(rows[r][i] << (4 * r) for r in range(nrows)) for i in range(n)],
        dtype=np.uint64,
    )

    cap = 1
    while cap < 4 * (budget + len(seed_formulas) + 1):
        cap <<= 1
    vecs = np.zeros(budget + 1, dtype=np.uint64)
    opc = np.zeros(budget + 1, dtype=np.int8)
    lft = np.zeros(budget + 1, dtype=np.int32)
    rgt = np.zeros(budget + 1, dtype=np.int32)
    tbl_key = np.full(cap, _EMPTY_SLOT, dtype=np.uint64)

    count, work, saturated = _packed_kernel()(
        seeds,
        hmask,
        tmask,
        bool(delta_allowed),
        budget,
        vecs,
        opc,
        lft,
        rgt,
        tbl_key,
        np.uint64(cap - 1),
    )

    # parents always precede children, so one forward pass rebuilds every
    # witness; shared subterms stay shared objects
    formulas: list = []
    for k in range(count):
        code = opc[k]
        if code == 0:
            formulas.append(seed_formulas[lft[k]])
        elif code == 4:
            formulas.append(Delta(formulas[lft[k]]))
        elif code == 3:
            formulas.append(Implies(formulas[lft[k]], formulas[rgt[k]]))
        else:
            a = formulas[lft[k]]
            b = formulas[rgt[k]]
            if b.key < a.key:
                a, b = b, a
            formulas.append(And(a, b) if code == 1 else Or(a, b))

    raw = {}
    for k in range(count):
        v = int(vecs[k])
        raw[tuple((v >> (4 * r)) & 0xF for r in range(nrows))] = formulas[k]
    if not saturated:
        raise CloneBudgetError(_fraction_table(atoms, delta_allowed, raw, saturated=False), int(work))
    return raw


def _close_clone_generic(atoms: tuple, delta_allowed: bool, budget: int):
    """Worklist fixpoint on tuple vectors, for atom sets too wide to pack.
    Work is capped alongside the entry budget because a single round over a
    3-atom frontier already outruns any sensible budget."""
    n = len(atoms)
    top = n + 1
    rows = tuple(itertools.product(range(n + 2), repeat=n))
    nrows = len(rows)
    work_cap = budget * 50

    table: dict = {}
    changed: dict = {}

    work = 0

    def offer(vec, formula):
        nonlocal work
        existing = table.get(vec)
        if existing is None:
            if len(table) >= budget:
                raise CloneBudgetError(_fraction_table(atoms, delta_allowed, table, saturated=False), work)
            table[vec] = formula
            changed[vec] = formula
        elif formula.key < existing.key:
            table[vec] = formula
            changed[vec] = formula

    offer((0,) * nrows, BOT)
    for i, name in enumerate(atoms):
        offer(tuple(r[i] for r in rows), Atom(name))

    while changed:
        active = list(changed.items())
        changed.clear()
        snapshot = list(table.items())
        for v1, f1 in active:
            if table.get(v1) is not f1:
                continue
            if delta_allowed:
                offer(tuple(top if a == top else 0 for a in v1), Delta(f1))
            work += 1
            for v2, f2 in snapshot:
                work += 3
                if work > work_cap:
                    raise CloneBudgetError(_fraction_table(atoms, delta_allowed, table, saturated=False), work)
                a, b = (f1, f2) if f1.key <= f2.key else (f2, f1)
                offer(tuple(map(min, v1, v2)), And(a, b))
                offer(tuple(map(max, v1, v2)), Or(a, b))
                offer(
                    tuple(top if x <= y else y for x, y in zip(v1, v2)),
                    Implies(f1, f2),
                )
                offer(
                    tuple(top if y <= x else x for x, y in zip(v1, v2)),
                    Implies(f2, f1),
                )
    return table


def _close_clone(atoms: tuple, delta_allowed: bool, budget: int):
    """Close the seed vectors under the pointwise operations.  Returns a
    dict from chain-index vectors to witnesses; raises CloneBudgetError
    when the table outgrows budget."""
    if len(atoms) <= _PACKED_MAX_ATOMS:
        return _close_clone_packed(atoms, delta_allowed, budget)
    return _close_clone_generic(atoms, delta_allowed, budget)


_CLONE_CACHE: dict = {}


def clone_closure(atoms: Iterable[str], delta_allowed: bool, budget: int = DEFAULT_CLONE_BUDGET) -> CloneTable:
    """Close the atom projections and the ⊥ vector under the pointwise
    connective operations.  Saturation within budget is the local-
    finiteness witness; saturated tables are cached per (atoms, mode)."""
    atoms = tuple(sorted(set(atoms)))
    if len(atoms) > MAX_CLONE_ATOMS:
        raise ValueError(f"clone closure supports at most {MAX_CLONE_ATOMS} atoms, got {len(atoms)}")
    key = (atoms, bool(delta_allowed))
    cached = _CLONE_CACHE.get(key)
    if cached is not None:
        return cached
    raw = _close_clone(atoms, delta_allowed, budget)
    table = _fraction_table(atoms, delta_allowed, raw, saturated=True)
    if (ONE,) * ((len(atoms) + 2) ** len(atoms)) not in table.vectors:
        raise RuntimeError("clone closure lost the all-1 vector; construction bug")
    _CLONE_CACHE[key] = table
    return table


# ---------------------------------------------------------------------------
# Separability
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparabilityCertificate:
    """A separator together with the two entailment verdicts T ⊩ θ and
    U ⊩ ∼θ that make it one."""

    separator: Formula
    t_proof: EntailmentVerdict
    u_proof: EntailmentVerdict


def _common_atoms(t_theory: Sequence[Formula], u_theory: Sequence[Formula]) -> tuple:
    common = language_of(t_theory).intersection(language_of(u_theory))
    for name, arity in common.relations.items():
        if arity != 0:
            raise NonPropositionalError(f"relation {name} has arity {arity}")
    return tuple(sorted(common.relations))


def _entailed_by_mask(space, model_mask: int, f: Formula) -> bool:
    return not (model_mask & ~space.ones_mask(f) & space.full_mask)


def _scan_separator(t_theory, u_theory, table: CloneTable) -> Optional[Formula]:
    """First clone witness (by key) separating the theories, or None after
    exhausting the table."""
    t_atoms = set(table.atoms)
    for g in t_theory:
        t_atoms |= prop_atoms(g)
    u_atoms = set(table.atoms)
    for g in u_theory:
        u_atoms |= prop_atoms(g)
    sp_t = assignment_space(t_atoms)
    sp_u = assignment_space(u_atoms)
    m_t = sp_t.model_mask(t_theory)
    m_u = sp_u.model_mask(u_theory)
    for theta in table.formulas():
        if not _entailed_by_mask(sp_t, m_t, theta):
            continue
        if _entailed_by_mask(sp_u, m_u, delta_neg(theta)):
            return theta
    return None


def _certificate(theta: Formula, t_theory, u_theory) -> SeparabilityCertificate:
    t_proof = one_entails(t_theory, theta)
    u_proof = one_entails(u_theory, delta_neg(theta))
    if not (t_proof.holds and u_proof.holds):
        raise RuntimeError(f"separator {pretty(theta)} failed re-verification; search bug")
    return SeparabilityCertificate(theta, t_proof, u_proof)


def separates(theta: Formula, t_theory: Iterable[Formula], u_theory: Iterable[Formula]) -> Optional[SeparabilityCertificate]:
    """Certificate iff T ⊩ θ and U ⊩ ∼θ.  θ must lie in the theories'
    common language."""
    t_theory = list(t_theory)
    u_theory = list(u_theory)
    common = language_of(t_theory).intersection(language_of(u_theory))
    if not language_of([theta]).is_subsignature_of(common):
        raise CommonLanguageError(
            f"{pretty(theta)} is not over the common language of the two theories"
        )
    t_proof = one_entails(t_theory, theta)
    if not t_proof.holds:
        return None
    u_proof = one_entails(u_theory, delta_neg(theta))
    if not u_proof.holds:
        return None
    return SeparabilityCertificate(theta, t_proof, u_proof)


def find_separator(
    t_theory: Iterable[Formula],
    u_theory: Iterable[Formula],
    g_only: bool = False,
    *,
    clone_budget: int = DEFAULT_CLONE_BUDGET,
) -> Optional[SeparabilityCertificate]:
    """Search the clone over the common atoms for a separator; None means
    certified inseparable (the scan exhausts all formulas up to logical
    equivalence).  In g_only mode candidates are Δ-free."""
    t_theory = list(t_theory)
    u_theory = list(u_theory)
    table = clone_closure(_common_atoms(t_theory, u_theory), not g_only, clone_budget)
    theta = _scan_separator(t_theory, u_theory, table)
    if theta is None:
        return None
    if g_only and not is_g_formula(theta):
        raise RuntimeError("Delta witness in a Delta-free clone; construction bug")
    return _certificate(theta, t_theory, u_theory)


# ---------------------------------------------------------------------------
# Interpolation
# ---------------------------------------------------------------------------


def interpolate(
    phi: Formula,
    psi: Formula,
    g_only: bool = False,
    *,
    clone_budget: int = DEFAULT_CLONE_BUDGET,
) -> Optional[Formula]:
    """An interpolant for φ ⊩ ψ: a θ over the common atoms with φ ⊩ θ and
    θ ⊩ ψ (Δ-free when g_only).  Requires the entailment to hold; every
    output is re-verified on both sides before being returned."""
    pre = one_entails([phi], psi)
    if not pre.holds:
        raise PreconditionError(
            "no interpolant: the entailment fails (witness attached)", pre
        )
    cert = find_separator([phi], [delta_neg(psi)], g_only, clone_budget=clone_budget)
    if cert is None:
        return None
    theta = cert.separator
    if not one_entails([phi], theta).holds or not one_entails([theta], psi).holds:
        raise RuntimeError(f"interpolant {pretty(theta)} failed re-verification; search bug")
    if g_only and not is_g_formula(theta):
        raise RuntimeError("Delta interpolant in g_only mode; search bug")
    return theta


# ---------------------------------------------------------------------------
# Constant abstraction
# ---------------------------------------------------------------------------


def _bound_vars(f: Formula) -> set:
    out: set = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Forall, Exists)):
            out.add(g.var)
            stack.append(g.body)
        elif isinstance(g, (And, Or, Implies)):
            stack.append(g.lhs)
            stack.append(g.rhs)
        elif isinstance(g, Delta):
            stack.append(g.body)
    return out


def abstract_constants(phi: Formula, psi: Formula) -> Tuple[Formula, Formula]:
    """Quantify away each side's private constants: constants only in φ
    become existentially bound in φ, constants only in ψ universally bound
    in ψ; shared constants stay.  This is the reduction that removes
    one-sided constants before interpolating."""
    if phi.free_vars or psi.free_vars:
        raise ValueError("abstract_constants expects closed formulas")
    c_phi = constants_of([phi])
    c_psi = constants_of([psi])

    def close(f: Formula, private: Sequence[str], quant) -> Formula:
        pool = fresh_variables(_bound_vars(f))
        fresh = [next(pool) for _ in private]
        for cname, vname in reversed(list(zip(private, fresh))):
            f = quant(vname, generalize_constant(f, cname, vname))
        return f

    return (
        close(phi, sorted(c_phi - c_psi), Exists),
        close(psi, sorted(c_psi - c_phi), Forall),
    )


# ---------------------------------------------------------------------------
# Henkin-style extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HenkinStep:
    """One extension decision: the offered formula, which side it went to,
    whether it was accepted as-is or flipped to its ∼-form, and the
    inseparability re-check outcome.  henkin_witness marks the extra
    ∼σ(c) instance added after rejecting a universal formula."""

    index: int
    side: str
    offered: Formula
    added: Formula
    accepted: bool
    recheck_ok: bool
    henkin_witness: bool = False


@dataclass(frozen=True)
class PipelineTrace:
    """Everything the countermodel pipeline did, in order: extension steps,
    final theories, the three Lindenbaum chains, the order-level chains and
    maps fed to amalgamation, the amalgam, the unit-interval embedding, and
    the output valuation.  henkin_extend returns a prefix with only steps
    and theories filled in.  fo_bounded marks best-effort first-order runs
    whose inseparability checks were bounded rather than exact."""

    g_only: bool
    fo_bounded: bool
    steps: Tuple[HenkinStep, ...]
    t_theory: Tuple[Formula, ...]
    u_theory: Tuple[Formula, ...]
    phi: Optional[Formula] = None
    psi: Optional[Formula] = None
    b0: Optional[LindChain] = None
    b1: Optional[LindChain] = None
    b2: Optional[LindChain] = None
    b0_chain: Optional[BoundedChain] = None
    b1_chain: Optional[BoundedChain] = None
    b2_chain: Optional[BoundedChain] = None
    f1: Optional[LinHom] = None
    f2: Optional[LinHom] = None
    amalgam: Optional[AmalgamResult] = None
    embedding: Optional[Mapping[str, Fraction]] = None
    assignment: Optional[Mapping[str, Fraction]] = None
    valuation: Optional[Valuation] = None

    def to_dict(self) -> dict:
        out: dict = {
            "g_only": self.g_only,
            "fo_bounded": self.fo_bounded,
            "steps": [
                {
                    "index": s.index,
                    "side": s.side,
                    "offered": pretty(s.offered),
                    "added": pretty(s.added),
                    "accepted": s.accepted,
                    "recheck_ok": s.recheck_ok,
                    "henkin_witness": s.henkin_witness,
                }
                for s in self.steps
            ],
            "t_theory": [pretty(f) for f in self.t_theory],
            "u_theory": [pretty(f) for f in self.u_theory],
        }
        if self.phi is not None:
            out["phi"] = pretty(self.phi)
        if self.psi is not None:
            out["psi"] = pretty(self.psi)
        chains = {}
        for name, lind, order_chain in (
            ("b0", self.b0, self.b0_chain),
            ("b1", self.b1, self.b1_chain),
            ("b2", self.b2, self.b2_chain),
        ):
            if lind is not None:
                d = lindenbaum_chain_to_dict(lind)
                if order_chain is not None:
                    d["ids"] = list(order_chain.elements)
                chains[name] = d
        if chains:
            out["chains"] = chains
        if self.f1 is not None:
            out["f1"] = linhom_to_dict(self.f1)
        if self.f2 is not None:
            out["f2"] = linhom_to_dict(self.f2)
        if self.amalgam is not None:
            out["amalgam"] = {
                "elements": list(self.amalgam.amalgam.elements),
                "g1": linhom_to_dict(self.amalgam.g1),
                "g2": linhom_to_dict(self.amalgam.g2),
            }
        if self.embedding is not None:
            out["embedding"] = {e: str(v) for e, v in self.embedding.items()}
        if self.assignment is not None:
            out["assignment"] = {a: str(v) for a, v in sorted(self.assignment.items())}
        if self.valuation is not None:
            out["valuation"] = valuation_to_dict(self.valuation)
        return out


def _is_propositional(f: Formula) -> bool:
    try:
        prop_atoms(f)
        return True
    except NonPropositionalError:
        return False


class _PropositionalChecker:
    """Exact inseparability oracle for one henkin run: one clone table,
    masks recomputed per call from memoized per-formula masks."""

    def __init__(self, common_atoms, g_only, clone_budget):
        self.table = clone_closure(common_atoms, not g_only, clone_budget)
        self.bounded = False

    def separator(self, t_theory, u_theory) -> Optional[Formula]:
        return _scan_separator(t_theory, u_theory, self.table)

    def certificate(self, theta, t_theory, u_theory) -> SeparabilityCertificate:
        return _certificate(theta, t_theory, u_theory)


class _BoundedFoChecker:
    """Best-effort inseparability oracle for first-order runs: a capped
    candidate list over the common language, each candidate checked with
    bounded (sampled) countermodel search on both sides.  Verdicts are
    bounded, so 'separable' answers can be wrong in either direction;
    callers flag the whole run."""

    def __init__(self, common: Signature, g_only: bool, seed: int):
        stream = enumerate_closed_formulas(common, delta_allowed=not g_only)
        self.candidates = list(itertools.islice(stream, _FO_CANDIDATE_CAP))
        self.seed = seed
        self.bounded = True
        self._calls = 0

    def _holds(self, theory, f) -> bool:
        self._calls += 1
        verdict = fo_check_bounded(
            theory,
            f,
            max_universe=_FO_MAX_UNIVERSE,
            sample=_FO_SAMPLE,
            seed=self.seed + self._calls,
        )
        return verdict.holds

    def separator(self, t_theory, u_theory) -> Optional[Formula]:
        for theta in self.candidates:
            if self._holds(t_theory, theta) and self._holds(u_theory, delta_neg(theta)):
                return theta
        return None

    def certificate(self, theta, t_theory, u_theory) -> SeparabilityCertificate:
        self._calls += 1
        t_proof = fo_check_bounded(
            t_theory, theta, max_universe=_FO_MAX_UNIVERSE, sample=_FO_SAMPLE, seed=self.seed + self._calls
        )
        self._calls += 1
        u_proof = fo_check_bounded(
            u_theory,
            delta_neg(theta),
            max_universe=_FO_MAX_UNIVERSE,
            sample=_FO_SAMPLE,
            seed=self.seed + self._calls,
        )
        return SeparabilityCertificate(theta, t_proof, u_proof)


def henkin_extend(
    t_theory: Iterable[Formula],
    u_theory: Iterable[Formula],
    enumeration: Optional[Iterable[Formula]] = None,
    budget: int = DEFAULT_HENKIN_BUDGET,
    *,
    g_only: bool = False,
    clone_budget: int = DEFAULT_CLONE_BUDGET,
    seed: int = 0,
) -> PipelineTrace:
    """Extend two inseparable theories stepwise.  Each enumerated formula
    is offered to every side whose language contains it: the side keeps the
    formula if inseparability survives, otherwise its ∼-form (one of the
    two always works).  In first-order mode a rejected ∀x σ(x) additionally
    contributes ∼σ(c) for a fresh constant c.  Every choice is re-checked;
    a failed re-check raises SeparableTheories, which for bounded
    first-order runs can also signal check incompleteness.

    Returns a trace prefix holding the steps and the extended theories.
    The default enumeration is every closed formula of depth ≤ 1 over the
    union language (first-order: depth ≤ 2, so simple quantified formulas
    are offered too)."""
    t_list = list(t_theory)
    u_list = list(u_theory)
    lang_t = language_of(t_list)
    lang_u = language_of(u_list)
    fo = not all(_is_propositional(f) for f in [*t_list, *u_list])

    if fo:
        checker: Union[_PropositionalChecker, _BoundedFoChecker] = _BoundedFoChecker(
            lang_t.intersection(lang_u), g_only, seed
        )
        budget = min(budget, _FO_STEP_CAP)
    else:
        checker = _PropositionalChecker(_common_atoms(t_list, u_list), g_only, clone_budget)

    first = checker.separator(t_list, u_list)
    if first is not None:
        raise SeparableTheories(
            checker.certificate(first, t_list, u_list),
            f"theories are separable by {pretty(first)}; nothing to extend",
        )

    if enumeration is None:
        enumeration = enumerate_closed_formulas(
            lang_t.union(lang_u), max_depth=2 if fo else 1, delta_allowed=True
        )

    taken_constants = set(lang_t.constants) | set(lang_u.constants) | constants_of([*t_list, *u_list])
    pool = fresh_constants(taken_constants)
    steps = []

    for index, offered in enumerate(itertools.islice(enumeration, budget)):
        if offered.free_vars:
            raise ValueError(f"enumeration produced an open formula: {offered!r}")
        if not fo and not _is_propositional(offered):
            continue
        offered_lang = language_of([offered])
        for side, mine, lang in (("T", t_list, lang_t), ("U", u_list, lang_u)):
            if not offered_lang.is_subsignature_of(lang):
                continue
            trial_t = t_list + [offered] if side == "T" else t_list
            trial_u = u_list + [offered] if side == "U" else u_list
            if checker.separator(trial_t, trial_u) is None:
                if offered not in mine:
                    mine.append(offered)
                steps.append(HenkinStep(index, side, offered, offered, True, True))
                continue
            flipped = delta_neg(offered)
            if flipped not in mine:
                mine.append(flipped)
            recheck = checker.separator(t_list, u_list)
            if recheck is not None:
                raise SeparableTheories(
                    checker.certificate(recheck, t_list, u_list),
                    f"inseparability lost after adding {pretty(flipped)} to {side} "
                    f"(separator {pretty(recheck)}); inputs were separable or the "
                    "bounded check missed a countermodel",
                )
            steps.append(HenkinStep(index, side, offered, flipped, False, True))
            if fo and isinstance(offered, Forall):
                c = next(pool)
                witness = delta_neg(substitute(offered.body, offered.var, c))
                if witness not in mine:
                    mine.append(witness)
                recheck = checker.separator(t_list, u_list)
                if recheck is not None:
                    raise SeparableTheories(
                        checker.certificate(recheck, t_list, u_list),
                        f"inseparability lost after the fresh-constant instance "
                        f"{pretty(witness)} on side {side}",
                    )
                steps.append(HenkinStep(index, side, offered, witness, False, True, True))

    return PipelineTrace(
        g_only=g_only,
        fo_bounded=fo,
        steps=tuple(steps),
        t_theory=tuple(t_list),
        u_theory=tuple(u_list),
    )


# ---------------------------------------------------------------------------
# Countermodel synthesis
# ---------------------------------------------------------------------------


def _order_chain(lind: LindChain) -> BoundedChain:
    return BoundedChain([pretty(c.representative) for c in lind.classes])


def _chain_map(b0: LindChain, target: LindChain) -> dict:
    return {
        pretty(c.representative): pretty(target.class_of(c.representative).representative)
        for c in b0.classes
    }


def _atom_value(lind: LindChain, inclusion: LinHom, h: Mapping[str, Fraction], f: Formula) -> Fraction:
    return h[inclusion.map[pretty(lind.class_of(f).representative)]]


def _assemble(trace, phi, psi, b0_l, b1_l, b2_l):
    """Shared tail of both pipeline modes: order-level chains, validated
    maps, amalgam, embedding."""
    b0_c = _order_chain(b0_l)
    b1_c = _order_chain(b1_l)
    b2_c = _order_chain(b2_l)
    f1 = LinHom(b0_c, b1_c, _chain_map(b0_l, b1_l))
    f2 = LinHom(b0_c, b2_c, _chain_map(b0_l, b2_l))
    if not validate_lin_hom(f1) or not validate_lin_hom(f2):
        raise RuntimeError("chain inclusion failed Lin-homomorphism validation; pipeline bug")
    result = amalgamate(b0_c, b1_c, b2_c, f1, f2)
    h = embed_into_unit(result.amalgam)
    return replace(
        trace,
        phi=phi,
        psi=psi,
        b0=b0_l,
        b1=b1_l,
        b2=b2_l,
        b0_chain=b0_c,
        b1_chain=b1_c,
        b2_chain=b2_c,
        f1=f1,
        f2=f2,
        amalgam=result,
        embedding=h,
    ), result, h


def _synthesize_propositional(phi, psi, g_only, budget, clone_budget, enumeration):
    pre = one_entails([phi], psi)
    if pre.holds:
        raise PreconditionError(
            "the entailment holds, so no countermodel exists", pre
        )
    trace = henkin_extend(
        [phi], [delta_neg(psi)], enumeration, budget, g_only=g_only, clone_budget=clone_budget
    )
    atoms_phi = sorted(prop_atoms(phi))
    atoms_psi = sorted(prop_atoms(psi))
    shared = sorted(set(atoms_phi) & set(atoms_psi))

    readings = {}
    for name, theory, atoms in (("T", trace.t_theory, atoms_phi), ("U", trace.u_theory, atoms_psi)):
        space = assignment_space(atoms)
        mask = space.model_mask(theory)
        if not mask:
            raise RuntimeError(f"extended side {name} is unsatisfiable; pipeline bug")
        readings[name] = space.assignment(space.first_index(mask))
    v_t, v_u = readings["T"], readings["U"]

    # inseparability pins the shared atoms' zones and relative order, so
    # both read-offs must induce the same chain on the common part
    for a in shared:
        if (v_t[a] == ZERO) != (v_u[a] == ZERO) or (v_t[a] == ONE) != (v_u[a] == ONE):
            raise RuntimeError(f"sides disagree on the zone of shared atom {a}; pipeline bug")
        for b in shared:
            if (v_t[a] <= v_t[b]) != (v_u[a] <= v_u[b]):
                raise RuntimeError(f"sides disagree on the order of {a}, {b}; pipeline bug")

    oracle_t = CompleteTheoryOracle.from_assignment(v_t)
    oracle_u = CompleteTheoryOracle.from_assignment(v_u)
    b1_l = build_chain(oracle_t, [Atom(a) for a in atoms_phi], g_only=g_only)
    b2_l = build_chain(oracle_u, [Atom(a) for a in atoms_psi], g_only=g_only)
    b0_l = build_chain(oracle_t, [Atom(a) for a in shared], g_only=g_only)

    trace, result, h = _assemble(trace, phi, psi, b0_l, b1_l, b2_l)

    assignment = {}
    for a in atoms_phi:
        assignment[a] = _atom_value(b1_l, result.g1, h, Atom(a))
    for a in atoms_psi:
        value = _atom_value(b2_l, result.g2, h, Atom(a))
        if a in assignment and assignment[a] != value:
            raise RuntimeError(f"commuting square broken at shared atom {a}; pipeline bug")
        assignment[a] = value

    valuation = assignment_valuation(assignment)
    if evaluate(valuation, phi) != ONE:
        raise RuntimeError("synthesized valuation does not model the left formula; pipeline bug")
    if evaluate(valuation, psi) == ONE:
        raise RuntimeError("synthesized valuation gives the right formula value 1; pipeline bug")
    return valuation, replace(trace, assignment=assignment, valuation=valuation)


def _ground_atoms(sig: Signature, names: Sequence[str]) -> list:
    out = []
    for rel, arity in sorted(sig.relations.items()):
        for args in itertools.product(names, repeat=arity):
            out.append(Atom(rel, tuple(Const(a) for a in args)))
    return out


def _synthesize_fo(phi, psi, g_only, budget, seed):
    pre = fo_check_bounded([phi], psi, max_universe=_FO_MAX_UNIVERSE + 1, sample=_FO_SAMPLE * 10, seed=seed)
    if pre.holds:
        raise PreconditionError(
            "no countermodel found within the bounded search"
            + ("" if pre.exhaustive else " (sampled)")
            + "; the entailment may hold",
            pre,
        )
    witness: Valuation = pre.witness

    # the witness proves the theories inseparable, so a SeparableTheories
    # from the sampled checks is a known false positive; fall back to an
    # empty extension rather than aborting
    try:
        trace = henkin_extend([phi], [delta_neg(psi)], None, budget, g_only=g_only, seed=seed)
    except SeparableTheories:
        trace = PipelineTrace(
            g_only=g_only,
            fo_bounded=True,
            steps=(),
            t_theory=(phi,),
            u_theory=(delta_neg(psi),),
        )

    # name the witness universe with fresh constants so ground atoms can
    # serve as the chain-building formulas on both sides
    lang_phi = language_of([phi])
    lang_psi = language_of([psi])
    named = witness
    element_names = {}
    pool = fresh_constants(set(named.constants) | lang_phi.constants | lang_psi.constants)
    for e in witness.universe:
        name = next(pool)
        element_names[e] = name
        named = named.with_constant(name, e)

    oracle = CompleteTheoryOracle(named)
    names = [element_names[e] for e in witness.universe]
    common = lang_phi.intersection(lang_psi)
    b1_l = build_chain(oracle, _ground_atoms(lang_phi, names))
    b2_l = build_chain(oracle, _ground_atoms(lang_psi, names))
    b0_l = build_chain(oracle, _ground_atoms(common, names))

    trace, result, h = _assemble(trace, phi, psi, b0_l, b1_l, b2_l)

    relations: dict = {}
    for rel, arity in sorted(lang_phi.union(lang_psi).relations.items()):
        side_l, side_g = (b1_l, result.g1) if rel in lang_phi.relations else (b2_l, result.g2)
        table = {}
        for args in itertools.product(witness.universe, repeat=arity):
            atom = Atom(rel, tuple(Const(element_names[e]) for e in args))
            table[args] = _atom_value(side_l, side_g, h, atom)
            if rel in common.relations:
                other = _atom_value(b2_l, result.g2, h, atom)
                if other != table[args]:
                    raise RuntimeError(f"commuting square broken at {pretty(atom)}; pipeline bug")
        relations[rel] = table
    constants = dict(named.constants)
    valuation = Valuation(witness.universe, relations, constants)

    if evaluate(valuation, phi) != ONE:
        raise RuntimeError("synthesized valuation does not model the left formula; pipeline bug")
    if evaluate(valuation, psi) == ONE:
        raise RuntimeError("synthesized valuation gives the right formula value 1; pipeline bug")
    return valuation, replace(trace, valuation=valuation)


def countermodel_synthesize(
    phi: Formula,
    psi: Formula,
    g_only: bool = False,
    budget: int = DEFAULT_HENKIN_BUDGET,
    *,
    clone_budget: int = DEFAULT_CLONE_BUDGET,
    enumeration: Optional[Iterable[Formula]] = None,
    seed: int = 0,
) -> Tuple[Valuation, PipelineTrace]:
    """Construct a valuation with v(φ) = 1 and v(ψ) < 1 for a failed
    entailment φ ⊮ ψ, executing the separability-to-countermodel argument:
    henkin extension, per-side theory read-off, Lindenbaum chains, chain
    amalgamation over the common part, unit-interval embedding, atom
    pull-back.  Propositional inputs are handled exactly; first-order
    inputs run best-effort under bounded checks (trace.fo_bounded)."""
    if phi.free_vars or psi.free_vars:
        raise ValueError("countermodel synthesis expects closed formulas")
    if _is_propositional(phi) and _is_propositional(psi):
        return _synthesize_propositional(phi, psi, g_only, budget, clone_budget, enumeration)
    return _synthesize_fo(phi, psi, g_only, budget, seed)
