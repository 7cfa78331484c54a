"""Abstract syntax for first-order Goedel logic with Delta.

The primitive connectives are conjunction, disjunction, implication, the
falsum constant and the Delta operator, plus universal and existential
quantifiers.  Everything else is derived and expands at construction time:

    !x          negation          x -> bot
    top         verum             bot -> bot
    ~x          Delta-negation    !(D x)
    x <-> y     equivalence       (x -> y) & (y -> x)

The pretty printer re-introduces the derived forms, so parse(print(f)) is
the identity on syntax trees.

Concrete grammar (ASCII):

    formula  := quantifier | iff
    quantifier := ("forall" | "exists") VAR "." formula    (maximal scope)
    iff      := imp ("<->" imp)*                           (left associative)
    imp      := or ("->" imp)?                             (right associative)
    or       := and ("|" and)*
    and      := unary ("&" unary)*
    unary    := ("!" | "~" | "D") unary | primary
    primary  := "bot" | "top" | NAME | NAME "(" terms ")" | "(" formula ")"

Precedence, tightest first: prefix operators, "&", "|", "->", "<->".
A name in term position is a variable when bound by an enclosing
quantifier and a constant otherwise.  "bot", "top", "forall", "exists"
and "D" are reserved words.

Formulas are immutable, hashable, and carry a precomputed total-order key
(constructor depth, then constructor rank, then children lexicographically)
so that enumeration and witness selection are deterministic.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, Optional, Sequence

RESERVED = frozenset({"bot", "top", "forall", "exists", "D"})

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class SyntaxInvariantError(ValueError):
    """Raised when a term, formula, or signature is built inconsistently."""


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


class Term:
    __slots__ = ("name", "key", "_hash")

    def __init__(self, name: str, rank: int):
        if not NAME_RE.fullmatch(name) or name in RESERVED:
            raise SyntaxInvariantError(f"bad term name: {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "key", (rank, name))
        object.__setattr__(self, "_hash", hash((rank, name)))

    def __setattr__(self, *_):
        raise AttributeError("terms are immutable")

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key


class Const(Term):
    """A constant symbol."""

    __slots__ = ()

    def __init__(self, name: str):
        super().__init__(name, 0)

    def __repr__(self):
        return f"Const({self.name!r})"


class Var(Term):
    """A variable symbol (meaningful only under a quantifier binding it)."""

    __slots__ = ()

    def __init__(self, name: str):
        super().__init__(name, 1)

    def __repr__(self):
        return f"Var({self.name!r})"


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

_RANK_ATOM = 0
_RANK_BOTTOM = 1
_RANK_AND = 2
_RANK_OR = 3
_RANK_IMPLIES = 4
_RANK_DELTA = 5
_RANK_FORALL = 6
_RANK_EXISTS = 7


class Formula:
    """Base class.  `key` realizes the enumeration order: it sorts first by
    constructor depth, then by constructor rank (atoms before bot before
    & before | before -> before D before forall before exists), then
    lexicographically by children."""

    __slots__ = ("depth", "key", "free_vars", "has_delta", "_hash")

    def _seal(self, depth, rank, payload, free_vars, has_delta):
        object.__setattr__(self, "depth", depth)
        key = (depth, rank, payload)
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "free_vars", free_vars)
        object.__setattr__(self, "has_delta", has_delta)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, *_):
        raise AttributeError("formulas are immutable")

    def __eq__(self, other):
        return isinstance(other, Formula) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __str__(self):
        return pretty(self)

    def __repr__(self):
        return f"<{pretty(self)}>"


class Atom(Formula):
    __slots__ = ("name", "terms")

    def __init__(self, name: str, terms: Sequence[Term] = ()):
        if not NAME_RE.fullmatch(name) or name in RESERVED:
            raise SyntaxInvariantError(f"bad relation name: {name!r}")
        terms = tuple(terms)
        for t in terms:
            if not isinstance(t, Term):
                raise SyntaxInvariantError(f"atom argument is not a term: {t!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "terms", terms)
        fv = frozenset(t.name for t in terms if isinstance(t, Var))
        self._seal(0, _RANK_ATOM, (name, tuple(t.key for t in terms)), fv, False)


class Bottom(Formula):
    __slots__ = ()

    def __init__(self):
        self._seal(0, _RANK_BOTTOM, (), frozenset(), False)


BOT = Bottom()


class _Binary(Formula):
    __slots__ = ("lhs", "rhs")
    _rank = -1

    def __init__(self, lhs: Formula, rhs: Formula):
        if not isinstance(lhs, Formula) or not isinstance(rhs, Formula):
            raise SyntaxInvariantError("binary connective needs formula operands")
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        self._seal(
            1 + max(lhs.depth, rhs.depth),
            self._rank,
            (lhs.key, rhs.key),
            lhs.free_vars | rhs.free_vars,
            lhs.has_delta or rhs.has_delta,
        )


class And(_Binary):
    __slots__ = ()
    _rank = _RANK_AND


class Or(_Binary):
    __slots__ = ()
    _rank = _RANK_OR


class Implies(_Binary):
    __slots__ = ()
    _rank = _RANK_IMPLIES


class Delta(Formula):
    __slots__ = ("body",)

    def __init__(self, body: Formula):
        if not isinstance(body, Formula):
            raise SyntaxInvariantError("Delta needs a formula operand")
        object.__setattr__(self, "body", body)
        self._seal(1 + body.depth, _RANK_DELTA, (body.key,), body.free_vars, True)


class _Quant(Formula):
    __slots__ = ("var", "body")
    _rank = -1

    def __init__(self, var: str, body: Formula):
        if not NAME_RE.fullmatch(var) or var in RESERVED:
            raise SyntaxInvariantError(f"bad variable name: {var!r}")
        if not isinstance(body, Formula):
            raise SyntaxInvariantError("quantifier needs a formula body")
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "body", body)
        self._seal(
            1 + body.depth,
            self._rank,
            (var, body.key),
            body.free_vars - {var},
            body.has_delta,
        )


class Forall(_Quant):
    __slots__ = ()
    _rank = _RANK_FORALL


class Exists(_Quant):
    __slots__ = ()
    _rank = _RANK_EXISTS


# Derived forms: these expand immediately, the printer re-sugars them.


def neg(f: Formula) -> Formula:
    """!f, i.e. f -> bot."""
    return Implies(f, BOT)


def top() -> Formula:
    """Verum, i.e. bot -> bot."""
    return Implies(BOT, BOT)


TOP = top()


def delta_neg(f: Formula) -> Formula:
    """~f, i.e. !(D f); its value is 1 exactly when f is not fully true."""
    return Implies(Delta(f), BOT)


def iff(a: Formula, b: Formula) -> Formula:
    """a <-> b, i.e. (a -> b) & (b -> a)."""
    return And(Implies(a, b), Implies(b, a))


def is_g_formula(f: Formula) -> bool:
    """True when f is Delta-free (a formula of plain Goedel logic)."""
    return not f.has_delta


def formula_sort_key(f: Formula):
    """The total enumeration order on formulas, exposed for callers."""
    return f.key


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------


class Signature:
    """A finite relational signature: relation symbols with arities, plus
    constant symbols.  No function symbols, no equality."""

    __slots__ = ("relations", "constants")

    def __init__(self, relations=(), constants=()):
        rels = dict(relations)
        consts = frozenset(constants)
        for name, arity in rels.items():
            if not NAME_RE.fullmatch(name) or name in RESERVED:
                raise SyntaxInvariantError(f"bad relation name: {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise SyntaxInvariantError(f"bad arity for {name}: {arity!r}")
        for name in consts:
            if not NAME_RE.fullmatch(name) or name in RESERVED:
                raise SyntaxInvariantError(f"bad constant name: {name!r}")
        overlap = consts & rels.keys()
        if overlap:
            raise SyntaxInvariantError(f"names used as both relation and constant: {sorted(overlap)}")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "constants", consts)

    def __setattr__(self, *_):
        raise AttributeError("signatures are immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Signature)
            and self.relations == other.relations
            and self.constants == other.constants
        )

    def __hash__(self):
        return hash((tuple(sorted(self.relations.items())), self.constants))

    def __repr__(self):
        rels = ", ".join(f"{n}/{a}" for n, a in sorted(self.relations.items()))
        return f"Signature([{rels}], constants={sorted(self.constants)})"

    def union(self, other: "Signature") -> "Signature":
        rels = dict(self.relations)
        for name, arity in other.relations.items():
            if rels.get(name, arity) != arity:
                raise SyntaxInvariantError(f"arity clash for {name}")
            rels[name] = arity
        return Signature(rels, self.constants | other.constants)

    def intersection(self, other: "Signature") -> "Signature":
        rels = {
            n: a
            for n, a in self.relations.items()
            if other.relations.get(n) == a
        }
        return Signature(rels, self.constants & other.constants)

    def is_subsignature_of(self, other: "Signature") -> bool:
        return all(
            other.relations.get(n) == a for n, a in self.relations.items()
        ) and self.constants <= other.constants

    def propositional(self) -> bool:
        return all(a == 0 for a in self.relations.values())


def language_of(fs) -> Signature:
    """The signature of symbols actually occurring in a formula or an
    iterable of formulas."""
    if isinstance(fs, Formula):
        fs = (fs,)
    rels: dict[str, int] = {}
    consts: set[str] = set()

    def walk(f: Formula):
        if isinstance(f, Atom):
            known = rels.get(f.name)
            if known is not None and known != len(f.terms):
                raise SyntaxInvariantError(f"arity clash for {f.name}")
            rels[f.name] = len(f.terms)
            for t in f.terms:
                if isinstance(t, Const):
                    consts.add(t.name)
        elif isinstance(f, _Binary):
            walk(f.lhs)
            walk(f.rhs)
        elif isinstance(f, Delta):
            walk(f.body)
        elif isinstance(f, _Quant):
            walk(f.body)

    for f in fs:
        walk(f)
    return Signature(rels, consts)


def constants_of(fs) -> frozenset:
    return language_of(fs).constants


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------


def substitute(f: Formula, var: str, const: str) -> Formula:
    """Replace every free occurrence of the variable by the constant.
    Substituting a constant can never capture, so no renaming is needed."""
    c = Const(const)

    def go(g: Formula, bound: frozenset) -> Formula:
        if isinstance(g, Atom):
            if var in bound or var not in g.free_vars:
                return g
            terms = tuple(
                c if isinstance(t, Var) and t.name == var else t for t in g.terms
            )
            return Atom(g.name, terms)
        if isinstance(g, _Binary):
            return type(g)(go(g.lhs, bound), go(g.rhs, bound))
        if isinstance(g, Delta):
            return Delta(go(g.body, bound))
        if isinstance(g, _Quant):
            if g.var == var:
                return g
            return type(g)(g.var, go(g.body, bound | {g.var}))
        return g

    return go(f, frozenset())


def generalize_constant(f: Formula, const: str, var: str) -> Formula:
    """Replace every occurrence of the constant by the variable.  The caller
    must pick a variable that is not bound anywhere in f."""

    def bound_somewhere(g: Formula) -> bool:
        if isinstance(g, _Quant):
            return g.var == var or bound_somewhere(g.body)
        if isinstance(g, _Binary):
            return bound_somewhere(g.lhs) or bound_somewhere(g.rhs)
        if isinstance(g, Delta):
            return bound_somewhere(g.body)
        return False

    if bound_somewhere(f):
        raise SyntaxInvariantError(f"variable {var!r} is bound in the formula; pick a fresh one")
    v = Var(var)

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            terms = tuple(
                v if isinstance(t, Const) and t.name == const else t for t in g.terms
            )
            return Atom(g.name, terms) if terms != g.terms else g
        if isinstance(g, _Binary):
            return type(g)(go(g.lhs), go(g.rhs))
        if isinstance(g, Delta):
            return Delta(go(g.body))
        if isinstance(g, _Quant):
            return type(g)(g.var, go(g.body))
        return g

    return go(f)


def variable_pool() -> Iterator[str]:
    """v0, v1, v2, ..."""
    for i in itertools.count():
        yield f"v{i}"


def fresh_variables(avoid: Iterable[str]) -> Iterator[str]:
    taken = set(avoid)
    for name in variable_pool():
        if name not in taken:
            yield name


def fresh_constants(avoid: Iterable[str]) -> Iterator[str]:
    """k0, k1, k2, ... skipping any name in `avoid`."""
    taken = set(avoid)
    for i in itertools.count():
        name = f"k{i}"
        if name not in taken:
            yield name


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text[position:position + 24]!r}")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow2><->)|(?P<arrow>->)|(?P<punct>[!~&|().,])|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError("unexpected character", pos + (len(text[pos:]) - len(stripped)), text)
        kind = m.lastgroup
        tokens.append((m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = sig
        # inferred usage, validated or returned at the end
        self.rels: dict[str, int] = dict(sig.relations) if sig else {}
        self.consts: set[str] = set(sig.constants) if sig else set()

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}", self.pos(), self.text)
        return self.take()

    def fail(self, message: str):
        raise ParseError(message, self.pos(), self.text)

    # grammar levels

    def formula(self, bound: frozenset) -> Formula:
        return self.iff_level(bound)

    def iff_level(self, bound) -> Formula:
        f = self.imp_level(bound)
        while self.peek() == "<->":
            self.take()
            f = iff(f, self.imp_level(bound))
        return f

    def imp_level(self, bound) -> Formula:
        f = self.or_level(bound)
        if self.peek() == "->":
            self.take()
            return Implies(f, self.imp_level(bound))
        return f

    def or_level(self, bound) -> Formula:
        f = self.and_level(bound)
        while self.peek() == "|":
            self.take()
            f = Or(f, self.and_level(bound))
        return f

    def and_level(self, bound) -> Formula:
        f = self.unary(bound)
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary(bound))
        return f

    def unary(self, bound) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return neg(self.unary(bound))
        if tok == "~":
            self.take()
            return delta_neg(self.unary(bound))
        if tok == "D":
            self.take()
            return Delta(self.unary(bound))
        return self.primary(bound)

    def primary(self, bound) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.formula(bound)
            self.expect(")")
            return f
        if tok in ("forall", "exists"):
            self.take()
            var = self.take()
            if not NAME_RE.fullmatch(var) or var in RESERVED:
                self.fail("expected a variable name")
            self.expect(".")
            body = self.formula(bound | {var})
            return (Forall if tok == "forall" else Exists)(var, body)
        if tok == "bot":
            self.take()
            return BOT
        if tok == "top":
            self.take()
            return top()
        if NAME_RE.fullmatch(tok) and tok not in RESERVED:
            return self.atom(bound)
        self.fail("expected a formula")

    def atom(self, bound) -> Formula:
        start = self.pos()
        name = self.take()
        terms = []
        if self.peek() == "(":
            self.take()
            while True:
                terms.append(self.term(bound))
                if self.peek() == ",":
                    self.take()
                    continue
                break
            self.expect(")")
        arity = len(terms)
        if self.sig is not None:
            declared = self.sig.relations.get(name)
            if declared is None:
                raise ParseError(f"undeclared relation {name!r}", start, self.text)
            if declared != arity:
                raise ParseError(
                    f"relation {name!r} declared with arity {declared}, used with {arity}",
                    start,
                    self.text,
                )
        else:
            known = self.rels.get(name)
            if known is not None and known != arity:
                raise ParseError(f"relation {name!r} used with two arities", start, self.text)
            if name in self.consts:
                raise ParseError(f"{name!r} used as both constant and relation", start, self.text)
            self.rels[name] = arity
        return Atom(name, tuple(terms))

    def term(self, bound) -> Term:
        start = self.pos()
        name = self.take()
        if not NAME_RE.fullmatch(name) or name in RESERVED:
            raise ParseError("expected a term", start, self.text)
        if name in bound:
            return Var(name)
        if self.sig is not None:
            if name not in self.sig.constants:
                raise ParseError(f"undeclared constant {name!r}", start, self.text)
        else:
            if name in self.rels:
                raise ParseError(f"{name!r} used as both relation and constant", start, self.text)
            self.consts.add(name)
        return Const(name)


def parse_formula(text: str, sig: Optional[Signature] = None) -> Formula:
    """Parse the concrete syntax into a formula tree.

    With a signature, every symbol must be declared with the right arity.
    Without one, symbols are inferred: names in term position that are not
    bound by a quantifier become constants, names in formula position become
    relations with the arity of their first use.
    """
    p = _Parser(text, sig)
    f = p.formula(frozenset())
    if p.peek() != "":
        p.fail("trailing input")
    if f.free_vars:
        raise ParseError(
            f"unbound variable(s) {sorted(f.free_vars)} (term names are constants unless quantified)",
            0,
            text,
        )
    return f


def parse_open_formula(text: str, free: Sequence[str], sig: Optional[Signature] = None) -> Formula:
    """Parse a formula that may mention the listed names as free variables."""
    p = _Parser(text, sig)
    f = p.formula(frozenset(free))
    if p.peek() != "":
        p.fail("trailing input")
    return f


def parse_signature(text: str) -> Signature:
    """Parse a signature file: one `rel Name/arity` or `const Name` per line,
    `#` starts a comment."""
    rels: dict[str, int] = {}
    consts: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SyntaxInvariantError(f"signature line {lineno}: expected two fields, got {line!r}")
        kind, rest = parts
        if kind == "rel":
            if "/" not in rest:
                raise SyntaxInvariantError(f"signature line {lineno}: expected Name/arity")
            name, _, arity = rest.partition("/")
            if not arity.isdigit():
                raise SyntaxInvariantError(f"signature line {lineno}: bad arity {arity!r}")
            if name in rels:
                raise SyntaxInvariantError(f"signature line {lineno}: duplicate relation {name!r}")
            rels[name] = int(arity)
        elif kind == "const":
            consts.add(rest)
        else:
            raise SyntaxInvariantError(f"signature line {lineno}: unknown keyword {kind!r}")
    return Signature(rels, consts)


def parse_theory(text: str, sig: Optional[Signature] = None) -> list:
    """Parse a theory file: one formula per line, `#` starts a comment."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_formula(line, sig))
    return out


# ---------------------------------------------------------------------------
# Pretty printer
# ---------------------------------------------------------------------------

_PREC_FORMULA = 0
_PREC_IFF = 1
_PREC_IMP = 2
_PREC_OR = 3
_PREC_AND = 4
_PREC_UNARY = 5


def _match_iff(f: Formula):
    if (
        isinstance(f, And)
        and isinstance(f.lhs, Implies)
        and isinstance(f.rhs, Implies)
        and f.lhs.lhs == f.rhs.rhs
        and f.lhs.rhs == f.rhs.lhs
    ):
        return f.lhs.lhs, f.lhs.rhs
    return None


def _render(f: Formula, prec: int) -> str:
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Atom):
        if not f.terms:
            return f.name
        return f"{f.name}({', '.join(t.name for t in f.terms)})"
    if isinstance(f, _Quant):
        kw = "forall" if isinstance(f, Forall) else "exists"
        body = _render(f.body, _PREC_FORMULA)
        s = f"{kw} {f.var}. {body}"
        return f"({s})" if prec > _PREC_FORMULA else s
    if isinstance(f, Implies) and f.rhs == BOT:
        if f.lhs == BOT:
            return "top"
        if isinstance(f.lhs, Delta):
            return "~" + _render(f.lhs.body, _PREC_UNARY)
        return "!" + _render(f.lhs, _PREC_UNARY)
    pair = _match_iff(f)
    if pair is not None:
        a, b = pair
        s = f"{_render(a, _PREC_IMP)} <-> {_render(b, _PREC_IMP)}"
        return f"({s})" if prec > _PREC_IFF else s
    if isinstance(f, Delta):
        return "D " + _render(f.body, _PREC_UNARY)
    if isinstance(f, Implies):
        s = f"{_render(f.lhs, _PREC_IMP + 1)} -> {_render(f.rhs, _PREC_IMP)}"
        return f"({s})" if prec > _PREC_IMP else s
    if isinstance(f, Or):
        s = f"{_render(f.lhs, _PREC_OR)} | {_render(f.rhs, _PREC_OR + 1)}"
        return f"({s})" if prec > _PREC_OR else s
    if isinstance(f, And):
        s = f"{_render(f.lhs, _PREC_AND)} & {_render(f.rhs, _PREC_AND + 1)}"
        return f"({s})" if prec > _PREC_AND else s
    raise SyntaxInvariantError(f"cannot render {f!r}")


def pretty(f: Formula) -> str:
    """Render with minimal parentheses, re-sugaring !, top, ~ and <->."""
    return _render(f, _PREC_FORMULA)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _ground_terms(sig: Signature, n_vars: int):
    terms = [Const(c) for c in sorted(sig.constants)]
    terms.extend(Var(f"v{i}") for i in range(n_vars))
    terms.sort(key=lambda t: t.key)
    return terms


def _atoms_level(sig: Signature, n_vars: int):
    out = [BOT]
    terms = _ground_terms(sig, n_vars)
    for name, arity in sorted(sig.relations.items()):
        if arity == 0:
            out.append(Atom(name))
        else:
            out.extend(Atom(name, args) for args in itertools.product(terms, repeat=arity))
    out.sort(key=formula_sort_key)
    return out


def enumerate_closed_formulas(
    sig: Signature, max_depth: Optional[int] = None, delta_allowed: bool = True
) -> Iterator[Formula]:
    """Deterministic, syntactically duplicate-free stream of the closed
    formulas over `sig` in enumeration order (depth, then constructor rank,
    then children lexicographically), up to `max_depth` (unbounded if None).

    Quantified formulas are generated only when the signature has a relation
    of positive arity; over a purely propositional signature a quantifier
    could never bind an occurring variable, and the unquantified fragment
    is already semantically complete there.
    """
    quantifiers = any(a > 0 for a in sig.relations.values())
    # cache[(depth, n_vars)] = sorted list of formulas of exactly that depth
    # whose free variables are among v0..v{n_vars-1}
    cache: dict = {}

    def level(depth: int, n_vars: int):
        got = cache.get((depth, n_vars))
        if got is not None:
            return got
        if depth == 0:
            out = _atoms_level(sig, n_vars)
        else:
            out = []
            shallower = [f for d in range(depth - 1) for f in level(d, n_vars)]
            edge = level(depth - 1, n_vars)
            for ctor in (And, Or, Implies):
                for a in edge:
                    for b in edge:
                        out.append(ctor(a, b))
                for a in edge:
                    for b in shallower:
                        out.append(ctor(a, b))
                        out.append(ctor(b, a))
            if delta_allowed:
                out.extend(Delta(f) for f in edge)
            if quantifiers:
                var = f"v{n_vars}"
                for body in level(depth - 1, n_vars + 1):
                    out.append(Forall(var, body))
                    out.append(Exists(var, body))
            out.sort(key=formula_sort_key)
        cache[(depth, n_vars)] = out
        return out

    depths = range(max_depth + 1) if max_depth is not None else itertools.count()
    for depth in depths:
        yield from level(depth, 0)
