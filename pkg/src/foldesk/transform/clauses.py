"""Clausal representation and its canonical ordering."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax import (
    App, Atom, Eq, Formula, Implies, Not, Var, conj, disj, forall, subst_term,
    term_vars, to_text,
)


@dataclass(frozen=True, slots=True)
class Literal:
    positive: bool
    atom: Formula  # Atom or Eq

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    def to_formula(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)

    @property
    def pred(self) -> str:
        return self.atom.pred if isinstance(self.atom, Atom) else "="

    @property
    def args(self) -> tuple:
        if isinstance(self.atom, Atom):
            return self.atom.args
        return (self.atom.left, self.atom.right)

    def __str__(self) -> str:
        return ("" if self.positive else "~") + to_text(self.atom)


@dataclass(frozen=True)
class Clause:
    literals: tuple
    color: str | None = None  # "A" or "B" when taking part in interpolation
    origin: int | None = None

    def __iter__(self):
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "[]"
        return "[" + ", ".join(map(str, self.literals)) + "]"

    def with_literals(self, lits) -> "Clause":
        return Clause(tuple(lits), self.color, self.origin)


@dataclass
class ClauseSet:
    clauses: tuple = ()
    skolem: dict = field(default_factory=dict)  # Skolem symbol -> arity

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.clauses)) + "}"

    def predicates(self) -> set:
        return {lit.pred for c in self.clauses for lit in c.literals if isinstance(lit.atom, Atom)}

    def has_equality(self) -> bool:
        return any(isinstance(lit.atom, Eq) for c in self.clauses for lit in c.literals)


def lit(atom: Formula, positive: bool = True) -> Literal:
    return Literal(positive, atom)


def literal_of(f: Formula) -> Literal:
    if isinstance(f, Not):
        return Literal(False, f.arg)
    if isinstance(f, (Atom, Eq)):
        return Literal(True, f)
    raise ValueError(f"not a literal: {f}")


def is_literal(f: Formula) -> bool:
    return isinstance(f, (Atom, Eq)) or (isinstance(f, Not) and isinstance(f.arg, (Atom, Eq)))


# -- variables ----------------------------------------------------------------


def literal_vars(l: Literal, acc: set | None = None) -> set:
    if acc is None:
        acc = set()
    for t in l.args:
        term_vars(t, acc)
    return acc


def clause_vars(c) -> set:
    acc: set = set()
    for l in c.literals if isinstance(c, Clause) else c:
        literal_vars(l, acc)
    return acc


def subst_atom(a: Formula, sub: dict) -> Formula:
    if isinstance(a, Atom):
        if not a.args:
            return a
        return Atom(a.pred, tuple(subst_term(t, sub) for t in a.args))
    return Eq(subst_term(a.left, sub), subst_term(a.right, sub))


def subst_literal(l: Literal, sub: dict) -> Literal:
    return Literal(l.positive, subst_atom(l.atom, sub))


def subst_clause(c: Clause, sub: dict) -> Clause:
    return c.with_literals(subst_literal(l, sub) for l in c.literals)


def vars_in_order(lits) -> list:
    seen: list = []

    def walk(t):
        if isinstance(t, Var):
            if t.name not in seen:
                seen.append(t.name)
        else:
            for a in t.args:
                walk(a)

    for l in lits:
        for t in l.args:
            walk(t)
    return seen


# -- standard order -----------------------------------------------------------
# Variables < numbers < constants < compound terms; compounds by arity,
# then name, then arguments left to right.  Variables compare equal so the
# order does not depend on variable names.


def term_key(t) -> tuple:
    if isinstance(t, Var):
        return (0,)
    if not t.args:
        if t.name.isdigit():
            return (1, int(t.name))
        return (2, t.name)
    return (3, len(t.args), t.name, tuple(term_key(a) for a in t.args))


def atom_key(a: Formula) -> tuple:
    if isinstance(a, Eq):
        return (3, 2, "=", (term_key(a.left), term_key(a.right)))
    if not a.args:
        return (2, a.pred)
    return (3, len(a.args), a.pred, tuple(term_key(t) for t in a.args))


def literal_key(l: Literal) -> tuple:
    return (atom_key(l.atom), 0 if l.positive else 1)


def sort_literals(lits) -> list:
    return sorted(lits, key=literal_key)


def clause_key(c) -> tuple:
    lits = c.literals if isinstance(c, Clause) else c
    return (len(clause_vars(lits)), tuple(literal_key(l) for l in sort_literals(lits)))


# -- clause to formula ----------------------------------------------------------


def clause_body(lits) -> Formula:
    """Render a clause as an implication (negative literals as antecedent)."""
    lits = sort_literals(lits)
    negs = [l.atom for l in lits if not l.positive]
    poss = [l.atom for l in lits if l.positive]
    if not lits:
        return disj([])
    if negs and poss:
        return Implies(conj(negs), disj(poss))
    if poss:
        return disj(poss)
    if len(negs) == 1:
        return Not(negs[0])
    return Not(conj(negs))


def canonical_var_names(count: int, avoid: set, start: int = 0) -> list:
    base = ["x", "y", "z", "u", "v", "w"]
    names: list = []
    i = 0
    while len(names) < count + start:
        n = base[i] if i < len(base) else f"x{i - len(base) + 1}"
        if n not in avoid:
            names.append(n)
        i += 1
    return names[start:]


def rename_clause_vars(lits, avoid: set, prefix_names=()) -> tuple:
    """Rename variables to x, y, z, ... in order of first appearance."""
    lits = sort_literals(lits)
    order = vars_in_order(lits)
    names = canonical_var_names(len(order), avoid | set(prefix_names))
    sub = {v: Var(n) for v, n in zip(order, names)}
    return tuple(subst_literal(l, sub) for l in lits), names


def clause_to_formula(c, avoid: set = frozenset()) -> Formula:
    lits, names = rename_clause_vars(c.literals if isinstance(c, Clause) else c, set(avoid))
    return forall(names, clause_body(lits))


def clauses_to_formula(clauses, avoid: set = frozenset()) -> Formula:
    """Conjunction of universally closed clauses in canonical order."""
    ordered = sorted(clauses, key=clause_key)
    return conj([clause_to_formula(c, avoid) for c in ordered])


def symbols_of_clauses(clauses) -> set:
    acc: set = set()

    def walk(t):
        if isinstance(t, App):
            acc.add(t.name)
            for a in t.args:
                walk(a)

    for c in clauses:
        for l in c.literals:
            if isinstance(l.atom, Atom):
                acc.add(l.atom.pred)
            for t in l.args:
                walk(t)
    return acc
