"""Negation, conjunctive and disjunctive normal forms, Skolemization."""

from __future__ import annotations

from itertools import product

from ..macros import FreshNames
from ..syntax import (
    And, App, Atom, BOT, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula,
    Iff, Implies, Not, Or, TOP, Top, Var, all_symbols, conj, disj, exists,
    forall, free_vars, rename_bound_apart, substitute,
)
from .clauses import Clause, ClauseSet, literal_of

DEFAULT_MAX_CLAUSES = 100_000


class ClauseLimitExceeded(RuntimeError):
    """Distribution into clauses would exceed the configured bound."""


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form; second-order binders are kept transparently."""
    if isinstance(f, (Atom, Eq)):
        return f if positive else Not(f)
    if isinstance(f, Top):
        return TOP if positive else BOT
    if isinstance(f, Bot):
        return BOT if positive else TOP
    if isinstance(f, Not):
        return nnf(f.arg, not positive)
    if isinstance(f, And):
        parts = [nnf(a, positive) for a in f.args]
        return conj(parts) if positive else disj(parts)
    if isinstance(f, Or):
        parts = [nnf(a, positive) for a in f.args]
        return disj(parts) if positive else conj(parts)
    if isinstance(f, Implies):
        if positive:
            return disj([nnf(f.left, False), nnf(f.right, True)])
        return conj([nnf(f.left, True), nnf(f.right, False)])
    if isinstance(f, Iff):
        if positive:
            return conj([
                disj([nnf(f.left, False), nnf(f.right, True)]),
                disj([nnf(f.left, True), nnf(f.right, False)]),
            ])
        return disj([
            conj([nnf(f.left, True), nnf(f.right, False)]),
            conj([nnf(f.left, False), nnf(f.right, True)]),
        ])
    if isinstance(f, (ForAll, Exists)):
        body = nnf(f.body, positive)
        universal = isinstance(f, ForAll) == positive
        return forall(f.vars, body) if universal else exists(f.vars, body)
    if isinstance(f, (ForAll2, Exists2)):
        body = nnf(f.body, positive)
        universal = isinstance(f, ForAll2) == positive
        return (ForAll2 if universal else Exists2)(f.preds, body)
    raise TypeError(f"nnf: unexpected node {f!r}")


def _fresh_supply(f: Formula, fresh: FreshNames | None) -> FreshNames:
    if fresh is None:
        fresh = FreshNames()
    fresh.reserve(all_symbols(f))
    return fresh


def skolemize(f: Formula, fresh: FreshNames | None = None, base: str = "sk") -> tuple:
    """Replace existential quantifiers by Skolem terms.

    ``f`` must be in negation normal form.  Each Skolem term takes as
    arguments only the variables free in the existential subformula, so
    the arity never exceeds that of a prenex Skolemization.  Returns the
    Skolemized formula and a map from Skolem symbol to arity.
    """
    fresh = _fresh_supply(f, fresh)
    f = rename_bound_apart(f, set(free_vars(f)))
    skolem: dict = {}
    order = list(sorted(free_vars(f)))

    def walk(g: Formula, scope: list) -> Formula:
        if isinstance(g, (Atom, Eq, Top, Bot, Not)):
            return g
        if isinstance(g, (And, Or)):
            parts = [walk(a, scope) for a in g.args]
            return conj(parts) if isinstance(g, And) else disj(parts)
        if isinstance(g, ForAll):
            return ForAll(g.vars, walk(g.body, scope + list(g.vars)))
        if isinstance(g, Exists):
            deps = free_vars(g)
            args = tuple(Var(v) for v in scope if v in deps)
            sub = {}
            for v in g.vars:
                name = fresh(base)
                skolem[name] = len(args)
                sub[v] = App(name, args)
            return walk(substitute(g.body, sub), scope)
        if isinstance(g, (ForAll2, Exists2)):
            raise ValueError("skolemize: second-order quantifier")
        raise TypeError(f"skolemize: formula not in NNF: {g!r}")

    return walk(f, order), skolem


def strip_universals(f: Formula) -> Formula:
    if isinstance(f, ForAll):
        return strip_universals(f.body)
    if isinstance(f, (And, Or)):
        parts = [strip_universals(a) for a in f.args]
        return conj(parts) if isinstance(f, And) else disj(parts)
    return f


# -- clause distribution --------------------------------------------------------


def _normalize_clause(lits) -> tuple | None:
    """Drop duplicates; None for a tautology."""
    out: list = []
    seen: set = set()
    for l in lits:
        if l in seen:
            continue
        if l.negate() in seen:
            return None
        seen.add(l)
        out.append(l)
    return tuple(out)


def _clause_lists(f: Formula, limit: int) -> list:
    """Clauses of a quantifier-free NNF formula as tuples of literals."""
    if isinstance(f, Top):
        return []
    if isinstance(f, Bot):
        return [()]
    if isinstance(f, (Atom, Eq, Not)):
        c = _normalize_clause([literal_of(f)])
        return [] if c is None else [c]
    if isinstance(f, And):
        out: list = []
        for a in f.args:
            out.extend(_clause_lists(a, limit))
            if len(out) > limit:
                raise ClauseLimitExceeded(f"more than {limit} clauses")
        return out
    if isinstance(f, Or):
        acc: list = [()]
        for a in f.args:
            part = _clause_lists(a, limit)
            if len(acc) * len(part) > limit:
                raise ClauseLimitExceeded(f"more than {limit} clauses")
            nxt = []
            for x, y in product(acc, part):
                c = _normalize_clause(x + y)
                if c is not None:
                    nxt.append(c)
            acc = _dedup(nxt)
            if not acc:
                break
        return acc
    raise TypeError(f"unexpected node in matrix: {f!r}")


def cnf(f: Formula, fresh: FreshNames | None = None, max_clauses: int = DEFAULT_MAX_CLAUSES) -> ClauseSet:
    """Clausal form: NNF, Skolemization, distribution.

    Free variables of ``f`` are read as universally quantified.
    """
    g, skolem = skolemize(nnf(f), fresh)
    lists = _clause_lists(strip_universals(g), max_clauses)
    return ClauseSet(tuple(Clause(c) for c in _dedup(lists)), skolem)


def _dedup(lists) -> list:
    seen: set = set()
    out = []
    for c in lists:
        key = frozenset(c)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def matrix_cnf(f: Formula, max_clauses: int = DEFAULT_MAX_CLAUSES) -> Formula:
    """Equivalent CNF that treats quantified subformulas as atoms."""
    return _normal_form(nnf(f), max_clauses, outer=And)


def dnf(f: Formula, max_clauses: int = DEFAULT_MAX_CLAUSES) -> Formula:
    """Equivalent DNF; quantified subformulas are kept as units."""
    return _normal_form(nnf(f), max_clauses, outer=Or)


def _normal_form(f: Formula, limit: int, outer) -> Formula:
    groups = _groups(f, limit, outer)
    if outer is Or:
        return disj([conj(g) for g in groups])
    return conj([disj(g) for g in groups])


def _groups(f: Formula, limit: int, outer) -> list:
    """List of groups (each a list of units) under the ``outer`` connective."""
    if isinstance(f, Top):
        return [[]] if outer is Or else []
    if isinstance(f, Bot):
        return [] if outer is Or else [[]]
    if isinstance(f, outer):
        out: list = []
        for a in f.args:
            out.extend(_groups(a, limit, outer))
        out = _dedup_groups(out)
        if len(out) > limit:
            raise ClauseLimitExceeded(f"more than {limit} groups")
        return out
    if isinstance(f, (And, Or)):
        acc: list = [[]]
        for a in f.args:
            part = _groups(a, limit, outer)
            if len(acc) * len(part) > limit:
                raise ClauseLimitExceeded(f"more than {limit} groups")
            acc = _dedup_groups([x + y for x, y in product(acc, part)])
        return acc
    return [[f]]


def _dedup_units(units: list) -> list | None:
    """Units without repeats; None if a unit occurs with its negation."""
    out: list = []
    for u in units:
        if u in out:
            continue
        if (u.arg if isinstance(u, Not) else Not(u)) in out:
            return None
        out.append(u)
    return out


def _dedup_groups(groups: list) -> list:
    # a complementary pair makes a conjunct false or a disjunct true,
    # so such a group drops out of the outer connective either way
    seen: set = set()
    out = []
    for g in groups:
        g = _dedup_units(g)
        if g is None:
            continue
        key = frozenset(g)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out
