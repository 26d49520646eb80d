"""Result-shaping pipelines applied to output formulas."""

from __future__ import annotations

from ..macros import FreshNames
from ..syntax import (
    And, Atom, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula, Iff,
    Implies, Not, Or, TOP, Top, conj, disj, exists, forall, free_vars, neg,
)
from .normal import DEFAULT_MAX_CLAUSES, cnf
from .simplify import simplify_clauses
from .unskolem import unskolemize_partial


def shape_c6(f: Formula, fresh: FreshNames | None = None, max_clauses: int = DEFAULT_MAX_CLAUSES) -> Formula:
    """Clausify, simplify with every predicate protected, un-Skolemize."""
    return shape_c6_partial(f, fresh, max_clauses)[0]


def shape_c6_partial(f: Formula, fresh: FreshNames | None = None, max_clauses: int = DEFAULT_MAX_CLAUSES) -> tuple:
    cs = simplify_clauses(cnf(f, fresh, max_clauses), protect=None)
    return unskolemize_partial(cs)


def simplify_formula(f: Formula) -> Formula:
    """Fold truth constants and drop vacuous quantifiers."""
    if isinstance(f, (Atom, Eq, Top, Bot)):
        return f
    if isinstance(f, Not):
        return neg(simplify_formula(f.arg))
    if isinstance(f, And):
        return conj([simplify_formula(a) for a in f.args])
    if isinstance(f, Or):
        return disj([simplify_formula(a) for a in f.args])
    if isinstance(f, Implies):
        a, b = simplify_formula(f.left), simplify_formula(f.right)
        if isinstance(a, Top):
            return b
        if isinstance(a, Bot) or isinstance(b, Top):
            return TOP
        if isinstance(b, Bot):
            return neg(a)
        return Implies(a, b)
    if isinstance(f, Iff):
        a, b = simplify_formula(f.left), simplify_formula(f.right)
        if isinstance(a, Top):
            return b
        if isinstance(b, Top):
            return a
        if isinstance(a, Bot):
            return neg(b)
        if isinstance(b, Bot):
            return neg(a)
        return Iff(a, b)
    if isinstance(f, (ForAll, Exists)):
        body = simplify_formula(f.body)
        fv = free_vars(body)
        vs = [v for v in f.vars if v in fv]
        return forall(vs, body) if isinstance(f, ForAll) else exists(vs, body)
    if isinstance(f, (ForAll2, Exists2)):
        body = simplify_formula(f.body)
        if isinstance(body, (Top, Bot)):
            return body
        return type(f)(f.preds, body)
    return f
