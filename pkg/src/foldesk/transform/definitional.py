"""Structure-preserving clausification with polarity-aware definitions."""

from __future__ import annotations

from ..macros import FreshNames
from ..syntax import (
    And, Atom, Bot, Eq, Exists, ForAll, Formula, Iff, Implies, Not, Or, Top,
    Var, all_symbols, conj, forall, free_vars, subformulas,
)
from .clauses import is_literal
from .normal import DEFAULT_MAX_CLAUSES, cnf, nnf


def _is_clause(g: Formula) -> bool:
    if is_literal(g) or isinstance(g, (Top, Bot)):
        return True
    return isinstance(g, Or) and all(is_literal(a) for a in g.args)


def _cnf_shaped(f: Formula) -> bool:
    """Already a conjunction of clauses once negations are pushed in.

    Biconditionals are always named, since expanding them duplicates
    their arguments.
    """
    if any(isinstance(g, Iff) for g in subformulas(f)):
        return False
    g = nnf(f)
    return _is_clause(g) or (isinstance(g, And) and all(_is_clause(a) for a in g.args))


def definitional_cnf(
    f: Formula, fresh: FreshNames | None = None, base: str = "def",
    max_clauses: int = DEFAULT_MAX_CLAUSES,
) -> tuple:
    """Clauses for ``f`` plus the list of introduced predicate names.

    Every compound subformula below the top-level conjunction is named by
    a fresh predicate over its free variables.  Definitions are one-sided
    according to polarity, so ``f`` is equivalent to the result with the
    introduced predicates existentially quantified.
    """
    if fresh is None:
        fresh = FreshNames()
    fresh.reserve(all_symbols(f))
    introduced: list = []
    defs: list = []

    def name(g: Formula, pol: int) -> Formula:
        if is_literal(g) or isinstance(g, (Top, Bot)):
            return g
        fv = sorted(free_vars(g))
        p = fresh(base)
        introduced.append(p)
        head = Atom(p, tuple(Var(v) for v in fv))
        body = shallow(g, pol)
        if pol >= 0:
            defs.append(forall(fv, Implies(head, body)))
        if pol <= 0:
            defs.append(forall(fv, Implies(body, head)))
        return head

    def shallow(g: Formula, pol: int) -> Formula:
        """``g`` with each compound immediate subformula replaced by a name."""
        if isinstance(g, Not):
            return Not(name(g.arg, -pol))
        if isinstance(g, (And, Or)):
            return type(g)(tuple(name(a, pol) for a in g.args))
        if isinstance(g, Implies):
            return Implies(name(g.left, -pol), name(g.right, pol))
        if isinstance(g, Iff):
            return Iff(name(g.left, 0), name(g.right, 0))
        if isinstance(g, (ForAll, Exists)):
            return type(g)(g.vars, name(g.body, pol))
        if is_literal(g) or isinstance(g, (Atom, Eq, Top, Bot)):
            return g
        raise TypeError(f"definitional_cnf: unsupported node {g!r}")

    parts = list(f.args) if isinstance(f, And) else [f]
    top = [g if _cnf_shaped(g) else name(g, 1) for g in parts]
    cs = cnf(conj(top + defs), fresh, max_clauses)
    return cs, introduced
