"""Clausal simplification to a fixpoint.

The rule set: duplicate-literal removal, tautology deletion,
θ-subsumption, subsumption resolution (which includes unit-subsumption
resolution) and purity deletion for unprotected predicates.
"""

from __future__ import annotations

from ..syntax import Atom, Var
from .clauses import Clause, ClauseSet, Literal, clause_vars


def match_term(p, t, sub: dict) -> dict | None:
    """One-way matching: extend ``sub`` so that ``p`` instantiates to ``t``."""
    if isinstance(p, Var):
        bound = sub.get(p.name)
        if bound is None:
            out = dict(sub)
            out[p.name] = t
            return out
        return sub if bound == t else None
    if isinstance(t, Var) or p.name != t.name or len(p.args) != len(t.args):
        return None
    for a, b in zip(p.args, t.args):
        sub = match_term(a, b, sub)
        if sub is None:
            return None
    return sub


def match_literal(l: Literal, m: Literal, sub: dict) -> dict | None:
    if l.positive != m.positive or l.pred != m.pred:
        return None
    la, ma = l.args, m.args
    if len(la) != len(ma):
        return None
    for a, b in zip(la, ma):
        sub = match_term(a, b, sub)
        if sub is None:
            return None
    return sub


def subsumes(c, d) -> bool:
    """True if some instance of clause ``c`` is a subset of clause ``d``.

    Variables of ``d`` are treated as constants.
    """
    cl = list(c.literals if isinstance(c, Clause) else c)
    dl = list(d.literals if isinstance(d, Clause) else d)
    if len(cl) > len(dl):
        return False
    # most constrained literals first
    cl.sort(key=lambda l: -len(str(l)))

    def go(i: int, sub: dict) -> bool:
        if i == len(cl):
            return True
        for m in dl:
            s = match_literal(cl[i], m, sub)
            if s is not None and go(i + 1, s):
                return True
        return False

    return go(0, {})


def normalize(c: Clause) -> Clause | None:
    out: list = []
    seen: set = set()
    for l in c.literals:
        if l in seen:
            continue
        if l.negate() in seen:
            return None
        seen.add(l)
        out.append(l)
    return c.with_literals(out)


def _protected_names(protect) -> set | None:
    if protect is None:
        return None
    names = set()
    for p in protect:
        names.add(p[0] if isinstance(p, tuple) else p)
    return names


def pure_predicates(clauses, protect=None) -> set:
    """Unprotected predicates that occur in one polarity only."""
    prot = _protected_names(protect)
    pol: dict = {}
    for c in clauses:
        for l in c.literals:
            if isinstance(l.atom, Atom):
                pol.setdefault(l.pred, set()).add(l.positive)
    return {p for p, s in pol.items() if len(s) == 1 and (prot is None or p not in prot)}


def simplify_clauses(cs: ClauseSet, protect=(), purity: bool = True) -> ClauseSet:
    """Simplify ``cs`` to a fixpoint.

    ``protect`` names the predicates (or (name, arity) pairs) whose
    semantics must be kept; purity deletion only removes clauses on other
    predicates.  Pass ``protect=None`` to protect every predicate.
    """
    clauses = [c for c in (normalize(c) for c in cs.clauses) if c is not None]
    changed = True
    while changed:
        changed = False
        clauses = _remove_subsumed(clauses)
        if any(not c.literals for c in clauses):
            clauses = [next(c for c in clauses if not c.literals)]
            break
        clauses, ch = _subsumption_resolution(clauses)
        changed |= ch
        if purity and protect is not None:
            pure = pure_predicates(clauses, protect)
            if pure:
                kept = [c for c in clauses if not any(l.pred in pure for l in c.literals)]
                if len(kept) != len(clauses):
                    clauses = kept
                    changed = True
    used = {s for s in cs.skolem if _occurs(s, clauses)}
    return ClauseSet(tuple(clauses), {s: cs.skolem[s] for s in used})


def _occurs(sym: str, clauses) -> bool:
    def walk(t):
        if isinstance(t, Var):
            return False
        return t.name == sym or any(walk(a) for a in t.args)

    return any(walk(t) for c in clauses for l in c.literals for t in l.args)


def _remove_subsumed(clauses: list) -> list:
    order = sorted(range(len(clauses)), key=lambda i: (len(clauses[i]), len(clause_vars(clauses[i]))))
    kept: list = []
    for i in order:
        if any(subsumes(clauses[k], clauses[i]) for k in kept):
            continue
        kept.append(i)
    return [clauses[i] for i in sorted(kept)]


def _subsumption_resolution(clauses: list) -> tuple:
    """Delete a literal M from D when some C subsumes (D - M) + ~M."""
    changed = False
    out = list(clauses)
    for j in range(len(out)):
        d = out[j]
        k = 0
        while k < len(d.literals):
            m = d.literals[k]
            rest = d.literals[:k] + d.literals[k + 1:]
            probe = rest + (m.negate(),)
            hit = False
            for i, c in enumerate(out):
                if i != j and len(c) <= len(probe) and subsumes(c, probe):
                    hit = True
                    break
            if hit:
                d = d.with_literals(rest)
                out[j] = d
                changed = True
                k = 0
            else:
                k += 1
    return out, changed
