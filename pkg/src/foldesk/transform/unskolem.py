"""Reconstruct a quantifier prefix from Skolem symbols in a clause set."""

from __future__ import annotations

from ..syntax import App, Atom, Eq, Formula, Var, conj, exists, forall, fresh_name, term_vars
from .clauses import (
    Clause, ClauseSet, canonical_var_names, clause_body, clause_key,
    clause_to_formula, sort_literals, subst_literal, symbols_of_clauses,
    vars_in_order,
)


def _occurrences(t, syms: set, acc: list) -> None:
    if isinstance(t, Var):
        return
    if t.name in syms:
        acc.append(t)
    for a in t.args:
        _occurrences(a, syms, acc)


def _clause_occurrences(c: Clause, syms: set) -> list:
    acc: list = []
    for l in c.literals:
        for t in l.args:
            _occurrences(t, syms, acc)
    return acc


def unskolemize_partial(cs: ClauseSet, skolem: dict | None = None) -> tuple:
    """Un-Skolemize ``cs``; returns the formula and the residual Skolem symbols.

    A Skolem constant becomes an outermost existential.  A Skolem function
    is reversed when each of its occurrences has pairwise distinct variables
    as arguments and, within each clause, the argument tuples of all
    reversed functions are prefixes of one common variable sequence.  Such
    functions are introduced in order of arity as ``∀u1..uk ∃y``.  Other
    Skolem functions stay in the result and are reported as residual.
    """
    skolem = dict(cs.skolem if skolem is None else skolem)
    clauses = list(cs.clauses)
    present = symbols_of_clauses(clauses)
    skolem = {s: a for s, a in skolem.items() if s in present}
    clauses, skolem = _constant_applications(clauses, skolem)
    constants = sorted(s for s, a in skolem.items() if a == 0)
    functions = sorted((s for s, a in skolem.items() if a > 0), key=lambda s: (skolem[s], s))

    # argument tuples per clause
    occ = [_clause_occurrences(c, set(functions)) for c in clauses]
    candidates = []
    residual = set()
    for f in functions:
        ok = True
        for per in occ:
            tuples = {tuple(t.args) for t in per if t.name == f}
            if len(tuples) > 1:
                ok = False
            for args in tuples:
                if not all(isinstance(a, Var) for a in args) or len({a.name for a in args}) != len(args):
                    ok = False
        if ok:
            candidates.append(f)
        else:
            residual.add(f)

    # clause-local variable to prefix position; accept functions greedily
    positions: list = [dict() for _ in clauses]
    accepted: list = []
    for f in candidates:
        trial = [dict(p) for p in positions]
        ok = True
        for ci, per in enumerate(occ):
            for t in per:
                if t.name != f:
                    continue
                for i, a in enumerate(t.args):
                    pos = trial[ci]
                    if pos.get(a.name, i) != i or any(v != a.name and p == i for v, p in pos.items()):
                        ok = False
                    pos[a.name] = i
        if ok:
            positions = trial
            accepted.append(f)
        else:
            residual.add(f)

    avoid = symbols_of_clauses(clauses)
    if not constants and not accepted:
        return _plain(clauses, avoid), residual

    # prefix: constants, then blocks of universals and existentials by arity
    width = max((skolem[f] for f in accepted), default=0)
    names = canonical_var_names(len(constants) + width + len(accepted), avoid)
    it = iter(names)
    const_vars = {c: next(it) for c in constants}
    prefix: list = [("ex", [const_vars[c] for c in constants])] if constants else []
    uni: list = []
    func_vars: dict = {}
    level = 0
    for f in accepted:
        while level < skolem[f]:
            uni.append(next(it))
            level += 1
            prefix.append(("all", [uni[-1]]))
        func_vars[f] = next(it)
        prefix.append(("ex", [func_vars[f]]))
    reserved = set(names) | avoid

    def replace(t, sub):
        if isinstance(t, Var):
            return sub.get(t.name, t)
        if t.name in const_vars:
            return Var(const_vars[t.name])
        if t.name in func_vars:
            return Var(func_vars[t.name])
        return App(t.name, tuple(replace(a, sub) for a in t.args))

    plain, skolemized = [], []
    skset = set(constants) | set(accepted)
    for ci, c in enumerate(clauses):
        if not (symbols_of_clauses([c]) & skset):
            plain.append(c)
            continue
        sub = {v: Var(uni[p]) for v, p in positions[ci].items()}
        for k, v in enumerate(vars_in_order(c.literals)):
            sub.setdefault(v, Var(f"__local{k}"))
        lits = []
        for l in c.literals:
            atom = l.atom
            args = tuple(replace(t, sub) for t in l.args)
            lits.append(type(l)(l.positive, _rebuild(atom, args)))
        skolemized.append(lits)

    inner = []
    for lits in sorted(skolemized, key=clause_key):
        local = [v for v in vars_in_order(sort_literals(lits)) if v.startswith("__local")]
        fresh_names = canonical_var_names(len(local), reserved)
        sub = {v: Var(n) for v, n in zip(local, fresh_names)}
        lits = [subst_literal(l, sub) for l in lits]
        inner.append(forall(fresh_names, clause_body(lits)))
    body = conj(inner)
    for kind, vs in reversed(_merge(prefix)):
        body = exists(vs, body) if kind == "ex" else forall(vs, body)
    out = conj([_plain(plain, avoid), body]) if plain else body
    return out, residual


def _constant_applications(clauses: list, skolem: dict) -> tuple:
    """Replace a Skolem function used only at one ground argument tuple by a
    Skolem constant: ``∃f φ[f(t)]`` and ``∃y φ[y]`` are equivalent."""
    used = symbols_of_clauses(clauses)
    for f in sorted(s for s, a in skolem.items() if a > 0):
        occ: list = []
        for c in clauses:
            occ.extend(_clause_occurrences(c, {f}))
        terms = set(occ)
        if len(terms) != 1:
            continue
        (t,) = terms
        if term_vars(t):
            continue
        c_name = fresh_name(f, used)
        used.add(c_name)
        const = App(c_name, ())
        clauses = [c.with_literals(tuple(_replace_in_literal(l, t, const) for l in c.literals))
                   for c in clauses]
        skolem = {**{k: v for k, v in skolem.items() if k != f}, c_name: 0}
    return clauses, skolem


def _replace_term(u, old, new):
    if u == old:
        return new
    if isinstance(u, Var) or not u.args:
        return u
    return App(u.name, tuple(_replace_term(a, old, new) for a in u.args))


def _replace_in_literal(l, old, new):
    return type(l)(l.positive, _rebuild(l.atom, tuple(_replace_term(a, old, new) for a in l.args)))


def _rebuild(atom, args):
    if isinstance(atom, Atom):
        return Atom(atom.pred, args)
    return Eq(args[0], args[1])


def _merge(prefix: list) -> list:
    out: list = []
    for kind, vs in prefix:
        if out and out[-1][0] == kind:
            out[-1] = (kind, out[-1][1] + vs)
        else:
            out.append((kind, list(vs)))
    return out


def _plain(clauses, avoid) -> Formula:
    ordered = sorted(clauses, key=clause_key)
    return conj([clause_to_formula(c, avoid) for c in ordered])


def unskolemize(cs: ClauseSet, skolem: dict | None = None) -> Formula:
    return unskolemize_partial(cs, skolem)[0]
