"""Structural operations on formulas: free symbols, substitution, renaming."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import (
    And, App, Atom, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula, Iff,
    Implies, Lambda, ListExpr, MacroCall, Not, Or, Top, Var, term_vars,
)


class SubstitutionError(TypeError):
    pass


class ArityError(ValueError):
    pass


def fresh_name(base: str, used) -> str:
    """``base`` if unused, else ``base`` plus the smallest free numeric suffix."""
    if base not in used:
        return base
    i = 1
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"


# -- free variables -----------------------------------------------------------


def free_vars(f, bound: frozenset = frozenset()) -> set:
    """Free individual variables of a formula, term or list."""
    acc: set = set()
    _free_vars(f, bound, acc)
    return acc


def _free_vars(f, bound, acc):
    if isinstance(f, Var):
        if f.name not in bound:
            acc.add(f.name)
    elif isinstance(f, App):
        for a in f.args:
            _free_vars(a, bound, acc)
    elif isinstance(f, Atom):
        for a in f.args:
            _free_vars(a, bound, acc)
    elif isinstance(f, Eq):
        _free_vars(f.left, bound, acc)
        _free_vars(f.right, bound, acc)
    elif isinstance(f, Not):
        _free_vars(f.arg, bound, acc)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _free_vars(a, bound, acc)
    elif isinstance(f, (Implies, Iff)):
        _free_vars(f.left, bound, acc)
        _free_vars(f.right, bound, acc)
    elif isinstance(f, (ForAll, Exists)):
        _free_vars(f.body, bound | set(f.vars), acc)
    elif isinstance(f, Lambda):
        _free_vars(f.body, bound | set(f.params), acc)
    elif isinstance(f, (ForAll2, Exists2)):
        _free_vars(f.body, bound, acc)
    elif isinstance(f, MacroCall):
        for a in f.args:
            _free_vars(a, bound, acc)
    elif isinstance(f, ListExpr):
        for a in f.items:
            _free_vars(a, bound, acc)


def all_symbols(f) -> set:
    """Every identifier occurring anywhere (predicates, functions, variables)."""
    acc: set = set()
    _all_symbols(f, acc)
    return acc


def _all_symbols(f, acc):
    if isinstance(f, Var):
        acc.add(f.name)
    elif isinstance(f, App):
        acc.add(f.name)
        for a in f.args:
            _all_symbols(a, acc)
    elif isinstance(f, Atom):
        acc.add(f.pred)
        for a in f.args:
            _all_symbols(a, acc)
    elif isinstance(f, Eq):
        _all_symbols(f.left, acc)
        _all_symbols(f.right, acc)
    elif isinstance(f, Not):
        _all_symbols(f.arg, acc)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _all_symbols(a, acc)
    elif isinstance(f, (Implies, Iff)):
        _all_symbols(f.left, acc)
        _all_symbols(f.right, acc)
    elif isinstance(f, (ForAll, Exists)):
        acc.update(f.vars)
        _all_symbols(f.body, acc)
    elif isinstance(f, (ForAll2, Exists2)):
        acc.update(f.preds)
        _all_symbols(f.body, acc)
    elif isinstance(f, Lambda):
        acc.update(f.params)
        _all_symbols(f.body, acc)
    elif isinstance(f, MacroCall):
        acc.add(f.name)
        for a in f.args:
            _all_symbols(a, acc)
    elif isinstance(f, ListExpr):
        for a in f.items:
            _all_symbols(a, acc)


# -- substitution -------------------------------------------------------------


def subst_term(t, sub: dict):
    if isinstance(t, Var):
        return sub.get(t.name, t)
    if not t.args:
        return t
    return App(t.name, tuple(subst_term(a, sub) for a in t.args))


def substitute(f, sub: dict):
    """Capture-avoiding substitution of terms for free individual variables.

    Bound variables are renamed when a substituted term would be captured.
    Values must be terms; predicate-position bindings (lambdas) are the
    business of the macro expander.
    """
    for k, v in sub.items():
        if not isinstance(v, (Var, App)):
            raise SubstitutionError(f"substitution value for {k!r} is not a term: {v!r}")
    if not sub:
        return f
    return _subst(f, dict(sub))


def _range_vars(sub: dict) -> set:
    acc: set = set()
    for v in sub.values():
        term_vars(v, acc)
    return acc


def _subst_binder(names, body, sub, rebuild):
    sub = {k: v for k, v in sub.items() if k not in names}
    if not sub:
        return rebuild(names, body)
    body_free = free_vars(body)
    sub = {k: v for k, v in sub.items() if k in body_free}
    if not sub:
        return rebuild(names, body)
    danger = _range_vars(sub)
    new_names = []
    renaming = {}
    used = danger | body_free | set(sub) | all_symbols(body)
    for n in names:
        if n in danger:
            m = fresh_name(n, used)
            used.add(m)
            renaming[n] = Var(m)
            new_names.append(m)
        else:
            new_names.append(n)
    if renaming:
        body = _subst(body, renaming)
    return rebuild(tuple(new_names), _subst(body, sub))


def _subst(f, sub: dict):
    if isinstance(f, (Var, App)):
        return subst_term(f, sub)
    if isinstance(f, Atom):
        if not f.args:
            return f
        return Atom(f.pred, tuple(subst_term(a, sub) for a in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, sub), subst_term(f.right, sub))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.arg, sub))
    if isinstance(f, And):
        return And(tuple(_subst(a, sub) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_subst(a, sub) for a in f.args))
    if isinstance(f, Implies):
        return Implies(_subst(f.left, sub), _subst(f.right, sub))
    if isinstance(f, Iff):
        return Iff(_subst(f.left, sub), _subst(f.right, sub))
    if isinstance(f, ForAll):
        return _subst_binder(f.vars, f.body, sub, ForAll)
    if isinstance(f, Exists):
        return _subst_binder(f.vars, f.body, sub, Exists)
    if isinstance(f, Lambda):
        return _subst_binder(f.params, f.body, sub, Lambda)
    if isinstance(f, ForAll2):
        return ForAll2(f.preds, _subst(f.body, sub))
    if isinstance(f, Exists2):
        return Exists2(f.preds, _subst(f.body, sub))
    if isinstance(f, MacroCall):
        return MacroCall(f.name, tuple(_subst(a, sub) for a in f.args))
    if isinstance(f, ListExpr):
        return ListExpr(tuple(_subst(a, sub) for a in f.items))
    raise TypeError(f"cannot substitute into {f!r}")


def map_atoms(f: Formula, fn, bound_preds: frozenset = frozenset()) -> Formula:
    """Rebuild ``f`` replacing every free atom ``a`` by ``fn(a)``.

    Atoms whose predicate is bound by a second-order quantifier are left
    alone.  Callers must ensure ``fn`` does not introduce variables that
    get captured (rename bound variables apart first when in doubt).
    """
    if isinstance(f, Atom):
        return f if f.pred in bound_preds else fn(f)
    if isinstance(f, (Eq, Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(map_atoms(f.arg, fn, bound_preds))
    if isinstance(f, And):
        return And(tuple(map_atoms(a, fn, bound_preds) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(map_atoms(a, fn, bound_preds) for a in f.args))
    if isinstance(f, Implies):
        return Implies(map_atoms(f.left, fn, bound_preds), map_atoms(f.right, fn, bound_preds))
    if isinstance(f, Iff):
        return Iff(map_atoms(f.left, fn, bound_preds), map_atoms(f.right, fn, bound_preds))
    if isinstance(f, (ForAll, Exists, Lambda)):
        names = f.params if isinstance(f, Lambda) else f.vars
        return type(f)(names, map_atoms(f.body, fn, bound_preds))
    if isinstance(f, (ForAll2, Exists2)):
        return type(f)(f.preds, map_atoms(f.body, fn, bound_preds | set(f.preds)))
    raise TypeError(f"unexpected node {f!r}")


def rename_predicate(f: Formula, old: str, new: str) -> Formula:
    """Rename free occurrences of predicate ``old``."""
    return map_atoms(f, lambda a: Atom(new, a.args) if a.pred == old else a)


def rename_bound_apart(f: Formula, used: set) -> Formula:
    """Give every first-order bound variable a name not in ``used``.

    ``used`` is updated in place; afterwards no two binders share a name
    and no bound name clashes with a free one.
    """
    if isinstance(f, (Atom, Eq, Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(rename_bound_apart(f.arg, used))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(rename_bound_apart(a, used) for a in f.args))
    if isinstance(f, (Implies, Iff)):
        return type(f)(rename_bound_apart(f.left, used), rename_bound_apart(f.right, used))
    if isinstance(f, (ForAll, Exists)):
        ren = {}
        names = []
        for v in f.vars:
            m = fresh_name(v, used)
            used.add(m)
            names.append(m)
            if m != v:
                ren[v] = Var(m)
        body = _subst(f.body, ren) if ren else f.body
        return type(f)(tuple(names), rename_bound_apart(body, used))
    if isinstance(f, (ForAll2, Exists2)):
        return type(f)(f.preds, rename_bound_apart(f.body, used))
    raise TypeError(f"unexpected node {f!r}")


# -- alpha equivalence --------------------------------------------------------


def alpha_equal(f, g) -> bool:
    """Structural equality up to renaming of bound variables and predicates."""
    return _alpha(f, g, {}, {}, 0)


def _alpha_term(s, t, ls, rs) -> bool:
    if isinstance(s, Var) and isinstance(t, Var):
        a, b = ls.get(s.name), rs.get(t.name)
        if a is None and b is None:
            return s.name == t.name
        return a == b
    if isinstance(s, Var) or isinstance(t, Var):
        # a bound variable never equals a constant; constants are App
        return False
    if s.name != t.name or len(s.args) != len(t.args):
        return False
    return all(_alpha_term(x, y, ls, rs) for x, y in zip(s.args, t.args))


def _alpha(f, g, ls, rs, depth) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, (Top, Bot)):
        return True
    if isinstance(f, Atom):
        pa, pb = ls.get(("p", f.pred)), rs.get(("p", g.pred))
        if pa is None and pb is None:
            if f.pred != g.pred:
                return False
        elif pa != pb:
            return False
        return len(f.args) == len(g.args) and all(
            _alpha_term(x, y, ls, rs) for x, y in zip(f.args, g.args))
    if isinstance(f, Eq):
        return _alpha_term(f.left, g.left, ls, rs) and _alpha_term(f.right, g.right, ls, rs)
    if isinstance(f, Not):
        return _alpha(f.arg, g.arg, ls, rs, depth)
    if isinstance(f, (And, Or)):
        return len(f.args) == len(g.args) and all(
            _alpha(x, y, ls, rs, depth) for x, y in zip(f.args, g.args))
    if isinstance(f, (Implies, Iff)):
        return _alpha(f.left, g.left, ls, rs, depth) and _alpha(f.right, g.right, ls, rs, depth)
    if isinstance(f, (ForAll, Exists, Lambda)):
        na = f.params if isinstance(f, Lambda) else f.vars
        nb = g.params if isinstance(g, Lambda) else g.vars
        if len(na) != len(nb):
            return False
        ls2, rs2 = dict(ls), dict(rs)
        for i, (a, b) in enumerate(zip(na, nb)):
            ls2[a] = (depth, i)
            rs2[b] = (depth, i)
        return _alpha(f.body, g.body, ls2, rs2, depth + 1)
    if isinstance(f, (ForAll2, Exists2)):
        if len(f.preds) != len(g.preds):
            return False
        ls2, rs2 = dict(ls), dict(rs)
        for i, (a, b) in enumerate(zip(f.preds, g.preds)):
            ls2[("p", a)] = (depth, i)
            rs2[("p", b)] = (depth, i)
        return _alpha(f.body, g.body, ls2, rs2, depth + 1)
    return f == g


# -- signature ----------------------------------------------------------------


@dataclass
class SignatureInfo:
    predicates: dict = field(default_factory=dict)  # name -> (arity, frozenset of "pos"/"neg")
    functions: dict = field(default_factory=dict)  # name -> arity >= 1
    constants: set = field(default_factory=set)
    free_individual_vars: set = field(default_factory=set)

    def symbols(self) -> set:
        return set(self.predicates) | set(self.functions) | self.constants | self.free_individual_vars

    def polarity(self, pred: str) -> frozenset:
        return self.predicates.get(pred, (0, frozenset()))[1]


def signature_of(f: Formula) -> SignatureInfo:
    """Vocabulary of ``f`` with NNF polarities of its free predicates."""
    preds: dict = {}
    funcs: dict = {}
    consts: set = set()
    fvars: set = set()

    def term(t, bound):
        if isinstance(t, Var):
            if t.name not in bound:
                fvars.add(t.name)
            return
        if t.args:
            if funcs.setdefault(t.name, len(t.args)) != len(t.args):
                raise ArityError(f"function {t.name} used with arities {funcs[t.name]} and {len(t.args)}")
            for a in t.args:
                term(a, bound)
        else:
            consts.add(t.name)

    def walk(g, pols, bound, bpreds):
        if isinstance(g, Atom):
            for a in g.args:
                term(a, bound)
            if g.pred in bpreds:
                return
            arity, old = preds.get(g.pred, (len(g.args), frozenset()))
            if arity != len(g.args):
                raise ArityError(f"predicate {g.pred} used with arities {arity} and {len(g.args)}")
            preds[g.pred] = (arity, old | pols)
        elif isinstance(g, Eq):
            term(g.left, bound)
            term(g.right, bound)
        elif isinstance(g, (Top, Bot)):
            pass
        elif isinstance(g, Not):
            walk(g.arg, frozenset(_flip(p) for p in pols), bound, bpreds)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a, pols, bound, bpreds)
        elif isinstance(g, Implies):
            walk(g.left, frozenset(_flip(p) for p in pols), bound, bpreds)
            walk(g.right, pols, bound, bpreds)
        elif isinstance(g, Iff):
            both = frozenset({"pos", "neg"})
            walk(g.left, both, bound, bpreds)
            walk(g.right, both, bound, bpreds)
        elif isinstance(g, (ForAll, Exists)):
            walk(g.body, pols, bound | set(g.vars), bpreds)
        elif isinstance(g, (ForAll2, Exists2)):
            walk(g.body, pols, bound, bpreds | set(g.preds))
        else:
            raise TypeError(f"signature_of needs an expanded formula, got {g!r}")

    walk(f, frozenset({"pos"}), frozenset(), frozenset())
    consts -= set(funcs)
    return SignatureInfo(preds, funcs, consts, fvars)


def _flip(p: str) -> str:
    return "neg" if p == "pos" else "pos"


def predicates_of(f: Formula) -> set:
    return set(signature_of(f).predicates)
