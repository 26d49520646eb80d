"""Finite model search by grounding flattened clauses and running DPLL."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product

from ..semantics import Model, close_universally, evaluate, free_signature
from ..syntax import App, Atom, Formula, Var
from ..transform import cnf
from .dpll import BudgetExceeded, Sat, dpll


@dataclass(frozen=True)
class ModelBudget:
    max_ground_clauses: int = 200_000
    max_decisions: int | None = 200_000
    time_limit: float | None = 2.0


def _flatten(clause) -> tuple:
    """Flattened literals: ("P", pos, pred, vars) | ("E", pos, v, w) | ("F", f, vars, v).

    An "F" literal stands for the negative literal f(vars) != v.
    """
    out: list = []
    counter = [0]
    names: dict = {}

    def var(name):
        if name not in names:
            names[name] = len(names)
        return names[name]

    def fresh():
        counter[0] += 1
        return var(f"\0{counter[0]}")

    def term(t):
        if isinstance(t, Var):
            return var(t.name)
        args = tuple(term(a) for a in t.args)
        v = fresh()
        out.append(("F", t.name, args, v))
        return v

    for l in clause.literals:
        a = l.atom
        if isinstance(a, Atom):
            out.append(("P", l.positive, a.pred, tuple(term(t) for t in a.args)))
        else:
            out.append(("E", l.positive, term(a.left), term(a.right)))
    return tuple(out), len(names)


class _Grounder:
    def __init__(self, n: int):
        self.n = n
        self.ids: dict = {}

    def atom(self, key) -> int:
        i = self.ids.get(key)
        if i is None:
            i = len(self.ids) + 1
            self.ids[key] = i
        return i


def _ground(flat: list, funcs: dict, n: int, limit: int, deadline: float | None = None):
    g = _Grounder(n)
    out: list = []
    count = 0
    for lits, nvars in flat:
        for vals in product(range(n), repeat=nvars):
            count += 1
            if deadline is not None and count % 4096 == 0 and time.monotonic() > deadline:
                return None, g
            clause = []
            sat = False
            for lit in lits:
                kind = lit[0]
                if kind == "E":
                    if (vals[lit[2]] == vals[lit[3]]) == lit[1]:
                        sat = True
                        break
                elif kind == "P":
                    i = g.atom(("P", lit[2], tuple(vals[v] for v in lit[3])))
                    clause.append(i if lit[1] else -i)
                else:
                    i = g.atom(("F", lit[1], tuple(vals[v] for v in lit[2]), vals[lit[3]]))
                    clause.append(-i)
            if not sat:
                out.append(clause)
                if len(out) > limit:
                    return None, g
    for f, k in sorted(funcs.items()):
        for args in product(range(n), repeat=k):
            ids = [g.atom(("F", f, args, d)) for d in range(n)]
            out.append(ids)
            for a, b in combinations(ids, 2):
                out.append([-a, -b])
    if len(out) > limit:
        return None, g
    return out, g


def _function_symbols(cs) -> dict:
    funcs: dict = {}

    def walk(t):
        if isinstance(t, App):
            funcs[t.name] = len(t.args)
            for a in t.args:
                walk(a)

    for c in cs.clauses:
        for l in c.literals:
            for t in l.args:
                walk(t)
    return funcs


def find_model(f: Formula, max_size: int = 4, budget: ModelBudget = ModelBudget(), min_size: int = 1) -> Model | None:
    """A model of ``f`` (free variables read universally) of size ≤ ``max_size``.

    The returned model is checked by direct evaluation.  ``None`` means no
    model was found within the bounds, which is not a refutation.
    """
    g = close_universally(f)
    cs = cnf(g)
    flat = [_flatten(c) for c in cs.clauses]
    funcs = _function_symbols(cs)
    preds, sig_funcs = free_signature(g)
    deadline = time.monotonic() + budget.time_limit if budget.time_limit else None
    for n in range(min_size, max_size + 1):
        clauses, grounder = _ground(flat, funcs, n, budget.max_ground_clauses, deadline)
        if clauses is None or (deadline is not None and time.monotonic() > deadline):
            return None
        try:
            res = dpll(clauses, budget.max_decisions, deadline)
        except BudgetExceeded:
            return None
        if not isinstance(res, Sat):
            continue
        model = _extract(res.assignment, grounder, n, preds, sig_funcs)
        if evaluate(g, model):
            return model
        raise AssertionError("model finder produced a non-model")  # pragma: no cover
    return None


def _extract(assign: dict, grounder: _Grounder, n: int, preds: dict, funcs: dict) -> Model:
    ptab = {}
    for p, k in preds.items():
        for args in product(range(n), repeat=k):
            i = grounder.ids.get(("P", p, args))
            ptab[(p, args)] = bool(i and assign.get(i, False))
    ftab = {}
    for f, k in funcs.items():
        for args in product(range(n), repeat=k):
            val = 0
            for d in range(n):
                i = grounder.ids.get(("F", f, args, d))
                if i and assign.get(i, False):
                    val = d
                    break
            ftab[(f, args)] = val
    return Model(n, ptab, ftab)
