"""Evaluation of formulas in finite structures, including second-order quantifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .syntax import (
    And, Atom, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula, Iff,
    Implies, Not, Or, Top, Var, free_vars, signature_of,
)


class OracleOverflow(RuntimeError):
    """The enumeration budget was exhausted before an answer was reached."""


@dataclass
class Model:
    domain_size: int
    predicates: dict = field(default_factory=dict)  # (name, args) -> bool
    functions: dict = field(default_factory=dict)  # (name, args) -> element

    def holds(self, name: str, args: tuple) -> bool:
        return self.predicates.get((name, args), False)

    def apply(self, name: str, args: tuple) -> int:
        return self.functions[(name, args)]

    def describe(self) -> str:
        """Readable listing: true atoms and function values."""
        parts = []
        for (name, args), v in sorted(self.predicates.items()):
            if v:
                parts.append(name + (f"({','.join(map(str, args))})" if args else ""))
        for (name, args), v in sorted(self.functions.items()):
            parts.append((name + (f"({','.join(map(str, args))})" if args else "")) + f"={v}")
        return f"domain size {self.domain_size}: " + (", ".join(parts) if parts else "all atoms false")


class Evaluator:
    def __init__(self, model: Model, budget: int | None = None):
        self.model = model
        self.budget = budget
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.budget is not None and self.steps > self.budget:
            raise OracleOverflow(f"evaluation budget {self.budget} exceeded")

    def term(self, t, env: dict) -> int:
        if isinstance(t, Var):
            return env[t.name]
        args = tuple(self.term(a, env) for a in t.args)
        return self.model.apply(t.name, args)

    def eval(self, f: Formula, env: dict, rels: dict) -> bool:
        self.tick()
        if isinstance(f, Atom):
            args = tuple(self.term(a, env) for a in f.args)
            if f.pred in rels:
                return args in rels[f.pred]
            return self.model.holds(f.pred, args)
        if isinstance(f, Eq):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Not):
            return not self.eval(f.arg, env, rels)
        if isinstance(f, And):
            return all(self.eval(a, env, rels) for a in f.args)
        if isinstance(f, Or):
            return any(self.eval(a, env, rels) for a in f.args)
        if isinstance(f, Implies):
            return (not self.eval(f.left, env, rels)) or self.eval(f.right, env, rels)
        if isinstance(f, Iff):
            return self.eval(f.left, env, rels) == self.eval(f.right, env, rels)
        if isinstance(f, (ForAll, Exists)):
            want = isinstance(f, Exists)
            n = self.model.domain_size
            for vals in product(range(n), repeat=len(f.vars)):
                inner = dict(env)
                inner.update(zip(f.vars, vals))
                if self.eval(f.body, inner, rels) == want:
                    return want
            return not want
        if isinstance(f, (ForAll2, Exists2)):
            want = isinstance(f, Exists2)
            arities = so_arities(f)
            names = list(f.preds)
            spaces = [list(product(range(self.model.domain_size), repeat=arities[p])) for p in names]
            for choice in product(*[range(2 ** len(s)) for s in spaces]):
                inner = dict(rels)
                for p, space, bits in zip(names, spaces, choice):
                    inner[p] = {t for i, t in enumerate(space) if bits >> i & 1}
                if self.eval(f.body, env, inner) == want:
                    return want
            return not want
        raise TypeError(f"cannot evaluate {f!r}")


class StepCounter:
    def __init__(self, budget: int | None = None):
        self.steps = 0
        self.budget = budget


def compile_formula(f: Formula, counter: StepCounter):
    """Closure ``(model, env, rels) -> bool`` equivalent to Evaluator.eval.

    Steps are counted per node exactly as Evaluator counts them, so budgets
    mean the same for both; the closure just avoids re-dispatching on the
    syntax tree for every structure.
    """

    def tick():
        counter.steps += 1
        if counter.budget is not None and counter.steps > counter.budget:
            raise OracleOverflow(f"evaluation budget {counter.budget} exceeded")

    def term(t):
        if isinstance(t, Var):
            name = t.name
            return lambda m, env: env[name]
        key, subs = t.name, [term(a) for a in t.args]
        if not subs:
            return lambda m, env: m.functions[(key, ())]
        return lambda m, env: m.functions[(key, tuple(s(m, env) for s in subs))]

    def comp(g):
        if isinstance(g, Atom):
            pred, ts = g.pred, [term(a) for a in g.args]

            def atom(m, env, rels):
                tick()
                args = tuple(t(m, env) for t in ts)
                r = rels.get(pred)
                if r is not None:
                    return args in r
                return m.predicates.get((pred, args), False)
            return atom
        if isinstance(g, Eq):
            lt, rt = term(g.left), term(g.right)

            def eq(m, env, rels):
                tick()
                return lt(m, env) == rt(m, env)
            return eq
        if isinstance(g, (Top, Bot)):
            val = isinstance(g, Top)

            def const(m, env, rels):
                tick()
                return val
            return const
        if isinstance(g, Not):
            a = comp(g.arg)

            def not_(m, env, rels):
                tick()
                return not a(m, env, rels)
            return not_
        if isinstance(g, (And, Or)):
            parts = [comp(a) for a in g.args]
            test = all if isinstance(g, And) else any

            def junction(m, env, rels):
                tick()
                return test(p(m, env, rels) for p in parts)
            return junction
        if isinstance(g, (Implies, Iff)):
            a, b = comp(g.left), comp(g.right)
            if isinstance(g, Implies):
                def implies(m, env, rels):
                    tick()
                    return (not a(m, env, rels)) or b(m, env, rels)
                return implies

            def iff(m, env, rels):
                tick()
                return a(m, env, rels) == b(m, env, rels)
            return iff
        if isinstance(g, (ForAll, Exists)):
            want = isinstance(g, Exists)
            names, body = g.vars, comp(g.body)

            def quant(m, env, rels):
                tick()
                for vals in product(range(m.domain_size), repeat=len(names)):
                    inner = dict(env)
                    inner.update(zip(names, vals))
                    if body(m, inner, rels) == want:
                        return want
                return not want
            return quant
        if isinstance(g, (ForAll2, Exists2)):
            want = isinstance(g, Exists2)
            arities = so_arities(g)
            names, body = list(g.preds), comp(g.body)

            def quant2(m, env, rels):
                tick()
                spaces = [list(product(range(m.domain_size), repeat=arities[p])) for p in names]
                for choice in product(*[range(2 ** len(sp)) for sp in spaces]):
                    inner = dict(rels)
                    for p, sp, bits in zip(names, spaces, choice):
                        inner[p] = {t for i, t in enumerate(sp) if bits >> i & 1}
                    if body(m, env, inner) == want:
                        return want
                return not want
            return quant2
        raise TypeError(f"cannot evaluate {g!r}")

    return comp(f)


def so_arities(f) -> dict:
    """Arities of the predicates bound by a second-order quantifier node."""
    out = {p: 0 for p in f.preds}
    bound = set(f.preds)

    def walk(g, shadow):
        if isinstance(g, Atom):
            if g.pred in bound and g.pred not in shadow:
                out[g.pred] = len(g.args)
            return
        if isinstance(g, (ForAll2, Exists2)):
            walk(g.body, shadow | set(g.preds))
            return
        for c in _children(g):
            walk(c, shadow)

    walk(f.body, frozenset())
    return out


def _children(g):
    if isinstance(g, Not):
        return (g.arg,)
    if isinstance(g, (And, Or)):
        return g.args
    if isinstance(g, (Implies, Iff)):
        return (g.left, g.right)
    if isinstance(g, (ForAll, Exists, ForAll2, Exists2)):
        return (g.body,)
    return ()


def evaluate(f: Formula, model: Model, env: dict | None = None, budget: int | None = None) -> bool:
    return Evaluator(model, budget).eval(f, dict(env or {}), {})


def interpretations(preds: dict, funcs: dict, n: int):
    """All structures of size ``n`` for the given predicate and function arities."""
    pred_spaces = [(p, list(product(range(n), repeat=a))) for p, a in sorted(preds.items())]
    func_spaces = [(g, list(product(range(n), repeat=a))) for g, a in sorted(funcs.items())]
    pred_choices = [range(2 ** len(s)) for _, s in pred_spaces]
    func_choices = [product(range(n), repeat=len(s)) for _, s in func_spaces]
    func_lists = [list(c) for c in func_choices]
    for pbits in product(*pred_choices):
        preds_tab = {}
        for (p, space), bits in zip(pred_spaces, pbits):
            for i, t in enumerate(space):
                preds_tab[(p, t)] = bool(bits >> i & 1)
        for fvals in product(*func_lists):
            funcs_tab = {}
            for (g, space), vals in zip(func_spaces, fvals):
                for t, v in zip(space, vals):
                    funcs_tab[(g, t)] = v
            yield Model(n, preds_tab, funcs_tab)


def count_interpretations(preds: dict, funcs: dict, n: int) -> int:
    total = 1
    for a in preds.values():
        total *= 2 ** (n ** a)
    for a in funcs.values():
        total *= n ** (n ** a)
    return total


def free_signature(*fs) -> tuple:
    """Predicate and function arities of the free symbols of the formulas."""
    preds: dict = {}
    funcs: dict = {}
    for f in fs:
        sig = signature_of(f)
        for p, (a, _) in sig.predicates.items():
            preds[p] = a
        funcs.update(sig.functions)
        for c in sig.constants:
            funcs[c] = 0
    return preds, funcs


def close_universally(f: Formula) -> Formula:
    from .syntax import forall
    return forall(sorted(free_vars(f)), f)
