"""Second-order quantifier elimination.

The main procedure works on clauses: the matrix of ``∃P φ`` is clausified
(first-order existentials become Skolem symbols, which is sound under the
predicate quantifier), simplified, and rewritten with Ackermann's lemma
once the clauses mentioning ``P`` positively (or negatively) form a
definition.  When neither orientation applies, a ground ``P`` atom is
split on, giving a disjunction of simpler problems.  Results are turned
back into quantified formulas by un-Skolemization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .macros import FreshNames
from .semantics import (
    OracleOverflow, StepCounter, compile_formula, count_interpretations, free_signature,
    interpretations,
)
from .syntax import (
    And, App, Atom, BOT, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula,
    Iff, Implies, Not, Or, TOP, Top, Var, all_symbols, conj, disj, exists,
    forall, free_vars, map_atoms, neg, signature_of, substitute,
    term_vars,
)
from .transform import Clause, ClauseSet, Literal, cnf, nnf, shape_c6, simplify_clauses
from .transform.clauses import clause_vars, subst_clause
from .transform.shaping import simplify_formula
from .transform.unskolem import unskolemize_partial

DEFAULT_MAX_STEPS = 200


class EliminationFailed(RuntimeError):
    """The procedure could not bring the input into a solvable shape."""

    def __init__(self, msg: str, stuck: Formula | None = None):
        super().__init__(msg)
        self.stuck = stuck


@dataclass
class EliminationTask:
    formula: Formula
    simp_result: str | None = None  # "c6"
    printing: bool = True
    result_register: str | None = None
    max_steps: int = DEFAULT_MAX_STEPS


@dataclass
class EliminationResult:
    formula: Formula
    steps: int = 0


# -- Ackermann's lemma ------------------------------------------------------------------


@dataclass(frozen=True)
class AckermannForm:
    """``∃P (∀x̄ (A → P(x̄)) ∧ rest)`` or its dual ``∃P (∀x̄ (P(x̄) → A) ∧ rest)``.

    ``orientation`` is ``"implied_by"`` for the first shape (P negative in
    ``rest``) and ``"implies"`` for the dual (P positive in ``rest``).
    """

    pred: str
    params: tuple
    definition: Formula
    rest: Formula
    orientation: str = "implied_by"


def ackermann_rewrite(af: AckermannForm) -> Formula:
    """Replace every ``P(t̄)`` in the rest by the definition instantiated at ``t̄``."""
    sig = signature_of(af.definition)
    if af.pred in sig.predicates:
        raise ValueError(f"{af.pred} occurs in its own definition")
    pol = signature_of(af.rest).polarity(af.pred)
    allowed = {"implied_by": {"neg"}, "implies": {"pos"}}[af.orientation]
    if pol - allowed:
        raise ValueError(f"{af.pred} occurs with polarity {sorted(pol)} in the rest")
    if not pol:
        return af.rest
    params = af.params

    def on_atom(a: Atom) -> Formula:
        if a.pred != af.pred:
            return a
        return substitute(af.definition, {p: t for p, t in zip(params, a.args)})

    return map_atoms(af.rest, on_atom)


# -- clause-level helpers -----------------------------------------------------------------


def _p_lits(c: Clause, p: str) -> list:
    return [l for l in c.literals if isinstance(l.atom, Atom) and l.atom.pred == p]


def _definition_form(clauses: list, p: str, positive: bool, fresh_var) -> tuple | None:
    """Split into definition clauses and rest for one orientation.

    ``positive`` selects the clauses with a positive P literal as the
    definition; they must contain no other P literal, and P must occur
    only with the opposite sign elsewhere.
    """
    defs, rest = [], []
    for c in clauses:
        lits = _p_lits(c, p)
        if not lits:
            rest.append(c)
            continue
        signs = {l.positive for l in lits}
        if positive in signs:
            if len(lits) != 1:
                return None
            defs.append(c)
        else:
            rest.append(c)
    if not defs:
        return None
    arity = len(_p_lits(defs[0], p)[0].atom.args)
    params = tuple(fresh_var() for _ in range(arity))
    disjuncts = []
    for c in defs:
        (pl,) = _p_lits(c, p)
        others = [l for l in c.literals if l is not pl]
        ys = sorted(clause_vars(c))
        eqs = [Eq(Var(x), t) for x, t in zip(params, pl.atom.args)]
        # P(t̄) ∨ C  read as  ¬C → P(t̄)  (or  P(t̄) → C  for the dual)
        side = [neg(l.to_formula()) for l in others] if positive else [l.to_formula() for l in others]
        if positive:
            disjuncts.append(exists(ys, conj(eqs + side)))
        else:
            disjuncts.append(forall(ys, disj([neg(e) for e in eqs] + ([disj(side)] if side else [BOT]))))
    definition = disj(disjuncts) if positive else conj(disjuncts)
    rest_f = conj([forall(sorted(clause_vars(c)), disj([l.to_formula() for l in c.literals])) for c in rest])
    return AckermannForm(p, params, definition, rest_f, "implied_by" if positive else "implies"), rest


def _der(c: Clause) -> Clause:
    """Destructive equality resolution: drop ``x ≠ t`` and instantiate x by t."""
    changed = True
    while changed:
        changed = False
        for l in c.literals:
            if l.positive or not isinstance(l.atom, Eq):
                continue
            a, b = l.atom.left, l.atom.right
            for x, t in ((a, b), (b, a)):
                if isinstance(x, Var) and x.name not in term_vars(t):
                    rest = [m for m in c.literals if m is not l]
                    c = subst_clause(c.with_literals(rest), {x.name: t})
                    changed = True
                    break
            if changed:
                break
    return c


def _drop_trivial_eqs(c: Clause) -> Clause | None:
    """Remove ``t ≠ t`` literals; None when ``t = t`` makes the clause true."""
    out = []
    for l in c.literals:
        if isinstance(l.atom, Eq) and l.atom.left == l.atom.right:
            if l.positive:
                return None
            continue
        out.append(l)
    return c.with_literals(out)


def _tidy(clauses) -> list:
    out = []
    for c in clauses:
        c = _drop_trivial_eqs(_der(c))
        if c is not None:
            out.append(c)
    return out


def _ground_p_atom(clauses: list, p: str):
    """A ground P atom from a clause with more than one P literal, if any."""
    for c in clauses:
        lits = _p_lits(c, p)
        if len(lits) > 1 or (lits and len({l.positive for l in _all_p(clauses, p)}) > 1):
            for l in lits:
                if not any(term_vars(t) for t in l.atom.args):
                    return l.atom
    for c in clauses:
        for l in _p_lits(c, p):
            if not any(term_vars(t) for t in l.atom.args):
                return l.atom
    return None


def _all_p(clauses, p):
    return [l for c in clauses for l in _p_lits(c, p)]


class _Eliminator:
    def __init__(self, fresh: FreshNames, max_steps: int):
        self.fresh = fresh
        self.max_steps = max_steps
        self.steps = 0
        self._v = 0

    def fresh_var(self) -> str:
        self._v += 1
        return f"X{self._v}"

    def tick(self, stuck) -> None:
        self.steps += 1
        if self.steps > self.max_steps:
            raise EliminationFailed(f"no solution within {self.max_steps} steps", stuck)

    def eliminate_pred(self, p: str, cs: ClauseSet) -> list:
        """Clause sets whose disjunction is equivalent to ∃p cs."""
        done: list = []
        todo = [list(cs.clauses)]
        skolem = dict(cs.skolem)
        while todo:
            clauses = todo.pop(0)
            while True:
                self.tick(_clauses_formula(clauses))
                protect = {q for c in clauses for q in (l.pred for l in c.literals)} - {p}
                clauses = list(simplify_clauses(ClauseSet(tuple(_tidy(clauses)), skolem), protect=protect).clauses)
                if not _all_p(clauses, p):
                    done.append(ClauseSet(tuple(clauses), skolem))
                    break
                rewritten = self.ackermann(p, clauses, skolem)
                if rewritten is not None:
                    clauses = rewritten
                    continue
                atom = _ground_p_atom(clauses, p)
                if atom is None:
                    raise EliminationFailed(f"cannot eliminate {p}", _clauses_formula(clauses))
                todo.append(clauses + [Clause((Literal(False, atom),))])
                clauses = clauses + [Clause((Literal(True, atom),))]
        return done

    def ackermann(self, p: str, clauses: list, skolem: dict) -> list | None:
        for positive in (True, False):
            form = _definition_form(clauses, p, positive, self.fresh_var)
            if form is None:
                continue
            af, _ = form
            try:
                result = ackermann_rewrite(af)
            except ValueError:
                continue
            cs = cnf(result, self.fresh)
            skolem.update(cs.skolem)
            return list(cs.clauses)
        return None


def _clauses_formula(clauses) -> Formula:
    return conj([forall(sorted(clause_vars(c)), disj([l.to_formula() for l in c.literals])) for c in clauses])


def _freeze(f: Formula, fresh: FreshNames) -> tuple:
    fv = sorted(free_vars(f))
    sub, back = {}, {}
    for v in fv:
        c = fresh(v)
        sub[v] = App(c, ())
        back[c] = v
    return (substitute(f, sub) if sub else f), back


def _unfreeze(f: Formula, back: dict) -> Formula:
    if not back:
        return f

    def term(t):
        if isinstance(t, Var):
            return t
        if not t.args and t.name in back:
            return Var(back[t.name])
        return App(t.name, tuple(term(a) for a in t.args))

    def walk(g):
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(term(t) for t in g.args))
        if isinstance(g, Eq):
            return Eq(term(g.left), term(g.right))
        if isinstance(g, Not):
            return Not(walk(g.arg))
        if isinstance(g, (And, Or)):
            return type(g)(tuple(walk(a) for a in g.args))
        if isinstance(g, (Implies, Iff)):
            return type(g)(walk(g.left), walk(g.right))
        if isinstance(g, (ForAll, Exists)):
            return type(g)(g.vars, walk(g.body))
        if isinstance(g, (ForAll2, Exists2)):
            return type(g)(g.preds, walk(g.body))
        return g

    return walk(f)


def _eliminate_exists(preds, body: Formula, el: _Eliminator) -> Formula:
    body, back = _freeze(body, el.fresh)
    cs = cnf(body, el.fresh)
    branches = [cs]
    for p in preds:
        nxt = []
        for b in branches:
            nxt.extend(el.eliminate_pred(p, b))
        branches = nxt
    parts = []
    for b in branches:
        f, res = unskolemize_partial(b)
        if res:
            # the result would only be equisatisfiable with the input
            raise EliminationFailed(f"Skolem functions {sorted(res)} cannot be turned back into quantifiers",
                                    _unfreeze(f, back))
        parts.append(f)
    return _unfreeze(disj(parts), back)


def _eliminate(f: Formula, el: _Eliminator) -> Formula:
    if isinstance(f, (Atom, Eq, Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(_eliminate(f.arg, el))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(_eliminate(a, el) for a in f.args))
    if isinstance(f, (Implies, Iff)):
        return type(f)(_eliminate(f.left, el), _eliminate(f.right, el))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.vars, _eliminate(f.body, el))
    if isinstance(f, Exists2):
        body = _eliminate(f.body, el)
        return _eliminate_exists(f.preds, body, el)
    if isinstance(f, ForAll2):
        body = _eliminate(f.body, el)
        return neg(_eliminate_exists(f.preds, Not(body), el))
    raise TypeError(f"cannot eliminate in {f!r}")


def eliminate_full(task, fresh: FreshNames | None = None) -> EliminationResult:
    if not isinstance(task, EliminationTask):
        task = EliminationTask(task)
    if fresh is None:
        fresh = FreshNames()
    fresh.reserve(all_symbols(task.formula))
    el = _Eliminator(fresh, task.max_steps)
    out = simplify_formula(nnf(_eliminate(task.formula, el)))
    if task.simp_result == "c6":
        out = shape_c6(out, fresh)
    elif task.simp_result not in (None, "none"):
        raise ValueError(f"unknown result shaping {task.simp_result!r}")
    return EliminationResult(out, el.steps)


def eliminate(task, fresh: FreshNames | None = None) -> Formula:
    """First-order equivalent of a formula with predicate quantifiers.

    Raises EliminationFailed when no solution is found; never returns a
    formula that is not equivalent to the input.
    """
    return eliminate_full(task, fresh).formula


# -- forgetting a ground atom ------------------------------------------------------------


def forget_ground_atom(f: Formula, atom: Atom) -> Formula:
    """``∃`` over the truth value of one ground atom, by two-way expansion."""
    if any(term_vars(t) for t in atom.args):
        raise ValueError(f"{atom} is not ground")

    def expand(value: bool) -> Formula:
        def on_atom(a: Atom) -> Formula:
            if a.pred != atom.pred or len(a.args) != len(atom.args):
                return a
            if a.args == atom.args:
                return TOP if value else BOT
            same = conj([Eq(s, t) for s, t in zip(a.args, atom.args)])
            differ = conj([neg(same), a])
            return disj([same, differ]) if value else differ

        return map_atoms(f, on_atom)

    return simplify_formula(disj([expand(True), expand(False)]))


# -- finite second-order equivalence oracle -----------------------------------------------


def so_equivalent_finite(F: Formula, G: Formula, max_size: int = 2, budget: int = 10**7) -> bool:
    """Brute-force equivalence over all structures of size 1..max_size.

    Raises OracleOverflow when the number of evaluation steps would
    exceed ``budget``.  The cost of each domain size is projected from its
    first evaluations, so a size that cannot fit is given up early.
    """
    preds, funcs = free_signature(F, G)
    fv = sorted(free_vars(F) | free_vars(G))
    counter = StepCounter(budget)
    fF, fG = compile_formula(F, counter), compile_formula(G, counter)
    for n in range(1, max_size + 1):
        total = count_interpretations(preds, funcs, n) * n ** len(fv)
        if total > budget:
            raise OracleOverflow(f"too many structures of size {n}")
        start = counter.steps
        seen = 0
        for model in interpretations(preds, funcs, n):
            for vals in product(range(n), repeat=len(fv)):
                env = dict(zip(fv, vals))
                if fF(model, env, {}) != fG(model, env, {}):
                    return False
                seen += 1
                if seen == _PROBE and (counter.steps - start) * total // seen > budget - start:
                    raise OracleOverflow(f"size {n} would need more than {budget} evaluation steps")
    return True


_PROBE = 64
