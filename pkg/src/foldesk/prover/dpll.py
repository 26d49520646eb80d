"""DPLL satisfiability over integer literals (DIMACS convention)."""

from __future__ import annotations

import time
from dataclasses import dataclass


@dataclass
class Sat:
    assignment: dict  # atom -> bool


@dataclass
class Unsat:
    pass


class BudgetExceeded(RuntimeError):
    pass


def _simplify(clauses: list, lit: int) -> list | None:
    """Assign ``lit`` true; None if an empty clause arises."""
    out = []
    neg = -lit
    for c in clauses:
        if lit in c:
            continue
        if neg in c:
            c = tuple(x for x in c if x != neg)
            if not c:
                return None
        out.append(c)
    return out


def dpll(clauses, budget: int | None = None, deadline: float | None = None) -> Sat | Unsat:
    """Decide satisfiability with unit propagation and pure-literal elimination.

    ``budget`` bounds the number of branching decisions and ``deadline``
    (a ``time.monotonic`` value) the running time; exceeding either raises
    BudgetExceeded.
    """
    cs = []
    for c in clauses:
        s = frozenset(c)
        if any(-x in s for x in s):
            continue
        cs.append(tuple(sorted(s, key=abs)))
    atoms = {abs(x) for c in cs for x in c}
    state = {"decisions": 0, "deadline": deadline}
    result = _solve(cs, {}, budget, state)
    if result is None:
        return Unsat()
    for a in atoms:
        result.setdefault(a, False)
    return Sat(result)


def _solve(clauses: list, assign: dict, budget, state) -> dict | None:
    assign = dict(assign)
    while True:
        if not clauses:
            return assign
        if any(not c for c in clauses):
            return None
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is not None:
            assign[abs(unit)] = unit > 0
            clauses = _simplify(clauses, unit)
            if clauses is None:
                return None
            continue
        lits = {x for c in clauses for x in c}
        pure = [x for x in lits if -x not in lits]
        if pure:
            for x in pure:
                assign[abs(x)] = x > 0
            ps = set(pure)
            clauses = [c for c in clauses if not any(x in ps for x in c)]
            continue
        break
    state["decisions"] += 1
    if budget is not None and state["decisions"] > budget:
        raise BudgetExceeded(f"more than {budget} decisions")
    if state["deadline"] is not None and time.monotonic() > state["deadline"]:
        raise BudgetExceeded("time limit reached")
    counts: dict = {}
    shortest = min(len(c) for c in clauses)
    for c in clauses:
        w = 4 if len(c) == shortest else 1
        for x in c:
            counts[x] = counts.get(x, 0) + w
    lit = max(counts, key=lambda x: (counts[x] + counts.get(-x, 0), counts[x], -abs(x)))
    for choice in (lit, -lit):
        nxt = _simplify(clauses, choice)
        if nxt is None:
            continue
        a = dict(assign)
        a[abs(choice)] = choice > 0
        res = _solve(nxt, a, budget, state)
        if res is not None:
            return res
    return None


def satisfies(clauses, assignment: dict) -> bool:
    return all(any(assignment.get(abs(x), False) == (x > 0) for x in c) for c in clauses)
