"""Three-valued validity: countermodel search first, then proof search."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..macros import FreshNames
from ..semantics import Model, close_universally
from ..syntax import (
    And, Exists, Exists2, ForAll, ForAll2, Formula, Iff, Implies, Not, Or, Top,
    all_symbols, rename_predicate, subformulas,
)
from ..transform import ClauseLimitExceeded, cnf
from .models import ModelBudget, find_model
from .tableau import ProverLimits, Proved, prove


class UnsupportedSecondOrder(ValueError):
    """Second-order quantifiers in a position that cannot be dropped."""


@dataclass(frozen=True)
class ValidityConfig:
    model_max: int = 4
    limits: ProverLimits = field(default_factory=ProverLimits)
    model_budget: ModelBudget = field(default_factory=ModelBudget)
    search_models: bool = True


@dataclass
class Valid:
    proof: Proved


@dataclass
class NotValid:
    counter_model: Model


@dataclass
class Unknown:
    reason: str


def drop_so_universals(f: Formula, fresh: FreshNames | None = None) -> Formula:
    """Remove second-order quantifiers that are universal for validity.

    A predicate quantifier is removable when it is universal in effect
    (∀2 in positive, ∃2 in negative position) and only connectives and
    first-order universals in effect lie above it.  The bound predicate is
    renamed to a fresh symbol, which preserves validity.
    """
    if fresh is None:
        fresh = FreshNames()
    fresh.reserve(all_symbols(f))

    def walk(g: Formula, pos: bool) -> Formula:
        if isinstance(g, Not):
            return Not(walk(g.arg, not pos))
        if isinstance(g, (And, Or)):
            return type(g)(tuple(walk(a, pos) for a in g.args))
        if isinstance(g, Implies):
            return Implies(walk(g.left, not pos), walk(g.right, pos))
        if isinstance(g, (ForAll, Exists)):
            universal = isinstance(g, ForAll) == pos
            if not universal and _has_so(g.body):
                raise UnsupportedSecondOrder("second-order quantifier below an existential")
            return type(g)(g.vars, walk(g.body, pos))
        if isinstance(g, (ForAll2, Exists2)):
            if isinstance(g, ForAll2) != pos:
                raise UnsupportedSecondOrder("existential predicate quantifier")
            body = g.body
            for p in g.preds:
                body = rename_predicate(body, p, fresh(p))
            return walk(body, pos)
        if isinstance(g, Iff) and (_has_so(g.left) or _has_so(g.right)):
            raise UnsupportedSecondOrder("second-order quantifier below a biconditional")
        return g

    return walk(f, True)


def _has_so(f: Formula) -> bool:
    return any(isinstance(g, (ForAll2, Exists2)) for g in subformulas(f))


def validity(f: Formula, cfg: ValidityConfig = ValidityConfig()):
    """Valid(proof), NotValid(countermodel) or Unknown(reason)."""
    try:
        g = close_universally(drop_so_universals(f))
    except UnsupportedSecondOrder as e:
        return Unknown(str(e))
    negated = Not(g)
    if cfg.search_models:
        model = find_model(negated, cfg.model_max, cfg.model_budget)
        if model is not None:
            return NotValid(model)
    try:
        cs = cnf(negated)
    except ClauseLimitExceeded as e:
        return Unknown(str(e))
    res = prove(cs, cfg.limits)
    if isinstance(res, Proved):
        return Valid(res)
    return Unknown(type(res).__name__)


def entails(f: Formula, g: Formula, cfg: ValidityConfig = ValidityConfig(search_models=False)) -> bool:
    """Prover-confirmed ``f ⊨ g`` (False also when the search gives up).

    A conjunctive goal is split, one proof per conjunct.
    """
    return all(isinstance(validity(Implies(f, h), cfg), Valid) for h in _conjuncts(g))


def _conjuncts(g: Formula) -> list:
    if isinstance(g, And):
        return [h for a in g.args for h in _conjuncts(a)]
    return [] if isinstance(g, Top) else [g]


def equivalent(f: Formula, g: Formula, cfg: ValidityConfig = ValidityConfig(search_models=False)) -> bool:
    return entails(f, g, cfg) and entails(g, f, cfg)
