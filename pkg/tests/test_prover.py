from __future__ import annotations

import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foldesk.prover import (
    BudgetExceeded, NotValid, ProverLimits, Proved, Sat, Unknown, Unsat, Valid,
    ValidityConfig, check_tableau, dpll, entails, equivalent, find_model, prove,
    satisfies, validity,
)
from foldesk.syntax import Not, parse_formula
from foldesk.transform import cnf

from oracles import clauses_satisfiable, structure_from_model
from problems import KB1, VALID_PROBLEMS
from suites import prover_soundness_suite

clause_lists = st.lists(
    st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v])), max_size=4),
    max_size=14,
)


@settings(max_examples=400, deadline=None)
@given(clause_lists)
def test_dpll_agrees_with_brute_force(clauses):
    res = dpll(clauses)
    assert isinstance(res, Sat) == clauses_satisfiable(clauses)
    if isinstance(res, Sat):
        assert satisfies(clauses, res.assignment)


def test_dpll_budget():
    # pigeonhole 5 into 4 needs many decisions
    holes, pigeons = 4, 5
    v = lambda p, h: p * holes + h + 1  # noqa: E731
    cls = [[v(p, h) for h in range(holes)] for p in range(pigeons)]
    cls += [[-v(p, h), -v(q, h)] for h in range(holes) for p in range(pigeons) for q in range(p)]
    with pytest.raises(BudgetExceeded):
        dpll(cls, budget=3)
    assert isinstance(dpll(cls), Unsat)


@pytest.mark.parametrize("name", sorted(VALID_PROBLEMS))
def test_curated_problem_is_proved(name):
    cfg = ValidityConfig(search_models=False, limits=ProverLimits(max_depth=12, time_limit=10.0))
    res = validity(parse_formula(VALID_PROBLEMS[name]), cfg)
    assert isinstance(res, Valid)
    assert res.proof.depth_used <= 12
    assert check_tableau(res.proof.root, res.proof.clauses)


def test_soundness_cross_check_sample():
    n, failures = prover_soundness_suite(n_prop=80, n_fo=60, seed=21)
    assert failures == []


def test_knowledge_base_countermodel_is_verified():
    f = parse_formula(f"({KB1}) -> wet(shoes)")
    res = validity(f)
    assert isinstance(res, NotValid)
    m = structure_from_model(res.counter_model)
    assert not m.holds(f)
    assert "domain size" in res.counter_model.describe()


def test_find_model_returns_none_for_unsatisfiable():
    assert find_model(parse_formula("p(a), ~ex(x, p(x))")) is None
    m = find_model(parse_formula("all(x, ex(y, r(x, y))), ~r(a, a)"))
    assert m is not None and m.domain_size == 2


def test_check_tableau_rejects_tampering():
    cs = cnf(Not(parse_formula("(p, (p -> q)) -> q")))
    res = prove(cs)
    assert isinstance(res, Proved)
    assert check_tableau(res.root, res.clauses)
    bad = copy.deepcopy(res.root)
    leaf = next(bad.leaves())
    leaf.literal = leaf.literal.negate()
    explain: list = []
    assert not check_tableau(bad, res.clauses, explain) and explain


def test_equality_reasoning():
    assert isinstance(validity(parse_formula("(a = b, p(a)) -> p(b)")), Valid)
    assert isinstance(validity(parse_formula("p(a) -> p(b)")), NotValid)


def test_entails_and_equivalent():
    f = parse_formula("all(x, (p(x), q(x)))")
    g = parse_formula("all(x, p(x)), all(y, q(y))")
    assert equivalent(f, g)
    assert entails(f, parse_formula("p(a)"))
    assert not entails(parse_formula("p(a)"), f)


def test_second_order_universals_are_dropped_but_existentials_are_not():
    assert isinstance(validity(parse_formula("all2(p, (p(a) -> p(a)))")), Valid)
    assert isinstance(validity(parse_formula("ex2(p, p(a))")), Unknown)


def test_depth_bound_gives_unknown():
    cfg = ValidityConfig(search_models=False, limits=ProverLimits(max_depth=1))
    res = validity(parse_formula(VALID_PROBLEMS["mono_function"]), cfg)
    assert isinstance(res, Unknown)
