from __future__ import annotations

import pytest

from foldesk.elimination import (
    AckermannForm, EliminationFailed, EliminationTask, OracleOverflow, ackermann_rewrite,
    eliminate, eliminate_full, forget_ground_atom, so_equivalent_finite,
)
from foldesk.prover import equivalent
from foldesk.syntax import And, App, Atom, Exists2, Var, parse_formula, to_text

from oracles import fo_equivalent, signature, tt_equivalent
from problems import KB1
from suites import (
    BEYOND_ACKERMANN, check_elimination, elimination_suite, forget_suite, _library_text,
)

CIRC_WET_KB1 = (
    "(rained_last_night -> wet(grass)), (sprinkler_was_on -> wet(grass)), "
    "(wet(grass) -> wet(shoes)), "
    "all(x, (wet(x) -> (rained_last_night ; sprinkler_was_on))), "
    "all(x, ((wet(x), wet(grass)) -> (x = grass ; x = shoes)))"
)


def _session():
    from foldesk.docproc import Session, load_document, parse_document
    s = Session()
    load_document(parse_document(_library_text(), "library"), s)
    return s


def test_random_reachable_inputs_sample():
    stats: dict = {}
    n, done, failures = elimination_suite(n=18, seed=41, stats=stats)
    assert failures == []
    assert done >= 18


def test_explanation_example():
    f = _session().expand(parse_formula("explanation(kb1, [wet], wet(shoes))"))
    g = eliminate(f)
    assert tt_equivalent(g, parse_formula("rained_last_night ; sprinkler_was_on"))


def test_circumscription_example():
    f = _session().expand(parse_formula("circ(wet, kb1)"))
    g = eliminate(EliminationTask(f, simp_result="c6"))
    assert equivalent(g, parse_formula(CIRC_WET_KB1))
    assert check_elimination(f, g) == []


def test_ackermann_rewrite():
    # ∃p (∀x (q(x) → p(x)) ∧ ∀x (p(x) → r(x)))  ≡  ∀x (q(x) → r(x))
    form = AckermannForm(
        pred="p", params=("x",), definition=Atom("q", (Var("x"),)),
        rest=parse_formula("all(y, (~p(y) ; r(y)))"), orientation="implied_by",
    )
    g = ackermann_rewrite(form)
    assert fo_equivalent(g, parse_formula("all(x, (q(x) -> r(x)))"))
    with pytest.raises(ValueError):
        ackermann_rewrite(AckermannForm("p", ("x",), Atom("p", (Var("x"),)),
                                        parse_formula("all(y, ~p(y))"), "implied_by"))


def test_universal_predicate_quantifier_is_dualized():
    f = parse_formula("all2(p, (all(x, (p(x) -> q(x))) -> all(x, (p(x) -> r(x)))))")
    g = eliminate(f)
    assert "p" not in signature(g)[0]
    assert so_equivalent_finite(f, g, max_size=3)


def test_failure_is_an_exception_not_a_formula():
    for text in BEYOND_ACKERMANN:
        try:
            g = eliminate(parse_formula(text))
        except EliminationFailed as e:
            assert str(e)
        else:
            assert check_elimination(parse_formula(text), g) == []
    with pytest.raises(EliminationFailed):
        eliminate(parse_formula(BEYOND_ACKERMANN[0]))


def test_step_bound():
    task = EliminationTask(parse_formula("ex2(p, (p(a), ~p(b), (p(c) ; p(d))))"), max_steps=1)
    with pytest.raises(EliminationFailed):
        eliminate_full(task)
    assert eliminate_full(EliminationTask(task.formula)).steps > 1


def test_free_variables_are_kept():
    f = Exists2(("p",), And((Atom("p", (Var("z"),)), parse_formula("all(x, (p(x) -> q(x)))"))))
    g = eliminate(f)
    assert g == Atom("q", (Var("z"),))


def test_forget_ground_atom_suite_sample():
    n, failures = forget_suite(n_prop=40, n_fo=30, seed=51)
    assert failures == []


def test_forget_ground_atom_examples():
    assert tt_equivalent(forget_ground_atom(parse_formula("p, q"), Atom("p", ())), parse_formula("q"))
    f = parse_formula("all(x, (wet(x) -> wet(shoes))), wet(grass)")
    g = forget_ground_atom(f, Atom("wet", (App("grass", ()),)))
    assert "grass" in to_text(g)
    with pytest.raises(ValueError):
        forget_ground_atom(f, Atom("wet", (Var("x"),)))


def test_finite_oracle():
    assert so_equivalent_finite(parse_formula("ex2(p, p(a))"), parse_formula("true"))
    assert not so_equivalent_finite(parse_formula("all2(p, p(a))"), parse_formula("true"))
    big = parse_formula("all(x, all(y, (r(x, y) ; s(x, y) ; t(x, y))))")
    with pytest.raises(OracleOverflow):
        so_equivalent_finite(big, big, max_size=3, budget=10**4)


def test_kb_text_matches_library():
    assert tt_equivalent(_session().expand(parse_formula("kb1")), parse_formula(KB1))
