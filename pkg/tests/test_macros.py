from __future__ import annotations

import pytest

from foldesk.macros import (
    Builtin, ExpansionDepthExceeded, FreshNames, MacroDef, MacroError, MacroRegistry,
    NoMatchingClause, UnknownMacro, WhereBinding, builtin_eval, expand,
)
from foldesk.syntax import (
    Exists2, MacroCall, alpha_equal, all_symbols, parse_expr, parse_formula, to_text,
)

from problems import KB1


def library() -> MacroRegistry:
    reg = MacroRegistry()
    reg = reg.define(MacroDef("kb1", (), parse_formula(KB1)))
    reg = reg.define(MacroDef("explanation", tuple(map(parse_expr, ["Kb", "Na", "Ob"])),
                              parse_formula("all2(Na, (Kb -> Ob))")))
    reg = reg.define(MacroDef(
        "circ", (parse_expr("P"), parse_expr("F")), parse_formula("F, ~ex2(P_p, (F_p, T1, ~T2))"),
        (WhereBinding(("F_p", "P_p"), Builtin("rename_free_predicate", (parse_expr("F"), parse_expr("P")))),
         WhereBinding(("A",), Builtin("arity", (parse_expr("P"), parse_expr("F")))),
         WhereBinding(("T1",), Builtin("implications", (parse_expr("[P_p]"), parse_expr("[P]"), parse_expr("A")))),
         WhereBinding(("T2",), Builtin("implications", (parse_expr("[P]"), parse_expr("[P_p]"), parse_expr("A")))))))
    reg = reg.define(MacroDef("col2", (parse_expr("E"),), parse_formula(
        "ex2([r,g], (all(x, (r(x) ; g(x))), all([x,y], (E(x,y) -> (~((r(x), r(y))), ~((g(x), g(y))))))))")))
    return reg


def test_label_macro_expands_to_definiens():
    assert expand(library(), parse_formula("kb1")) == parse_formula(KB1)


def test_circ_expansion_matches_expected_shape():
    e = expand(library(), parse_formula("circ(p, p(a))"))
    expected = parse_formula("p(a), ~ex2(q, (q(a), all(x, (q(x) -> p(x))), ~all(x, (p(x) -> q(x)))))")
    assert alpha_equal(e, expected)


def test_explanation_binds_predicate_list():
    e = expand(library(), parse_formula("explanation(kb1, [wet], wet(shoes))"))
    assert e.preds == ("wet",)
    assert e.body.left == parse_formula(KB1)


def test_lambda_argument_is_beta_reduced():
    e = expand(library(), parse_formula("col2(lambda([u,v], ((u=1, v=2) ; (u=2, v=3))))"))
    text = to_text(e)
    assert "x=1" in text and "y=3" in text and "lambda" not in text


def test_predicate_argument():
    e = expand(library(), parse_formula("col2(e)"))
    assert isinstance(e, Exists2) and "e" in all_symbols(e)


def test_fresh_names_do_not_collide():
    fresh = FreshNames()
    e1 = expand(library(), parse_formula("circ(p, (p(a), q(b)))"), fresh)
    e2 = expand(library(), parse_formula("circ(p, p(a))"), fresh)
    (b1,) = e1.args[1].arg.preds
    (b2,) = e2.args[1].arg.preds
    assert b1 != b2 and b1 != "q"
    assert fresh.counter == 2


def test_unknown_macro_and_unmatched_clause():
    with pytest.raises(UnknownMacro):
        expand(MacroRegistry(), MacroCall("nope", (parse_formula("p"),)))
    reg = MacroRegistry().define(MacroDef("two", (parse_expr("a"),), parse_formula("p")))
    with pytest.raises(NoMatchingClause):
        expand(reg, parse_formula("two(b)"))


def test_structural_recursion_and_depth_guard():
    reg = MacroRegistry()
    reg = reg.define(MacroDef("chain", (parse_expr("[]"),), parse_formula("true")))
    reg = reg.define(MacroDef("chain", (parse_expr("[X]"),), parse_formula("X")))
    assert expand(reg, parse_formula("chain([p])")) == parse_formula("p")
    loop = MacroRegistry().define(MacroDef("loop", (), parse_formula("loop, p")))
    with pytest.raises(ExpansionDepthExceeded):
        expand(loop, parse_formula("loop"), max_depth=50)


def test_where_binding_order_is_checked():
    bad = MacroDef("bad", (parse_expr("P"),), parse_formula("T"),
                   (WhereBinding(("T",), Builtin("implications", (parse_expr("[P]"), parse_expr("[Q]")))),))
    with pytest.raises(MacroError):
        MacroRegistry().define(bad)


def test_builtins_directly():
    f = parse_formula("r(a, b), s")
    assert builtin_eval(Builtin("arity", (parse_expr("r"), parse_expr("F"))), {"F": f}) == 2
    renamed, new = builtin_eval(Builtin("rename_free_predicate", (parse_expr("F"), parse_expr("r"))), {"F": f})
    assert "r" not in all_symbols(renamed) and new.name in all_symbols(renamed)
