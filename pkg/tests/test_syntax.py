from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foldesk.syntax import (
    And, App, Atom, Eq, Exists, ForAll, Implies, MacroCall, Not, Or, ParseError,
    PrintOptions, Var, alpha_equal, free_vars, latex_display, parse_formula,
    rename_predicate, signature_of, substitute, to_latex, to_text,
)

# -- strategies -----------------------------------------------------------------------


def _terms(bound):
    consts = st.sampled_from([App("a", ()), App("b", ()), App("c1", ())])
    if bound:
        base = st.one_of(consts, st.sampled_from([Var(v) for v in bound]))
    else:
        base = consts
    return st.recursive(base, lambda t: st.builds(lambda x: App("f", (x,)), t), max_leaves=3)


def formulas(bound=()):
    def atom(bound):
        return st.one_of(
            st.sampled_from([Atom("p", ()), Atom("q", ())]),
            st.builds(lambda t: Atom("r", (t,)), _terms(bound)),
            st.builds(lambda s, t: Eq(s, t), _terms(bound), _terms(bound)),
        )

    def extend(children):
        return st.one_of(
            st.builds(Not, children),
            st.builds(lambda a, b: And((a, b)), children, children),
            st.builds(lambda a, b: Or((a, b)), children, children),
            st.builds(Implies, children, children),
        )

    leaf = atom(bound)
    props = st.recursive(leaf, extend, max_leaves=6)
    quant = st.builds(lambda body: ForAll(("x",), body), st.recursive(atom(("x",)), extend, max_leaves=4))
    quant2 = st.builds(lambda body: Exists(("y",), body), st.recursive(atom(("y",)), extend, max_leaves=4))
    return st.one_of(props, quant, quant2, st.builds(lambda a, b: And((a, b)), props, quant))


# -- parsing and printing --------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_text_round_trip(f):
    text = to_text(f)
    g = parse_formula(text)
    assert to_text(g) == text
    assert alpha_equal(f, g) or to_text(f) == to_text(g)


def test_operator_precedence():
    f = parse_formula("p, q ; r -> s")
    # `,` binds tighter than `->`, which binds tighter than `;`
    assert isinstance(f, Or)
    assert isinstance(f.args[1], Implies) and f.args[0] == And((Atom("p", ()), Atom("q", ())))


def test_bound_identifiers_are_variables():
    f = parse_formula("all(x, p(x, y))")
    assert f.body.args == (Var("x"), App("y", ()))
    assert free_vars(f) == set()


def test_binder_lists_and_negated_equality():
    f = parse_formula("ex([x,y], x \\= y)")
    assert f.vars == ("x", "y")
    assert f.body == Not(Eq(Var("x"), Var("y")))


def test_macro_call_detected_for_formula_arguments():
    f = parse_formula("explanation(kb1, [wet], wet(shoes))")
    assert isinstance(f, MacroCall)


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse_formula("p,\n  (q ;")
    assert e.value.line == 2
    with pytest.raises(ParseError):
        parse_formula("")
    with pytest.raises(ParseError):
        parse_formula("p )")


def test_argument_positions_accept_implication():
    f = parse_formula("ipol((p, q) -> (q ; r))")
    assert isinstance(f, MacroCall) and isinstance(f.args[0], Implies)


# -- substitution and symbols ------------------------------------------------------------


def test_substitution_avoids_capture():
    f = ForAll(("y",), Atom("p", (Var("x"), Var("y"))))
    g = substitute(f, {"x": Var("y")})
    assert isinstance(g, ForAll) and g.vars != ("y",)
    (v,) = g.vars
    assert g.body == Atom("p", (Var("y"), Var(v)))


def test_alpha_equality():
    assert alpha_equal(parse_formula("all(x, p(x))"), parse_formula("all(y, p(y))"))
    assert not alpha_equal(parse_formula("all(x, r(x, a))"), parse_formula("all(y, r(a, y))"))


def test_polarity_and_renaming():
    f = parse_formula("(p(a) -> q), ~(q -> r)")
    sig = signature_of(f)
    assert sig.polarity("p") == {"neg"}
    assert sig.polarity("q") == {"pos"}
    assert sig.polarity("r") == {"neg"}
    g = parse_formula("q <-> r")
    assert signature_of(rename_predicate(g, "q", "s")).polarity("s") == {"pos", "neg"}


# -- LaTeX -------------------------------------------------------------------------------


def test_latex_symbol_conventions():
    assert to_latex(parse_formula("kb1")) == r"\mathsf{kb_{1}}"
    assert to_latex(parse_formula("ex2(p_p, p_p(a))")) == (
        r"\exists \mathit{p}^{\prime} \, \mathit{p}^{\prime}(\mathsf{a})"
    )


def test_latex_interpolation_box_formula():
    f = parse_formula("(all(x, p(a,x)), q) -> (ex(x, p(x,b)) ; r)")
    assert to_latex(f) == (
        r"\forall \mathit{x} \, \mathsf{p}(\mathsf{a},\mathit{x}) \land \mathsf{q} \rightarrow "
        r"\exists \mathit{x} \, \mathsf{p}(\mathit{x},\mathsf{b}) \lor \mathsf{r}"
    )


def test_latex_display_splits_conjuncts():
    out = latex_display(parse_formula("p, q"))
    assert out == "\\[\\begin{array}{l}\n\\mathsf{p} \\; \\land \\\\\n\\mathsf{q}.\n\\end{array}\\]"


def test_compact_syntax():
    f = parse_formula("p(f(a), b)")
    assert to_text(f, PrintOptions(compact=True)) == "p (f a) b"
    assert to_latex(f, PrintOptions(target="latex", compact=True)) == (
        r"\mathsf{p}(\mathsf{f}\mathsf{a})\mathsf{b}"
    )
