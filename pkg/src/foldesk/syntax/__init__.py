"""Formula data model, surface syntax and printers."""

from .ast import (
    And, App, Atom, BOT, Bot, Eq, Exists, Exists2, Expr, ForAll, ForAll2,
    Formula, Iff, Implies, Lambda, ListExpr, MacroCall, Not, Or, TOP, Term,
    Top, Var, atom_terms, conj, disj, exists, forall, formula_to_term,
    is_ground, is_param, neg, subformulas, term_to_formula, term_vars,
)
from .ops import (
    ArityError, SignatureInfo, SubstitutionError, all_symbols, alpha_equal,
    free_vars, fresh_name, map_atoms, predicates_of, rename_bound_apart,
    rename_predicate, signature_of, subst_term, substitute,
)
from .parse import ParseError, parse_expr, parse_formula, parse_term
from .printing import PrintOptions, latex_display, print_formula, to_latex, to_text

__all__ = [
    "And", "App", "Atom", "BOT", "Bot", "Eq", "Exists", "Exists2", "Expr",
    "ForAll", "ForAll2", "Formula", "Iff", "Implies", "Lambda", "ListExpr",
    "MacroCall", "Not", "Or", "TOP", "Term", "Top", "Var",
    "atom_terms", "conj", "disj", "exists", "forall", "formula_to_term",
    "is_ground", "is_param", "neg", "subformulas", "term_to_formula", "term_vars",
    "ArityError", "SignatureInfo", "SubstitutionError", "all_symbols",
    "alpha_equal", "free_vars", "fresh_name", "map_atoms", "predicates_of",
    "rename_bound_apart", "rename_predicate", "signature_of", "subst_term",
    "substitute", "ParseError", "parse_expr", "parse_formula", "parse_term",
    "PrintOptions", "latex_display", "print_formula", "to_latex", "to_text",
]
