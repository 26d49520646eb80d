"""Normal forms, clausification, clause simplification and un-Skolemization."""

from .clauses import (
    Clause, ClauseSet, Literal, clause_to_formula, clauses_to_formula,
    is_literal, literal_of,
)
from .definitional import definitional_cnf
from .normal import (
    DEFAULT_MAX_CLAUSES, ClauseLimitExceeded, cnf, dnf, matrix_cnf, nnf,
    skolemize,
)
from .shaping import shape_c6, simplify_formula
from .simplify import simplify_clauses, subsumes
from .unskolem import unskolemize, unskolemize_partial

__all__ = [
    "Clause", "ClauseSet", "Literal", "clause_to_formula", "clauses_to_formula",
    "is_literal", "literal_of", "definitional_cnf", "DEFAULT_MAX_CLAUSES",
    "ClauseLimitExceeded", "cnf", "dnf", "matrix_cnf", "nnf", "skolemize",
    "shape_c6", "simplify_formula", "simplify_clauses", "subsumes",
    "unskolemize", "unskolemize_partial",
]
