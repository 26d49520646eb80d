"""Connection tableau prover, DPLL, finite model finder and validity driver."""

from .dpll import BudgetExceeded, Sat, Unsat, dpll, satisfies
from .models import ModelBudget, find_model
from .tableau import (
    ByExtension, ByReduction, DepthExhausted, ProverLimits, Proved,
    ResourceOut, TableauNode, check_tableau, equality_axioms, prove,
    with_equality,
)
from .validity import (
    NotValid, Unknown, UnsupportedSecondOrder, Valid, ValidityConfig,
    drop_so_universals, entails, equivalent, validity,
)

__all__ = [
    "BudgetExceeded", "Sat", "Unsat", "dpll", "satisfies", "ModelBudget",
    "find_model", "ByExtension", "ByReduction", "DepthExhausted",
    "ProverLimits", "Proved", "ResourceOut", "TableauNode", "check_tableau",
    "equality_axioms", "prove", "with_equality", "NotValid", "Unknown",
    "UnsupportedSecondOrder", "Valid", "ValidityConfig", "drop_so_universals",
    "entails", "equivalent", "validity",
]
