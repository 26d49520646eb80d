"""Formula and term data model.

All nodes are frozen, slotted dataclasses, so structural equality and
hashing come for free and values can be shared between threads.

Identifiers starting with an uppercase letter or ``_`` are macro
parameters; they only occur inside macro definitions and disappear
during expansion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

SYMBOL_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
PARAM_RE = re.compile(r"[A-Z_][A-Za-z0-9_]*\Z")
NUMBER_RE = re.compile(r"[0-9]+\Z")


def is_param(name: str) -> bool:
    return bool(PARAM_RE.match(name))


def is_symbol(name: str) -> bool:
    return bool(SYMBOL_RE.match(name) or NUMBER_RE.match(name))


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    """Function application; a constant when ``args`` is empty."""

    name: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(map(str, self.args))})"


Term = Union[Var, App]


# -- formulas ----------------------------------------------------------------


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        from .printing import to_text

        return to_text(self)


@dataclass(frozen=True, slots=True, repr=False)
class Top(Formula):
    def __repr__(self) -> str:
        return "TOP"


@dataclass(frozen=True, slots=True, repr=False)
class Bot(Formula):
    def __repr__(self) -> str:
        return "BOT"


TOP = Top()
BOT = Bot()


@dataclass(frozen=True, slots=True, repr=False)
class Atom(Formula):
    pred: str
    args: tuple = ()

    def __repr__(self) -> str:
        return f"Atom({self.pred!r}, {self.args!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Eq(Formula):
    left: Term
    right: Term

    def __repr__(self) -> str:
        return f"Eq({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Not(Formula):
    arg: Formula

    def __repr__(self) -> str:
        return f"Not({self.arg!r})"


@dataclass(frozen=True, slots=True, repr=False)
class And(Formula):
    args: tuple

    def __repr__(self) -> str:
        return f"And{self.args!r}"


@dataclass(frozen=True, slots=True, repr=False)
class Or(Formula):
    args: tuple

    def __repr__(self) -> str:
        return f"Or{self.args!r}"


@dataclass(frozen=True, slots=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Iff(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Iff({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class ForAll(Formula):
    vars: tuple
    body: Formula

    def __repr__(self) -> str:
        return f"ForAll({self.vars!r}, {self.body!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Exists(Formula):
    vars: tuple
    body: Formula

    def __repr__(self) -> str:
        return f"Exists({self.vars!r}, {self.body!r})"


@dataclass(frozen=True, slots=True, repr=False)
class ForAll2(Formula):
    preds: tuple
    body: Formula

    def __repr__(self) -> str:
        return f"ForAll2({self.preds!r}, {self.body!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Exists2(Formula):
    preds: tuple
    body: Formula

    def __repr__(self) -> str:
        return f"Exists2({self.preds!r}, {self.body!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Lambda(Formula):
    params: tuple
    body: Formula

    def __repr__(self) -> str:
        return f"Lambda({self.params!r}, {self.body!r})"


@dataclass(frozen=True, slots=True, repr=False)
class MacroCall(Formula):
    """A call whose arguments are not all terms (formulas, lists, lambdas).

    Calls with only term arguments are parsed as plain atoms; the macro
    expander decides by registry lookup whether an atom is a call.
    """

    name: str
    args: tuple

    def __repr__(self) -> str:
        return f"MacroCall({self.name!r}, {self.args!r})"


@dataclass(frozen=True, slots=True)
class ListExpr:
    """Bracketed list, used as a macro argument (e.g. a predicate list)."""

    items: tuple

    def __str__(self) -> str:
        from .printing import expr_to_text

        return expr_to_text(self)


Expr = Union[Formula, Var, App, ListExpr]

QUANTIFIERS = (ForAll, Exists)
SO_QUANTIFIERS = (ForAll2, Exists2)
BINDERS = (ForAll, Exists, ForAll2, Exists2, Lambda)


# -- smart constructors -------------------------------------------------------


def conj(items) -> Formula:
    """Conjunction of ``items``; flattens nested And and drops TOP."""
    out: list = []
    for f in items:
        if isinstance(f, Top):
            continue
        if isinstance(f, Bot):
            return BOT
        if isinstance(f, And):
            out.extend(f.args)
        else:
            out.append(f)
    if not out:
        return TOP
    if len(out) == 1:
        return out[0]
    return And(tuple(out))


def disj(items) -> Formula:
    out: list = []
    for f in items:
        if isinstance(f, Bot):
            continue
        if isinstance(f, Top):
            return TOP
        if isinstance(f, Or):
            out.extend(f.args)
        else:
            out.append(f)
    if not out:
        return BOT
    if len(out) == 1:
        return out[0]
    return Or(tuple(out))


def neg(f: Formula) -> Formula:
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def forall(vars, body: Formula) -> Formula:
    vars = tuple(vars)
    if not vars:
        return body
    return ForAll(vars, body)


def exists(vars, body: Formula) -> Formula:
    vars = tuple(vars)
    if not vars:
        return body
    return Exists(vars, body)


def children(f: Formula) -> tuple:
    """Immediate formula children (terms excluded)."""
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, BINDERS):
        return (f.body,)
    if isinstance(f, MacroCall):
        return tuple(a for a in f.args if isinstance(a, Formula))
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def term_subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, App):
            stack.extend(reversed(s.args))


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return f.args
    if isinstance(f, Eq):
        return (f.left, f.right)
    return ()


def term_vars(t: Term, acc: set | None = None) -> set:
    if acc is None:
        acc = set()
    if isinstance(t, Var):
        acc.add(t.name)
    else:
        for a in t.args:
            term_vars(a, acc)
    return acc


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def term_to_formula(t) -> Formula:
    """Reinterpret a term-shaped expression in formula position."""
    if isinstance(t, Formula):
        return t
    if isinstance(t, App):
        return Atom(t.name, t.args)
    if isinstance(t, Var):
        return Atom(t.name, ())
    raise TypeError(f"not usable as a formula: {t!r}")


def formula_to_term(f) -> Term:
    if isinstance(f, (Var, App)):
        return f
    if isinstance(f, Atom):
        return App(f.pred, f.args)
    raise TypeError(f"not usable as a term: {f!r}")
