"""Text and LaTeX pretty-printers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    And, App, Atom, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula, Iff,
    Implies, Lambda, ListExpr, MacroCall, Not, Or, Top, Var, is_param,
)


@dataclass(frozen=True)
class PrintOptions:
    target: str = "text"  # "text" or "latex"
    compact: bool = False
    prime_rendering: bool = True
    subscript_digits: bool = True


DEFAULT = PrintOptions()


def print_formula(f, opts: PrintOptions = DEFAULT) -> str:
    if opts.target == "latex":
        return to_latex(f, opts)
    return to_text(f, opts)


# -- text ---------------------------------------------------------------------


def _text_term(t, compact: bool) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.name
    if compact:
        return t.name + "".join(_compact_arg(a) for a in t.args)
    return f"{t.name}({','.join(_text_term(a, compact) for a in t.args)})"


def _compact_arg(t) -> str:
    s = _text_term(t, True)
    if isinstance(t, App) and t.args:
        return f" ({s})"
    return " " + s


def _binder_vars(names: tuple) -> str:
    if len(names) == 1:
        return names[0]
    return "[" + ",".join(names) + "]"


def expr_to_text(e, opts: PrintOptions = DEFAULT) -> str:
    if isinstance(e, (Var, App)):
        return _text_term(e, opts.compact)
    if isinstance(e, ListExpr):
        return "[" + ",".join(expr_to_text(i, opts) for i in e.items) + "]"
    return _text(e, 999, opts.compact)


def to_text(f, opts: PrintOptions = DEFAULT) -> str:
    if not isinstance(f, Formula):
        return expr_to_text(f, opts)
    return _text(f, 1200, opts.compact)


def _wrap(s: str, prec: int, maxprec: int) -> str:
    return f"({s})" if prec > maxprec else s


def _text(f: Formula, maxprec: int, compact: bool) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        if compact:
            return f.pred + "".join(_compact_arg(a) for a in f.args)
        return f"{f.pred}({','.join(_text_term(a, compact) for a in f.args)})"
    if isinstance(f, Eq):
        return _wrap(f"{_text_term(f.left, compact)}={_text_term(f.right, compact)}", 700, maxprec)
    if isinstance(f, Not):
        arg = f.arg
        if isinstance(arg, Eq):
            inner = f"({_text(arg, 1200, compact)})"
        else:
            inner = _text(arg, 900, compact)
        return _wrap("~" + inner, 900, maxprec)
    if isinstance(f, And):
        if len(f.args) == 0:
            return "true"
        if len(f.args) == 1:
            return _text(f.args[0], maxprec, compact)
        s = ", ".join(_text(a, 999, compact) for a in f.args)
        return _wrap(s, 1000, maxprec)
    if isinstance(f, Or):
        if len(f.args) == 0:
            return "false"
        if len(f.args) == 1:
            return _text(f.args[0], maxprec, compact)
        s = " ; ".join(_text(a, 1099, compact) for a in f.args)
        return _wrap(s, 1100, maxprec)
    if isinstance(f, (Implies, Iff)):
        op = " -> " if isinstance(f, Implies) else " <-> "
        s = _text(f.left, 1049, compact) + op + _text(f.right, 1050, compact)
        return _wrap(s, 1050, maxprec)
    if isinstance(f, (ForAll, Exists, ForAll2, Exists2, Lambda)):
        word = {ForAll: "all", Exists: "ex", ForAll2: "all2", Exists2: "ex2", Lambda: "lambda"}[type(f)]
        names = f.params if isinstance(f, Lambda) else (f.preds if isinstance(f, (ForAll2, Exists2)) else f.vars)
        vs = "[" + ",".join(names) + "]" if isinstance(f, Lambda) else _binder_vars(names)
        return f"{word}({vs}, {_text(f.body, 999, compact)})"
    if isinstance(f, MacroCall):
        return f"{f.name}({','.join(expr_to_text(a, PrintOptions(compact=compact)) for a in f.args)})"
    raise TypeError(f"cannot print {f!r}")


# -- LaTeX --------------------------------------------------------------------
# Precedences follow mathematical convention, which differs from the text
# syntax: conjunction binds tighter than disjunction, both tighter than
# implication.

_LATEX_PREC = {Not: 1, And: 2, Or: 3, Implies: 4, Iff: 4}
_DIGITS_RE = re.compile(r"^(.*?)([0-9]+)$")


def latex_symbol(name: str, style: str, opts: PrintOptions = DEFAULT) -> str:
    """Render a symbol; ``style`` is a LaTeX font command such as mathsf."""
    if name.isdigit():
        return name
    primes = 0
    if opts.prime_rendering:
        while name.endswith("_p") and len(name) > 2:
            name = name[:-2]
            primes += 1
    sub = ""
    if opts.subscript_digits:
        m = _DIGITS_RE.match(name)
        if m and m.group(1):
            name, sub = m.group(1), m.group(2)
    body = name.replace("_", r"\_")
    if sub:
        body += "_{" + sub + "}"
    out = "\\" + style + "{" + body + "}"
    if primes:
        out += "^{" + r"\prime" * primes + "}"
    return out


class _LatexPrinter:
    def __init__(self, opts: PrintOptions):
        self.opts = opts

    def sym(self, name: str, bound: frozenset) -> str:
        if name in bound or is_param(name):
            return latex_symbol(name, "mathit", self.opts)
        return latex_symbol(name, "mathsf", self.opts)

    def term(self, t, bound: frozenset) -> str:
        if isinstance(t, Var):
            return latex_symbol(t.name, "mathit", self.opts)
        head = self.sym(t.name, bound)
        if not t.args:
            return head
        return head + self.args(t.args, bound)

    def args(self, args, bound) -> str:
        if self.opts.compact:
            parts = []
            for a in args:
                s = self.term(a, bound)
                parts.append(f"({s})" if isinstance(a, App) and a.args else s)
            return "".join(parts)
        return "(" + ",".join(self.term(a, bound) for a in args) + ")"

    def expr(self, e, bound) -> str:
        if isinstance(e, (Var, App)):
            return self.term(e, bound)
        if isinstance(e, ListExpr):
            return "{[}" + ",".join(self.expr(i, bound) for i in e.items) + "{]}"
        return self.formula(e, 4, bound)

    def formula(self, f: Formula, maxprec: int, bound: frozenset) -> str:
        if isinstance(f, Top):
            return r"\top"
        if isinstance(f, Bot):
            return r"\bot"
        if isinstance(f, Atom):
            head = self.sym(f.pred, bound)
            return head + self.args(f.args, bound) if f.args else head
        if isinstance(f, Eq):
            return f"{self.term(f.left, bound)}={self.term(f.right, bound)}"
        if isinstance(f, Not):
            if isinstance(f.arg, Eq):
                return f"{self.term(f.arg.left, bound)} \\neq {self.term(f.arg.right, bound)}"
            return r"\lnot " + self.formula(f.arg, 1, bound)
        if isinstance(f, (And, Or)):
            if len(f.args) == 1:
                return self.formula(f.args[0], maxprec, bound)
            prec = _LATEX_PREC[type(f)]
            op = r" \land " if isinstance(f, And) else r" \lor "
            s = op.join(self.formula(a, prec - 1, bound) for a in f.args)
            return f"({s})" if prec > maxprec else s
        if isinstance(f, (Implies, Iff)):
            op = r" \rightarrow " if isinstance(f, Implies) else r" \leftrightarrow "
            s = self.formula(f.left, 3, bound) + op + self.formula(f.right, 3, bound)
            return f"({s})" if 4 > maxprec else s
        if isinstance(f, (ForAll, Exists, ForAll2, Exists2)):
            q = r"\forall " if isinstance(f, (ForAll, ForAll2)) else r"\exists "
            names = f.vars if isinstance(f, (ForAll, Exists)) else f.preds
            inner = bound | set(names)
            vs = ",".join(latex_symbol(n, "mathit", self.opts) for n in names)
            body = f.body
            if isinstance(body, (Atom, Eq, Not, ForAll, Exists, ForAll2, Exists2, Top, Bot)):
                b = self.formula(body, 1, inner)
            else:
                b = "(" + self.formula(body, 4, inner) + ")"
            return q + vs + r" \, " + b
        if isinstance(f, Lambda):
            inner = bound | set(f.params)
            vs = ",".join(latex_symbol(n, "mathit", self.opts) for n in f.params)
            return r"\lambda " + vs + r" . \, (" + self.formula(f.body, 4, inner) + ")"
        if isinstance(f, MacroCall):
            return self.sym(f.name, bound) + "(" + ",".join(self.expr(a, bound) for a in f.args) + ")"
        raise TypeError(f"cannot print {f!r}")


def to_latex(f, opts: PrintOptions = PrintOptions(target="latex"), bound=frozenset()) -> str:
    p = _LatexPrinter(opts)
    if not isinstance(f, Formula):
        return p.expr(f, frozenset(bound))
    return p.formula(f, 4, frozenset(bound))


def latex_display(f: Formula, opts: PrintOptions = PrintOptions(target="latex"), end: str = ".") -> str:
    """Display-math array, one top-level conjunct per line."""
    p = _LatexPrinter(opts)
    if isinstance(f, And) and len(f.args) > 1:
        lines = [p.formula(a, 1, frozenset()) for a in f.args]
        body = " \\; \\land \\\\\n".join(lines)
    else:
        body = p.formula(f, 4, frozenset())
    return "\\[\\begin{array}{l}\n" + body + end + "\n\\end{array}\\]"
