"""Parser for the Prolog-style surface syntax.

Operator table (all right-associative)::

    =  700 (xfx)   ~  900 (prefix)   ,  1000   -> <->  1050   ;  1100

Identifiers bound by ``all``/``ex``/``lambda`` become variables inside the
binder scope; any other lowercase identifier in term position is a
constant.  Unparenthesized chains of ``,`` and ``;`` are flattened into
one n-ary node, parenthesized groups are kept nested, so printing and
re-parsing is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ast import (
    App, Atom, BOT, Eq, Exists, Exists2, ForAll, ForAll2, Formula, Iff,
    Implies, Lambda, ListExpr, MacroCall, Not, Or, And, TOP, Var,
)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.msg = msg
        self.line = line
        self.col = col


TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<op><->|->|:-|:=|::|\\=|[(),;\[\]~=.|])
    """,
    re.VERBOSE,
)

BINDER_WORDS = {"all": ForAll, "ex": Exists, "all2": ForAll2, "ex2": Exists2, "lambda": Lambda}
RESERVED = set(BINDER_WORDS) | {"true", "false"}

INFIX = {
    # op: (precedence, left max, right max)
    "=": (700, 699, 699),
    "\\=": (700, 699, 699),
    ",": (1000, 999, 1000),
    "->": (1050, 1049, 1050),
    "<->": (1050, 1049, 1050),
    ";": (1100, 1099, 1100),
}


@dataclass
class Token:
    kind: str
    text: str
    pos: int
    line: int
    col: int
    # whitespace (or start of input) directly follows; marks Prolog end tokens
    ws_after: bool = False


def tokenize(text: str, offset: int = 0) -> list[Token]:
    tokens: list[Token] = []
    pos = offset
    n = len(text)
    while pos < n:
        m = TOKEN_RE.match(text, pos)
        if m is None:
            line, col = line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            if tokens:
                tokens[-1].ws_after = True
        else:
            line, col = line_col(text, pos)
            tokens.append(Token(kind, m.group(), pos, line, col))
        pos = m.end()
    if tokens:
        tokens[-1].ws_after = True
    return tokens


def line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


# -- raw parse tree -----------------------------------------------------------
# The first stage builds an untyped tree; conversion into terms or formulas
# happens afterwards, once binder scopes are known.


@dataclass
class Raw:
    kind: str  # ident, number, app, list, op, not, binder, true, false
    tok: Token
    name: str = ""
    args: list = field(default_factory=list)
    paren: bool = False


class Parser:
    def __init__(self, text: str, tokens: list[Token] | None = None, start: int = 0):
        self.text = text
        self.tokens = tokenize(text) if tokens is None else tokens
        self.i = start

    # token helpers
    def peek(self, k: int = 0) -> Token | None:
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else None

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        if tok is None:
            line, col = line_col(self.text, len(self.text))
            return ParseError(f"{msg} at end of input", line, col)
        return ParseError(f"{msg}, found {tok.text!r}", tok.line, tok.col)

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.text == text

    def at_end_dot(self) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == "." and tok.ws_after

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text or tok.kind not in ("op",):
            if text == ")" and tok is None:
                raise self.error("unbalanced parentheses: missing ')'")
            raise self.error(f"expected {text!r}")
        self.i += 1
        return tok

    # grammar
    def parse_raw(self, maxprec: int = 1200, comma: bool = True) -> Raw:
        left, lprec = self.primary(maxprec, comma)
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in INFIX:
                break
            if tok.text == "," and not comma:
                break
            prec, lmax, rmax = INFIX[tok.text]
            if prec > maxprec or lprec > lmax:
                break
            self.i += 1
            right = self.parse_raw(rmax, comma)
            if tok.text in (",", ";") and right.kind == "op" and right.name == tok.text and not right.paren:
                node = Raw("op", tok, tok.text, [left] + right.args)
            else:
                node = Raw("op", tok, tok.text, [left, right])
            left, lprec = node, prec
        return left

    def arg(self) -> Raw:
        # argument position: like Prolog, operators above 999 are accepted
        # and only the comma separates arguments
        return self.parse_raw(1200, comma=False)

    def primary(self, maxprec: int, comma: bool = True) -> tuple[Raw, int]:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a formula or term")
        if tok.kind == "op":
            if tok.text == "~":
                self.i += 1
                if maxprec < 900:
                    raise self.error("operator priority clash", tok)
                arg = self.parse_raw(900, comma)
                return Raw("not", tok, args=[arg]), 900
            if tok.text == "(":
                self.i += 1
                inner = self.parse_raw(1200)
                self.expect(")")
                inner.paren = True
                return inner, 0
            if tok.text == "[":
                self.i += 1
                items = []
                if not self.at("]"):
                    items.append(self.arg())
                    while self.at(","):
                        self.i += 1
                        items.append(self.arg())
                self.expect("]")
                return Raw("list", tok, args=items), 0
            if tok.text == ")":
                raise self.error("unbalanced parentheses: unexpected ')'", tok)
            raise self.error("unexpected operator", tok)
        self.i += 1
        if tok.kind == "number":
            return Raw("number", tok, tok.text), 0
        name = tok.text
        has_args = self.at("(") and self.peek().pos == tok.pos + len(name)
        if name in BINDER_WORDS:
            if not has_args:
                raise ParseError(f"reserved word {name!r} must be followed by '('", tok.line, tok.col)
            self.i += 1
            vars_raw = self.parse_raw(999)
            self.expect(",")
            body = self.parse_raw(1200)
            self.expect(")")
            return Raw("binder", tok, name, [vars_raw, body]), 0
        if name in ("true", "false"):
            if has_args:
                raise ParseError(f"reserved word {name!r} cannot take arguments", tok.line, tok.col)
            return Raw(name, tok, name), 0
        if has_args:
            self.i += 1
            args = [self.arg()]
            while self.at(","):
                self.i += 1
                args.append(self.arg())
            self.expect(")")
            return Raw("app", tok, name, args), 0
        return Raw("ident", tok, name), 0


# -- conversion ---------------------------------------------------------------


def _err(raw: Raw, msg: str) -> ParseError:
    return ParseError(msg, raw.tok.line, raw.tok.col)


def _is_termlike(raw: Raw) -> bool:
    if raw.kind in ("ident", "number"):
        return True
    if raw.kind == "app":
        return all(_is_termlike(a) for a in raw.args)
    return False


def to_term(raw: Raw, bound: frozenset):
    if raw.kind == "number":
        return App(raw.name, ())
    if raw.kind == "ident":
        if raw.name in bound:
            return Var(raw.name)
        return App(raw.name, ())
    if raw.kind == "app":
        return App(raw.name, tuple(to_term(a, bound) for a in raw.args))
    raise _err(raw, "expected a term")


def _binder_names(raw: Raw) -> tuple:
    if raw.kind == "ident":
        return (raw.name,)
    if raw.kind == "list":
        names = []
        for item in raw.args:
            if item.kind != "ident":
                raise _err(item, "binder list must contain identifiers")
            names.append(item.name)
        return tuple(names)
    raise _err(raw, "expected a variable or a list of variables")


def to_expr(raw: Raw, bound: frozenset):
    """Macro-argument position: term if term-shaped, list, or formula."""
    if _is_termlike(raw):
        return to_term(raw, bound)
    if raw.kind == "list":
        return ListExpr(tuple(to_expr(a, bound) for a in raw.args))
    return to_formula(raw, bound)


def to_formula(raw: Raw, bound: frozenset = frozenset()) -> Formula:
    k = raw.kind
    if k == "true":
        return TOP
    if k == "false":
        return BOT
    if k == "ident":
        return Atom(raw.name, ())
    if k == "number":
        raise _err(raw, "a number is not a formula")
    if k == "app":
        if all(_is_termlike(a) for a in raw.args):
            return Atom(raw.name, tuple(to_term(a, bound) for a in raw.args))
        return MacroCall(raw.name, tuple(to_expr(a, bound) for a in raw.args))
    if k == "not":
        return Not(to_formula(raw.args[0], bound))
    if k == "list":
        raise _err(raw, "a list is not a formula")
    if k == "binder":
        names = _binder_names(raw.args[0])
        cls = BINDER_WORDS[raw.name]
        inner = bound | set(names) if cls in (ForAll, Exists, Lambda) else bound
        return cls(names, to_formula(raw.args[1], frozenset(inner)))
    if k == "op":
        op = raw.name
        if op in ("=", "\\="):
            left, right = (to_term(a, bound) for a in raw.args)
            eq = Eq(left, right)
            return eq if op == "=" else Not(eq)
        parts = tuple(to_formula(a, bound) for a in raw.args)
        if op == ",":
            return And(parts)
        if op == ";":
            return Or(parts)
        if op == "->":
            return Implies(*parts)
        if op == "<->":
            return Iff(*parts)
    raise _err(raw, f"cannot read {k} as a formula")


def parse_formula(text: str) -> Formula:
    """Parse a complete formula."""
    p = Parser(text)
    if p.peek() is None:
        raise ParseError("empty input", 1, 1)
    raw = p.parse_raw(1200)
    if p.peek() is not None:
        raise p.error("unexpected trailing input")
    return to_formula(raw)


def parse_term(text: str, variables=()) -> object:
    p = Parser(text)
    raw = p.parse_raw(999)
    if p.peek() is not None:
        raise p.error("unexpected trailing input")
    return to_term(raw, frozenset(variables))


def parse_expr(text: str):
    p = Parser(text)
    raw = p.parse_raw(999)
    if p.peek() is not None:
        raise p.error("unexpected trailing input")
    return to_expr(raw, frozenset())
