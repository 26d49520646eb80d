"""Literate document format: prose fences, macro definitions, directives.

Grammar::

    @text            prose copied verbatim up to a line holding @end
    ...
    @end
    def kb1 :: FORMULA.
    def name(P1, ..., Pn) :: FORMULA where T := builtin(...), (T1, T2) := builtin(...).
    :- valid(F).            :- valid(F, [key=value, ...]).
    :- ipol(F -> G).        :- elim(F, [simp_result=[c6]]).
    :- print(F).            :- set(key=value, ...).

``%`` starts a comment outside prose.  The alternative spellings
``def(name(...)) :: ...`` and ``:- ppl_printtime(ppl_valid(...)).`` are
accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..macros import Builtin, MacroDef, MacroError, WhereBinding
from ..syntax import Implies
from ..syntax.parse import ParseError, Parser, Raw, to_expr, to_formula, tokenize

DIRECTIVES = ("valid", "ipol", "elim", "print")


@dataclass(frozen=True)
class Prose:
    latex: str
    line: int = 0


@dataclass(frozen=True)
class Directive:
    kind: str
    formula: object
    options: dict = field(default_factory=dict, hash=False, compare=True)
    line: int = 0


@dataclass(frozen=True)
class MacroBlock:
    macro: MacroDef
    line: int = 0


@dataclass(frozen=True)
class DirectiveBlock:
    directive: Directive
    line: int = 0


@dataclass(frozen=True)
class ConfigBlock:
    defaults: dict = field(hash=False)
    line: int = 0


@dataclass(frozen=True)
class Document:
    blocks: tuple = ()
    origin: str | None = None


_FENCE_OPEN = re.compile(r"^@text[ \t]*\n?", re.M)
_FENCE_CLOSE = re.compile(r"^@end[ \t]*$\n?", re.M)


def parse_document(text: str, origin: str | None = None) -> Document:
    """Parse a document; errors carry line numbers."""
    blocks: list = []
    pos = 0
    while pos < len(text):
        m = _FENCE_OPEN.search(text, pos)
        code_end = m.start() if m else len(text)
        blocks.extend(_parse_code(text, pos, code_end))
        if not m:
            break
        close = _FENCE_CLOSE.search(text, m.end())
        line = text.count("\n", 0, m.start()) + 1
        if close is None:
            raise ParseError("@text without matching @end", line, 1)
        blocks.append(Prose(text[m.end():close.start()], line))
        pos = close.end()
    return Document(tuple(blocks), origin)


def _parse_code(text: str, start: int, end: int) -> list:
    tokens = tokenize(text[:end], start)
    p = Parser(text[:end], tokens)
    out = []
    while p.peek() is not None:
        tok = p.peek()
        if tok.kind == "ident" and tok.text == "def":
            out.append(_parse_def(p))
        elif tok.kind == "op" and tok.text == ":-":
            out.append(_parse_directive(p))
        else:
            raise p.error("expected 'def' or ':-'")
    return out


def _end(p: Parser) -> None:
    if not p.at_end_dot():
        raise p.error("expected '.' ending the statement")
    p.i += 1


def _parse_def(p: Parser) -> MacroBlock:
    start = p.peek()
    nxt = p.peek(1)
    if nxt is not None and nxt.text == "(" and nxt.pos == start.pos + 3:
        raw = p.parse_raw(999)  # def(head)
        if len(raw.args) != 1:
            raise ParseError("def(...) takes one argument", start.line, start.col)
        head = raw.args[0]
    else:
        p.i += 1
        head = p.parse_raw(999)
    if head.kind == "ident":
        name, params = head.name, ()
    elif head.kind == "app":
        name, params = head.name, tuple(to_expr(a, frozenset()) for a in head.args)
    else:
        raise ParseError("macro head must be a name or name(params)", head.tok.line, head.tok.col)
    p.expect("::")
    body = to_formula(p.parse_raw(1200))
    where = []
    tok = p.peek()
    if tok is not None and tok.kind == "ident" and tok.text == "where":
        p.i += 1
        while True:
            where.append(_parse_binding(p))
            if p.at(","):
                p.i += 1
                continue
            break
    _end(p)
    try:
        d = MacroDef(name, params, body, tuple(where))
    except MacroError as e:
        raise ParseError(str(e), start.line, start.col) from e
    return MacroBlock(d, start.line)


def _parse_binding(p: Parser) -> WhereBinding:
    tok = p.peek()
    if p.at("("):
        p.i += 1
        targets = [_ident(p)]
        while p.at(","):
            p.i += 1
            targets.append(_ident(p))
        p.expect(")")
    else:
        targets = [_ident(p)]
    p.expect(":=")
    call = p.parse_raw(999)
    if call.kind != "app":
        raise ParseError("where binding needs a builtin call", call.tok.line, call.tok.col)
    try:
        b = Builtin(call.name, tuple(to_expr(a, frozenset()) for a in call.args))
    except MacroError as e:
        raise ParseError(str(e), tok.line, tok.col) from e
    return WhereBinding(tuple(targets), b)


def _ident(p: Parser) -> str:
    tok = p.peek()
    if tok is None or tok.kind != "ident":
        raise p.error("expected a name")
    p.i += 1
    return tok.text


def _parse_directive(p: Parser):
    start = p.expect(":-")
    raw = p.parse_raw(1200)
    _end(p)
    if raw.kind == "app" and raw.name == "ppl_printtime" and len(raw.args) == 1:
        raw = raw.args[0]
    if raw.kind != "app":
        raise ParseError("directive must be a call such as valid(...)", raw.tok.line, raw.tok.col)
    kind = raw.name[4:] if raw.name.startswith("ppl_") else raw.name
    if kind == "set":
        return ConfigBlock(dict(_option(a) for a in raw.args), start.line)
    if kind not in DIRECTIVES:
        raise ParseError(f"unknown directive {raw.name!r}", raw.tok.line, raw.tok.col)
    if len(raw.args) not in (1, 2):
        raise ParseError(f"{kind} takes a formula and an optional option list", raw.tok.line, raw.tok.col)
    f = to_formula(raw.args[0])
    if kind == "ipol" and not isinstance(f, Implies):
        raise ParseError("the argument of ipol must be an implication", raw.tok.line, raw.tok.col)
    opts: dict = {}
    if len(raw.args) == 2:
        lst = raw.args[1]
        if lst.kind != "list":
            raise ParseError("options must be a list [key=value, ...]", lst.tok.line, lst.tok.col)
        opts = dict(_option(a) for a in lst.args)
    return DirectiveBlock(Directive(kind, f, opts, start.line), start.line)


def _option(raw: Raw) -> tuple:
    if raw.kind == "op" and raw.name == "=" and raw.args[0].kind == "ident":
        return raw.args[0].name, _value(raw.args[1])
    if raw.kind == "ident":
        return raw.name, True
    raise ParseError("expected key=value", raw.tok.line, raw.tok.col)


def _value(raw: Raw):
    if raw.kind == "number":
        return int(raw.name)
    if raw.kind == "true":
        return True
    if raw.kind == "false":
        return False
    if raw.kind == "ident":
        return raw.name
    if raw.kind == "list":
        return [_value(a) for a in raw.args]
    raise ParseError("option values are names, numbers, booleans or lists", raw.tok.line, raw.tok.col)
