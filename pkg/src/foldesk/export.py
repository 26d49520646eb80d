"""TPTP FOF and DIMACS CNF writers, plus a DIMACS reader for round trips."""

from __future__ import annotations

import re

from .syntax import (
    And, Atom, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula, Iff,
    Implies, Not, Or, Top, Var, fresh_name,
)
from .transform import Clause, ClauseSet, Literal

_TPTP_LOWER = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class UnsupportedExport(ValueError):
    pass


class _TptpNames:
    def __init__(self):
        self.functors: dict = {}
        self.used: set = set()
        self.renamed: list = []

    def functor(self, name: str) -> str:
        if name in self.functors:
            return self.functors[name]
        out = name if _TPTP_LOWER.match(name) else "s_" + re.sub(r"[^A-Za-z0-9_]", "_", name)
        out = fresh_name(out, self.used)
        self.used.add(out)
        self.functors[name] = out
        if out != name:
            self.renamed.append((out, name))
        return out


def export_tptp(f: Formula, role: str = "axiom", name: str = "f1") -> str:
    """One ``fof`` unit; renamed symbols are listed in leading ``%`` lines."""
    if role not in ("axiom", "conjecture", "hypothesis"):
        raise ValueError(f"unknown role {role!r}")
    if not _TPTP_LOWER.match(name):
        raise ValueError(f"unit name {name!r} is not a TPTP lower word")
    names = _TptpNames()
    body = _fof(f, names, {})
    head = "".join(f"% {new} = {old}\n" for new, old in names.renamed)
    return f"{head}fof({name}, {role}, {body})."


def _term(t, names: _TptpNames, scope: dict) -> str:
    if isinstance(t, Var):
        if t.name not in scope:
            raise UnsupportedExport(f"free variable {t.name}")
        return scope[t.name]
    head = names.functor(t.name)
    if not t.args:
        return head
    return head + "(" + ",".join(_term(a, names, scope) for a in t.args) + ")"


def _fof(f: Formula, names: _TptpNames, scope: dict) -> str:
    if isinstance(f, Top):
        return "$true"
    if isinstance(f, Bot):
        return "$false"
    if isinstance(f, Atom):
        head = names.functor(f.pred)
        return head + ("(" + ",".join(_term(a, names, scope) for a in f.args) + ")" if f.args else "")
    if isinstance(f, Eq):
        return f"{_term(f.left, names, scope)} = {_term(f.right, names, scope)}"
    if isinstance(f, Not):
        if isinstance(f.arg, Eq):
            return f"{_term(f.arg.left, names, scope)} != {_term(f.arg.right, names, scope)}"
        return "~ " + _operand(f.arg, names, scope, None)
    if isinstance(f, (And, Or)):
        if len(f.args) == 1:
            return _fof(f.args[0], names, scope)
        op = " & " if isinstance(f, And) else " | "
        return op.join(_operand(a, names, scope, type(f)) for a in f.args)
    if isinstance(f, (Implies, Iff)):
        op = " => " if isinstance(f, Implies) else " <=> "
        return _operand(f.left, names, scope, Implies) + op + _operand(f.right, names, scope, Implies)
    if isinstance(f, (ForAll, Exists)):
        q = "!" if isinstance(f, ForAll) else "?"
        inner = dict(scope)
        vs = []
        taken = set(scope.values())
        for v in f.vars:
            base = v[0].upper() + re.sub(r"[^A-Za-z0-9_]", "_", v[1:])
            n = fresh_name(base, taken)
            taken.add(n)
            inner[v] = n
            vs.append(n)
        return f"{q} [{','.join(vs)}] : " + _operand(f.body, names, inner, None)
    if isinstance(f, (ForAll2, Exists2)):
        raise UnsupportedExport("second-order quantifiers have no FOF form; eliminate them first")
    raise UnsupportedExport(f"cannot export {f!r}")


def _operand(f: Formula, names, scope, parent) -> str:
    s = _fof(f, names, scope)
    if isinstance(f, (Atom, Top, Bot, Not, Eq)):
        return s
    if isinstance(f, (And, Or)) and len(f.args) == 1:
        return _operand(f.args[0], names, scope, parent)
    if isinstance(f, (ForAll, Exists)) and parent is None:
        return s
    return f"({s})"


# -- DIMACS ----------------------------------------------------------------------------


def _prop_name(l: Literal) -> str:
    if not isinstance(l.atom, Atom) or l.atom.args:
        raise UnsupportedExport(f"literal {l} is not propositional")
    return l.atom.pred


def export_dimacs(cs, mapping: bool = False) -> str:
    """DIMACS CNF text; atoms are numbered in lexicographic order of their names.

    With ``mapping`` the number of every atom is listed in ``c`` lines
    before the header.
    """
    clauses = list(cs.clauses if isinstance(cs, ClauseSet) else cs)
    atoms = sorted({_prop_name(l) for c in clauses for l in c.literals})
    num = {a: i + 1 for i, a in enumerate(atoms)}
    out = []
    if mapping:
        out.extend(f"c {num[a]} {a}" for a in atoms)
    out.append(f"p cnf {len(atoms)} {len(clauses)}")
    for c in clauses:
        lits = [str(num[_prop_name(l)] * (1 if l.positive else -1)) for l in c.literals]
        out.append(" ".join(lits + ["0"]))
    return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> tuple:
    """Integer clauses and the ``c N name`` mapping, if any."""
    names: dict = {}
    clauses: list = []
    current: list = []
    header = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) == 3 and parts[1].isdigit():
                names[int(parts[1])] = parts[2]
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        for tok in line.split():
            x = int(tok)
            if x == 0:
                clauses.append(current)
                current = []
            else:
                current.append(x)
    if current:
        clauses.append(current)
    if header is None:
        raise ValueError("missing DIMACS header")
    if header[1] != len(clauses):
        raise ValueError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return clauses, names


def import_dimacs(text: str) -> ClauseSet:
    """Clause set from DIMACS; unnamed atoms become ``v1``, ``v2``, ..."""
    clauses, names = parse_dimacs(text)
    out = []
    for c in clauses:
        lits = tuple(Literal(x > 0, Atom(names.get(abs(x), f"v{abs(x)}"), ())) for x in c)
        out.append(Clause(lits))
    return ClauseSet(tuple(out), {})


def clauses_to_ints(cs) -> tuple:
    """Integer clauses (same numbering as export_dimacs) and the atom list."""
    clauses = list(cs.clauses if isinstance(cs, ClauseSet) else cs)
    atoms = sorted({_prop_name(l) for c in clauses for l in c.literals})
    num = {a: i + 1 for i, a in enumerate(atoms)}
    return [[num[_prop_name(l)] * (1 if l.positive else -1) for l in c.literals] for c in clauses], atoms
