"""Connection tableau prover with iterative deepening and checkable proofs.

Search follows the model elimination scheme: a start clause is chosen,
then every open leaf is closed either by a reduction step (unification
with the complement of an ancestor on the branch) or by an extension step
(attaching a renamed input clause one of whose literals unifies with the
complement of the leaf).  Backtracking is driven by Python generators;
bindings are destructive and undone through a trail.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..syntax import App, Atom, Eq, Var
from ..transform import Clause, ClauseSet, Literal
from ..transform.simplify import match_literal

# -- internal terms -------------------------------------------------------------
# Constants are str, compound terms are tuples (name, arg, ...), variables in
# clause templates are int and in live terms Ref cells.


class Ref:
    __slots__ = ("val", "id")

    def __init__(self, id: int):
        self.val = None
        self.id = id


def deref(t):
    while type(t) is Ref and t.val is not None:
        t = t.val
    return t


def _compile_term(t, var_ids: dict):
    if isinstance(t, Var):
        if t.name not in var_ids:
            var_ids[t.name] = len(var_ids)
        return var_ids[t.name]
    if not t.args:
        return t.name
    return (t.name,) + tuple(_compile_term(a, var_ids) for a in t.args)


def _compile_atom(a, var_ids: dict):
    if isinstance(a, Eq):
        return ("=", _compile_term(a.left, var_ids), _compile_term(a.right, var_ids))
    if not a.args:
        return (a.pred,)
    return (a.pred,) + tuple(_compile_term(t, var_ids) for t in a.args)


def _instantiate(t, env: list):
    if type(t) is int:
        return env[t]
    if type(t) is str:
        return t
    return (t[0],) + tuple(_instantiate(a, env) for a in t[1:])


def occurs(v: Ref, t) -> bool:
    stack = [t]
    while stack:
        t = deref(stack.pop())
        if t is v:
            return True
        if type(t) is tuple:
            stack.extend(t[1:])
    return False


def unify(a, b, trail: list) -> bool:
    stack = [(a, b)]
    while stack:
        a, b = stack.pop()
        a = deref(a)
        b = deref(b)
        if a is b:
            continue
        if type(a) is Ref:
            if occurs(a, b):
                return False
            a.val = b
            trail.append(a)
            continue
        if type(b) is Ref:
            if occurs(b, a):
                return False
            b.val = a
            trail.append(b)
            continue
        if type(a) is str or type(b) is str:
            if a != b:
                return False
            continue
        if len(a) != len(b) or a[0] != b[0]:
            return False
        stack.extend(zip(a[1:], b[1:]))
    return True


def undo(trail: list, mark: int) -> None:
    while len(trail) > mark:
        trail.pop().val = None


def identical(a, b) -> bool:
    a = deref(a)
    b = deref(b)
    if a is b:
        return True
    if type(a) is tuple and type(b) is tuple:
        return len(a) == len(b) and all(identical(x, y) for x, y in zip(a, b))
    if type(a) is str and type(b) is str:
        return a == b
    return False


# -- proof objects --------------------------------------------------------------


@dataclass(frozen=True)
class ByExtension:
    """Leaf closed against its parent by the extension step that created it."""


@dataclass(frozen=True)
class ByReduction:
    ancestor_depth: int  # index on the branch, 0 = literal of the start clause


@dataclass
class TableauNode:
    literal: Literal | None  # None only at the root
    clause_origin: int | None = None  # input clause the literal belongs to
    color: str | None = None
    children: list = field(default_factory=list)
    closure: object = None

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.literal is None:
            head = f"{pad}root [clause {self.children[0].clause_origin if self.children else '-'}]"
        else:
            tag = ""
            if isinstance(self.closure, ByExtension):
                tag = "  closed: extension"
            elif isinstance(self.closure, ByReduction):
                tag = f"  closed: reduction with branch depth {self.closure.ancestor_depth}"
            col = f" {self.color}" if self.color else ""
            head = f"{pad}{self.literal} [clause {self.clause_origin}{col}]{tag}"
        return "\n".join([head] + [c.render(indent + 1) for c in self.children])


@dataclass
class Proved:
    root: TableauNode
    substitution: dict
    depth_used: int
    clauses: ClauseSet  # the clause set the tableau refers to (with any axioms)
    inferences: int = 0


@dataclass
class DepthExhausted:
    max_depth: int
    complete: bool = False  # True when no branch was cut by the depth bound


@dataclass
class ResourceOut:
    reason: str


@dataclass(frozen=True)
class ProverLimits:
    max_depth: int = 12
    per_depth_inference_cap: int | None = 2_000_000
    time_limit: float | None = None
    equality_axioms: bool = True


class _Abort(Exception):
    pass


# -- equality -----------------------------------------------------------------


def equality_axioms(cs: ClauseSet) -> list:
    """Reflexivity, symmetry, transitivity and single-position congruence."""
    X, Y, Z = Var("X"), Var("Y"), Var("Z")

    def eq(a, b, pos=True):
        return Literal(pos, Eq(a, b))

    out = [
        Clause((eq(X, X),)),
        Clause((eq(X, Y, False), eq(Y, X))),
        Clause((eq(X, Y, False), eq(Y, Z, False), eq(X, Z))),
    ]
    funcs: dict = {}
    preds: dict = {}

    def walk(t):
        if isinstance(t, App) and t.args:
            funcs[t.name] = len(t.args)
            for a in t.args:
                walk(a)

    for c in cs.clauses:
        for l in c.literals:
            if isinstance(l.atom, Atom) and l.atom.args:
                preds[l.atom.pred] = len(l.atom.args)
            for t in l.args:
                walk(t)
    for name, n in sorted(funcs.items()):
        for i in range(n):
            xs = [Var(f"X{j}") for j in range(n)]
            ys = list(xs)
            ys[i] = Y
            out.append(Clause((eq(xs[i], Y, False), eq(App(name, tuple(xs)), App(name, tuple(ys))))))
    for name, n in sorted(preds.items()):
        for i in range(n):
            xs = [Var(f"X{j}") for j in range(n)]
            ys = list(xs)
            ys[i] = Y
            out.append(Clause((
                Literal(False, Atom(name, tuple(xs))), eq(xs[i], Y, False), Literal(True, Atom(name, tuple(ys))),
            )))
    return out


def with_equality(cs: ClauseSet, color_of=None) -> ClauseSet:
    """``cs`` plus equality axioms when some literal is an equation.

    ``color_of`` maps a symbol to a color for the congruence axioms; the
    logical axioms get color ``"A"`` when coloring is requested.
    """
    if not cs.has_equality():
        return cs
    extra = []
    for c in equality_axioms(cs):
        col = None
        if color_of is not None:
            col = "A"
            syms = _axiom_symbol(c)
            if syms is not None:
                col = color_of(syms)
        extra.append(Clause(c.literals, col))
    return ClauseSet(tuple(cs.clauses) + tuple(extra), cs.skolem)


def _axiom_symbol(c: Clause):
    for l in c.literals:
        if isinstance(l.atom, Atom):
            return l.atom.pred
        for t in l.args:
            if isinstance(t, App) and t.args:
                return t.name
    return None


# -- search -------------------------------------------------------------------


class _Lit:
    __slots__ = ("pos", "atom")

    def __init__(self, pos: bool, atom):
        self.pos = pos
        self.atom = atom


class _Search:
    def __init__(self, cs: ClauseSet, limits: ProverLimits):
        self.cs = cs
        self.limits = limits
        self.templates = []  # (nvars, [(pos, atom_template)])
        self.index: dict = {}  # (pos, pred) -> [(clause index, literal index)]
        for ci, c in enumerate(cs.clauses):
            ids: dict = {}
            lits = [(l.positive, _compile_atom(l.atom, ids)) for l in c.literals]
            self.templates.append((len(ids), lits, {v: k for k, v in ids.items()}))
            for li, (pos, atom) in enumerate(lits):
                self.index.setdefault((pos, atom[0], len(atom)), []).append((ci, li))
        self.trail: list = []
        self.inferences = 0
        self.cap = None
        self.deadline = None
        self.cut = False
        self.nrefs = 0

    def instance(self, ci: int) -> tuple:
        """A renamed copy of clause ``ci`` and its fresh variables."""
        nvars, lits, _ = self.templates[ci]
        if nvars == 0:
            return [_Lit(p, a) for p, a in lits], []
        self.nrefs += 1
        base = self.nrefs * 10_000
        env = [Ref(base + k) for k in range(nvars)]
        return [_Lit(p, _instantiate(a, env)) for p, a in lits], env

    def tick(self) -> None:
        self.inferences += 1
        if self.cap is not None and self.inferences > self.cap:
            raise _Abort("inference cap reached")
        if self.deadline is not None and (self.inferences & 1023) == 0 and time.monotonic() > self.deadline:
            raise _Abort("time limit reached")

    def solve(self, lit: _Lit, path: list, depth: int):
        """Close the branch ending in ``lit``; yields a proof fragment per solution."""
        for anc in path:
            if anc.pos == lit.pos and identical(anc.atom, lit.atom):
                return
        trail = self.trail
        for k, anc in enumerate(path):
            if anc.pos != lit.pos and anc.atom[0] == lit.atom[0] and len(anc.atom) == len(lit.atom):
                self.tick()
                mark = len(trail)
                if unify(anc.atom, lit.atom, trail):
                    yield ("red", k)
                undo(trail, mark)
        if depth <= 0:
            self.cut = True
            return
        key = (not lit.pos, lit.atom[0], len(lit.atom))
        for ci, li in self.index.get(key, ()):
            self.tick()
            lits, env = self.instance(ci)
            mark = len(trail)
            if unify(lits[li].atom, lit.atom, trail):
                rest = lits[:li] + lits[li + 1:]
                path.append(lit)
                for subs in self.solve_all(rest, path, depth - 1):
                    path.pop()
                    yield ("ext", ci, li, lits, subs, env)
                    path.append(lit)
                path.pop()
            undo(trail, mark)

    def solve_all(self, lits: list, path: list, depth: int):
        if not lits:
            yield []
            return
        for first in self.solve(lits[0], path, depth):
            for rest in self.solve_all(lits[1:], path, depth):
                yield [first] + rest

    def start_order(self) -> list:
        """Clauses colored B, then all-negative clauses, then the rest."""
        cls = self.cs.clauses
        idx = range(len(cls))
        b = [i for i in idx if cls[i].color == "B"]
        neg = [i for i in idx if i not in b and all(not l.positive for l in cls[i].literals)]
        rest = [i for i in idx if i not in b and i not in neg]
        return b + neg + rest


# -- building and checking proofs -------------------------------------------------


def _to_term(t, names: dict):
    t = deref(t)
    if type(t) is Ref:
        if t.id not in names:
            names[t.id] = f"_{len(names)}"
        return Var(names[t.id])
    if type(t) is str:
        return App(t, ())
    return App(t[0], tuple(_to_term(a, names) for a in t[1:]))


def _to_literal(l: _Lit, names: dict) -> Literal:
    a = l.atom
    if a[0] == "=" and len(a) == 3:
        return Literal(l.pos, Eq(_to_term(a[1], names), _to_term(a[2], names)))
    return Literal(l.pos, Atom(a[0], tuple(_to_term(x, names) for x in a[1:])))


def _build(search: _Search, ci: int, lits: list, frags: list, skip: int | None, names: dict) -> list:
    """Tableau nodes for one clause instance; ``skip`` is the connected literal."""
    color = search.cs.clauses[ci].color
    nodes = []
    it = iter(frags)
    for li, l in enumerate(lits):
        node = TableauNode(_to_literal(l, names), ci, color)
        if li == skip:
            node.closure = ByExtension()
        else:
            frag = next(it)
            if frag[0] == "red":
                node.closure = ByReduction(frag[1])
            else:
                _, cj, lj, sub_lits, sub_frags, _env = frag
                node.children = _build(search, cj, sub_lits, sub_frags, lj, names)
        nodes.append(node)
    return nodes


def prove(cs: ClauseSet, limits: ProverLimits = ProverLimits(), add_equality: bool | None = None):
    """Search for a closed connection tableau for ``cs`` by iterative deepening."""
    if add_equality is None:
        add_equality = limits.equality_axioms
    if add_equality:
        cs = with_equality(cs)
    if any(not c.literals for c in cs.clauses):
        ci = next(i for i, c in enumerate(cs.clauses) if not c.literals)
        root = TableauNode(None, ci, cs.clauses[ci].color, [])
        return Proved(root, {}, 0, cs, 0)
    search = _Search(cs, limits)
    order = search.start_order()
    deadline = time.monotonic() + limits.time_limit if limits.time_limit else None
    search.deadline = deadline
    total = 0
    for depth in range(1, limits.max_depth + 1):
        search.cut = False
        search.inferences = 0
        search.cap = limits.per_depth_inference_cap
        try:
            for ci in order:
                lits, env = search.instance(ci)
                for frags in search.solve_all(lits, [], depth):
                    names: dict = {}
                    root = TableauNode(None, ci, cs.clauses[ci].color)
                    root.children = _build(search, ci, lits, frags, None, names)
                    if check_tableau(root, cs):
                        subst = _answer(search, [(ci, env, frags)], names)
                        undo(search.trail, 0)
                        return Proved(root, subst, depth, cs, total + search.inferences)
                undo(search.trail, 0)
        except _Abort as e:
            undo(search.trail, 0)
            return ResourceOut(str(e))
        total += search.inferences
        if not search.cut:
            return DepthExhausted(depth, complete=True)
    return DepthExhausted(limits.max_depth)


def _answer(search: _Search, todo: list, names: dict) -> dict:
    """Bindings of the clause copies used, keyed ``clause:variable#copy``."""
    out = {}
    while todo:
        ci, env, frags = todo.pop()
        inv = search.templates[ci][2]
        for k, r in enumerate(env):
            if r.val is not None:
                out[f"{ci}:{inv[k]}#{r.id // 10_000}"] = _to_term(r, names)
        for frag in frags:
            if frag[0] == "ext":
                todo.append((frag[1], frag[5], frag[4]))
    return out


def check_tableau(root: TableauNode, cs: ClauseSet, explain: list | None = None) -> bool:
    """Independent check of a closed tableau against its clause set."""

    def fail(msg: str) -> bool:
        if explain is not None:
            explain.append(msg)
        return False

    def instance_of(nodes: list, ci) -> bool:
        if ci is None or not (0 <= ci < len(cs.clauses)):
            return False
        clause = cs.clauses[ci]
        if len(clause.literals) != len(nodes):
            return False
        sub: dict | None = {}
        for l, n in zip(clause.literals, nodes):
            if n.literal is None or n.clause_origin != ci:
                return False
            sub = match_literal(l, n.literal, sub)
            if sub is None:
                return False
        return True

    def walk(node: TableauNode, branch: list) -> bool:
        if node.children:
            ci = node.children[0].clause_origin
            if not instance_of(node.children, ci):
                return fail(f"children of {node.literal} are not an instance of clause {ci}")
        for child in node.children:
            lit = child.literal
            if lit in branch:
                return fail(f"irregular branch: {lit} repeated")
            if not child.children:
                cl = child.closure
                if isinstance(cl, ByExtension):
                    if node.literal is None or node.literal != lit.negate():
                        return fail(f"leaf {lit} not complementary to its parent")
                elif isinstance(cl, ByReduction):
                    k = cl.ancestor_depth
                    if not (0 <= k < len(branch)) or branch[k] != lit.negate():
                        return fail(f"leaf {lit} not complementary to ancestor {k}")
                else:
                    return fail(f"open leaf {lit}")
            elif child.closure is not None:
                return fail(f"inner node {lit} carries a closure")
            if not walk(child, branch + [lit]):
                return False
        return True

    if root.literal is not None:
        return fail("root must not carry a literal")
    if not root.children:
        ci = root.clause_origin
        if ci is not None and 0 <= ci < len(cs.clauses) and not cs.clauses[ci].literals:
            return True
        return fail("empty tableau")
    return walk(root, [])
