"""Craig-Lyndon interpolants from two-colored closed clausal tableaux."""

from __future__ import annotations

from dataclasses import dataclass, field

from .macros import FreshNames
from .prover import ProverLimits, Proved, prove
from .prover.tableau import ByExtension, ByReduction, TableauNode, with_equality
from .syntax import (
    And, App, Atom, BOT, Eq, Exists, Exists2, ForAll, ForAll2, Formula, Iff,
    Implies, Not, Or, TOP, Var, all_symbols, conj, disj, exists, forall,
    free_vars, map_atoms, neg, rename_predicate, signature_of, subformulas,
    substitute,
)
from .transform import Clause, ClauseSet, Literal, cnf, shape_c6
from .transform.clauses import canonical_var_names


class UnsupportedShape(ValueError):
    """A second-order prefix of the wrong polarity."""


class InterpolationFailed(RuntimeError):
    """Proof search did not find a closed tableau within the limits."""


@dataclass(frozen=True)
class InterpolationConfig:
    limits: ProverLimits = field(default_factory=lambda: ProverLimits(max_depth=12, time_limit=60.0))
    shape: str | None = None  # "c6" to post-process the result


@dataclass
class InterpolationTask:
    F: Formula
    G: Formula
    options: InterpolationConfig = field(default_factory=InterpolationConfig)


@dataclass
class InterpolationResult:
    interpolant: Formula
    ground: Formula
    proof: Proved
    ground_tableau: TableauNode | None = None  # the proof with variables frozen


# -- second-order prefixes ---------------------------------------------------------


def reduce_so_entailment(F: Formula, G: Formula, fresh: FreshNames | None = None) -> tuple:
    """Drop an existential predicate prefix of F and a universal one of G.

    Bound predicates are renamed to fresh symbols, so F ⊨ G holds iff the
    first-order matrices entail each other, and interpolants carry over.
    """
    if fresh is None:
        fresh = FreshNames()
    fresh.reserve(all_symbols(F) | all_symbols(G))

    def strip(f: Formula, keep, wrong, side: str) -> Formula:
        while isinstance(f, (ForAll2, Exists2)):
            if isinstance(f, wrong):
                raise UnsupportedShape(f"{side} has a predicate quantifier of the wrong kind")
            body = f.body
            for p in f.preds:
                body = rename_predicate(body, p, fresh(p + "_p"))
            f = body
        return f

    F1 = strip(F, Exists2, ForAll2, "left side")
    G1 = strip(G, ForAll2, Exists2, "right side")
    for side, f in (("left side", F1), ("right side", G1)):
        if _has_so(f):
            raise UnsupportedShape(f"{side} has a predicate quantifier below its prefix")
    return F1, G1


def _has_so(f: Formula) -> bool:
    return any(isinstance(g, (ForAll2, Exists2)) for g in subformulas(f))


# -- ground extraction ----------------------------------------------------------------


def ground_ipol(root: TableauNode) -> Formula:
    """Interpolant of the A- and B-colored clauses of a closed ground tableau."""

    def walk(node: TableauNode, branch: list) -> Formula:
        if not node.children:
            cl = node.closure
            if isinstance(cl, ByExtension):
                anc = branch[-1]
            elif isinstance(cl, ByReduction):
                anc = branch[cl.ancestor_depth]
            else:
                raise ValueError(f"open leaf {node.literal}")
            x, y = node.color, anc.color
            if x is None or y is None:
                raise ValueError("uncolored node")
            if x == "A" and y == "A":
                return BOT
            if x == "B" and y == "B":
                return TOP
            if x == "A":
                return node.literal.to_formula()
            return neg(node.literal.to_formula())
        return combine(node, branch)

    def combine(node: TableauNode, branch: list) -> Formula:
        inner = branch if node.literal is None else branch + [node]
        color = node.children[0].color
        if color is None:
            raise ValueError("uncolored node")
        parts = [walk(c, inner) for c in node.children]
        return disj(parts) if color == "A" else conj(parts)

    if not root.children:
        # the empty clause closes the tableau on its own
        return BOT if root.color == "A" else TOP
    return combine(root, [])


# -- lifting ----------------------------------------------------------------------------


def _term_size(t) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(_term_size(a) for a in t.args)


def lift_interpolant(I: Formula, f_symbols: set, g_symbols: set, avoid: set = frozenset()) -> Formula:
    """Abstract terms with a non-shared head symbol into quantified variables.

    Terms headed by a symbol of the left side only become existential,
    all other non-shared terms universal.  Subterms are quantified outside
    their superterms; among independent terms existentials come first.
    """
    shared = f_symbols & g_symbols
    found: dict = {}

    def collect(t):
        if isinstance(t, Var):
            return
        if t.name not in shared:
            found.setdefault(t, None)
            return
        for a in t.args:
            collect(a)

    atoms = _atoms(I)
    for a in atoms:
        for t in (a.args if isinstance(a, Atom) else (a.left, a.right)):
            collect(t)
    if not found:
        return I
    terms = sorted(found, key=lambda t: (_term_size(t), 0 if t.name in f_symbols else 1, str(t)))
    names = _var_names(len(terms), avoid | all_symbols(I))
    var_of = dict(zip(terms, names))

    def replace(t):
        if isinstance(t, Var):
            return t
        if t in var_of:
            return Var(var_of[t])
        return App(t.name, tuple(replace(a) for a in t.args))

    body = _map_terms(I, replace)
    for t in reversed(terms):
        v = var_of[t]
        if v not in free_vars(body):
            continue
        body = exists([v], body) if t.name in f_symbols else forall([v], body)
    return _merge_quantifiers(body)


def _var_names(n: int, avoid: set) -> list:
    return canonical_var_names(n, set(avoid))


def _atoms(f: Formula) -> list:
    return [g for g in subformulas(f) if isinstance(g, (Atom, Eq))]


def _map_terms(f: Formula, fn) -> Formula:
    def on_atom(a):
        return Atom(a.pred, tuple(fn(t) for t in a.args))

    g = map_atoms(f, on_atom)
    return _map_eqs(g, fn)


def _map_eqs(f: Formula, fn) -> Formula:
    if isinstance(f, Eq):
        return Eq(fn(f.left), fn(f.right))
    if isinstance(f, Not):
        return Not(_map_eqs(f.arg, fn))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(_map_eqs(a, fn) for a in f.args))
    if isinstance(f, (Implies, Iff)):
        return type(f)(_map_eqs(f.left, fn), _map_eqs(f.right, fn))
    if isinstance(f, (ForAll, Exists, ForAll2, Exists2)):
        names = f.vars if isinstance(f, (ForAll, Exists)) else f.preds
        return type(f)(names, _map_eqs(f.body, fn))
    return f


def _merge_quantifiers(f: Formula) -> Formula:
    if isinstance(f, (ForAll, Exists)):
        body = _merge_quantifiers(f.body)
        if type(body) is type(f):
            return type(f)(f.vars + body.vars, body.body)
        return type(f)(f.vars, body)
    return f


# -- the pipeline -------------------------------------------------------------------------


def _symbols(f: Formula) -> set:
    sig = signature_of(f)
    return set(sig.predicates) | set(sig.functions) | set(sig.constants)


def _freeze_free_vars(F: Formula, G: Formula, fresh: FreshNames) -> tuple:
    """Replace free individual variables by constants; returns the inverse map."""
    fv = sorted(free_vars(F) | free_vars(G))
    sub = {}
    back = {}
    for v in fv:
        c = fresh(v)
        sub[v] = App(c, ())
        back[c] = v
    if not sub:
        return F, G, back
    return substitute(F, sub), substitute(G, sub), back


def _instantiate_tableau(node: TableauNode, freeze: dict, fresh: FreshNames) -> TableauNode:
    lit = node.literal
    if lit is not None:
        lit = Literal(lit.positive, _freeze_atom(lit.atom, freeze, fresh))
    out = TableauNode(lit, node.clause_origin, node.color, [], node.closure)
    out.children = [_instantiate_tableau(c, freeze, fresh) for c in node.children]
    return out


def _freeze_term(t, freeze: dict, fresh: FreshNames):
    if isinstance(t, Var):
        if t.name not in freeze:
            freeze[t.name] = App(fresh("frozen"), ())
        return freeze[t.name]
    return App(t.name, tuple(_freeze_term(a, freeze, fresh) for a in t.args))


def _freeze_atom(a, freeze, fresh):
    if isinstance(a, Eq):
        return Eq(_freeze_term(a.left, freeze, fresh), _freeze_term(a.right, freeze, fresh))
    return Atom(a.pred, tuple(_freeze_term(t, freeze, fresh) for t in a.args))


def colored_clauses(F: Formula, G: Formula, fresh: FreshNames) -> tuple:
    """cnf(F) colored A and cnf(¬G) colored B, with equality axioms if needed."""
    a = cnf(F, fresh)
    b = cnf(Not(G), fresh)
    clauses = [Clause(c.literals, "A") for c in a.clauses] + [Clause(c.literals, "B") for c in b.clauses]
    f_syms = _symbols(F) | set(a.skolem)
    g_syms = _symbols(G) | set(b.skolem)
    cs = ClauseSet(tuple(clauses), {**a.skolem, **b.skolem})

    def color_of(sym):
        return "B" if sym in g_syms and sym not in f_syms else "A"

    return with_equality(cs, color_of), f_syms, g_syms


def interpolate_full(F: Formula, G: Formula, cfg: InterpolationConfig = InterpolationConfig(),
                     fresh: FreshNames | None = None) -> InterpolationResult:
    if fresh is None:
        fresh = FreshNames()
    fresh.reserve(all_symbols(F) | all_symbols(G))
    F1, G1 = reduce_so_entailment(F, G, fresh)
    F1, G1, back = _freeze_free_vars(F1, G1, fresh)
    cs, f_syms, g_syms = colored_clauses(F1, G1, fresh)
    res = prove(cs, cfg.limits, add_equality=False)
    if not isinstance(res, Proved):
        raise InterpolationFailed(f"no proof found: {type(res).__name__}")
    freeze: dict = {}
    ground_root = _instantiate_tableau(res.root, freeze, fresh)
    ground = ground_ipol(ground_root)
    # free variables of the input are shared constants until lifting is done
    f_lift = f_syms | {c for c in back if c in _symbols(F1)}
    g_lift = g_syms | {c for c in back if c in _symbols(G1)}
    H = lift_interpolant(ground, f_lift, g_lift, set(back.values()))
    if back:
        H = _unfreeze(H, back)
    if cfg.shape == "c6":
        H = shape_c6(H)
    return InterpolationResult(H, ground, res, ground_root)


def _unfreeze(H: Formula, back: dict) -> Formula:
    def fn(t):
        if isinstance(t, Var):
            return t
        if not t.args and t.name in back:
            return Var(back[t.name])
        return App(t.name, tuple(fn(a) for a in t.args))

    return _map_terms(H, fn)


def interpolate(task_or_F, G: Formula | None = None, cfg: InterpolationConfig | None = None,
                fresh: FreshNames | None = None) -> Formula:
    """An interpolant H with F ⊨ H ⊨ G in the shared vocabulary."""
    if isinstance(task_or_F, InterpolationTask):
        F, G, cfg = task_or_F.F, task_or_F.G, task_or_F.options
    else:
        F = task_or_F
    return interpolate_full(F, G, cfg or InterpolationConfig(), fresh).interpolant


def symmetric_interpolate(Fs, G: Formula, cfg: InterpolationConfig | None = None,
                          fresh: FreshNames | None = None) -> list:
    """One interpolant per conjunct, computed by iterated binary interpolation."""
    Fs = list(Fs)
    Hs: list = []
    for i, Fi in enumerate(Fs):
        rest = conj(Hs + Fs[i + 1:])
        right = G if rest == TOP else Implies(rest, G)
        Hs.append(interpolate(Fi, right, cfg, fresh))
    return Hs
