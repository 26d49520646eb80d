"""Formula macros: registry, pattern-matched expansion and builtins.

A macro definition has parameters (patterns), a body, and optional
``where`` bindings that compute further parameter values with a small set
of builtins.  Parameters that are still unbound after the ``where``
bindings are bound to fresh symbols.  A parameter used in predicate
position may be instantiated with a predicate symbol or a lambda.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    And, App, Atom, Bot, Eq, Exists, Exists2, ForAll, ForAll2, Formula,
    Iff, Implies, Lambda, ListExpr, MacroCall, Not, Or, Top, Var,
    all_symbols, conj, forall, free_vars, fresh_name, is_param,
    rename_predicate, signature_of, substitute, term_to_formula,
)
from .syntax.ops import _subst


class MacroError(ValueError):
    pass


class UnknownMacro(MacroError):
    pass


class NoMatchingClause(MacroError):
    pass


class ExpansionDepthExceeded(MacroError):
    pass


class BuiltinError(MacroError):
    pass


class FreshNames:
    """Session-wide supply of fresh symbols.

    Names are ``base`` or ``base`` plus the smallest unused number.  Every
    generated name is remembered, so later requests never collide with it.
    """

    def __init__(self, used=()):
        self.used: set = set(used)
        self.generated: list = []

    @property
    def counter(self) -> int:
        return len(self.generated)

    def reserve(self, names) -> None:
        self.used.update(names)

    def __call__(self, base: str) -> str:
        name = fresh_name(base, self.used)
        self.used.add(name)
        self.generated.append(name)
        return name

    def copy(self) -> "FreshNames":
        other = FreshNames(self.used)
        other.generated = list(self.generated)
        return other


# -- definitions --------------------------------------------------------------

BUILTINS = {
    # name: (min args, max args, number of results)
    "rename_free_predicate": (2, 2, 2),
    "arity": (2, 2, 1),
    "implications": (2, 3, 1),
    "fresh": (1, 1, 1),
}


@dataclass(frozen=True)
class Builtin:
    name: str
    args: tuple

    def __post_init__(self):
        if self.name not in BUILTINS:
            raise MacroError(f"unknown builtin {self.name!r}")
        lo, hi, _ = BUILTINS[self.name]
        if not lo <= len(self.args) <= hi:
            raise MacroError(f"builtin {self.name} takes {lo}..{hi} arguments")


@dataclass(frozen=True)
class WhereBinding:
    targets: tuple  # parameter names receiving the builtin's results
    call: Builtin


@dataclass(frozen=True)
class MacroDef:
    name: str
    params: tuple  # patterns: parameter atoms/terms or ground structures
    body: Formula
    where: tuple = ()
    origin: str | None = None

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def key(self) -> tuple:
        return (self.name, len(self.params))


def _params_in(e, acc: set) -> set:
    for s in all_symbols(e):
        if is_param(s):
            acc.add(s)
    return acc


def check_macro(d: MacroDef) -> None:
    """Reject where bindings that use parameters before they are bound."""
    bound: set = set()
    for p in d.params:
        _params_in(p, bound)
    for wb in d.where:
        used: set = set()
        for a in wb.call.args:
            _params_in(a, used)
        if wb.call.name == "fresh":
            used = set()
        missing = used - bound
        if missing:
            raise MacroError(f"macro {d.name}/{d.arity}: where binding uses unbound parameter(s) {sorted(missing)}")
        for t in wb.targets:
            if not is_param(t):
                raise MacroError(f"macro {d.name}/{d.arity}: binding target {t!r} is not a parameter")
        if len(wb.targets) != BUILTINS[wb.call.name][2]:
            raise MacroError(f"macro {d.name}/{d.arity}: {wb.call.name} yields {BUILTINS[wb.call.name][2]} value(s)")
        bound.update(wb.targets)


@dataclass(frozen=True)
class MacroRegistry:
    """Immutable ordered collection of macro definitions."""

    defs: tuple = ()

    def define(self, d: MacroDef) -> "MacroRegistry":
        check_macro(d)
        return MacroRegistry(self.defs + (d,))

    def lookup(self, name: str, arity: int) -> list:
        return [d for d in self.defs if d.name == name and d.arity == arity]

    def has(self, name: str, arity: int) -> bool:
        return any(d.name == name and d.arity == arity for d in self.defs)

    def without_origin(self, origin) -> "MacroRegistry":
        return MacroRegistry(tuple(d for d in self.defs if d.origin != origin))

    def keys(self) -> list:
        seen = []
        for d in self.defs:
            if d.key not in seen:
                seen.append(d.key)
        return seen

    def symbols(self) -> set:
        acc: set = set()
        for d in self.defs:
            acc.add(d.name)
            acc |= all_symbols(d.body)
            for p in d.params:
                acc |= all_symbols(p)
        return acc

    def __len__(self) -> int:
        return len(self.defs)


def define_macro(reg: MacroRegistry, d: MacroDef) -> MacroRegistry:
    return reg.define(d)


# -- lambda application -------------------------------------------------------


def apply_lambda(lam: Lambda, args) -> Formula:
    """Capture-avoiding beta reduction of ``lam`` applied to ``args``."""
    args = tuple(args)
    if len(args) != len(lam.params):
        raise MacroError(f"lambda with {len(lam.params)} parameters applied to {len(args)} arguments")
    return substitute(lam.body, dict(zip(lam.params, args)))


# -- matching and instantiation ------------------------------------------------


def _as_symbol(v) -> str | None:
    if isinstance(v, App) and not v.args:
        return v.name
    if isinstance(v, Atom) and not v.args:
        return v.pred
    if isinstance(v, str):
        return v
    return None


def _head(e):
    if isinstance(e, App):
        return e.name, e.args
    if isinstance(e, Atom):
        return e.pred, e.args
    return None


def match(pattern, value, env: dict) -> bool:
    h = _head(pattern)
    if h is not None and is_param(h[0]) and not h[1]:
        if h[0] in env:
            return _same(env[h[0]], value)
        env[h[0]] = value
        return True
    if h is not None:
        hv = _head(value)
        if hv is None or hv[0] != h[0] or len(hv[1]) != len(h[1]):
            return False
        return all(match(p, v, env) for p, v in zip(h[1], hv[1]))
    if isinstance(pattern, ListExpr):
        return (isinstance(value, ListExpr) and len(value.items) == len(pattern.items)
                and all(match(p, v, env) for p, v in zip(pattern.items, value.items)))
    return _same(pattern, value)


def _same(a, b) -> bool:
    if a == b:
        return True
    ha, hb = _head(a), _head(b)
    if ha is not None and hb is not None:
        return ha[0] == hb[0] and len(ha[1]) == len(hb[1]) and all(_same(x, y) for x, y in zip(ha[1], hb[1]))
    return False


class _Instantiator:
    def __init__(self, env: dict):
        self.env = env
        danger: set = set()
        for v in env.values():
            if isinstance(v, (Formula, App, Var, ListExpr)):
                danger |= free_vars(v)
        self.danger = danger

    def value(self, name: str):
        if name not in self.env:
            raise MacroError(f"unbound parameter {name}")
        return self.env[name]

    def term(self, t):
        if isinstance(t, Var):
            return t
        if is_param(t.name):
            v = self.value(t.name)
            if not t.args:
                if isinstance(v, (App, Var)):
                    return v
                if isinstance(v, Atom):
                    return App(v.pred, v.args)
                if isinstance(v, int):
                    return App(str(v), ())
                raise MacroError(f"parameter {t.name} used as a term but bound to {v!r}")
            sym = _as_symbol(v)
            if sym is None:
                raise MacroError(f"parameter {t.name} used as a function but bound to {v!r}")
            return App(sym, tuple(self.term(a) for a in t.args))
        if not t.args:
            return t
        return App(t.name, tuple(self.term(a) for a in t.args))

    def names(self, names: tuple) -> tuple:
        out = []
        for n in names:
            if not is_param(n):
                out.append(n)
                continue
            v = self.value(n)
            if isinstance(v, ListExpr):
                for item in v.items:
                    s = _as_symbol(item)
                    if s is None:
                        raise MacroError(f"parameter {n} must be bound to symbols, got {item!r}")
                    out.append(s)
            else:
                s = _as_symbol(v)
                if s is None:
                    raise MacroError(f"parameter {n} must be bound to a symbol, got {v!r}")
                out.append(s)
        return tuple(out)

    def expr(self, e):
        if isinstance(e, (App, Var)):
            return self.term(e)
        if isinstance(e, ListExpr):
            return ListExpr(tuple(self.expr(i) for i in e.items))
        return self.formula(e)

    def _binder(self, f, names, cls):
        names = self.names(names)
        body = f.body
        clash = [n for n in names if n in self.danger]
        if clash:
            used = self.danger | all_symbols(body) | set(names)
            ren = {}
            new = []
            for n in names:
                if n in self.danger:
                    m = fresh_name(n, used)
                    used.add(m)
                    ren[n] = Var(m)
                    new.append(m)
                else:
                    new.append(n)
            body = _subst(body, ren)
            names = tuple(new)
        return cls(names, self.formula(body))

    def formula(self, f):
        if isinstance(f, Atom):
            args = tuple(self.term(a) for a in f.args)
            if not is_param(f.pred):
                return Atom(f.pred, args) if args else f
            v = self.value(f.pred)
            if not args:
                if isinstance(v, Lambda):
                    raise MacroError(f"lambda parameter {f.pred} used without arguments")
                if isinstance(v, (Formula, App, Var)):
                    return term_to_formula(v)
                raise MacroError(f"parameter {f.pred} used as a formula but bound to {v!r}")
            if isinstance(v, Lambda):
                return apply_lambda(v, args)
            sym = _as_symbol(v)
            if sym is None:
                raise MacroError(f"parameter {f.pred} used as a predicate but bound to {v!r}")
            return Atom(sym, args)
        if isinstance(f, Eq):
            return Eq(self.term(f.left), self.term(f.right))
        if isinstance(f, (Top, Bot)):
            return f
        if isinstance(f, Not):
            return Not(self.formula(f.arg))
        if isinstance(f, (And, Or)):
            return type(f)(tuple(self.formula(a) for a in f.args))
        if isinstance(f, (Implies, Iff)):
            return type(f)(self.formula(f.left), self.formula(f.right))
        if isinstance(f, (ForAll, Exists)):
            return self._binder(f, f.vars, type(f))
        if isinstance(f, Lambda):
            return self._binder(f, f.params, Lambda)
        if isinstance(f, (ForAll2, Exists2)):
            return type(f)(self.names(f.preds), self.formula(f.body))
        if isinstance(f, MacroCall):
            return MacroCall(f.name, tuple(self.expr(a) for a in f.args))
        raise MacroError(f"cannot instantiate {f!r}")


def instantiate(e, env: dict):
    """Replace macro parameters in ``e`` by their values from ``env``."""
    return _Instantiator(env).expr(e)


# -- expansion ------------------------------------------------------------------

_VAR_NAMES = ("x", "y", "z", "u", "v", "w")


def var_names(n: int) -> tuple:
    if n <= len(_VAR_NAMES):
        return _VAR_NAMES[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


class Expander:
    def __init__(self, registry: MacroRegistry, fresh: FreshNames | None = None, max_depth: int = 512):
        self.registry = registry
        self.fresh = fresh if fresh is not None else FreshNames()
        self.max_depth = max_depth

    def expand(self, f) -> Formula:
        self.fresh.reserve(all_symbols(f) | self.registry.symbols())
        return self._expand(f, 0)

    def _expand(self, f, depth: int):
        if isinstance(f, Atom):
            if is_param(f.pred):
                raise MacroError(f"parameter {f.pred} outside a macro definition")
            if self.registry.has(f.pred, len(f.args)):
                return self._call(f.pred, f.args, depth)
            return f
        if isinstance(f, MacroCall):
            if not self.registry.has(f.name, len(f.args)):
                raise UnknownMacro(f"unknown macro {f.name}/{len(f.args)}")
            return self._call(f.name, f.args, depth)
        if isinstance(f, (Eq, Top, Bot)):
            return f
        if isinstance(f, Not):
            return Not(self._expand(f.arg, depth))
        if isinstance(f, (And, Or)):
            return type(f)(tuple(self._expand(a, depth) for a in f.args))
        if isinstance(f, (Implies, Iff)):
            return type(f)(self._expand(f.left, depth), self._expand(f.right, depth))
        if isinstance(f, (ForAll, Exists, ForAll2, Exists2)):
            names = f.vars if isinstance(f, (ForAll, Exists)) else f.preds
            return type(f)(names, self._expand(f.body, depth))
        if isinstance(f, Lambda):
            raise MacroError("lambda is only allowed as a macro argument")
        if isinstance(f, (App, Var)):
            return self._expand(term_to_formula(f), depth)
        raise MacroError(f"cannot expand {f!r}")

    def _call(self, name: str, args: tuple, depth: int) -> Formula:
        if depth >= self.max_depth:
            raise ExpansionDepthExceeded(f"macro expansion deeper than {self.max_depth} (runaway recursion in {name}?)")
        for d in self.registry.lookup(name, len(args)):
            env: dict = {}
            if all(match(p, a, env) for p, a in zip(d.params, args)):
                break
        else:
            raise NoMatchingClause(f"no definition of {name}/{len(args)} matches the arguments")
        for wb in d.where:
            results = self.builtin(wb.call, env, depth)
            for t, v in zip(wb.targets, results):
                env[t] = v
        free_params: set = set()
        _params_in(d.body, free_params)
        for p in sorted(free_params - set(env)):
            env[p] = App(self.fresh(_fresh_base(p)), ())
        body = instantiate(d.body, env)
        return self._expand(body, depth + 1)

    # -- builtins --

    def _formula_arg(self, e, env, depth) -> Formula:
        if isinstance(e, App) and not e.args and is_param(e.name):
            v = env.get(e.name)
            if isinstance(v, Formula):
                return self._expand(v, depth + 1)
        return self._expand(term_to_formula(instantiate(e, env)), depth + 1)

    def _symbol_arg(self, e, env) -> str:
        v = instantiate(e, env)
        s = _as_symbol(v)
        if s is None:
            raise BuiltinError(f"expected a symbol, got {v!r}")
        return s

    def _symbols_arg(self, e, env) -> list:
        v = instantiate(e, env)
        if isinstance(v, ListExpr):
            out = []
            for item in v.items:
                s = _as_symbol(item)
                if s is None:
                    raise BuiltinError(f"expected a symbol, got {item!r}")
                out.append(s)
            return out
        s = _as_symbol(v)
        if s is None:
            raise BuiltinError(f"expected a symbol list, got {v!r}")
        return [s]

    def builtin(self, call: Builtin, env: dict, depth: int = 0) -> tuple:
        arities = env.setdefault("__arity__", {})
        if call.name == "rename_free_predicate":
            f = self._formula_arg(call.args[0], env, depth)
            p = self._symbol_arg(call.args[1], env)
            sig = signature_of(f)
            if p not in sig.predicates:
                raise BuiltinError(f"predicate {p} does not occur free in {f}")
            new = self.fresh("q")
            arities[p] = arities[new] = sig.predicates[p][0]
            return (rename_predicate(f, p, new), App(new, ()))
        if call.name == "arity":
            p = self._symbol_arg(call.args[0], env)
            f = self._formula_arg(call.args[1], env, depth)
            sig = signature_of(f)
            if p not in sig.predicates:
                raise BuiltinError(f"predicate {p} does not occur in {f}")
            n = sig.predicates[p][0]
            arities[p] = n
            return (n,)
        if call.name == "implications":
            ps = self._symbols_arg(call.args[0], env)
            qs = self._symbols_arg(call.args[1], env)
            if len(ps) != len(qs):
                raise BuiltinError("implications: predicate lists differ in length")
            explicit = None
            if len(call.args) == 3:
                explicit = instantiate(call.args[2], env)
            parts = []
            for i, (p, q) in enumerate(zip(ps, qs)):
                n = _arity_for(explicit, i, p, q, arities)
                xs = var_names(n)
                args = tuple(Var(x) for x in xs)
                parts.append(forall(xs, Implies(Atom(p, args), Atom(q, args))))
            return (conj(parts),)
        if call.name == "fresh":
            base = self._symbol_arg(call.args[0], env)
            return (App(self.fresh(base), ()),)
        raise BuiltinError(f"unknown builtin {call.name}")


def _arity_for(explicit, i, p, q, arities) -> int:
    if explicit is not None:
        if isinstance(explicit, int):
            return explicit
        if isinstance(explicit, App) and explicit.name.isdigit():
            return int(explicit.name)
        if isinstance(explicit, ListExpr):
            return _arity_for(explicit.items[i], 0, p, q, arities)
        raise BuiltinError(f"bad arity argument {explicit!r}")
    for s in (p, q):
        if s in arities:
            return arities[s]
    raise BuiltinError(f"implications: arity of {p} unknown")


def _fresh_base(param: str) -> str:
    base = param.lstrip("_").lower()
    while base.endswith("_p"):
        base = base[:-2]
    return base or "c"


def expand(reg: MacroRegistry, f, fresh: FreshNames | None = None, max_depth: int = 512) -> Formula:
    """Expand all macro calls in ``f``."""
    return Expander(reg, fresh, max_depth).expand(f)


def builtin_eval(call: Builtin, env: dict, registry: MacroRegistry | None = None,
                 fresh: FreshNames | None = None):
    """Evaluate one builtin; single results are returned unwrapped."""
    ex = Expander(registry or MacroRegistry(), fresh)
    for v in env.values():
        if isinstance(v, (Formula, App, Var, ListExpr)):
            ex.fresh.reserve(all_symbols(v))
    out = ex.builtin(call, dict(env))
    return out[0] if len(out) == 1 else out
