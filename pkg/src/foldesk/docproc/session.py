"""Loading and processing documents within a session."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from ..elimination import EliminationFailed, EliminationTask, eliminate_full
from ..interpolation import InterpolationConfig, InterpolationFailed, UnsupportedShape, interpolate
from ..macros import Expander, FreshNames, MacroDef, MacroError, MacroRegistry
from ..prover import ModelBudget, NotValid, ProverLimits, Valid, ValidityConfig, validity
from ..syntax import Formula, PrintOptions, latex_display, to_latex
from ..transform import ClauseLimitExceeded
from .document import ConfigBlock, Directive, DirectiveBlock, Document, MacroBlock, Prose
from .render import definition_box, escape, failure_box, output_box

SYSTEM_DEFAULTS = {
    "max_depth": 12,
    "model_max": 4,
    "budget": 200_000,
    "time_limit": 60,
    "simp_result": None,
    "printing": True,
    "compact": False,
}

REGISTER_ORIGIN = "@register"


@dataclass
class Session:
    registry: MacroRegistry = field(default_factory=MacroRegistry)
    config: dict = field(default_factory=lambda: dict(SYSTEM_DEFAULTS))
    fresh: FreshNames = field(default_factory=FreshNames)
    result_registers: dict = field(default_factory=dict)
    last_result: Formula | None = None
    documents: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    failures: int = 0

    @property
    def fresh_counter(self) -> int:
        return self.fresh.counter

    def expand(self, f) -> Formula:
        return Expander(self.registry, self.fresh).expand(f)

    def set_register(self, name: str, f: Formula) -> None:
        """Store a result; the name then works as a parameterless macro."""
        origin = f"{REGISTER_ORIGIN}:{name}"
        self.result_registers[name] = f
        self.registry = self.registry.without_origin(origin).define(MacroDef(name, (), f, origin=origin))

    def effective(self, options: dict) -> dict:
        cfg = dict(self.config)
        cfg.update(_normalize(options))
        return cfg


def _normalize(options: dict) -> dict:
    out = {}
    for k, v in options.items():
        if k in ("simp_result", "shape") and isinstance(v, list):
            v = v[0] if v else None
        if k == "shape":
            k = "simp_result"
        if v in ("none", "false"):
            v = None if k == "simp_result" else False
        out[k] = v
    return out


def load_document(doc: Document, s: Session) -> Session:
    """Register macros and document defaults; runs no directives."""
    origin = doc.origin or "<document>"
    reg = s.registry.without_origin(origin)
    for b in doc.blocks:
        if isinstance(b, MacroBlock):
            d = dataclasses.replace(b.macro, origin=origin)
            clash = [o.origin for o in reg.lookup(d.name, d.arity) if o.origin != origin]
            if clash:
                s.warnings.append(f"{d.name}/{d.arity} from {origin} also defined in {clash[0]}")
            reg = reg.define(d)
        elif isinstance(b, ConfigBlock):
            s.config.update(_normalize(b.defaults))
    s.registry = reg
    if origin not in s.documents:
        s.documents.append(origin)
    return s


def process_document(doc: Document, s: Session | None = None) -> tuple:
    """Run all directives in order; returns the LaTeX text and the session."""
    if s is None:
        s = Session()
    load_document(doc, s)
    out: list = []
    for b in doc.blocks:
        if isinstance(b, Prose):
            out.append(b.latex)
        elif isinstance(b, MacroBlock):
            out.append(definition_box(b.macro, _print_opts(s.config)))
        elif isinstance(b, DirectiveBlock):
            text = run_directive(b.directive, s)
            if text:
                out.append(text)
    return "".join(out), s


def _print_opts(cfg: dict) -> PrintOptions:
    return PrintOptions(target="latex", compact=bool(cfg.get("compact")))


def run_directive(d: Directive, s: Session) -> str:
    """Execute one directive and return its rendered box ('' when silent)."""
    cfg = s.effective(d.options)
    opts = _print_opts(cfg)
    try:
        if d.kind == "valid":
            return _valid(d, s, cfg, opts)
        if d.kind == "ipol":
            return _ipol(d, s, cfg, opts)
        if d.kind == "elim":
            return _elim(d, s, cfg, opts)
        if d.kind == "print":
            f = s.expand(d.formula) if cfg.get("expand", True) else d.formula
            return output_box([f"\\noindent Expansion of ${to_latex(d.formula, opts)}$:"], latex_display(f, opts))
        raise ValueError(f"unknown directive {d.kind}")
    except (MacroError, EliminationFailed, InterpolationFailed, UnsupportedShape,
            ClauseLimitExceeded, ValueError, RecursionError) as e:
        s.failures += 1
        return failure_box(d.kind, d.line, str(e))


def _validity_config(cfg: dict) -> ValidityConfig:
    limits = ProverLimits(max_depth=int(cfg["max_depth"]), time_limit=float(cfg["time_limit"]))
    return ValidityConfig(model_max=int(cfg["model_max"]), limits=limits,
                          model_budget=ModelBudget(max_decisions=int(cfg["budget"])))


def _valid(d: Directive, s: Session, cfg: dict, opts: PrintOptions) -> str:
    res = validity(s.expand(d.formula), _validity_config(cfg))
    f = to_latex(d.formula, opts)
    if isinstance(res, Valid):
        lines = [f"\\noindent Valid: ${f}.$"]
    elif isinstance(res, NotValid):
        lines = [f"\\noindent Not valid: ${f}.$\\\\",
                 f"\\noindent Countermodel: {escape(res.counter_model.describe())}."]
    else:
        s.failures += 1
        lines = [f"\\noindent Failed to validate: ${f}.$"]
    return output_box(lines)


def _ipol(d: Directive, s: Session, cfg: dict, opts: PrintOptions) -> str:
    left, right = s.expand(d.formula.left), s.expand(d.formula.right)
    limits = ProverLimits(max_depth=int(cfg["max_depth"]), time_limit=float(cfg["time_limit"]))
    H = interpolate(left, right, InterpolationConfig(limits=limits, shape=cfg.get("simp_result")), s.fresh)
    return _result(d, s, cfg, opts, H, "interpolation")


def _elim(d: Directive, s: Session, cfg: dict, opts: PrintOptions) -> str:
    task = EliminationTask(s.expand(d.formula), simp_result=cfg.get("simp_result"))
    res = eliminate_full(task, s.fresh)
    return _result(d, s, cfg, opts, res.formula, "elimination")


def _result(d: Directive, s: Session, cfg: dict, opts: PrintOptions, H: Formula, what: str) -> str:
    s.last_result = H
    s.set_register("last_result", H)
    reg = cfg.get("r") or cfg.get("result_register")
    if reg:
        s.set_register(str(reg), H)
    if not cfg.get("printing", True):
        return ""
    return output_box([f"\\noindent Input: ${to_latex(d.formula, opts)}.$\\\\",
                       f"\\noindent Result of {what}:"], latex_display(H, opts))

