"""Command-line front end.

Exit codes: 0 success, 1 not valid or task failure, 2 undecided or out of
resources, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .docproc import POSTAMBLE, PREAMBLE, Session, load_document, parse_document, process_document
from .elimination import EliminationFailed, EliminationTask, eliminate_full
from .export import UnsupportedExport, export_dimacs, export_tptp
from .interpolation import InterpolationConfig, InterpolationFailed, UnsupportedShape, interpolate
from .macros import MacroError
from .prover import ModelBudget, NotValid, ProverLimits, Valid, ValidityConfig, validity
from .syntax import Implies, ParseError, PrintOptions, latex_display, parse_formula, to_text
from .transform import ClauseLimitExceeded, cnf

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--load", action="append", default=[], metavar="FILE", help="document whose macros are loaded")
    p.add_argument("--max-depth", type=int, help="prover depth bound")
    p.add_argument("--model-max", type=int, help="largest domain tried by the model finder")
    p.add_argument("--budget", type=int, help="model finder decision budget")
    p.add_argument("--shape", choices=["none", "c6"], help="result shaping")
    p.add_argument("--compact", action="store_true", help="compact argument syntax")
    p.add_argument("--latex", action="store_true", help="print results as LaTeX")
    p.add_argument("--standalone", action="store_true", help="wrap LaTeX output in a document preamble")
    p.add_argument("--out", metavar="PATH", help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="foldesk", description="First-order logic workbench.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("process", help="process a document into LaTeX")
    p.add_argument("file")
    _common(p)
    p = sub.add_parser("valid", help="check validity of a formula (or a file holding one)")
    p.add_argument("formula")
    p.add_argument("--show-model", action="store_true", help="print the countermodel when not valid")
    _common(p)
    p = sub.add_parser("ipol", help="interpolant of an implication F -> G")
    p.add_argument("formula")
    _common(p)
    p = sub.add_parser("elim", help="eliminate second-order quantifiers")
    p.add_argument("formula")
    _common(p)
    p = sub.add_parser("expand", help="expand macros")
    p.add_argument("formula")
    _common(p)
    p = sub.add_parser("export", help="export to TPTP FOF or DIMACS CNF")
    p.add_argument("format", choices=["tptp", "dimacs"])
    p.add_argument("formula")
    p.add_argument("--role", default="axiom", choices=["axiom", "conjecture", "hypothesis"])
    p.add_argument("--name", default="f1")
    p.add_argument("--no-mapping", action="store_true", help="omit DIMACS atom mapping comments")
    _common(p)
    return ap


def _session(args) -> Session:
    s = Session()
    for path in args.load:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(str(e)) from e
        load_document(parse_document(text, origin=str(path)), s)
    for key, attr in (("max_depth", "max_depth"), ("model_max", "model_max"), ("budget", "budget")):
        v = getattr(args, attr, None)
        if v is not None:
            s.config[key] = v
    if args.shape:
        s.config["simp_result"] = None if args.shape == "none" else args.shape
    if args.compact:
        s.config["compact"] = True
    return s


def _formula_arg(text: str):
    path = Path(text)
    if len(text) < 4096 and path.suffix in (".p", ".fol", ".txt") and path.is_file():
        text = path.read_text(encoding="utf-8")
    return parse_formula(text.strip().rstrip("."))


def _emit(args, text: str) -> None:
    if args.latex and args.standalone:
        text = PREAMBLE + text + "\n" + POSTAMBLE
    if args.out:
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        print(text)


def _show(args, s: Session, f) -> str:
    if args.latex:
        return latex_display(f, PrintOptions(target="latex", compact=bool(s.config.get("compact"))))
    return to_text(f, PrintOptions(compact=bool(s.config.get("compact"))))


def _limits(s: Session) -> ProverLimits:
    return ProverLimits(max_depth=int(s.config["max_depth"]), time_limit=float(s.config["time_limit"]))


def cmd_process(args) -> int:
    s = _session(args)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(str(e)) from e
    tex, s = process_document(parse_document(text, origin=args.file), s)
    if args.standalone:
        tex = PREAMBLE + tex + POSTAMBLE
    if args.out:
        Path(args.out).write_text(tex, encoding="utf-8")
    else:
        sys.stdout.write(tex)
    for w in s.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_FAIL if s.failures else EXIT_OK


def cmd_valid(args) -> int:
    s = _session(args)
    f = s.expand(_formula_arg(args.formula))
    cfg = ValidityConfig(model_max=int(s.config["model_max"]), limits=_limits(s),
                         model_budget=ModelBudget(max_decisions=int(s.config["budget"])))
    res = validity(f, cfg)
    if isinstance(res, Valid):
        _emit(args, "*Valid*")
        return EXIT_OK
    if isinstance(res, NotValid):
        text = "*Not valid*"
        if args.show_model:
            text += "\n" + res.counter_model.describe()
        _emit(args, text)
        return EXIT_FAIL
    _emit(args, "*Failed to validate*")
    return EXIT_UNKNOWN


def cmd_ipol(args) -> int:
    s = _session(args)
    f = _formula_arg(args.formula)
    if not isinstance(f, Implies):
        raise UsageError("ipol needs an implication F -> G")
    cfg = InterpolationConfig(limits=_limits(s), shape=s.config.get("simp_result"))
    H = interpolate(s.expand(f.left), s.expand(f.right), cfg, s.fresh)
    _emit(args, _show(args, s, H))
    return EXIT_OK


def cmd_elim(args) -> int:
    s = _session(args)
    f = s.expand(_formula_arg(args.formula))
    res = eliminate_full(EliminationTask(f, simp_result=s.config.get("simp_result")), s.fresh)
    _emit(args, _show(args, s, res.formula))
    return EXIT_OK


def cmd_expand(args) -> int:
    s = _session(args)
    _emit(args, _show(args, s, s.expand(_formula_arg(args.formula))))
    return EXIT_OK


def cmd_export(args) -> int:
    s = _session(args)
    f = s.expand(_formula_arg(args.formula))
    if args.format == "tptp":
        _emit(args, export_tptp(f, args.role, args.name))
    else:
        text = export_dimacs(cnf(f), mapping=not args.no_mapping)
        _emit(args, text.rstrip("\n"))
    return EXIT_OK


COMMANDS = {
    "process": cmd_process, "valid": cmd_valid, "ipol": cmd_ipol,
    "elim": cmd_elim, "expand": cmd_expand, "export": cmd_export,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if not args.command:
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError, MacroError, UnsupportedShape, UnsupportedExport) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EliminationFailed as e:
        print(f"elimination failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (InterpolationFailed, ClauseLimitExceeded) as e:
        print(f"gave up: {e}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
