"""LaTeX boxes for definitions and task outputs."""

from __future__ import annotations

from ..macros import MacroDef, WhereBinding
from ..syntax import Atom, ListExpr, PrintOptions, latex_display, to_latex

BOX_OPEN = "\\begin{center}\\fbox{\\begin{minipage}{0.95\\linewidth}\n"
BOX_CLOSE = "\\end{minipage}}\\end{center}\n"

PREAMBLE = (
    "\\documentclass{article}\n"
    "\\usepackage{amsmath,amssymb}\n"
    "\\begin{document}\n"
)
POSTAMBLE = "\\end{document}\n"

_ESCAPES = {
    "\\": r"\textbackslash{}", "{": r"\{", "}": r"\}", "_": r"\_", "%": r"\%",
    "&": r"\&", "#": r"\#", "$": r"\$", "^": r"\^{}", "~": r"\~{}",
}


def escape(text: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in text)


def output_box(lines: list, display: str | None = None) -> str:
    body = "\n".join(lines) + "\n"
    if display is not None:
        body += display + "\n"
    return BOX_OPEN + body + BOX_CLOSE


def failure_box(kind: str, line: int, message: str) -> str:
    return output_box([f"\\noindent Failed ({escape(kind)} directive, line {line}): {escape(message)}"])


def _head(d: MacroDef, opts: PrintOptions) -> str:
    name = to_latex(_atom_like(d.name), opts)
    if not d.params:
        return name
    return name + "(" + ",".join(to_latex(p, opts) for p in d.params) + ")"


def _atom_like(name: str) -> Atom:
    return Atom(name, ())


def _binding(wb: WhereBinding, opts: PrintOptions) -> str:
    t = [to_latex(_atom_like(x), opts) for x in wb.targets]
    args = [to_latex(a, opts) for a in wb.call.args]
    lhs = t[0] if len(t) == 1 else "(" + ",".join(t) + ")"
    name = wb.call.name
    if name == "rename_free_predicate":
        rhs = f"{args[0]}[{args[1]} \\mapsto {t[1]}]"
        lhs = t[0]
    elif name == "arity":
        rhs = f"\\mathrm{{arity\\ of}}\\; {args[0]} \\;\\mathrm{{in}}\\; {args[1]}"
    elif name == "implications":
        ps, qs = (a if isinstance(x, ListExpr) else f"{{[}}{a}{{]}}" for a, x in zip(args[:2], wb.call.args[:2]))
        rhs = f"\\mathrm{{transfer\\ clauses}}\\; {ps} \\rightarrow {qs}"
    else:
        rhs = f"\\mathrm{{{name.replace('_', chr(92) + '_')}}}(" + ",".join(args) + ")"
    return f"{lhs} \\mathrel{{\\mathop:}}= {rhs}"


def definition_box(d: MacroDef, opts: PrintOptions = PrintOptions(target="latex")) -> str:
    end = "," if d.where else "."
    lines = [f"\\noindent ${_head(d, opts)} \\mathrel{{\\mathop:}}=$"]
    out = "\n".join(lines) + "\n" + latex_display(d.body, opts, end=end) + "\n"
    if d.where:
        bs = [_binding(wb, opts) for wb in d.where]
        out += "where\n\\[\\begin{array}{l}\n" + ",\\\\\n".join(bs) + ".\n\\end{array}\\]\n"
    return BOX_OPEN + out + BOX_CLOSE
