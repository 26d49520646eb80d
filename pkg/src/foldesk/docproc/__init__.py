"""Literate documents: parsing, loading into a session, processing to LaTeX."""

from .document import (
    ConfigBlock, Directive, DirectiveBlock, Document, MacroBlock, Prose, parse_document,
)
from .render import POSTAMBLE, PREAMBLE
from .session import SYSTEM_DEFAULTS, Session, load_document, process_document, run_directive

__all__ = [
    "ConfigBlock", "Directive", "DirectiveBlock", "Document", "MacroBlock", "Prose",
    "parse_document", "PREAMBLE", "POSTAMBLE", "SYSTEM_DEFAULTS", "Session",
    "load_document", "process_document", "run_directive",
]
