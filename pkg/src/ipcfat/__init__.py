"""Proof terms of intuitionistic propositional logic, atomic System F, and
the translations between them."""

from . import fat, ipc, names
from .rules import RuleId
from .syntax import ParseError, parse_fat, parse_ipc, print_fat, print_ipc
from .translate import TranslationKind, rp_type, translate, translate_context

__all__ = [
    "fat", "ipc", "names", "RuleId", "ParseError", "parse_fat", "parse_ipc",
    "print_fat", "print_ipc", "TranslationKind", "rp_type", "translate", "translate_context",
]
