from .compiler import compile_formula, decide_formula
from .dfa import (
    Dfa,
    ExtendedAlphabet,
    atom_dfa,
    char_recogniser,
    size_recogniser,
    transition_monoid,
)
from .formula import (
    And,
    CardLe,
    Exists,
    Forall,
    Le,
    Letter,
    Or,
    Subset,
    evaluate,
    format_formula,
    free_vars,
    parse_formula,
)

compile = compile_formula  # noqa: A001 - public name used by the CLI and docs

__all__ = [
    "And", "CardLe", "Dfa", "Exists", "ExtendedAlphabet", "Forall", "Le", "Letter", "Or",
    "Subset", "atom_dfa", "char_recogniser", "compile", "compile_formula", "decide_formula",
    "evaluate", "format_formula", "free_vars", "parse_formula", "size_recogniser",
    "transition_monoid",
]
