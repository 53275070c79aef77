"""Compilation of cost formulas into recognisers, and the decision front end."""
from __future__ import annotations

from typing import Iterable, Optional

from ..errors import CapacityError, FormulaError
from ..projection import inf_project, sup_project
from ..recogniser import (
    Decision,
    Recogniser,
    decide_boundedness,
    decide_divergence,
    decide_domination,
    max_rec,
    min_rec,
    precompose,
)
from .dfa import ExtendedAlphabet, atom_dfa, char_recogniser, size_recogniser
from .formula import ATOMS, And, CardLe, Exists, Forall, Or, format_formula, free_vars


def _align(R: Recogniser, sub: ExtendedAlphabet, ext: ExtendedAlphabet) -> Recogniser:
    if sub.vars == ext.vars:
        return R
    return precompose(R, {s: ext.restrict(s, sub) for s in ext.symbols})


def compile_formula(phi, alphabet: Iterable[str]) -> Recogniser:
    """Recogniser over the base alphabet extended by the free variables of ``phi``."""
    base = tuple(str(a) for a in alphabet)

    def go(f):
        ext = ExtendedAlphabet(base, free_vars(f))
        try:
            if isinstance(f, ATOMS):
                return char_recogniser(atom_dfa(f, ext))
            if isinstance(f, CardLe):
                return size_recogniser(ext, f.var)
            if isinstance(f, (And, Or)):
                parts = []
                for g in (f.left, f.right):
                    sub = ExtendedAlphabet(base, free_vars(g))
                    parts.append(_align(go(g), sub, ext))
                combine = max_rec if isinstance(f, And) else min_rec
                return combine(*parts)
            if isinstance(f, (Exists, Forall)):
                body = go(f.body)
                inner = ExtendedAlphabet(base, free_vars(f.body))
                if f.var not in inner.vars:
                    return body
                z = {s: inner.restrict(s, ext) for s in inner.symbols}
                project = inf_project if isinstance(f, Exists) else sup_project
                return project(body, z, target=ext.symbols, trim=True)
        except CapacityError as exc:
            raise CapacityError(f"{exc} while compiling {format_formula(f)}") from exc
        raise FormulaError(f"not a formula: {f!r}")

    return go(phi)


TASKS = ("bounded", "diverges", "dominates")


def decide_formula(task: str, phi, psi=None, alphabet: Iterable[str] = "ab") -> Decision:
    """``bounded`` / ``diverges`` on phi, or ``dominates``: psi ≼ phi.

    ``dominates(phi, psi)`` reads "phi dominates psi", i.e. psi is bounded
    wherever phi is.
    """
    if task not in TASKS:
        raise FormulaError(f"unknown task {task!r}")
    for f in (phi, psi):
        if f is not None and free_vars(f):
            raise FormulaError(f"formula has free variables {sorted(free_vars(f))}")
    alphabet = tuple(alphabet)
    R = compile_formula(phi, alphabet)
    if task == "bounded":
        return decide_boundedness(R)
    if task == "diverges":
        return decide_divergence(R)
    if psi is None:
        raise FormulaError("dominates needs two formulas")
    return decide_domination(compile_formula(psi, alphabet), R)
