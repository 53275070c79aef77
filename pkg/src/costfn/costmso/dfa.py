"""Extended alphabets, atom automata and their transition monoids."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable

import numpy as np

from ..algebra import lift_standard
from ..corpus import counta
from ..errors import FormulaError
from ..recogniser import Recogniser
from .formula import Le, Letter, Subset, atom_vars


@dataclass(frozen=True)
class ExtendedAlphabet:
    """Base letters paired with one bit per free variable.

    Symbols are ``base/bits`` with bits in sorted variable order, or just
    ``base`` when there are no variables.
    """

    base: tuple
    vars: tuple

    def __init__(self, base: Iterable, vars: Iterable = ()):
        object.__setattr__(self, "base", tuple(str(a) for a in base))
        object.__setattr__(self, "vars", tuple(sorted(set(vars))))

    def symbol(self, a: str, bits: tuple) -> str:
        if not self.vars:
            return a
        return a + "/" + "".join(str(int(b)) for b in bits)

    def decode(self, sym: str):
        if not self.vars:
            return sym, ()
        a, _, bits = sym.rpartition("/")
        return a, tuple(int(c) for c in bits)

    @property
    def symbols(self) -> tuple:
        return tuple(self.symbol(a, bits) for a in self.base
                     for bits in cartesian((0, 1), repeat=len(self.vars)))

    def bit(self, sym: str, var: str) -> int:
        return self.decode(sym)[1][self.vars.index(var)]

    def restrict(self, sym: str, sub: "ExtendedAlphabet") -> str:
        """Drop the bits of variables not in ``sub``."""
        a, bits = self.decode(sym)
        return sub.symbol(a, tuple(bits[self.vars.index(v)] for v in sub.vars))

    def encode(self, u, valuation) -> list:
        """Symbols of word ``u`` under a valuation (1-based positions)."""
        return [self.symbol(a, tuple(int(i + 1 in valuation[v]) for v in self.vars))
                for i, a in enumerate(u)]


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple
    n_states: int
    initial: int
    accepting: frozenset
    delta: tuple  # delta[q][k]: successor of q on alphabet[k]

    def run(self, word) -> int:
        q = self.initial
        for s in word:
            q = self.delta[q][self.alphabet.index(s)]
        return q

    def accepts(self, word) -> bool:
        return self.run(word) in self.accepting

    def complement(self) -> "Dfa":
        acc = frozenset(range(self.n_states)) - self.accepting
        return Dfa(self.alphabet, self.n_states, self.initial, acc, self.delta)


def _dfa(ext: ExtendedAlphabet, n: int, accepting, step) -> Dfa:
    syms = ext.symbols
    delta = tuple(tuple(step(q, *ext.decode(s)) for s in syms) for q in range(n))
    return Dfa(syms, n, 0, frozenset(accepting), delta)


def atom_dfa(atom, ext: ExtendedAlphabet) -> Dfa:
    for v in atom_vars(atom):
        if v not in ext.vars:
            raise FormulaError(f"variable {v} is not in the alphabet's variable set")
    if isinstance(atom, Letter):
        i = ext.vars.index(atom.var)

        def step(q, a, bits):  # 0 none seen, 1 one seen, 2 sink
            if not bits[i]:
                return q
            return 1 if q == 0 and a == atom.letter else 2

        d = _dfa(ext, 3, {1}, step)
    elif isinstance(atom, Le):
        i, j = ext.vars.index(atom.x), ext.vars.index(atom.y)

        def step(q, a, bits):  # 0 none, 1 X seen, 2 both seen, 3 sink
            x, y = bits[i], bits[j]
            if q == 3:
                return 3
            if q == 0:
                return {(0, 0): 0, (1, 0): 1, (1, 1): 2}.get((x, y), 3)
            if q == 1:
                return {(0, 0): 1, (0, 1): 2}.get((x, y), 3)
            return 2 if (x, y) == (0, 0) else 3

        d = _dfa(ext, 4, {2}, step)
    elif isinstance(atom, Subset):
        i, j = ext.vars.index(atom.x), ext.vars.index(atom.y)

        def step(q, a, bits):
            return 1 if q == 1 or (bits[i] and not bits[j]) else 0

        d = _dfa(ext, 2, {0}, step)
    else:
        raise FormulaError(f"no automaton for {atom!r}")
    return d.complement() if atom.negated else d


def transition_monoid(d: Dfa):
    """Monoid of state transformations generated by the letters.

    Returns ``(M, h, accepting)``: ``h`` maps each symbol to its element
    and ``accepting`` holds the elements sending the initial state into the
    accepting set.  The product ``x.y`` applies x first.
    """
    ident = tuple(range(d.n_states))
    letters = [tuple(d.delta[q][k] for q in range(d.n_states)) for k in range(len(d.alphabet))]
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in letters:
            y = tuple(g[q] for q in x)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        i += 1
    m = len(elems)
    P = np.empty((m, m), dtype=np.int64)
    for a, x in enumerate(elems):
        for b, y in enumerate(elems):
            P[a, b] = index[tuple(y[q] for q in x)]
    names = ["t" + "-".join(str(q) for q in x) for x in elems]
    M = lift_standard(names, P, 0)
    h = {s: index[g] for s, g in zip(d.alphabet, letters)}
    acc = frozenset(i for i, x in enumerate(elems) if x[d.initial] in d.accepting)
    return M, h, acc


def char_recogniser(d: Dfa) -> Recogniser:
    """0 on the language of ``d`` and infinity elsewhere.

    The recognising set collects the elements where the function is large,
    so it is the complement of the accepting elements.
    """
    M, h, acc = transition_monoid(d)
    return Recogniser(M, d.alphabet, h, frozenset(range(M.size)) - acc)


def size_recogniser(ext: ExtendedAlphabet, var: str) -> Recogniser:
    """Number of positions whose ``var`` bit is set."""
    if var not in ext.vars:
        raise FormulaError(f"variable {var} is not in the alphabet's variable set")
    M = counta()
    a, b = M.index("a"), M.index("b")
    syms = ext.symbols
    return Recogniser(M, syms, [a if ext.bit(s, var) else b for s in syms], [M.index("0")])
