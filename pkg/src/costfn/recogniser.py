"""Recognisers (M, h, I) and the domination, boundedness and divergence procedures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .algebra import (
    StabilisationMonoid,
    generated_product,
    is_ideal,
    product_monoid,
)
from .errors import AlphabetMismatch, StructureError
from .sharpexpr import Empty, format_expr, map_letters, sharp_closure


@dataclass(frozen=True, eq=False)
class Recogniser:
    """A cost function given by a monoid, a letter map and a downward-closed ideal.

    ``h[i]`` is the image of ``alphabet[i]``.  Words are sequences of
    alphabet symbols; a plain string is split into characters.
    """

    monoid: StabilisationMonoid
    alphabet: tuple
    h: tuple
    ideal: frozenset

    def __init__(self, monoid, alphabet, h, ideal):
        alphabet = tuple(str(a) for a in alphabet)
        if isinstance(h, Mapping):
            h = tuple(h[a] for a in alphabet)
        h = tuple(int(x) for x in h)
        if len(h) != len(alphabet):
            raise StructureError("letter map must cover the alphabet")
        if len(set(alphabet)) != len(alphabet):
            raise StructureError("duplicate alphabet symbols")
        if any(not 0 <= x < monoid.size for x in h):
            raise StructureError("letter image out of range")
        ideal = frozenset(int(x) for x in ideal)
        if not is_ideal(monoid, ideal):
            raise StructureError("recognising set is not downward closed")
        object.__setattr__(self, "monoid", monoid)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "ideal", ideal)

    def letter(self, sym) -> int:
        try:
            return self.h[self.alphabet.index(str(sym))]
        except ValueError:
            raise StructureError(f"symbol {sym!r} not in the alphabet") from None

    def image(self, u: Sequence) -> list:
        return [self.letter(s) for s in u]

    def __eq__(self, other):
        if not isinstance(other, Recogniser):
            return NotImplemented
        return (self.monoid == other.monoid and self.alphabet == other.alphabet
                and self.h == other.h and self.ideal == other.ideal)

    def __hash__(self):
        return hash((self.monoid, self.alphabet, self.h, self.ideal))


@dataclass(frozen=True)
class Decision:
    holds: bool
    witness: Optional[object] = None  # SharpExpr over alphabet symbols

    def witness_text(self) -> str:
        return format_expr(self.witness) if self.witness is not None else ""

    def __str__(self):
        return "yes" if self.holds else f"no witness={self.witness_text()}"


def _same_alphabet(f: Recogniser, g: Recogniser):
    if f.alphabet != g.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {f.alphabet} vs {g.alphabet}")


def joint(f: Recogniser, g: Recogniser, trim: bool = False):
    """Recognisers of f and g over one product monoid and one letter map.

    With ``trim`` only the part generated by the letter images (and the
    unit) is kept, which recognises the same functions.
    """
    _same_alphabet(f, g)
    M, N = f.monoid, g.monoid
    gens = list(zip(f.h, g.h))
    if trim:
        PM, pairs = generated_product(M, N, gens)
        pos = {p: i for i, p in enumerate(pairs)}
    else:
        PM = product_monoid(M, N)
        pairs = [(x, y) for x in range(M.size) for y in range(N.size)]
        pos = {p: i for i, p in enumerate(pairs)}
    h = tuple(pos[p] for p in gens)
    I = frozenset(i for i, (x, _) in enumerate(pairs) if x in f.ideal)
    J = frozenset(i for i, (_, y) in enumerate(pairs) if y in g.ideal)
    return Recogniser(PM, f.alphabet, h, I), Recogniser(PM, f.alphabet, h, J)


def _preimage_map(R: Recogniser):
    first = {}
    for sym, x in zip(R.alphabet, R.h):
        first.setdefault(x, sym)
    return first


def _criterion(R: Recogniser, I, J) -> Decision:
    res = sharp_closure(R.monoid, set(R.h))
    bad = [x for x in res.order if x in I and x not in J]
    if not bad:
        # the closure covers non-empty words; the empty word evaluates to the unit
        u = R.monoid.unit
        if u in I and u not in J:
            return Decision(False, Empty())
        return Decision(True)
    pre = _preimage_map(R)
    return Decision(False, map_letters(res.witness[bad[0]], pre.__getitem__))


def decide_domination(f: Recogniser, g: Recogniser) -> Decision:
    """Decide f ≼ g: f is bounded on every set of words where g is bounded."""
    Rf, Rg = joint(f, g, trim=True)
    return _criterion(Rf, Rf.ideal, Rg.ideal)


def decide_boundedness(f: Recogniser) -> Decision:
    return _criterion(f, f.ideal, frozenset())


def size_recogniser_for(alphabet) -> Recogniser:
    """The word length, over the given alphabet."""
    from .corpus import counta

    M = counta()
    return Recogniser(M, alphabet, [M.index("a")] * len(alphabet), [M.index("0")])


def decide_divergence(f: Recogniser) -> Decision:
    """f diverges iff the length function is dominated by f."""
    return decide_domination(size_recogniser_for(f.alphabet), f)


def is_characteristic(R: Recogniser) -> bool:
    M = R.monoid
    m = M.size
    idem = M.product[np.arange(m), np.arange(m)] == np.arange(m)
    return bool(np.array_equal(M.leq, np.eye(m, dtype=bool))
                and np.all(M.sharp[idem] == np.arange(m)[idem]))


def decide_bounded_over(f: Recogniser, chi: Recogniser) -> Decision:
    """Is f bounded over the language whose characteristic function ``chi`` recognises?"""
    if not is_characteristic(chi):
        raise StructureError("second argument must use a trivial order and identity sharp")
    return decide_domination(f, chi)


def min_rec(f: Recogniser, g: Recogniser, trim: bool = True) -> Recogniser:
    Rf, Rg = joint(f, g, trim=trim)
    return Recogniser(Rf.monoid, Rf.alphabet, Rf.h, Rf.ideal & Rg.ideal)


def max_rec(f: Recogniser, g: Recogniser, trim: bool = True) -> Recogniser:
    Rf, Rg = joint(f, g, trim=trim)
    return Recogniser(Rf.monoid, Rf.alphabet, Rf.h, Rf.ideal | Rg.ideal)


def precompose(f: Recogniser, z: Mapping) -> Recogniser:
    """Recogniser of ``f`` after the letter-to-letter map ``z`` (new symbol -> old symbol)."""
    return Recogniser(f.monoid, list(z), [f.letter(z[b]) for b in z], f.ideal)
