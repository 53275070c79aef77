"""Sharp expressions: letters, concatenation and the omega-sharp exponent."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from .algebra import StabilisationMonoid
from .computation import CompTree, leaf, node
from .errors import StructureError
from .green import omega_data


@dataclass(frozen=True)
class Letter:
    symbol: object


@dataclass(frozen=True)
class Concat:
    left: "SharpExpr"
    right: "SharpExpr"


@dataclass(frozen=True)
class OmegaSharp:
    sub: "SharpExpr"


@dataclass(frozen=True)
class Empty:
    """The empty word; only ever used as a whole witness, written ``()``."""


SharpExpr = Union[Letter, Concat, OmegaSharp, Empty]


def is_strict(E) -> bool:
    if isinstance(E, (Letter, Empty)):
        return False
    if isinstance(E, Concat):
        return is_strict(E.left) or is_strict(E.right)
    return True


def map_letters(E, f: Callable):
    if isinstance(E, Empty):
        return E
    if isinstance(E, Letter):
        return Letter(f(E.symbol))
    if isinstance(E, Concat):
        return Concat(map_letters(E.left, f), map_letters(E.right, f))
    return OmegaSharp(map_letters(E.sub, f))


def _elem(M: StabilisationMonoid, sym) -> int:
    if isinstance(sym, int):
        if not 0 <= sym < M.size:
            raise StructureError(f"element {sym} out of range")
        return sym
    return M.index(sym)


def value(M: StabilisationMonoid, E, interp: Optional[Callable] = None, _omega=None) -> int:
    """Evaluate ``E``; letters are element ids or names unless ``interp`` maps them."""
    Om = _omega if _omega is not None else omega_data(M).Omega
    get = interp or (lambda s: _elem(M, s))

    def go(F):
        if isinstance(F, Empty):
            return M.unit
        if isinstance(F, Letter):
            return get(F.symbol)
        if isinstance(F, Concat):
            return M.mul(go(F.left), go(F.right))
        x = go(F.sub)
        y = M.unit
        for _ in range(Om):
            y = M.mul(y, x)
        return M.sharp_of(y)

    return go(E)


def unfold(E, n: int) -> list:
    """The n-unfolding: every omega-sharp becomes n copies of its body."""
    if n < 1:
        raise ValueError("unfolding needs n >= 1")
    if isinstance(E, Empty):
        return []
    if isinstance(E, Letter):
        return [E.symbol]
    if isinstance(E, Concat):
        return unfold(E.left, n) + unfold(E.right, n)
    return unfold(E.sub, n) * n


def canonical_word(M: StabilisationMonoid, E, n: int) -> list:
    """Word read by :func:`canonical_computation`: the unfolding with multiplicity Omega*(n+1)."""
    return unfold(E, omega_data(M).Omega * (n + 1))


def canonical_computation(M: StabilisationMonoid, E, n: int, interp: Optional[Callable] = None) -> CompTree:
    """An n-computation of value ``value(E)`` over ``canonical_word(M, E, n)``.

    Each omega-sharp node gets n+1 children, each a chain of Omega copies
    of the body, so its degree strictly exceeds n.
    """
    if n < 1:
        raise ValueError("threshold must be >= 1")
    if isinstance(E, Empty):
        raise StructureError("the empty word has no computation")
    Om = omega_data(M).Omega
    get = interp or (lambda s: _elem(M, s))
    P = M.product

    def chain(parts):
        t = parts[-1]
        for p in reversed(parts[:-1]):
            t = node(P[p.value, t.value], [p, t])
        return t

    def go(F):
        if isinstance(F, Letter):
            return leaf(get(F.symbol))
        if isinstance(F, Concat):
            a, b = go(F.left), go(F.right)
            return node(P[a.value, b.value], [a, b])
        body = go(F.sub)
        block = chain([body] * Om)
        return node(M.sharp_of(block.value), [block] * (n + 1))

    return go(E)


# ---------------------------------------------------------------------------
# text syntax: letters juxtaposed, (..)# for omega-sharp, {name} for long symbols


def format_expr(E, name: Callable = str) -> str:
    if isinstance(E, Empty):
        return "()"
    if isinstance(E, Letter):
        s = name(E.symbol)
        if len(s) == 1 and s not in "(){}#":
            return s
        return "{" + s + "}"
    if isinstance(E, Concat):
        right = format_expr(E.right, name)
        if isinstance(E.right, Concat):
            right = "(" + right + ")"
        return format_expr(E.left, name) + right
    return "(" + format_expr(E.sub, name) + ")#"


def parse_expr(text: str):
    s = "".join(text.split())
    if s == "()":
        return Empty()
    pos = 0

    def seq():
        nonlocal pos
        items = []
        while pos < len(s) and s[pos] != ")":
            items.append(atom())
        if not items:
            raise StructureError(f"empty expression at offset {pos} in {text!r}")
        out = items[0]
        for it in items[1:]:
            out = Concat(out, it)
        return out

    def atom():
        nonlocal pos
        c = s[pos]
        if c == "(":
            pos += 1
            inner = seq()
            if pos >= len(s) or s[pos] != ")":
                raise StructureError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            if pos < len(s) and s[pos] == "#":
                pos += 1
                return OmegaSharp(inner)
            return inner
        if c == "{":
            end = s.find("}", pos)
            if end < 0:
                raise StructureError(f"unterminated brace in {text!r}")
            sym = s[pos + 1:end]
            pos = end + 1
            return Letter(sym)
        if c in ")}#":
            raise StructureError(f"unexpected {c!r} at offset {pos} in {text!r}")
        pos += 1
        return Letter(c)

    E = seq()
    if pos != len(s):
        raise StructureError(f"unexpected {s[pos]!r} at offset {pos} in {text!r}")
    return E


# ---------------------------------------------------------------------------
# closures


@dataclass(frozen=True)
class ClosureResult:
    closure: frozenset
    strict: frozenset
    witness: dict
    strict_witness: dict
    order: tuple  # closure elements in discovery order


def sharp_closure(M: StabilisationMonoid, A: Iterable[int], witnesses: bool = True) -> ClosureResult:
    """Least superset of A closed under product and sharp of idempotents.

    States are pairs (element, strict) where strict records that a sharp
    was applied somewhere in the derivation.  The worklist is processed in
    discovery order, so witnesses are reproducible.
    """
    P, S = M.product, M.sharp
    found: dict = {}
    queue: deque = deque()
    states: list = []
    order: list = []

    def add(state, expr):
        if state in found:
            return
        found[state] = expr if witnesses else None
        states.append(state)
        queue.append(state)
        if state[0] not in order:
            order.append(state[0])

    for a in sorted(set(int(x) for x in A)):
        add((a, False), Letter(a))
    while queue:
        s = queue.popleft()
        x, fx = s
        if P[x, x] == x:
            add((int(S[x]), True), OmegaSharp(found[s]) if witnesses else None)
        i = 0
        while i < len(states):
            t = states[i]
            i += 1
            y, fy = t
            ex = found[s]
            ey = found[t]
            add((int(P[x, y]), fx or fy), Concat(ex, ey) if witnesses else None)
            add((int(P[y, x]), fx or fy), Concat(ey, ex) if witnesses else None)
    closure = frozenset(x for x, _ in found)
    strict = frozenset(x for x, f in found if f)
    wit = {}
    swit = {}
    for (x, f), e in found.items():
        if x not in wit:
            wit[x] = e
        if f:
            swit[x] = e
    return ClosureResult(closure, strict, wit, swit, tuple(order))
