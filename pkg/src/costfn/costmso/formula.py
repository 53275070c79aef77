"""Cost monadic logic: syntax tree, parser and brute-force semantics."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Optional

from ..errors import FormulaError, OracleScopeError

INF = math.inf
EVAL_LIMIT = 8


@dataclass(frozen=True)
class Letter:
    """The set X is a single position carrying letter ``a``."""
    letter: str
    var: str
    negated: bool = False


@dataclass(frozen=True)
class Le:
    """X and Y are single positions with X's before or at Y's."""
    x: str
    y: str
    negated: bool = False


@dataclass(frozen=True)
class Subset:
    x: str
    y: str
    negated: bool = False


@dataclass(frozen=True)
class CardLe:
    """|X| ≤ N; its value is the cardinality of X."""
    var: str


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


ATOMS = (Letter, Le, Subset)


def atom_vars(a) -> tuple:
    if isinstance(a, Letter):
        return (a.var,)
    if isinstance(a, CardLe):
        return (a.var,)
    return (a.x, a.y)


def free_vars(phi) -> frozenset:
    if isinstance(phi, ATOMS) or isinstance(phi, CardLe):
        return frozenset(atom_vars(phi))
    if isinstance(phi, (And, Or)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return free_vars(phi.body) - {phi.var}
    raise FormulaError(f"not a formula: {phi!r}")


def negate_atom(a):
    if not isinstance(a, ATOMS):
        raise FormulaError("negation applies to letter, order and inclusion atoms only")
    return type(a)(*[getattr(a, f) for f in a.__dataclass_fields__ if f != "negated"],
                   negated=not a.negated)


# ---------------------------------------------------------------------------
# text syntax

_TOKEN = re.compile(r"\s*(?:(?P<punct>[()&|!.,])|(?P<word>[A-Za-z0-9_]+))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaError(f"unexpected character {text[pos]!r} at offset {pos}")
        out.append(m.group("punct") or m.group("word"))
        pos = m.end()
    return out


def parse_formula(text: str):
    """Parse ``a(X)``, ``le(X,Y)``, ``sub(X,Y)``, ``!atom``, ``cardle(X)``,
    ``&``, ``|``, ``E X.``, ``A X.`` and parentheses.

    ``&`` binds tighter than ``|``; quantifiers extend as far right as possible.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise FormulaError(f"unexpected end of formula {text!r}")
        t = toks[pos]
        if expected is not None and t != expected:
            raise FormulaError(f"expected {expected!r}, found {t!r}")
        pos += 1
        return t

    def disj():
        left = conj()
        while peek() == "|":
            take()
            left = Or(left, conj())
        return left

    def conj():
        left = unary()
        while peek() == "&":
            take()
            left = And(left, unary())
        return left

    def var():
        t = take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t):
            raise FormulaError(f"bad variable name {t!r}")
        return t

    def unary():
        t = peek()
        if t in ("E", "A"):
            take()
            v = var()
            take(".")
            body = disj()
            return Exists(v, body) if t == "E" else Forall(v, body)
        if t == "!":
            take()
            inner = unary()
            if isinstance(inner, CardLe):
                raise FormulaError("cardinality atoms may not be negated")
            if not isinstance(inner, ATOMS):
                raise FormulaError("negation is only allowed directly on atoms")
            return negate_atom(inner)
        if t == "(":
            take()
            inner = disj()
            take(")")
            return inner
        return atom()

    def atom():
        name = take()
        take("(")
        args = [var()]
        while peek() == ",":
            take()
            args.append(var())
        take(")")
        if name in ("le", "sub"):
            if len(args) != 2:
                raise FormulaError(f"{name} takes two variables")
            return Le(*args) if name == "le" else Subset(*args)
        if name == "cardle":
            if len(args) != 1:
                raise FormulaError("cardle takes one variable")
            return CardLe(args[0])
        if len(args) != 1:
            raise FormulaError(f"letter atom {name}(..) takes one variable")
        return Letter(name, args[0])

    if not toks:
        raise FormulaError("empty formula")
    phi = disj()
    if pos != len(toks):
        raise FormulaError(f"unexpected {toks[pos]!r} after formula")
    return phi


def format_formula(phi) -> str:
    if isinstance(phi, Letter):
        s = f"{phi.letter}({phi.var})"
    elif isinstance(phi, Le):
        s = f"le({phi.x},{phi.y})"
    elif isinstance(phi, Subset):
        s = f"sub({phi.x},{phi.y})"
    elif isinstance(phi, CardLe):
        return f"cardle({phi.var})"
    elif isinstance(phi, And):
        return f"({format_formula(phi.left)} & {format_formula(phi.right)})"
    elif isinstance(phi, Or):
        return f"({format_formula(phi.left)} | {format_formula(phi.right)})"
    elif isinstance(phi, Exists):
        return f"(E {phi.var}. {format_formula(phi.body)})"
    elif isinstance(phi, Forall):
        return f"(A {phi.var}. {format_formula(phi.body)})"
    else:
        raise FormulaError(f"not a formula: {phi!r}")
    return "!" + s if phi.negated else s


# ---------------------------------------------------------------------------
# semantics


def atom_holds(a, u: str, val: Mapping) -> bool:
    if isinstance(a, Letter):
        X = val[a.var]
        ok = len(X) == 1 and u[next(iter(X)) - 1] == a.letter
    elif isinstance(a, Le):
        X, Y = val[a.x], val[a.y]
        ok = len(X) == 1 and len(Y) == 1 and next(iter(X)) <= next(iter(Y))
    else:
        ok = val[a.x] <= val[a.y]
    return ok != a.negated


def evaluate(phi, u, valuation: Optional[Mapping] = None, limit: int = EVAL_LIMIT):
    """Value of ``phi`` on ``u`` with 1-based positions for set variables."""
    u = list(u)
    if len(u) > limit:
        raise OracleScopeError(f"word length {len(u)} exceeds the evaluation limit {limit}")
    val = {k: frozenset(v) for k, v in (valuation or {}).items()}
    missing = free_vars(phi) - set(val)
    if missing:
        raise FormulaError(f"free variables without a value: {sorted(missing)}")
    for k, X in val.items():
        if any(not 1 <= p <= len(u) for p in X):
            raise FormulaError(f"positions of {k} outside 1..{len(u)}")
    positions = range(1, len(u) + 1)
    subsets = [frozenset(c) for r in range(len(u) + 1) for c in combinations(positions, r)]

    def go(f, v):
        if isinstance(f, ATOMS):
            return 0 if atom_holds(f, u, v) else INF
        if isinstance(f, CardLe):
            return len(v[f.var])
        if isinstance(f, And):
            return max(go(f.left, v), go(f.right, v))
        if isinstance(f, Or):
            return min(go(f.left, v), go(f.right, v))
        if isinstance(f, Exists):
            return min(go(f.body, {**v, f.var: X}) for X in subsets)
        if isinstance(f, Forall):
            return max(go(f.body, {**v, f.var: X}) for X in subsets)
        raise FormulaError(f"not a formula: {f!r}")

    return go(phi, val)
