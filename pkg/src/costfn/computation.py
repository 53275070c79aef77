"""Computation trees: validation, construction, normalisation and a value oracle."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import kernels
from .algebra import StabilisationMonoid, pi_eval
from .errors import OracleScopeError, StructureError
from .green import JAnalysis, analyze_j, is_j_smooth, maximal_class

ORACLE_LIMIT = 14
INF = math.inf


class Mode(str, enum.Enum):
    EXACT = "exact"
    UNDER = "under"
    OVER = "over"


def _rel(M: StabilisationMonoid, mode) -> np.ndarray:
    """``rel[r, v]``: a node labelled v is allowed when its rule yields r."""
    mode = Mode(mode)
    if mode is Mode.EXACT:
        return np.eye(M.size, dtype=bool)
    if mode is Mode.UNDER:
        return M.leq.T.copy()
    return M.leq.copy()


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class CompTree:
    value: int
    children: tuple = field(default=())

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def height(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.height() for c in self.children)

    def leaves(self) -> list:
        if not self.children:
            return [self.value]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def leaf_count(self) -> int:
        if not self.children:
            return 1
        return sum(c.leaf_count() for c in self.children)

    def nodes(self, path=()):
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.nodes(path + (i,))

    def format(self, M: StabilisationMonoid) -> str:
        if not self.children:
            return M.names[self.value]
        return M.names[self.value] + "(" + " ".join(c.format(M) for c in self.children) + ")"


def leaf(v: int) -> CompTree:
    return CompTree(int(v))


def node(v: int, children) -> CompTree:
    return CompTree(int(v), tuple(children))


def parse_tree(M: StabilisationMonoid, text: str) -> CompTree:
    """Inverse of :meth:`CompTree.format` (element names must avoid spaces and parentheses)."""
    pos = 0
    s = text.strip()

    def skip():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def parse():
        nonlocal pos
        skip()
        start = pos
        while pos < len(s) and not s[pos].isspace() and s[pos] not in "()":
            pos += 1
        if start == pos:
            raise StructureError(f"expected an element name at offset {pos}")
        v = M.index(s[start:pos])
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids = []
            while True:
                skip()
                if pos >= len(s):
                    raise StructureError("unbalanced parentheses")
                if s[pos] == ")":
                    pos += 1
                    break
                kids.append(parse())
            return node(v, kids)
        return leaf(v)

    t = parse()
    skip()
    if pos != len(s):
        raise StructureError(f"trailing text at offset {pos}")
    return t


class TreeCheck(NamedTuple):
    ok: bool
    path: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_tree(M: StabilisationMonoid, t: CompTree, w: Sequence[int], n, mode="exact") -> TreeCheck:
    """Check that ``t`` is an n-computation (or under/over variant) over ``w``.

    Inner nodes must have at least two children.  On failure ``path`` is
    the child-index path of the first offending node in preorder.
    """
    w = [int(a) for a in w]
    if not w:
        raise StructureError("computations are defined over non-empty words")
    if t.leaf_count() != len(w):
        return TreeCheck(False, (), f"leaf count {t.leaf_count()} differs from word length {len(w)}")
    rel = _rel(M, mode)
    P, S = M.product, M.sharp
    cursor = 0
    for path, nd in t.nodes():
        v = nd.value
        if not 0 <= v < M.size:
            return TreeCheck(False, path, "label out of range")
        k = len(nd.children)
        if k == 0:
            a = w[cursor]
            cursor += 1
            if not rel[a, v]:
                return TreeCheck(False, path, f"leaf {M.names[v]} vs letter {M.names[a]}")
            continue
        if k == 1:
            return TreeCheck(False, path, "inner node with a single child")
        ys = [c.value for c in nd.children]
        allowed = set()
        if k == 2:
            allowed.add(int(P[ys[0], ys[1]]))
        e = ys[0]
        if all(y == e for y in ys) and P[e, e] == e:
            if k <= n:
                allowed.add(e)
            else:
                allowed.add(int(S[e]))
        if not any(rel[r, v] for r in allowed):
            return TreeCheck(False, path, f"node {M.names[v]} with {k} children breaks every rule")
    return TreeCheck(True)


# ---------------------------------------------------------------------------
# construction


class _Ctx:
    def __init__(self, M: StabilisationMonoid, n, ja: JAnalysis):
        self.M = M
        self.P = M.product
        self.S = M.sharp
        self.n = n
        self.ja = ja

    def chain(self, parts):
        """Right-nested binary chain over the given trees."""
        t = parts[-1]
        for p in reversed(parts[:-1]):
            t = node(self.P[p.value, t.value], [p, t])
        return t


def _smooth(ctx: _Ctx, items: list, tail: Optional[CompTree] = None):
    """Factorise a J-smooth sequence of trees (each tree acts as a letter).

    Returns ``("A", tree, len(items))`` with a tree over all items (plus
    ``tail`` when given) valued by the product, or ``("B", tree, k)`` with
    a tree over the first k items whose value lies strictly J-below the class.
    """
    P, S, n, ja = ctx.P, ctx.S, ctx.n, ctx.ja
    L = len(items)
    if L == 1:
        if tail is None:
            return "A", items[0], 1
        return "A", ctx.chain([items[0], tail]), 1

    vals = [it.value for it in items]
    pref = [vals[0]]
    for v in vals[1:]:
        pref.append(int(P[pref[-1], v]))
    # pair at cut position i (1-based, 1..L-1): (product of first i, R-class of letter i+1)
    pairs = [(pref[i - 1], ja.r_class_of[vals[i]]) for i in range(1, L)]
    x, r = pairs[0]
    cuts = [i for i in range(1, L) if pairs[i - 1] == (x, r)]
    blocks = [items[cuts[j]:cuts[j + 1]] for j in range(len(cuts) - 1)]
    last = items[cuts[-1]:]
    e = next(y for y in range(ctx.M.size)
             if P[y, y] == y and ja.r_class_of[y] == r and P[x, y] == x)
    big = max(n, 2)
    unstable = S[e] != e

    left = items[0]
    run, run_len = [], []
    if left.value == e:
        run.append(left)
        run_len.append(1)
        left = None

    def prefix_with(sub):
        parts = [p for p in (left, _run_tree(run, e), sub) if p is not None]
        return ctx.chain(parts)

    def big_run():
        parts = [p for p in (left, node(S[e], run)) if p is not None]
        return ctx.chain(parts)

    consumed = 1
    for blk in blocks:
        kind, t, k = _smooth(ctx, blk)
        if kind == "B":
            return "B", prefix_with(t), consumed + k
        run.append(t)
        run_len.append(len(blk))
        consumed += len(blk)
        if unstable and len(run) > big:
            return "B", big_run(), consumed
    kind, t, k = _smooth(ctx, last)
    if kind == "B":
        return "B", prefix_with(t), consumed + k
    right = t
    if t.value == e:
        run.append(t)
        run_len.append(len(last))
        right = None
        if unstable and len(run) > big:
            return "B", big_run(), L
    parts = [p for p in (left, _run_tree(run, e), right, tail) if p is not None]
    return "A", ctx.chain(parts), L


def _run_tree(run, e):
    if not run:
        return None
    if len(run) == 1:
        return run[0]
    return node(e, run)


def _claim(ctx: _Ctx, items: list, J: frozenset):
    """Peel one segment off ``items``: returns (tree, count, covers_all)."""
    P = ctx.P
    t = 0
    prod = ctx.M.unit
    while t < len(items) and items[t].value in J:
        nxt = int(P[prod, items[t].value])
        if nxt not in J:
            break
        prod = nxt
        t += 1
    if t == 0:
        return items[0], 1, len(items) == 1
    if t == len(items):
        kind, tree, k = _smooth(ctx, items)
        return tree, k, kind == "A"
    kind, tree, k = _smooth(ctx, items[:t], tail=items[t])
    if kind == "A":
        return tree, t + 1, t + 1 == len(items)
    return tree, k, False


def _build(ctx: _Ctx, items: list, Z: frozenset) -> CompTree:
    if len(items) == 1:
        return items[0]
    if not Z:
        raise StructureError("internal: empty ideal with a word of length > 1")
    k = maximal_class(ctx.ja, Z)
    J = ctx.ja.class_members(k)
    Z2 = Z - J
    segs = []
    rest = items
    while rest:
        tree, used, whole = _claim(ctx, rest, J)
        segs.append(tree)
        rest = rest[used:]
        if whole:
            break
    return _build(ctx, segs, Z2)


def construct(M: StabilisationMonoid, w: Sequence[int], n, analysis: Optional[JAnalysis] = None) -> CompTree:
    """An exact n-computation over ``w`` of height at most ``3 * |M|``."""
    w = [int(a) for a in w]
    if not w:
        raise StructureError("construct needs a non-empty word")
    ja = analysis or analyze_j(M)
    ctx = _Ctx(M, n, ja)
    return _build(ctx, [leaf(a) for a in w], frozenset(range(M.size)))


def ramsey_factorise_smooth(M: StabilisationMonoid, J, w: Sequence[int],
                            analysis: Optional[JAnalysis] = None) -> CompTree:
    """Factorisation without stabilisation nodes of a J-smooth word."""
    w = [int(a) for a in w]
    if not is_j_smooth(M, J, w):
        raise StructureError("word is not J-smooth")
    ctx = _Ctx(M, INF, analysis or analyze_j(M))
    _, tree, _ = _smooth(ctx, [leaf(a) for a in w])
    return tree


# ---------------------------------------------------------------------------
# unit letters


def sm_normalise(M: StabilisationMonoid, t: CompTree, w: Optional[Sequence[int]] = None) -> CompTree:
    """Remove unit letters from the word of ``t``.

    ``w`` is the word the tree reads (defaults to its leaf labels).  A node
    left with a single child is replaced by that child carrying the node's
    label; a tree reading only units becomes the unit leaf.
    """
    word = list(t.leaves()) if w is None else [int(a) for a in w]
    if len(word) != t.leaf_count():
        raise StructureError("word length differs from leaf count")
    u = M.unit
    it = iter(word)

    def go(nd):
        if not nd.children:
            return None if next(it) == u else nd
        kept = [s for s in (go(c) for c in nd.children) if s is not None]
        if not kept:
            return None
        if len(kept) == 1:
            return CompTree(nd.value, kept[0].children)
        return CompTree(nd.value, tuple(kept))

    out = go(t)
    return leaf(u) if out is None else out


def sm_extend(M: StabilisationMonoid, t: CompTree, w: Sequence[int], padded: Sequence[int]) -> CompTree:
    """Tree over ``padded`` (``w`` with unit letters inserted), same value, height + 3 at most."""
    u = M.unit
    w = [int(a) for a in w]
    padded = [int(a) for a in padded]
    if not w:
        raise StructureError("sm_extend needs a non-empty base word")
    # distribute units: before[i] go left of letter i, after the last letter go right of it
    before = [0] * len(w)
    after = 0
    i = 0
    pending = 0
    for a in padded:
        if i < len(w) and a == w[i]:
            # unit letters of w itself are matched greedily
            before[i] = pending
            pending = 0
            i += 1
        elif a == u:
            pending += 1
        else:
            raise StructureError("padded word is not the base word with units inserted")
    if i != len(w):
        raise StructureError("padded word is not the base word with units inserted")
    after = pending
    P = M.product

    def units(k):
        if k == 0:
            return None
        if k == 1:
            return leaf(u)
        return node(u, [leaf(u)] * k)

    pos = iter(range(len(w)))

    def go(nd):
        if nd.children:
            return CompTree(nd.value, tuple(go(c) for c in nd.children))
        j = next(pos)
        p, q = before[j], (after if j == len(w) - 1 else 0)
        cur = nd
        right = units(q)
        if right is not None:
            cur = node(P[cur.value, u], [cur, right])
        lft = units(p)
        if lft is not None:
            cur = node(P[u, cur.value], [lft, cur])
        return cur

    return go(t)


# ---------------------------------------------------------------------------
# exhaustive value oracle


def _check_scope(L, limit):
    if L > limit:
        raise OracleScopeError(f"word length {L} exceeds the oracle limit {limit}")


def achievable_values(M: StabilisationMonoid, w: Sequence[int], n, p, mode="exact",
                      limit: int = ORACLE_LIMIT) -> frozenset:
    """All root values of mode-computations over ``w`` with threshold n and height <= p."""
    w = np.asarray([int(a) for a in w], dtype=np.int64)
    L = len(w)
    _check_scope(L, limit)
    rel = _rel(M, mode)
    relmask = np.array([sum(1 << int(v) for v in np.flatnonzero(rel[r])) for r in range(M.size)],
                       dtype=np.uint64)
    if L == 0:
        return frozenset(int(v) for v in np.flatnonzero(rel[M.unit]))
    # beyond n = L no node can have more than n children, so the tree set is constant
    n_eff = int(min(n, L))
    p_eff = int(min(p, L))
    idem = M.product[np.arange(M.size), np.arange(M.size)] == np.arange(M.size)
    sharp = np.where(M.sharp >= 0, M.sharp, 0).astype(np.int64)
    mask = kernels.values_dp(w, M.product, sharp, idem, relmask, n_eff, p_eff)
    mask = int(mask)
    return frozenset(v for v in range(M.size) if mask >> v & 1)


VARIANTS = ("--", "-", "+", "++")
_VARIANT_ALIASES = {"mm": "--", "m": "-", "p": "+", "pp": "++"}


def semantic_value(R, u: Sequence, variant: str, p, limit: int = ORACLE_LIMIT):
    """One of the four functions of a recogniser, by exhaustive search over thresholds."""
    variant = _VARIANT_ALIASES.get(variant, variant)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if p < 0:
        raise ValueError("height bound must be non-negative")
    M = R.monoid
    word = R.image(u)
    L = len(word)
    _check_scope(L, limit)
    I = R.ideal
    mode = {"--": "under", "-": "exact", "+": "exact", "++": "over"}[variant]
    if L == 0:
        inside = M.unit in I
        return INF if inside else 0
    if variant in ("--", "-"):
        for n in range(L + 1):
            if achievable_values(M, word, n, p, mode, limit) - I:
                return n
        return INF
    if achievable_values(M, word, L, p, mode, limit) & I:
        return INF
    for n in range(L - 1, -1, -1):
        if achievable_values(M, word, n, p, mode, limit) & I:
            return n + 1
    return 0
