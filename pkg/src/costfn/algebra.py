"""Stabilisation monoids: representation, axiom checking, ideals, morphisms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, StructureError

MAX_ELEMENTS = 64

# axiom names used in validation reports
ASSOC = "associativity"
UNIT = "unit neutral"
REFL = "order reflexive"
ANTISYM = "order antisymmetric"
TRANS = "order transitive"
MONO = "product monotone"
SHARP_DOMAIN = "sharp defined exactly on idempotents"
SHARP_IDEM = "sharp(e) idempotent"
SHARP_SHARP = "sharp(sharp(e)) = sharp(e)"
SHARP_LEQ = "sharp(e) ≤ e"
SHARP_MONO = "e ≤ f ⇒ sharp(e) ≤ sharp(f)"
SHARP_CONSIST = "(ab)^sharp = a(ba)^sharp b"
SHARP_UNIT = "sharp(unit) = unit"


class Violation(NamedTuple):
    axiom: str
    witness: tuple

    def describe(self, M: "StabilisationMonoid") -> str:
        return f"{self.axiom}: " + " ".join(M.names[i] for i in self.witness)


def _frozen(a, dtype):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class StabilisationMonoid:
    """Finite carrier ``0..m-1`` with product table, order and partial sharp.

    ``sharp[e] == -1`` marks an element where sharp is undefined.  The
    constructor checks shapes and ranges only; use :func:`validate_axioms`
    for the algebraic laws.
    """

    names: tuple
    unit: int
    product: np.ndarray
    leq: np.ndarray
    sharp: np.ndarray

    def __init__(self, names, unit, product, leq, sharp):
        names = tuple(str(x) for x in names)
        m = len(names)
        if m == 0:
            raise StructureError("a monoid needs at least one element")
        if m > MAX_ELEMENTS:
            raise CapacityError(f"{m} elements exceeds the cap of {MAX_ELEMENTS}")
        if len(set(names)) != m:
            raise StructureError("duplicate element names")
        P = np.asarray(product)
        Q = np.asarray(leq)
        S = np.asarray(sharp)
        if P.shape != (m, m) or Q.shape != (m, m) or S.shape != (m,):
            raise StructureError(
                f"table shapes {P.shape}, {Q.shape}, {S.shape} do not match {m} elements")
        if P.size and (P.min() < 0 or P.max() >= m):
            raise StructureError("product entry out of range")
        if S.min() < -1 or S.max() >= m:
            raise StructureError("sharp entry out of range")
        if not 0 <= int(unit) < m:
            raise StructureError("unit out of range")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "unit", int(unit))
        object.__setattr__(self, "product", _frozen(P, np.int64))
        object.__setattr__(self, "leq", _frozen(Q, bool))
        object.__setattr__(self, "sharp", _frozen(S, np.int64))

    # -- basic access -----------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name) -> int:
        try:
            return self.names.index(str(name))
        except ValueError:
            raise StructureError(f"unknown element {name!r}") from None

    def ids(self, names: Iterable) -> list:
        return [self.index(x) for x in names]

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def is_idempotent(self, e: int) -> bool:
        return int(self.product[e, e]) == e

    def sharp_of(self, e: int) -> int:
        s = int(self.sharp[e])
        if s < 0:
            raise StructureError(f"sharp undefined on {self.names[e]}")
        return s

    def __eq__(self, other):
        if not isinstance(other, StabilisationMonoid):
            return NotImplemented
        return (self.names == other.names and self.unit == other.unit
                and np.array_equal(self.product, other.product)
                and np.array_equal(self.leq, other.leq)
                and np.array_equal(self.sharp, other.sharp))

    def __hash__(self):
        return hash((self.names, self.unit, self.product.tobytes(), self.leq.tobytes(),
                     self.sharp.tobytes()))

    def __repr__(self):
        return f"StabilisationMonoid({' '.join(self.names)})"


# ---------------------------------------------------------------------------


def validate_axioms(M: StabilisationMonoid) -> list:
    """Return one :class:`Violation` per failing axiom (empty when valid)."""
    P, Q, S = M.product, M.leq, M.sharp
    m = M.size
    out = []

    w = kernels.assoc_witness(P)
    if w[0] >= 0:
        out.append(Violation(ASSOC, tuple(int(x) for x in w)))
    u = M.unit
    for a in range(m):
        if P[u, a] != a or P[a, u] != a:
            out.append(Violation(UNIT, (a,)))
            break

    diag = np.flatnonzero(~np.diag(Q))
    if len(diag):
        out.append(Violation(REFL, (int(diag[0]),)))
    anti = np.argwhere(Q & Q.T & ~np.eye(m, dtype=bool))
    if len(anti):
        out.append(Violation(ANTISYM, tuple(int(x) for x in anti[0])))
    # a<=b, b<=c, not a<=c
    comp = (Q.astype(np.int64) @ Q.astype(np.int64)) > 0
    trans = np.argwhere(comp & ~Q)
    if len(trans):
        a, c = (int(x) for x in trans[0])
        b = int(np.flatnonzero(Q[a] & Q[:, c])[0])
        out.append(Violation(TRANS, (a, b, c)))
    w = kernels.monotone_witness(P, Q)
    if w[0] >= 0:
        out.append(Violation(MONO, tuple(int(x) for x in w)))

    idem = P[np.arange(m), np.arange(m)] == np.arange(m)
    dom = np.flatnonzero(idem != (S >= 0))
    if len(dom):
        out.append(Violation(SHARP_DOMAIN, (int(dom[0]),)))
    ok = idem & (S >= 0)
    es = np.flatnonzero(ok)
    for e in es:
        s = S[e]
        if P[s, s] != s:
            out.append(Violation(SHARP_IDEM, (int(e),)))
            break
    for e in es:
        s = S[e]
        if S[s] != s:
            out.append(Violation(SHARP_SHARP, (int(e),)))
            break
    for e in es:
        if not Q[S[e], e]:
            out.append(Violation(SHARP_LEQ, (int(e),)))
            break
    found = False
    for e in es:
        for f in es:
            if e != f and Q[e, f] and not Q[S[e], S[f]]:
                out.append(Violation(SHARP_MONO, (int(e), int(f))))
                found = True
                break
        if found:
            break
    found = False
    for a in range(m):
        for b in range(m):
            ab, ba = P[a, b], P[b, a]
            if not (ok[ab] and ok[ba]):
                continue
            if S[ab] != P[P[a, S[ba]], b]:
                out.append(Violation(SHARP_CONSIST, (a, b)))
                found = True
                break
        if found:
            break
    if S[u] != u:
        out.append(Violation(SHARP_UNIT, (u,)))
    return out


def is_valid(M: StabilisationMonoid) -> bool:
    return not validate_axioms(M)


def pi_eval(M: StabilisationMonoid, w: Sequence[int]) -> int:
    """Left fold of the product; the empty word evaluates to the unit."""
    x = M.unit
    P = M.product
    for a in w:
        x = P[x, a]
    return int(x)


def idempotents(M: StabilisationMonoid) -> frozenset:
    m = M.size
    return frozenset(int(e) for e in np.flatnonzero(M.product[np.arange(m), np.arange(m)] == np.arange(m)))


def downward_close(M: StabilisationMonoid, S: Iterable[int]) -> frozenset:
    idx = list(S)
    if not idx:
        return frozenset()
    return frozenset(int(x) for x in np.flatnonzero(M.leq[:, idx].any(axis=1)))


def upward_close(M: StabilisationMonoid, S: Iterable[int]) -> frozenset:
    idx = list(S)
    if not idx:
        return frozenset()
    return frozenset(int(x) for x in np.flatnonzero(M.leq[idx, :].any(axis=0)))


def is_ideal(M, S) -> bool:
    S = frozenset(S)
    return downward_close(M, S) == S


def is_coideal(M, S) -> bool:
    S = frozenset(S)
    return upward_close(M, S) == S


def to_mask(S: Iterable[int]) -> int:
    mask = 0
    for x in S:
        mask |= 1 << int(x)
    return mask


def from_mask(mask: int) -> frozenset:
    mask = int(mask)
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


# ---------------------------------------------------------------------------
# constructions


def lift_standard(names, product, unit) -> StabilisationMonoid:
    """A plain finite monoid with equality as order and identity sharp."""
    P = np.asarray(product, dtype=np.int64)
    m = P.shape[0]
    sharp = np.where(P[np.arange(m), np.arange(m)] == np.arange(m), np.arange(m), -1)
    return StabilisationMonoid(names, unit, P, np.eye(m, dtype=bool), sharp)


def product_monoid(M: StabilisationMonoid, N: StabilisationMonoid) -> StabilisationMonoid:
    """Componentwise product; the pair (x, y) gets id ``x * |N| + y``."""
    m, n = M.size, N.size
    if m * n > MAX_ELEMENTS:
        raise CapacityError(f"product has {m * n} elements, cap is {MAX_ELEMENTS}")
    xs = np.repeat(np.arange(m), n)
    ys = np.tile(np.arange(n), m)
    P = M.product[xs[:, None], xs[None, :]] * n + N.product[ys[:, None], ys[None, :]]
    Q = M.leq[xs[:, None], xs[None, :]] & N.leq[ys[:, None], ys[None, :]]
    sx, sy = M.sharp[xs], N.sharp[ys]
    S = np.where((sx >= 0) & (sy >= 0), sx * n + sy, -1)
    names = [f"({M.names[x]},{N.names[y]})" for x, y in zip(xs, ys)]
    return StabilisationMonoid(names, M.unit * n + N.unit, P, Q, S)


@dataclass(frozen=True)
class Morphism:
    source: StabilisationMonoid
    target: StabilisationMonoid
    map: tuple

    def __call__(self, x: int) -> int:
        return self.map[x]


def projection(M: StabilisationMonoid, N: StabilisationMonoid, which: int) -> Morphism:
    """Projection from ``product_monoid(M, N)`` onto component 0 or 1."""
    PM = product_monoid(M, N)
    n = N.size
    mp = tuple((i // n) if which == 0 else (i % n) for i in range(PM.size))
    return Morphism(PM, M if which == 0 else N, mp)


def check_morphism(mu: Morphism) -> list:
    src, tgt = mu.source, mu.target
    if len(mu.map) != src.size:
        raise StructureError(f"map has {len(mu.map)} entries for {src.size} elements")
    f = np.asarray(mu.map, dtype=np.int64)
    if f.size and (f.min() < 0 or f.max() >= tgt.size):
        raise StructureError("morphism maps outside the target")
    out = []
    if f[src.unit] != tgt.unit:
        out.append(Violation("unit", (src.unit,)))
    bad = np.argwhere(f[src.product] != tgt.product[f[:, None], f[None, :]])
    if len(bad):
        out.append(Violation("product", tuple(int(x) for x in bad[0])))
    bad = np.argwhere(src.leq & ~tgt.leq[f[:, None], f[None, :]])
    if len(bad):
        out.append(Violation("order", tuple(int(x) for x in bad[0])))
    for e in sorted(idempotents(src)):
        if f[src.sharp[e]] != tgt.sharp[f[e]]:
            out.append(Violation("sharp", (e,)))
            break
    return out


def pullback_ideal(mu: Morphism, I: Iterable[int]) -> frozenset:
    I = frozenset(I)
    return frozenset(x for x in range(mu.source.size) if mu.map[x] in I)


def generated_submonoid(M: StabilisationMonoid, gens: Iterable[int]):
    """Least subset containing ``gens`` and the unit, closed under product and sharp.

    Returns ``(sub, embed)`` where ``embed[i]`` is the id in ``M`` of the
    i-th element of ``sub``.  Elements keep their relative order.
    """
    seen = {M.unit, *(int(g) for g in gens)}
    frontier = list(seen)
    P, S = M.product, M.sharp
    while frontier:
        new = []
        cur = list(seen)
        for x in frontier:
            for y in cur:
                for z in (int(P[x, y]), int(P[y, x])):
                    if z not in seen:
                        seen.add(z)
                        new.append(z)
            if S[x] >= 0 and int(S[x]) not in seen:
                seen.add(int(S[x]))
                new.append(int(S[x]))
        frontier = new
    embed = sorted(seen)
    pos = {x: i for i, x in enumerate(embed)}
    e = np.array(embed, dtype=np.int64)
    sub_P = np.vectorize(pos.__getitem__, otypes=[np.int64])(P[np.ix_(e, e)])
    sub_S = np.array([pos[int(S[x])] if S[x] >= 0 else -1 for x in embed], dtype=np.int64)
    sub = StabilisationMonoid([M.names[x] for x in embed], pos[M.unit], sub_P,
                              M.leq[np.ix_(e, e)], sub_S)
    return sub, tuple(embed)


def trivial_monoid(name="1") -> StabilisationMonoid:
    return StabilisationMonoid([name], 0, [[0]], [[True]], [0])


def generated_product(M: StabilisationMonoid, N: StabilisationMonoid, gens: Iterable[tuple]):
    """Sub-stabilisation monoid of ``M x N`` generated by pairs ``gens`` and the unit.

    Avoids building the full product.  Returns ``(sub, pairs)`` where
    ``pairs[i]`` is the (x, y) pair behind element i; pairs are listed in
    the same order as in :func:`product_monoid`.
    """
    PM, PN, SM, SN = M.product, N.product, M.sharp, N.sharp
    unit = (M.unit, N.unit)
    seen = {unit, *((int(x), int(y)) for x, y in gens)}
    frontier = list(seen)
    while frontier:
        new = []
        cur = list(seen)
        for x, y in frontier:
            for u, v in cur:
                for z in ((int(PM[x, u]), int(PN[y, v])), (int(PM[u, x]), int(PN[v, y]))):
                    if z not in seen:
                        seen.add(z)
                        new.append(z)
            if SM[x] >= 0 and SN[y] >= 0:
                z = (int(SM[x]), int(SN[y]))
                if z not in seen:
                    seen.add(z)
                    new.append(z)
        frontier = new
        if len(seen) > MAX_ELEMENTS:
            raise CapacityError(f"generated product exceeds {MAX_ELEMENTS} elements")
    pairs = sorted(seen)
    pos = {p: i for i, p in enumerate(pairs)}
    k = len(pairs)
    xs = np.array([p[0] for p in pairs], dtype=np.int64)
    ys = np.array([p[1] for p in pairs], dtype=np.int64)
    P = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            P[i, j] = pos[(int(PM[xs[i], xs[j]]), int(PN[ys[i], ys[j]]))]
    Q = M.leq[xs[:, None], xs[None, :]] & N.leq[ys[:, None], ys[None, :]]
    S = np.array([pos[(int(SM[x]), int(SN[y]))] if SM[x] >= 0 and SN[y] >= 0 else -1
                  for x, y in pairs], dtype=np.int64)
    names = [f"({M.names[x]},{N.names[y]})" for x, y in pairs]
    return StabilisationMonoid(names, pos[unit], P, Q, S), tuple(pairs)
