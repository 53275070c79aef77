"""Ideal and co-ideal powerset monoids; inf- and sup-projection of recognisers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import kernels
from .algebra import MAX_ELEMENTS, StabilisationMonoid, from_mask, to_mask, validate_axioms
from .errors import CapacityError, StructureError
from .recogniser import Recogniser
from .sharpexpr import sharp_closure

IDEAL = "ideal"
COIDEAL = "coideal"


@dataclass(frozen=True)
class PowersetMonoid:
    base: StabilisationMonoid
    kind: str
    elements: tuple  # frozensets of base elements, canonical order
    monoid: StabilisationMonoid

    def index(self, subset) -> int:
        return self.elements.index(frozenset(subset))


class _SetOps:
    def __init__(self, M: StabilisationMonoid, kind: str):
        if kind not in (IDEAL, COIDEAL):
            raise ValueError(kind)
        self.M = M
        self.kind = kind
        m = M.size
        rel = M.leq.T if kind == IDEAL else M.leq  # rel[r, v]: v in closure of {r}
        self.rows = np.array([to_mask(np.flatnonzero(rel[r])) for r in range(m)], dtype=np.uint64)
        self.P = np.ascontiguousarray(M.product)

    def close(self, mask: int) -> int:
        out = 0
        for r in from_mask(mask):
            out |= int(self.rows[r])
        return out

    def product(self, A: int, B: int) -> int:
        return int(kernels.set_product(self.P, np.uint64(A), np.uint64(B), self.rows))

    def sharp(self, E: int) -> int:
        strict = sharp_closure(self.M, from_mask(E), witnesses=False).strict
        return self.close(to_mask(strict))

    def unit(self) -> int:
        return self.close(1 << self.M.unit)

    def name(self, mask: int) -> str:
        return "{" + ",".join(self.M.names[x] for x in sorted(from_mask(mask))) + "}"


def _canonical_key(mask: int, m: int):
    # membership vector read from element 0 onwards, absent before present
    return tuple((mask >> x) & 1 for x in range(m))


def _build(ops: _SetOps, masks: Iterable[int], kind: str, check: bool = True) -> PowersetMonoid:
    M = ops.M
    masks = sorted(set(masks), key=lambda s: _canonical_key(s, M.size))
    k = len(masks)
    if k > MAX_ELEMENTS:
        raise CapacityError(f"{kind} powerset has {k} elements, cap is {MAX_ELEMENTS}")
    pos = {s: i for i, s in enumerate(masks)}
    P = np.empty((k, k), dtype=np.int64)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            P[i, j] = pos[ops.product(a, b)]
    Q = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            sub = (a & ~b) == 0
            Q[i, j] = sub if kind == IDEAL else (b & ~a) == 0
    S = np.full(k, -1, dtype=np.int64)
    for i in range(k):
        if P[i, i] == i:
            S[i] = pos[ops.sharp(masks[i])]
    PM = StabilisationMonoid([ops.name(s) for s in masks], pos[ops.unit()], P, Q, S)
    if check:
        bad = validate_axioms(PM)
        if bad:
            raise StructureError(f"{kind} powerset fails {bad[0].axiom}")
    return PowersetMonoid(M, kind, tuple(from_mask(s) for s in masks), PM)


def _closed_sets(M: StabilisationMonoid, kind: str) -> list:
    """All down- (or up-) closed subsets, aborting past the element cap."""
    m = M.size
    rel = M.leq if kind == IDEAL else M.leq.T
    # process elements so that everything below (resp. above) comes first
    order = sorted(range(m), key=lambda x: int(rel[:, x].sum()))
    below = [to_mask(np.flatnonzero(rel[:, x])) & ~(1 << x) for x in range(m)]
    out = []

    def rec(i, mask):
        if len(out) > MAX_ELEMENTS:
            raise CapacityError(f"{kind} powerset exceeds {MAX_ELEMENTS} elements")
        if i == m:
            out.append(mask)
            return
        x = order[i]
        rec(i + 1, mask)
        if below[x] & ~mask == 0:
            rec(i + 1, mask | (1 << x))

    rec(0, 0)
    if len(out) > MAX_ELEMENTS:
        raise CapacityError(f"{kind} powerset exceeds {MAX_ELEMENTS} elements")
    return out


def ideal_powerset(M: StabilisationMonoid) -> PowersetMonoid:
    return _build(_SetOps(M, IDEAL), _closed_sets(M, IDEAL), IDEAL)


def coideal_powerset(M: StabilisationMonoid) -> PowersetMonoid:
    return _build(_SetOps(M, COIDEAL), _closed_sets(M, COIDEAL), COIDEAL)


def generated_powerset(M: StabilisationMonoid, kind: str, gens: Iterable) -> PowersetMonoid:
    """Only the closed sets reachable from ``gens`` and the unit by product and sharp."""
    ops = _SetOps(M, kind)
    seen = {ops.unit(), *(ops.close(to_mask(g)) for g in gens)}
    frontier = list(seen)
    while frontier:
        new = []
        cur = list(seen)
        for x in frontier:
            cands = []
            for y in cur:
                cands.append(ops.product(x, y))
                cands.append(ops.product(y, x))
            if ops.product(x, x) == x:
                cands.append(ops.sharp(x))
            for z in cands:
                if z not in seen:
                    seen.add(z)
                    new.append(z)
        if len(seen) > MAX_ELEMENTS:
            raise CapacityError(f"generated {kind} powerset exceeds {MAX_ELEMENTS} elements")
        frontier = new
    return _build(ops, seen, kind)


def _target_alphabet(f: Recogniser, z: Mapping, target: Optional[Sequence]):
    missing = [a for a in f.alphabet if a not in z]
    if missing:
        raise StructureError(f"projection map misses {missing}")
    if target is None:
        target = []
        for a in f.alphabet:
            if z[a] not in target:
                target.append(z[a])
    return [str(b) for b in target]


def _project(f: Recogniser, z: Mapping, kind: str, target, trim: bool) -> Recogniser:
    B = _target_alphabet(f, z, target)
    pre = {b: [f.letter(a) for a in f.alphabet if str(z[a]) == b] for b in B}
    ops = _SetOps(f.monoid, kind)
    if trim:
        PS = generated_powerset(f.monoid, kind, pre.values())
    else:
        PS = ideal_powerset(f.monoid) if kind == IDEAL else coideal_powerset(f.monoid)
    H = [PS.index(from_mask(ops.close(to_mask(pre[b])))) for b in B]
    I = f.ideal
    if kind == IDEAL:
        K = [i for i, E in enumerate(PS.elements) if E <= I]
    else:
        K = [i for i, E in enumerate(PS.elements) if E & I]
    return Recogniser(PS.monoid, B, H, K)


def inf_project(f: Recogniser, z: Mapping, target=None, trim: bool = False) -> Recogniser:
    """Recogniser of v ↦ min over z-preimages u of f(u)."""
    return _project(f, z, IDEAL, target, trim)


def sup_project(f: Recogniser, z: Mapping, target=None, trim: bool = False) -> Recogniser:
    """Recogniser of v ↦ max over z-preimages u of f(u)."""
    return _project(f, z, COIDEAL, target, trim)
