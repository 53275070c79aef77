"""Standard monoids and recognisers, plus a generator of random valid monoids."""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Optional

import numpy as np

from .algebra import (
    StabilisationMonoid,
    generated_submonoid,
    lift_standard,
    product_monoid,
    validate_axioms,
)
from .recogniser import Recogniser


@lru_cache(maxsize=None)
def counta() -> StabilisationMonoid:
    """Elements b (unit), a, 0 with 0 ≤ a; a counts, b is neutral, 0 is 'many'."""
    return StabilisationMonoid(
        ["b", "a", "0"], 0,
        [[0, 1, 2], [1, 1, 2], [2, 2, 2]],
        [[1, 0, 0], [0, 1, 0], [0, 1, 1]],
        [0, 2, 2],
    )


@lru_cache(maxsize=None)
def sega() -> StabilisationMonoid:
    """Elements 1, a, b, 0 with 0 ≤ a, 0 ≤ b; measures the longest run of a."""
    return StabilisationMonoid(
        ["1", "a", "b", "0"], 0,
        [[0, 1, 2, 3], [1, 1, 2, 3], [2, 2, 2, 3], [3, 3, 3, 3]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 1]],
        [0, 3, 2, 3],
    )


def count_letter(alphabet="ab", letter="a") -> Recogniser:
    """Number of occurrences of ``letter``."""
    M = counta()
    h = [M.index("a") if s == letter else M.index("b") for s in alphabet]
    return Recogniser(M, alphabet, h, [M.index("0")])


def size(alphabet="ab") -> Recogniser:
    M = counta()
    return Recogniser(M, alphabet, [M.index("a")] * len(alphabet), [M.index("0")])


def longest_run(alphabet="ab", letter="a") -> Recogniser:
    """Length of the longest block of consecutive ``letter``."""
    M = sega()
    h = [M.index("a") if s == letter else M.index("b") for s in alphabet]
    return Recogniser(M, alphabet, h, [M.index("0")])


def zero_function(alphabet="ab") -> Recogniser:
    M = counta()
    return Recogniser(M, alphabet, [M.index("a")] * len(alphabet), [])


# direct definitions of the corpus functions, for semantic cross-checks
def direct_count(u, letter="a") -> int:
    return sum(1 for s in u if s == letter)


def direct_size(u) -> int:
    return len(u)


def direct_longest_run(u, letter="a") -> int:
    best = cur = 0
    for s in u:
        cur = cur + 1 if s == letter else 0
        best = max(best, cur)
    return best


# ---------------------------------------------------------------------------
# random monoids


def _transformation_monoid(gens, k):
    """Standard monoid of transformations of {0..k-1} generated by ``gens``."""
    ident = tuple(range(k))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
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
    return lift_standard([f"t{j}" for j in range(m)], P, 0)


def random_monoid(rng: random.Random, max_size: int = 6) -> StabilisationMonoid:
    """A random valid stabilisation monoid with at most ``max_size`` elements."""
    while True:
        kind = rng.randrange(4)
        if kind == 0:
            base = product_monoid(counta(), sega())
        elif kind == 1:
            base = product_monoid(counta(), counta())
        elif kind == 2:
            base = product_monoid(sega(), sega())
        else:
            k = rng.randint(2, 3)
            gens = [tuple(rng.randrange(k) for _ in range(k)) for _ in range(rng.randint(1, 2))]
            T = _transformation_monoid(gens, k)
            base = product_monoid(T, counta()) if T.size * 3 <= 64 else T
        gens = rng.sample(range(base.size), rng.randint(1, 3))
        M, _ = generated_submonoid(base, gens)
        if M.size <= max_size and not validate_axioms(M):
            return M
