"""Green's J-relation and omega powers."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .algebra import StabilisationMonoid, pi_eval
from .errors import StructureError


@dataclass(frozen=True)
class JAnalysis:
    """``j_leq[a, b]`` holds iff ``a = x.b.y`` for some x, y in the monoid.

    Classes are listed in order of their lowest element.  ``class_stable``
    and ``sharp_class`` are ``None`` for irregular classes.
    """

    j_leq: np.ndarray
    classes: tuple
    class_of: tuple
    class_regular: tuple
    class_stable: tuple
    sharp_class: tuple
    r_class_of: tuple
    l_class_of: tuple

    def class_members(self, k: int) -> frozenset:
        return frozenset(self.classes[k])

    def j_less(self, a: int, b: int) -> bool:
        """Strictly below in the J-preorder."""
        return bool(self.j_leq[a, b]) and not bool(self.j_leq[b, a])


def _partition(rel: np.ndarray) -> tuple:
    m = rel.shape[0]
    eq = rel & rel.T
    cls = [-1] * m
    k = 0
    for a in range(m):
        if cls[a] < 0:
            for b in np.flatnonzero(eq[a]):
                cls[int(b)] = k
            k += 1
    return tuple(cls)


def analyze_j(M: StabilisationMonoid) -> JAnalysis:
    P = M.product
    m = M.size
    jl = np.ascontiguousarray(kernels.j_below(P))
    class_of = _partition(jl)
    ncls = max(class_of) + 1
    classes = tuple(tuple(a for a in range(m) if class_of[a] == k) for k in range(ncls))

    # a <=_R b iff a = b.y ; a <=_L b iff a = x.b
    r_leq = np.zeros((m, m), dtype=bool)
    l_leq = np.zeros((m, m), dtype=bool)
    for b in range(m):
        r_leq[P[b, :], b] = True
        l_leq[P[:, b], b] = True

    regular, stable, sharp_cls = [], [], []
    for members in classes:
        idem = [e for e in members if P[e, e] == e]
        regular.append(bool(idem))
        if not idem:
            stable.append(None)
            sharp_cls.append(None)
            continue
        targets = {class_of[int(M.sharp[e])] for e in idem}
        if len(targets) != 1:
            raise StructureError("sharp images of one regular class span several classes")
        (t,) = targets
        sharp_cls.append(t)
        stable.append(t == class_of[idem[0]])
    return JAnalysis(
        j_leq=jl,
        classes=classes,
        class_of=class_of,
        class_regular=tuple(regular),
        class_stable=tuple(stable),
        sharp_class=tuple(sharp_cls),
        r_class_of=_partition(r_leq),
        l_class_of=_partition(l_leq),
    )


@dataclass(frozen=True)
class OmegaData:
    Omega: int
    omega_power: tuple
    omega_sharp: tuple


def idempotent_exponent(M: StabilisationMonoid, a: int) -> int:
    """Least k >= 1 such that a^k is idempotent."""
    x, k = a, 1
    while M.product[x, x] != x:
        x = int(M.product[x, a])
        k += 1
    return k


def power(M: StabilisationMonoid, a: int, k: int) -> int:
    return pi_eval(M, [a] * k)


def omega_data(M: StabilisationMonoid) -> OmegaData:
    m = M.size
    Om = 1
    for a in range(m):
        Om = lcm(Om, idempotent_exponent(M, a))
    pw = tuple(power(M, a, Om) for a in range(m))
    return OmegaData(Om, pw, tuple(int(M.sharp[x]) for x in pw))


def is_j_smooth(M: StabilisationMonoid, J: Iterable[int], w: Sequence[int],
                analysis: Optional[JAnalysis] = None) -> bool:
    if len(w) == 0:
        raise StructureError("smoothness is not defined for the empty word")
    J = frozenset(J)
    return all(a in J for a in w) and pi_eval(M, w) in J


def maximal_class(analysis: JAnalysis, Z: Iterable[int]) -> int:
    """Index of a J-maximal class inside the union of classes ``Z`` (lowest id first)."""
    Z = frozenset(Z)
    cands = sorted({analysis.class_of[a] for a in Z}, key=lambda k: analysis.classes[k][0])
    for k in cands:
        rep = analysis.classes[k][0]
        if not any(analysis.j_less(rep, analysis.classes[o][0]) for o in cands if o != k):
            return k
    raise StructureError("empty ideal has no maximal class")
