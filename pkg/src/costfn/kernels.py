"""Table-scanning kernels with a numba path and a pure-numpy path.

Every kernel exists twice: ``nb_<name>`` (explicit loops compiled with
``numba.njit``) and ``np_<name>`` (vectorised numpy).  The public name
``<name>`` is bound to one of them at import time.  Set the environment
variable ``COSTFN_DISABLE_NUMBA=1`` to force the numpy path; it is also
used automatically when numba cannot be imported.

Element sets handed to the kernels are bitmasks held in ``np.uint64``
(at most 64 elements per monoid).
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_disabled = os.environ.get("COSTFN_DISABLE_NUMBA", "").lower() in ("1", "true", "yes", "on")
USE_NUMBA = numba is not None and not _disabled
BACKEND = "numba" if USE_NUMBA else "numpy"

_U1 = np.uint64(1)
_U0 = np.uint64(0)


def _njit(fn):
    if numba is None:
        return None
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# associativity


def _assoc_loops(P):
    m = P.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for a in range(m):
        for b in range(m):
            ab = P[a, b]
            for c in range(m):
                if P[ab, c] != P[a, P[b, c]]:
                    out[0] = a
                    out[1] = b
                    out[2] = c
                    return out
    return out


def np_assoc_witness(P):
    m = P.shape[0]
    lhs = P[P]  # lhs[a, b, c] = (a.b).c
    rhs = P[np.arange(m)[:, None, None], P[None, :, :]]  # a.(b.c)
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return np.full(3, -1, dtype=np.int64)
    return bad[0].astype(np.int64)


nb_assoc_witness = _njit(_assoc_loops)


# ---------------------------------------------------------------------------
# monotonicity of the product; witness (a, a2, b, b2) with a<=a2, b<=b2


def _monotone_loops(P, leq):
    m = P.shape[0]
    out = np.full(4, -1, dtype=np.int64)
    for a in range(m):
        for a2 in range(m):
            if a == a2 or not leq[a, a2]:
                continue
            for b in range(m):
                if not leq[P[a, b], P[a2, b]]:
                    out[0] = a
                    out[1] = a2
                    out[2] = b
                    out[3] = b
                    return out
    for b in range(m):
        for b2 in range(m):
            if b == b2 or not leq[b, b2]:
                continue
            for a in range(m):
                if not leq[P[a, b], P[a, b2]]:
                    out[0] = a
                    out[1] = a
                    out[2] = b
                    out[3] = b2
                    return out
    return out


def np_monotone_witness(P, leq):
    m = P.shape[0]
    strict = leq & ~np.eye(m, dtype=bool)
    # left[a, a2, b] = P[a,b] <= P[a2,b]
    left = leq[P[:, None, :], P[None, :, :]]
    bad = np.argwhere(strict[:, :, None] & ~left)
    if len(bad):
        a, a2, b = bad[0]
        return np.array([a, a2, b, b], dtype=np.int64)
    # right[b, b2, a] = P[a,b] <= P[a,b2]
    right = leq[P.T[:, None, :], P.T[None, :, :]]
    bad = np.argwhere(strict[:, :, None] & ~right)
    if len(bad):
        b, b2, a = bad[0]
        return np.array([a, a, b, b2], dtype=np.int64)
    return np.full(4, -1, dtype=np.int64)


nb_monotone_witness = _njit(_monotone_loops)


# ---------------------------------------------------------------------------
# J-preorder: below[a, b] iff a = x.b.y for some x, y (unit included)


def _j_below_loops(P):
    m = P.shape[0]
    below = np.zeros((m, m), dtype=np.bool_)
    for b in range(m):
        for x in range(m):
            xb = P[x, b]
            for y in range(m):
                below[P[xb, y], b] = True
    return below


def np_j_below(P):
    m = P.shape[0]
    xby = P[P]  # xby[x, b, y] = (x.b).y
    cols = np.broadcast_to(np.arange(m)[None, :, None], xby.shape)
    below = np.zeros((m, m), dtype=bool)
    below[xby.ravel(), cols.ravel()] = True
    return below


nb_j_below = _njit(_j_below_loops)


# ---------------------------------------------------------------------------
# product of two element sets followed by a closure (down or up)


def _set_product_loops(P, A, B, closure_rows):
    m = P.shape[0]
    raw = np.uint64(0)
    one = np.uint64(1)
    for a in range(m):
        if (A >> np.uint64(a)) & one:
            for b in range(m):
                if (B >> np.uint64(b)) & one:
                    raw |= one << np.uint64(P[a, b])
    out = np.uint64(0)
    for r in range(m):
        if (raw >> np.uint64(r)) & one:
            out |= closure_rows[r]
    return out


def _bits(mask, m):
    return ((np.uint64(mask) >> np.arange(m, dtype=np.uint64)) & _U1).astype(bool)


def np_set_product(P, A, B, closure_rows):
    m = P.shape[0]
    a = _bits(A, m)
    b = _bits(B, m)
    hit = np.zeros(m, dtype=bool)
    hit[P[np.ix_(a, b)].ravel()] = True
    rows = closure_rows[hit]
    if len(rows) == 0:
        return _U0
    return np.bitwise_or.reduce(rows)


nb_set_product = _njit(_set_product_loops)


# ---------------------------------------------------------------------------
# interval dynamic program over computation trees
#
# word:   int64 letters
# rel:    uint64 per raw value r, the labels v allowed by the mode (v rel r)
# idem:   bool per element
# Returns the bitmask of root labels of trees over the whole word with
# threshold n and height <= p.  Inner nodes always have >= 2 children.


def _values_dp_loops(word, P, sharp, idem, rel, n, p):
    L = word.shape[0]
    m = P.shape[0]
    one = np.uint64(1)
    zero = np.uint64(0)
    top = max(n, 1) + 1  # counts saturate here: top > n and top >= 2
    top_bit = one << np.uint64(top)
    over_bit = one << np.uint64(top + 1)
    idem_lo = 2
    idem_hi = min(n, top - 1)
    idem_bits = zero
    for c in range(idem_lo, idem_hi + 1):
        idem_bits |= one << np.uint64(c)

    cur = np.zeros((L + 1, L + 1), dtype=np.uint64)
    for i in range(L):
        cur[i, i + 1] = rel[word[i]]
    hmax = min(p, L - 1)
    cnt = np.zeros((L + 1, L + 1), dtype=np.uint64)
    for _h in range(hmax):
        nxt = np.zeros((L + 1, L + 1), dtype=np.uint64)
        for i in range(L):
            nxt[i, i + 1] = rel[word[i]]
        raw = np.zeros((L + 1, L + 1), dtype=np.uint64)
        # binary nodes
        for length in range(2, L + 1):
            for i in range(L - length + 1):
                j = i + length
                acc = zero
                for k in range(i + 1, j):
                    A = cur[i, k]
                    B = cur[k, j]
                    if A == zero or B == zero:
                        continue
                    for a in range(m):
                        if (A >> np.uint64(a)) & one:
                            for b in range(m):
                                if (B >> np.uint64(b)) & one:
                                    acc |= one << np.uint64(P[a, b])
                raw[i, j] = acc
        # idempotent and stabilisation nodes
        for e in range(m):
            if not idem[e]:
                continue
            eb = one << np.uint64(e)
            for length in range(1, L + 1):
                for i in range(L - length + 1):
                    j = i + length
                    c = zero
                    if cur[i, j] & eb:
                        c = one << np.uint64(1)
                    for k in range(i + 1, j):
                        if cur[k, j] & eb:
                            s = cnt[i, k] << one
                            if s & over_bit:
                                s = (s & ~over_bit) | top_bit
                            c |= s
                    cnt[i, j] = c
                    if length >= 2:
                        if c & idem_bits:
                            raw[i, j] |= eb
                        if c & top_bit:
                            raw[i, j] |= one << np.uint64(sharp[e])
        for length in range(2, L + 1):
            for i in range(L - length + 1):
                j = i + length
                r = raw[i, j]
                acc = zero
                for v in range(m):
                    if (r >> np.uint64(v)) & one:
                        acc |= rel[v]
                nxt[i, j] = acc
        cur = nxt
    return cur[0, L]


nb_values_dp = _njit(_values_dp_loops)


def np_values_dp(word, P, sharp, idem, rel, n, p):
    L = len(word)
    m = P.shape[0]
    relb = np.stack([_bits(r, m) for r in rel]) if m else np.zeros((0, 0), bool)
    top = max(n, 1) + 1
    idem_counts = np.zeros(top + 1, dtype=bool)
    idem_counts[2:min(n, top - 1) + 1] = True
    idems = np.flatnonzero(idem)

    cur = np.zeros((L + 1, L + 1, m), dtype=bool)
    for i in range(L):
        cur[i, i + 1] = relb[word[i]]
    for _h in range(min(p, L - 1)):
        nxt = np.zeros_like(cur)
        for i in range(L):
            nxt[i, i + 1] = relb[word[i]]
        raw = np.zeros_like(cur)
        for length in range(2, L + 1):
            for i in range(L - length + 1):
                j = i + length
                for k in range(i + 1, j):
                    pairs = cur[i, k][:, None] & cur[k, j][None, :]
                    if pairs.any():
                        raw[i, j, P[pairs]] = True
        for e in idems:
            has = cur[:, :, e]
            cnt = np.zeros((L + 1, L + 1, top + 1), dtype=bool)
            for length in range(1, L + 1):
                for i in range(L - length + 1):
                    j = i + length
                    c = np.zeros(top + 1, dtype=bool)
                    c[1] = has[i, j]
                    ks = np.arange(i + 1, j)
                    ks = ks[has[ks, j]]
                    if len(ks):
                        prev = cnt[i, ks].any(axis=0)
                        c[2:] |= prev[1:top]
                        c[top] |= prev[top]
                    cnt[i, j] = c
                    if length >= 2:
                        if (c & idem_counts).any():
                            raw[i, j, e] = True
                        if c[top]:
                            raw[i, j, sharp[e]] = True
        for length in range(2, L + 1):
            for i in range(L - length + 1):
                j = i + length
                r = raw[i, j]
                if r.any():
                    nxt[i, j] = relb[r].any(axis=0)
        cur = nxt
    out = 0
    for v in np.flatnonzero(cur[0, L]):
        out |= 1 << int(v)
    return np.uint64(out)


# ---------------------------------------------------------------------------

if USE_NUMBA:
    assoc_witness = nb_assoc_witness
    monotone_witness = nb_monotone_witness
    j_below = nb_j_below
    set_product = nb_set_product
    values_dp = nb_values_dp
else:
    assoc_witness = np_assoc_witness
    monotone_witness = np_monotone_witness
    j_below = np_j_below
    set_product = np_set_product
    values_dp = np_values_dp


def implementations(name):
    """Return ``(numba_fn_or_None, numpy_fn)`` for a kernel name."""
    return globals()["nb_" + name], globals()["np_" + name]
