import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from costfn.algebra import pi_eval
from costfn.computation import (
    CompTree,
    achievable_values,
    construct,
    leaf,
    node,
    parse_tree,
    ramsey_factorise_smooth,
    semantic_value,
    sm_extend,
    sm_normalise,
    validate_tree,
)
from costfn.corpus import count_letter, counta, longest_run, random_monoid, sega
from costfn.errors import OracleScopeError, StructureError
from costfn.green import analyze_j

from oracles import naive_values

B, A, Z = 0, 1, 2


def test_validate_examples():
    M = counta()
    assert validate_tree(M, node(A, [leaf(A), leaf(A)]), [A, A], 3)
    t = node(Z, [leaf(A)] * 4)
    assert validate_tree(M, t, [A] * 4, 3)
    bad = validate_tree(M, t, [A] * 4, 4)
    assert not bad and bad.path == ()


def test_leaf_count_mismatch_is_distinct():
    M = counta()
    r = validate_tree(M, node(A, [leaf(A), leaf(A)]), [A, A, A], 3)
    assert not r and "leaf count" in r.reason


def test_unary_nodes_rejected():
    M = counta()
    r = validate_tree(M, node(A, [leaf(A)]), [A], 3)
    assert not r and "single child" in r.reason


def test_tree_text_round_trip():
    M = counta()
    t = node(Z, [node(A, [leaf(A), leaf(B)]), leaf(A), leaf(A)])
    assert t.format(M) == "0(a(a b) a a)"
    assert parse_tree(M, t.format(M)) == t


def test_construct_examples():
    M = counta()
    t = construct(M, [A] * 8, 2)
    assert validate_tree(M, t, [A] * 8, 2)
    assert t.value in achievable_values(M, [A] * 8, 2, 9)
    assert t.value in {A, Z} and t.height() <= 9
    t = construct(M, [A, B], 5)
    assert t.value == A
    for x in range(3):
        assert construct(M, [x], 7) == leaf(x)


def test_ramsey_examples():
    M = counta()
    t = ramsey_factorise_smooth(M, {A}, [A] * 7)
    assert t == node(A, [leaf(A)] * 7) and t.height() == 1
    assert ramsey_factorise_smooth(M, {B}, [B, B]) == node(B, [leaf(B), leaf(B)])
    assert ramsey_factorise_smooth(M, {Z}, [Z]) == leaf(Z)
    with pytest.raises(StructureError):
        ramsey_factorise_smooth(M, {A}, [A, B])


def test_ramsey_bound_on_random_smooth_words():
    rng = random.Random(4)
    for _ in range(60):
        M = random_monoid(rng)
        ja = analyze_j(M)
        for k, members in enumerate(ja.classes):
            if not ja.class_regular[k]:
                continue
            # grow a smooth word letter by letter
            w = [rng.choice(members)]
            for _ in range(rng.randint(0, 40)):
                a = rng.choice(members)
                if pi_eval(M, w + [a]) in members:
                    w.append(a)
            t = ramsey_factorise_smooth(M, members, w, ja)
            assert validate_tree(M, t, w, math.inf)
            assert t.value == pi_eval(M, w)
            assert t.height() <= 3 * len(members)


@given(st.integers(0, 100_000))
def test_construct_fuzz(seed):
    rng = random.Random(seed)
    M = random_monoid(rng)
    w = [rng.randrange(M.size) for _ in range(rng.randint(1, 200))]
    n = rng.choice([1, 2, 5, 17])
    t = construct(M, w, n)
    assert validate_tree(M, t, w, n)
    assert t.height() <= 3 * M.size


def test_sm_normalise_examples():
    M = counta()
    assert sm_normalise(M, node(A, [leaf(B), leaf(A)])) == leaf(A)
    assert sm_normalise(M, node(B, [leaf(B), leaf(B)])) == leaf(B)
    assert sm_normalise(M, node(A, [leaf(A), leaf(B)])) == leaf(A)


def test_sm_round_trip_and_height():
    rng = random.Random(8)
    for _ in range(80):
        M = random_monoid(rng)
        u = M.unit
        w = [rng.choice([x for x in range(M.size) if x != u] or [u]) for _ in range(rng.randint(1, 12))]
        if u in w:
            continue
        n = rng.choice([1, 2, 3])
        t = construct(M, w, n)
        padded = []
        for a in w:
            padded += [u] * rng.randint(0, 3) + [a]
        padded += [u] * rng.randint(0, 3)
        ext = sm_extend(M, t, w, padded)
        assert validate_tree(M, ext, padded, n)
        assert ext.value == t.value and ext.height() <= t.height() + 3
        back = sm_normalise(M, ext, padded)
        assert validate_tree(M, back, w, n)
        assert back.value == t.value and back.height() <= ext.height()


def test_achievable_examples():
    M = counta()
    assert achievable_values(M, [A] * 4, 3, 9) == {A, Z}
    assert achievable_values(M, [A] * 4, 4, 9) == {A}
    for x in range(3):
        assert achievable_values(M, [x], 2, 2, "exact") == {x}
    assert achievable_values(M, [A], 0, 0, "under") == {A, Z}
    assert achievable_values(M, [Z], 0, 0, "over") == {A, Z}
    with pytest.raises(OracleScopeError):
        achievable_values(M, [A] * 15, 2, 3)


@pytest.mark.parametrize("mode", ["exact", "under", "over"])
def test_achievable_matches_naive_enumeration(mode):
    rng = random.Random({"exact": 1, "under": 2, "over": 3}[mode])
    for _ in range(40):
        M = random_monoid(rng)
        L = rng.randint(1, 6)
        w = [rng.randrange(M.size) for _ in range(L)]
        n, p = rng.randint(0, L + 1), rng.randint(0, L)
        assert achievable_values(M, w, n, p, mode) == naive_values(M, w, n, p, mode)


def test_saturation_threshold():
    rng = random.Random(9)
    for _ in range(30):
        M = random_monoid(rng)
        L = rng.randint(1, 7)
        w = [rng.randrange(M.size) for _ in range(L)]
        for mode in ("exact", "under", "over"):
            assert achievable_values(M, w, L, L, mode) == achievable_values(M, w, L + 1, L, mode)


def test_semantic_examples():
    R = count_letter()
    assert semantic_value(R, "aaaa", "+", 9) == 4
    assert semantic_value(R, "aaaa", "-", 9) == 0
    for v in ("--", "-", "+", "++"):
        assert semantic_value(R, "b", v, 9) == 0
    # empty word: value is the unit, outside the ideal
    assert semantic_value(R, "", "+", 9) == 0 and semantic_value(R, "", "-", 9) == 0


def test_semantic_infinite_values():
    M = counta()
    from costfn.recogniser import Recogniser

    R = Recogniser(M, "ab", [A, B], [A, Z])  # everything but the unit is large
    assert semantic_value(R, "a", "+", 9) == math.inf
    assert semantic_value(R, "b", "-", 9) == 0
    R2 = Recogniser(M, "ab", [A, B], [B, A, Z])
    assert semantic_value(R2, "ab", "-", 9) == math.inf
    assert semantic_value(R2, "", "-", 9) == math.inf


def test_semantic_values_track_counts():
    R = count_letter()
    # one stabilisation node over the k blocks holding an a needs k > n
    for u in ("ab", "aab", "babab", "aaaaa", "bbabbbab"):
        k = u.count("a")
        assert semantic_value(R, u, "+", 9) == (k if k >= 2 else 0)


def test_random_over_values_sit_above_product():
    rng = random.Random(12)
    for _ in range(50):
        M = random_monoid(rng)
        L = rng.randint(1, 6)
        w = [rng.randrange(M.size) for _ in range(L)]
        pi = pi_eval(M, w)
        for n in (L, L + 2):
            for v in achievable_values(M, w, n, L, "over"):
                assert M.leq[pi, v]
