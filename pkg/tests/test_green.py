import itertools
import random

import pytest

from costfn.algebra import lift_standard, pi_eval, trivial_monoid
from costfn.corpus import counta, random_monoid, sega
from costfn.errors import StructureError
from costfn.green import analyze_j, is_j_smooth, omega_data


def brute_j_leq(M):
    m = M.size
    return {(a, b) for a in range(m) for b in range(m)
            if any(M.mul(M.mul(x, b), y) == a for x in range(m) for y in range(m))}


def corpus():
    rng = random.Random(21)
    return [counta(), sega()] + [random_monoid(rng) for _ in range(15)]


def test_counta_classes():
    M = counta()
    ja = analyze_j(M)
    assert ja.classes == ((0,), (1,), (2,))
    assert ja.j_less(1, 0) and ja.j_less(2, 1)
    assert ja.class_stable == (True, False, True)
    assert ja.sharp_class[1] == 2


def test_sega_classes():
    ja = analyze_j(sega())
    assert ja.classes == ((0,), (1,), (2,), (3,))
    assert ja.class_stable[1] is False


def test_trivial_monoid_single_stable_class():
    ja = analyze_j(trivial_monoid())
    assert ja.classes == ((0,),) and ja.class_regular == (True,) and ja.class_stable == (True,)


def test_omega_examples():
    od = omega_data(counta())
    assert od.Omega == 1 and od.omega_sharp[1] == 2
    od = omega_data(sega())
    assert od.Omega == 1 and od.omega_sharp[2] == 2
    flip = lift_standard("1x", [[0, 1], [1, 0]], 0)
    od = omega_data(flip)
    assert od.Omega == 2 and od.omega_power[1] == 0


def test_smoothness():
    M = counta()
    assert is_j_smooth(M, {1}, [1, 1, 1])
    assert not is_j_smooth(M, {1}, [1, 0])
    assert is_j_smooth(M, {2}, [2])
    with pytest.raises(StructureError):
        is_j_smooth(M, {1}, [])


@pytest.mark.parametrize("M", corpus(), ids=lambda M: f"m{M.size}")
def test_analysis_matches_brute_force(M):
    ja = analyze_j(M)
    rel = brute_j_leq(M)
    for a in range(M.size):
        for b in range(M.size):
            assert bool(ja.j_leq[a, b]) == ((a, b) in rel)
    for k, members in enumerate(ja.classes):
        idem = [e for e in members if M.is_idempotent(e)]
        assert ja.class_regular[k] == bool(idem)
        if not idem:
            continue
        # sharp images of one regular class land in one class
        assert len({ja.class_of[M.sharp_of(e)] for e in idem}) == 1
        for e in idem:
            if ja.class_stable[k]:
                assert M.sharp_of(e) == e
            else:
                assert ja.j_less(M.sharp_of(e), e)


@pytest.mark.parametrize("M", corpus(), ids=lambda M: f"m{M.size}")
def test_irregular_classes_have_no_long_smooth_words(M):
    ja = analyze_j(M)
    for k, members in enumerate(ja.classes):
        if ja.class_regular[k]:
            continue
        for L in (2, 3):
            for w in itertools.product(members, repeat=L):
                assert not is_j_smooth(M, members, w)


@pytest.mark.parametrize("M", corpus(), ids=lambda M: f"m{M.size}")
def test_omega_power_is_idempotent(M):
    od = omega_data(M)
    for a in range(M.size):
        x = od.omega_power[a]
        assert M.is_idempotent(x)
        assert x == pi_eval(M, [a] * od.Omega)
        assert od.omega_sharp[a] == M.sharp_of(x)
