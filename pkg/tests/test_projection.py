import itertools
import random

import pytest

from costfn.algebra import downward_close, is_ideal, upward_close, validate_axioms
from costfn.corpus import (
    count_letter,
    counta,
    direct_count,
    direct_longest_run,
    direct_size,
    longest_run,
    random_monoid,
    sega,
    size,
    zero_function,
)
from costfn.projection import (
    coideal_powerset,
    generated_powerset,
    ideal_powerset,
    inf_project,
    sup_project,
)
from costfn.recogniser import decide_boundedness, decide_divergence, decide_domination
from costfn.sharpexpr import parse_expr, sharp_closure, unfold, value


def sets(M, *groups):
    return [frozenset(M.index(x) for x in g) for g in groups]


def corpus():
    rng = random.Random(13)
    return [counta(), sega()] + [random_monoid(rng, 5) for _ in range(12)]


def test_ideal_powerset_of_counta():
    M = counta()
    PS = ideal_powerset(M)
    assert set(PS.elements) == set(sets(M, "", "0", "0a", "b", "0b", "0ab"))
    assert len(PS.elements) == 6
    assert validate_axioms(PS.monoid) == []
    N = PS.monoid
    x, y = PS.index(sets(M, "0a")[0]), PS.index(sets(M, "0b")[0])
    assert PS.elements[N.mul(x, y)] == sets(M, "0a")[0]
    assert PS.elements[N.sharp_of(x)] == sets(M, "0")[0]
    assert PS.elements[N.unit] == sets(M, "b")[0]


def test_coideal_powerset_of_counta():
    M = counta()
    PS = coideal_powerset(M)
    assert set(PS.elements) == set(sets(M, "", "b", "a", "ab", "0a", "0ab"))
    assert validate_axioms(PS.monoid) == []
    N = PS.monoid
    assert PS.elements[N.unit] == sets(M, "b")[0]
    a, ab = PS.index(sets(M, "a")[0]), PS.index(sets(M, "ab")[0])
    assert not N.leq[a, ab] and N.leq[ab, a]


def test_canonical_order_is_reproducible():
    M = counta()
    assert ideal_powerset(M).monoid.names == ("{}", "{0}", "{a,0}", "{b}", "{b,0}", "{b,a,0}")
    assert ideal_powerset(M).monoid == ideal_powerset(M).monoid


@pytest.mark.parametrize("M", corpus(), ids=lambda M: f"m{M.size}")
def test_powersets_are_stabilisation_monoids(M):
    for build, close in ((ideal_powerset, downward_close), (coideal_powerset, upward_close)):
        PS = build(M)
        assert validate_axioms(PS.monoid) == []
        for E in PS.elements:
            assert close(M, E) == E


@pytest.mark.parametrize("M", corpus(), ids=lambda M: f"m{M.size}")
def test_coideal_strict_closure_needs_no_strictness(M):
    for E in coideal_powerset(M).elements:
        res = sharp_closure(M, E)
        assert upward_close(M, res.strict) == upward_close(M, res.closure)


def test_ideal_strict_closure_can_differ():
    M = counta()
    E = sets(M, "0a")[0]
    res = sharp_closure(M, E)
    assert downward_close(M, res.strict) != downward_close(M, res.closure)


def test_generated_powerset_is_a_subset():
    M = sega()
    full = coideal_powerset(M)
    part = generated_powerset(M, "coideal", [{M.index("a"), M.index("b")}])
    assert set(part.elements) <= set(full.elements)
    assert validate_axioms(part.monoid) == []


def test_inf_projection_examples():
    f = count_letter()
    g = inf_project(f, {"a": "c", "b": "c"})
    assert g.alphabet == ("c",)
    assert decide_boundedness(g).holds
    ident = inf_project(f, {"a": "a", "b": "b"})
    assert decide_domination(f, ident).holds and decide_domination(ident, f).holds
    h = inf_project(count_letter("a", "a"), {"a": "c"})
    assert decide_divergence(h).holds


def test_sup_projection_examples():
    f = count_letter()
    g = sup_project(f, {"a": "c", "b": "c"})
    assert decide_divergence(g).holds
    ident = sup_project(f, {"a": "a", "b": "b"})
    assert decide_domination(f, ident).holds and decide_domination(ident, f).holds
    z = sup_project(zero_function(), {"a": "c", "b": "c"})
    assert z.ideal == frozenset()


def test_projected_ideals_are_downward_closed():
    for f in (count_letter(), size(), longest_run()):
        for proj in (inf_project, sup_project):
            for trim in (False, True):
                R = proj(f, {"a": "c", "b": "c"}, trim=trim)
                assert is_ideal(R.monoid, R.ideal)


def test_trimmed_and_full_projections_agree():
    for f in (count_letter(), longest_run(), size()):
        for proj in (inf_project, sup_project):
            for z in ({"a": "c", "b": "c"}, {"a": "c", "b": "d"}, {"a": "d", "b": "c"}):
                full, part = proj(f, z), proj(f, z, trim=True)
                assert decide_domination(full, part).holds and decide_domination(part, full).holds


# brute-force check over preimages: functions over {a,b,c}, projected by a,b -> x and c -> y
FUNCS = [
    (count_letter("abc", "a"), lambda u: direct_count(u, "a")),
    (size("abc"), direct_size),
    (longest_run("abc", "a"), lambda u: direct_longest_run(u, "a")),
    (count_letter("abc", "c"), lambda u: direct_count(u, "c")),
]
Z = {"a": "x", "b": "x", "c": "y"}
FAMILIES = ["(x)#", "(y)#", "(xy)#", "((x)#y)#", "y(x)#"]


def preimages(v):
    choices = [[a for a in Z if Z[a] == s] for s in v]
    for t in itertools.product(*choices):
        yield "".join(t)


def trend(vals):
    if len(set(vals)) == 1:
        return "bounded"
    assert all(x < y for x, y in zip(vals, vals[1:])), vals
    return "grows"


@pytest.mark.parametrize("k", range(len(FUNCS)))
@pytest.mark.parametrize("proj,pick", [(inf_project, min), (sup_project, max)], ids=["inf", "sup"])
def test_projection_matches_brute_force(k, proj, pick):
    R, direct = FUNCS[k]
    P = proj(R, Z)
    for text in FAMILIES:
        E = parse_expr(text)
        ns = [n for n in range(1, 7) if len(unfold(E, n)) <= 6]
        vals = [pick(direct(u) for u in preimages(unfold(E, n))) for n in ns]
        large = value(P.monoid, E, interp=P.letter) in P.ideal
        assert (trend(vals) == "grows") == large, text
