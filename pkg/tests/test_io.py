import random

import pytest

from costfn import io
from costfn.corpus import count_letter, counta, longest_run, random_monoid, sega
from costfn.errors import LoadError
from costfn.projection import inf_project, sup_project


def test_load_shipped_files(data_dir):
    assert io.load_monoid(data_dir / "counta.mon") == counta()
    assert io.load_monoid(data_dir / "sega.mon") == sega()
    assert io.load_recogniser(data_dir / "counta_a.rec") == count_letter("ab", "a")
    assert io.load_recogniser(data_dir / "sega_a.rec") == longest_run("ab", "a")


def test_order_is_transitively_closed():
    text = """elements: 1 x y z
unit: 1
table:
1 x y z
x z z z
y z z z
z z z z
order: z<y y<x
sharp: 1->1 z->z
"""
    M = io.parse_monoid(text)
    assert M.leq[M.index("z"), M.index("x")]


def test_sharp_on_non_idempotent_is_a_load_error():
    text = "elements: b a 0\nunit: b\ntable:\nb a 0\na 0 0\n0 0 0\nsharp: b->b a->0 0->0\n"
    with pytest.raises(LoadError, match="non-idempotent"):
        io.parse_monoid(text)


@pytest.mark.parametrize("broken", [
    "elements: a\nunit: b\ntable:\na\nsharp: a->a\n",
    "elements: a b\nunit: a\ntable:\na b\nsharp: a->a\n",
    "elements: a\nunit: a\ntable:\na\nbogus line\n",
    "elements: a\nunit: a\ntable:\na\norder: a-a\n",
])
def test_malformed_inputs(broken):
    with pytest.raises(LoadError):
        io.parse_monoid(broken)


def test_round_trip_monoids_and_recognisers():
    rng = random.Random(5)
    for _ in range(20):
        M = random_monoid(rng)
        assert io.parse_monoid(io.format_monoid(M)) == M
    for R in (count_letter(), longest_run(), inf_project(count_letter(), {"a": "c", "b": "c"}),
              sup_project(count_letter(), {"a": "a", "b": "c"})):
        assert io.parse_recogniser(io.format_recogniser(R)) == R
