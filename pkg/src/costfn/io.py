"""Line-oriented text formats for monoids and recognisers.

Monoid::

    elements: b a 0
    unit: b
    table:
    b a 0
    a a 0
    0 0 0
    order: 0<a
    sharp: b->b a->0 0->0

A recogniser adds ``letters: a->a b->b`` and ``ideal: 0``.  ``#`` starts
a comment.  Orders are given by generating pairs; the loader takes the
reflexive-transitive closure.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .algebra import StabilisationMonoid
from .errors import CostFnError, LoadError
from .recogniser import Recogniser


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _parse(text: str):
    fields = {"order": [], "sharp": [], "letters": [], "ideal": None}
    rows = None
    for line in _lines(text):
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if sep and key in ("elements", "unit", "table", "order", "sharp", "letters", "ideal"):
            rows = None
            toks = rest.split()
            if key == "table":
                if "table" in fields:
                    raise LoadError("table given twice")
                fields["table"] = rows = []
                if toks:
                    rows.append(toks)
            elif key in ("order", "sharp", "letters"):
                fields[key].extend(toks)
            elif key == "ideal":
                fields["ideal"] = (fields["ideal"] or []) + toks
            else:
                if key in fields:
                    raise LoadError(f"{key} given twice")
                fields[key] = toks
        elif rows is not None:
            rows.append(line.split())
        else:
            raise LoadError(f"unexpected line: {line!r}")
    return fields


def _monoid_from_fields(fields) -> StabilisationMonoid:
    for key in ("elements", "unit", "table"):
        if key not in fields:
            raise LoadError(f"missing '{key}:'")
    names = fields["elements"]
    m = len(names)
    if m == 0 or len(set(names)) != m:
        raise LoadError("elements must be a non-empty list of distinct names")
    idx = {x: i for i, x in enumerate(names)}

    def get(x):
        if x not in idx:
            raise LoadError(f"unknown element {x!r}")
        return idx[x]

    if len(fields["unit"]) != 1:
        raise LoadError("unit takes exactly one element")
    unit = get(fields["unit"][0])
    rows = fields["table"]
    if len(rows) != m or any(len(r) != m for r in rows):
        raise LoadError(f"table must have {m} rows of {m} entries")
    P = np.array([[get(x) for x in r] for r in rows], dtype=np.int64)

    leq = np.eye(m, dtype=bool)
    for tok in fields["order"]:
        if "<=" in tok:
            lo, hi = tok.split("<=", 1)
        elif "<" in tok:
            lo, hi = tok.split("<", 1)
        else:
            raise LoadError(f"bad order pair {tok!r}")
        leq[get(lo), get(hi)] = True
    for k in range(m):  # Warshall
        leq |= leq[:, [k]] & leq[[k], :]

    sharp = np.full(m, -1, dtype=np.int64)
    for tok in fields["sharp"]:
        src, arrow, dst = tok.partition("->")
        if not arrow:
            raise LoadError(f"bad sharp entry {tok!r}")
        e = get(src)
        if P[e, e] != e:
            raise LoadError(f"sharp given on non-idempotent {src!r}")
        sharp[e] = get(dst)
    try:
        return StabilisationMonoid(names, unit, P, leq, sharp)
    except CostFnError as exc:
        raise LoadError(str(exc)) from exc


def parse_monoid(text: str) -> StabilisationMonoid:
    return _monoid_from_fields(_parse(text))


def parse_recogniser(text: str) -> Recogniser:
    fields = _parse(text)
    M = _monoid_from_fields(fields)
    letters = []
    images = []
    for tok in fields["letters"]:
        sym, arrow, dst = tok.partition("->")
        if not arrow or not sym:
            raise LoadError(f"bad letter entry {tok!r}")
        letters.append(sym)
        try:
            images.append(M.index(dst))
        except CostFnError as exc:
            raise LoadError(str(exc)) from exc
    if not letters:
        raise LoadError("missing 'letters:'")
    if fields["ideal"] is None:
        raise LoadError("missing 'ideal:'")
    try:
        ideal = [M.index(x) for x in fields["ideal"]]
        return Recogniser(M, letters, images, ideal)
    except CostFnError as exc:
        raise LoadError(str(exc)) from exc


def format_monoid(M: StabilisationMonoid) -> str:
    n = M.names
    out = ["elements: " + " ".join(n), "unit: " + n[M.unit], "table:"]
    for i in range(M.size):
        out.append(" ".join(n[int(x)] for x in M.product[i]))
    # covering pairs only
    strict = M.leq & ~np.eye(M.size, dtype=bool)
    for a in range(M.size):
        for b in range(M.size):
            if strict[a, b] and not any(strict[a, c] and strict[c, b] for c in range(M.size)):
                out.append(f"order: {n[a]}<{n[b]}")
    pairs = [f"{n[e]}->{n[int(M.sharp[e])]}" for e in range(M.size) if M.sharp[e] >= 0]
    out.append("sharp: " + " ".join(pairs))
    return "\n".join(out) + "\n"


def format_recogniser(R: Recogniser) -> str:
    n = R.monoid.names
    text = format_monoid(R.monoid)
    text += "letters: " + " ".join(f"{a}->{n[x]}" for a, x in zip(R.alphabet, R.h)) + "\n"
    text += "ideal: " + " ".join(n[x] for x in sorted(R.ideal)) + "\n"
    return text


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc.strerror}") from exc


def load_monoid(path) -> StabilisationMonoid:
    return parse_monoid(_read(path))


def load_recogniser(path) -> Recogniser:
    return parse_recogniser(_read(path))


def save(obj, path) -> None:
    text = format_recogniser(obj) if isinstance(obj, Recogniser) else format_monoid(obj)
    Path(path).write_text(text)
