"""Command-line interface: ``costfn <subcommand> ...``.

Exit status is 0 on success or a positive decision, 1 on a negative
decision (or a failed validation), and 2 on usage or load errors.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import io
from .algebra import validate_axioms
from .computation import construct, semantic_value
from .costmso import compile_formula, decide_formula, evaluate, parse_formula
from .errors import CostFnError
from .green import analyze_j
from .projection import inf_project, sup_project
from .recogniser import decide_boundedness, decide_divergence, decide_domination


class _Out:
    def __init__(self, fmt: str):
        self.machine = fmt == "machine"
        self.lines = []

    def emit(self, plain: str, **kv):
        if self.machine and kv:
            self.lines.extend(f"{k}={v}" for k, v in kv.items())
        else:
            self.lines.append(plain)


def _num(x) -> str:
    return "inf" if x == math.inf else str(int(x))


def _word(text: str) -> list:
    text = text.strip()
    if "," in text:
        return [t for t in text.split(",") if t]
    if " " in text:
        return text.split()
    return list(text)


def _decision(out: _Out, d) -> int:
    out.emit(str(d), result="yes" if d.holds else "no", witness=d.witness_text())
    return 0 if d.holds else 1


def _formula_arg(text: str):
    p = Path(text)
    if p.is_file():
        text = p.read_text()
    return parse_formula(text)


def cmd_validate(a, out):
    M = io.load_monoid(a.file)
    bad = validate_axioms(M)
    if not bad:
        out.emit("ok", status="ok")
        return 0
    for v in bad:
        out.emit(v.describe(M), violation=v.axiom, witness=" ".join(M.names[i] for i in v.witness))
    return 1


def cmd_jclasses(a, out):
    M = io.load_monoid(a.file)
    ja = analyze_j(M)
    for k, members in enumerate(ja.classes):
        names = " ".join(M.names[x] for x in members)
        if not ja.class_regular[k]:
            kind = "irregular"
        elif ja.class_stable[k]:
            kind = "regular stable"
        else:
            target = " ".join(M.names[x] for x in ja.classes[ja.sharp_class[k]])
            kind = f"regular unstable sharp-class={{{target}}}"
        out.emit(f"{{{names}}} {kind}", **{f"class{k}": f"{{{names}}} {kind}"})
    return 0


def cmd_construct(a, out):
    M = io.load_monoid(a.file)
    w = M.ids(_word(a.word))
    t = construct(M, w, a.n)
    out.emit(t.format(M), tree=t.format(M), height=t.height())
    return 0


def cmd_compute(a, out):
    R = io.load_recogniser(a.file)
    p = a.p if a.p is not None else 3 * R.monoid.size
    v = semantic_value(R, _word(a.word) if a.word else [], a.variant, p)
    out.emit(_num(v), value=_num(v))
    return 0


def cmd_dominates(a, out):
    return _decision(out, decide_domination(io.load_recogniser(a.f), io.load_recogniser(a.g)))


def cmd_bounded(a, out):
    return _decision(out, decide_boundedness(io.load_recogniser(a.file)))


def cmd_diverges(a, out):
    return _decision(out, decide_divergence(io.load_recogniser(a.file)))


def cmd_project(a, out):
    R = io.load_recogniser(a.file)
    z = {}
    for item in a.map.split(","):
        src, sep, dst = item.partition(":")
        if not sep or not src or not dst:
            raise CostFnError(f"bad map entry {item!r}")
        z[src.strip()] = dst.strip()
    proj = inf_project if a.inf else sup_project
    P = proj(R, z, trim=a.trim)
    text = io.format_recogniser(P)
    if a.output:
        Path(a.output).write_text(text)
        out.emit(f"wrote {a.output}", output=a.output, elements=P.monoid.size)
    else:
        out.lines.append(text.rstrip("\n"))
    return 0


def cmd_compile(a, out):
    R = compile_formula(_formula_arg(a.formula), a.alphabet)
    text = io.format_recogniser(R)
    if a.output:
        Path(a.output).write_text(text)
        out.emit(f"wrote {a.output}", output=a.output, elements=R.monoid.size)
    else:
        out.lines.append(text.rstrip("\n"))
    return 0


def cmd_eval(a, out):
    val = {}
    for item in a.assign or []:
        var, sep, rest = item.partition("=")
        if not sep:
            raise CostFnError(f"bad assignment {item!r}")
        try:
            val[var.strip()] = {int(x) for x in rest.split(",") if x.strip()}
        except ValueError:
            raise CostFnError(f"bad positions in {item!r}") from None
    v = evaluate(_formula_arg(a.formula), a.word, val)
    out.emit(_num(v), value=_num(v))
    return 0


def cmd_decide(a, out):
    phi = _formula_arg(a.formulas[0])
    psi = _formula_arg(a.formulas[1]) if len(a.formulas) > 1 else None
    if a.task == "dominates" and psi is None:
        raise CostFnError("dominates needs two formulas")
    if a.task != "dominates" and psi is not None:
        raise CostFnError(f"{a.task} takes one formula")
    return _decision(out, decide_formula(a.task, phi, psi, alphabet=a.alphabet))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="costfn", description="Regular cost functions toolkit.")
    ap.add_argument("--format", choices=("plain", "machine"), default="plain")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("validate", help="check the stabilisation monoid axioms")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("jclasses", help="list J-classes")
    s.add_argument("file")
    s.set_defaults(fn=cmd_jclasses)

    s = sub.add_parser("construct", help="build an n-computation over a word")
    s.add_argument("file")
    s.add_argument("--word", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("compute", help="evaluate one of the four semantic functions")
    s.add_argument("file")
    s.add_argument("--word", default="")
    s.add_argument("--variant", choices=("mm", "m", "p", "pp"), required=True)
    s.add_argument("--p", type=int, default=None, help="height bound (default 3|M|)")
    s.set_defaults(fn=cmd_compute)

    s = sub.add_parser("dominates", help="decide f ≼ g")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(fn=cmd_dominates)

    for name, fn in (("bounded", cmd_bounded), ("diverges", cmd_diverges)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.set_defaults(fn=fn)

    s = sub.add_parser("project", help="inf- or sup-projection along a letter map")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--inf", action="store_true")
    g.add_argument("--sup", action="store_true")
    s.add_argument("file")
    s.add_argument("--map", required=True, help="e.g. a:c,b:c")
    s.add_argument("--trim", action="store_true", help="keep only the generated part")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_project)

    s = sub.add_parser("compile", help="compile a formula into a recogniser")
    s.add_argument("formula")
    s.add_argument("--alphabet", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_compile)

    s = sub.add_parser("eval", help="brute-force value of a formula on a word")
    s.add_argument("formula")
    s.add_argument("--word", default="")
    s.add_argument("--assign", action="append", help="X=1,3 (1-based positions)")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("decide", help="decide a question about closed formulas")
    s.add_argument("--task", choices=("bounded", "diverges", "dominates"), required=True)
    s.add_argument("formulas", nargs="+")
    s.add_argument("--alphabet", required=True)
    s.set_defaults(fn=cmd_decide)
    return ap


def run(argv=None):
    """Return ``(status, text)`` without touching the process streams."""
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    out = _Out(a.format)
    try:
        status = a.fn(a, out)
    except (CostFnError, ValueError, OSError) as exc:
        return 2, f"error: {exc}"
    return status, "\n".join(out.lines)


def main(argv=None) -> int:
    status, text = run(argv)
    if text:
        stream = sys.stderr if status == 2 else sys.stdout
        print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
