import subprocess
import sys

import pytest

from costfn import io
from costfn.cli import main, run
from costfn.corpus import count_letter
from costfn.recogniser import decide_domination


def test_validate(data_dir):
    assert run(["validate", str(data_dir / "counta.mon")]) == (0, "ok")
    assert run(["--format", "machine", "validate", str(data_dir / "sega.mon")]) == (0, "status=ok")


def test_validate_reports_violations(tmp_path, data_dir):
    text = (data_dir / "counta.mon").read_text().replace("order: 0<a", "order:")
    bad = tmp_path / "bad.mon"
    bad.write_text(text)
    status, out = run(["validate", str(bad)])
    assert status == 1 and "sharp(e) ≤ e" in out
    status, out = run(["--format", "machine", "validate", str(bad)])
    assert status == 1 and "violation=sharp(e) ≤ e" in out.splitlines()


def test_dominates_and_friends(data_dir):
    a, b = str(data_dir / "counta_a.rec"), str(data_dir / "counta_b.rec")
    assert run(["dominates", a, b]) == (1, "no witness=(a)#")
    assert run(["dominates", a, str(data_dir / "size.rec")]) == (0, "yes")
    assert run(["bounded", a]) == (1, "no witness=(a)#")
    assert run(["diverges", str(data_dir / "size.rec")]) == (0, "yes")
    assert run(["--format", "machine", "dominates", a, b]) == (1, "result=no\nwitness=(a)#")


def test_compute_and_construct(data_dir):
    rec = str(data_dir / "counta_a.rec")
    assert run(["compute", rec, "--word", "aaaa", "--variant", "p", "--p", "9"]) == (0, "4")
    assert run(["compute", rec, "--word", "aaaa", "--variant", "m", "--p", "9"]) == (0, "0")
    status, out = run(["construct", str(data_dir / "counta.mon"), "--word", "aaaa", "--n", "3"])
    assert status == 0 and out == "0(a a a a)"
    status, out = run(["--format", "machine", "construct", str(data_dir / "counta.mon"),
                       "--word", "ab", "--n", "3"])
    assert out.splitlines() == ["tree=a(a b)", "height=1"]


def test_jclasses(data_dir):
    status, out = run(["jclasses", str(data_dir / "counta.mon")])
    assert status == 0
    assert out.splitlines() == ["{b} regular stable", "{a} regular unstable sharp-class={0}",
                                "{0} regular stable"]


def test_eval_and_decide(data_dir):
    assert run(["eval", "A X. cardle(X)", "--word", "aaa"]) == (0, "3")
    assert run(["eval", "a(X)", "--word", "ab", "--assign", "X=2"]) == (0, "inf")
    assert run(["eval", str(data_dir / "count_a.msoc"), "--word", "aba"]) == (0, "2")
    size_f, count_f = str(data_dir / "size.msoc"), str(data_dir / "count_a.msoc")
    assert run(["decide", "--task", "dominates", size_f, count_f, "--alphabet", "ab"]) == (0, "yes")
    status, out = run(["decide", "--task", "bounded", size_f, "--alphabet", "a"])
    assert status == 1 and out.startswith("no witness=")


def test_project_round_trip(tmp_path, data_dir):
    out_file = tmp_path / "p.rec"
    status, msg = run(["project", "--inf", str(data_dir / "counta_a.rec"), "--map", "a:c,b:c",
                       "-o", str(out_file)])
    assert status == 0 and msg == f"wrote {out_file}"
    assert run(["bounded", str(out_file)]) == (0, "yes")
    status, text = run(["project", "--sup", str(data_dir / "counta_a.rec"), "--map", "a:c,b:c"])
    assert status == 0
    P = io.parse_recogniser(text)
    assert io.parse_recogniser(io.format_recogniser(P)) == P
    sup_file = tmp_path / "s.rec"
    sup_file.write_text(text)
    assert run(["diverges", str(sup_file)]) == (0, "yes")


def test_compile_round_trip(tmp_path):
    out_file = tmp_path / "c.rec"
    status, _ = run(["compile", "A X. (cardle(X) | E Y. (sub(Y,X) & b(Y)))", "--alphabet", "ab",
                     "-o", str(out_file)])
    assert status == 0
    R = io.load_recogniser(out_file)
    assert decide_domination(R, count_letter()).holds and decide_domination(count_letter(), R).holds


@pytest.mark.parametrize("argv", [
    ["validate", "/nonexistent.mon"],
    ["eval", "!cardle(X)", "--word", "a"],
    ["project", "--inf", "data/counta_a.rec", "--map", "a-c"],
    ["decide", "--task", "bounded", "A X. cardle(X)", "A X. cardle(X)", "--alphabet", "a"],
    ["eval", "A X. cardle(X)", "--word", "aaaaaaaaaaaa"],
])
def test_errors_exit_two(argv, data_dir, monkeypatch):
    monkeypatch.chdir(data_dir.parent)
    status, text = run(argv)
    assert status == 2 and text.startswith("error: ")


def test_unknown_flag_is_rejected(capsys):
    assert run(["validate", "--bogus", "x"])[0] == 2


def test_main_writes_errors_to_stderr(capsys):
    assert main(["validate", "/nonexistent.mon"]) == 2
    cap = capsys.readouterr()
    assert cap.out == "" and cap.err.startswith("error: ")


def test_console_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "costfn.cli", "validate", str(data_dir / "counta.mon")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "ok"
