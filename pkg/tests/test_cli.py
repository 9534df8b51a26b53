from pathlib import Path

import pytest

import omega_robust.fixtures as fixtures_pkg
from omega_robust.cli import main

FIXTURES = Path(fixtures_pkg.__file__).parent


def path(name):
    return str(FIXTURES / name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_word_rank(capsys):
    assert run(capsys, "word-rank", path("laseq.dpa"), "-w", ";aab") == (0, "1\n", "")


def test_value_as_given(capsys):
    code, out, _ = run(capsys, "value", path("linf_a.dpa"), "-w", "bb;ab", "--dcmp", "as-given")
    assert code == 0
    assert out == "accept=1 period=(0,1/2) spoke=(0,-3)\n"


def test_compare(capsys):
    code, out, _ = run(
        capsys, "compare", path("linf_a.dpa"), "-w1", "bb;ab", "-w2", "bbbbb;ab", "--dcmp", "as-given"
    )
    lines = out.splitlines()
    assert code == 0 and lines[0] == ">"
    assert lines[2] == "accept=1 period=(0,1/2) spoke=(0,-15/2)"


def test_letters_table(capsys):
    code, out, _ = run(capsys, "letters", path("laseq.dpa"), "-w", "abbaaaaab;b", "-n", "9")
    rows = [line.split("\t") for line in out.splitlines()]
    assert code == 0
    assert rows[0][0] == "k"
    assert rows[1][5] == "3"
    assert [r[5] for r in rows[2:]] == ["2", "3", "3", "2", "1", "0", "0", "0", "3"]
    assert [r[3] for r in rows[2:]] == ["1", "2", "3", "4", "4", "4", "5", "6", "9"]


def test_infix_rank_and_classes(capsys):
    assert run(capsys, "infix-rank", path("lmod2.dpa"), "-u", "a", "-v", "c")[1] == "2\n"
    code, out, _ = run(capsys, "classes", path("lmod2.dpa"))
    assert code == 0 and len(out.splitlines()) == 2


def test_validate_and_wagner(capsys):
    code, out, _ = run(capsys, "validate", path("grants.dpa"))
    assert code == 0 and out.startswith("ok dpa")
    assert run(capsys, "wagner", path("laseq.dpa"))[1] == "DM-4\n"


def test_outputs_to_files(capsys, tmp_path):
    for cmd in ("minimize", "vigor", "robust", "dot"):
        target = tmp_path / f"{cmd}.out"
        assert run(capsys, cmd, path("linf_ab.dpa"), "-o", str(target))[0] == 0
        assert target.read_text()
    assert run(capsys, "validate", str(tmp_path / "robust.out"))[0] == 0
    assert run(capsys, "dot", path("lga.dpa"), "--robust")[1].startswith("digraph")


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", path("linf_a.dpa"), "--max-spoke", "1", "--max-period", "2")
    assert code == 0 and "properties hold" in out
    code, out, _ = run(capsys, "oracle", path("linf_a.dpa"), "--max-spoke", "0", "--max-period", "1", "--json")
    assert code == 0 and out.startswith("{")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["word-rank", "laseq.dpa", "-w", ";aac"], 2),
        (["word-rank", "laseq.dpa", "-w", "aab"], 2),
        (["letters", "laseq.dpa", "-w", ";a", "-n", "-1"], 2),
        (["nonsense"], 2),
        (["value", "laseq.dpa"], 2),
    ],
)
def test_usage_errors(capsys, argv, code):
    argv = [path(a) if a.endswith(".dpa") else a for a in argv]
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""


def test_analysis_errors(capsys, tmp_path):
    bad = tmp_path / "bad.dpa"
    bad.write_text("dpa v2\n")
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 1 and "error" in err
    assert run(capsys, "validate", str(tmp_path / "missing.dpa"))[0] == 1
