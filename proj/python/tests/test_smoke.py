from pathlib import Path

import pytest

import cgm

PROGRAMS = Path(__file__).resolve().parents[2] / "programs"

LOCK = """instance concst
init 41
do {
  lock;
  x <- get;
  put(x + 1);
  unlock
}
"""


def test_instances_are_listed():
    names = cgm.instance_names()
    for name in ("identity", "glist", "concst", "tstate", "ahl"):
        assert name in names


def test_lawful_instance_passes():
    report = cgm.laws("glist", samples=50, seed=1)
    assert report["ok"]
    assert report["checks"] > 0


def test_mutant_has_witness():
    report = cgm.laws("broken-glist")
    assert not report["ok"]
    witness = report["failures"][0]
    assert witness["lhs"] != witness["rhs"]


def test_unknown_instance_raises():
    with pytest.raises(cgm.CgmError) as info:
        cgm.laws("nosuch")
    assert info.value.code == "UnknownInstance"


def test_lock_program():
    result = cgm.run_program(LOCK)
    assert result["grade"] == "lock;get;put;unlock : free -> free"
    assert result["rendered"].endswith("store: 41 -> 42")


def test_grade_error():
    with pytest.raises(cgm.CgmError) as info:
        cgm.run_program("instance concst\ndo { x <- get; pure x }")
    assert info.value.code == "GradeMismatch"


def test_format_is_stable():
    printed = cgm.format_program(LOCK)
    assert cgm.format_program(printed) == printed


def test_two_samples():
    verdict = cgm.check_ahl((PROGRAMS / "two_samples.ahl").read_text())
    assert verdict["valid"]
    assert verdict["nodes"][0]["failure"] == "19/100"
    tight = cgm.check_ahl((PROGRAMS / "two_samples_tight.ahl").read_text())
    assert not tight["valid"]
    assert tight["error"] == "RuleMismatch"


def test_roundtrip_and_translate():
    assert cgm.roundtrip(2)["ok"]
    assert cgm.translate("monad", "catgraded", "maybe", samples=20)["ok"]


def test_cli_exit_codes():
    code, out, _ = cgm.cli(["run", str(PROGRAMS / "lock.gp")])
    assert code == 0
    assert out.startswith("grade: lock;get;put;unlock : free -> free")
    assert cgm.cli(["roundtrip", "--states", "9"])[0] == 2
