import dataclasses
import json
from fractions import Fraction

import pytest

from fanoslope import report
from fanoslope.catalog import catalog, get_entry
from fanoslope.cli import EXIT_DATA, EXIT_MISMATCH, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_xi_example(capsys):
    code, out, _ = run(capsys, "xi", "bl-line-q3", "F")
    assert code == EXIT_OK
    assert "xi: -4\n" in out
    assert "xi/3: -4/3\n" in out
    assert "verdict: Unstable" in out


def test_seshadri_example(capsys):
    code, out, _ = run(capsys, "seshadri", "p3", "H")
    assert code == EXIT_OK
    assert out == "epsilon: 4\nwitness: line\n"


def test_aubin_example(capsys):
    code, out, _ = run(capsys, "aubin", "--n", "5")
    assert code == EXIT_OK
    assert "vol(-K): 484" in out
    assert "1889568/3125" in out
    assert "counterexample: YES" in out


def test_aubin_n4_is_not_a_counterexample(capsys):
    _, out, _ = run(capsys, "aubin", "--n", "4")
    assert "vol(-K): 160" in out and "390625/4096" in out
    assert "counterexample: NO" in out


def test_xi_json_and_coordinates(capsys):
    code, out, _ = run(capsys, "xi", "f1", "1,0", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["xi"] == "-4/3" and data["verdict"] == "Unstable"


def test_xi_with_c(capsys):
    _, out, _ = run(capsys, "xi", "p3", "H", "--c", "1")
    assert "xi_c (c = 1): 81/4" in out


def test_verdict_runs_every_criterion(capsys):
    code, out, _ = run(capsys, "verdict", "p1xp2", "p1*H")
    assert code == EXIT_OK
    assert "verdict: SemistableNotStable" in out
    assert "nef criterion: Semistable" in out
    code, out, _ = run(capsys, "verdict", "bl-line-p3", "E")
    assert code == EXIT_OK
    assert "nef criterion: not applicable" in out
    assert "convexity criterion:" in out


def test_scan_json(capsys):
    code, out, _ = run(capsys, "scan", "p1xp1xp1", "--bound", "2", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert len(data["records"]) == 26
    assert data["destabilizing"] == ["H1", "H2", "H3"]


def test_product(capsys):
    code, out, _ = run(capsys, "product", "f1", "p2", "e")
    assert code == EXIT_OK
    assert "xi of pullback: -72" in out and "identity: holds" in out


def test_catalog_list_and_show(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == EXIT_OK
    assert [line.split()[0] for line in out.splitlines()] == [e.key for e in catalog()]
    code, out, _ = run(capsys, "catalog", "show", "w111", "--json")
    assert code == EXIT_OK
    assert "Eff: H1, H2, H1-H2+H3, -H1+H2+H3" in out
    assert "divisor F13 = H1-H2+H3" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("xi", "no-such-model", "H"),
        ("xi", "p3", "1/0"),
        ("xi", "p3", "Q"),
        ("catalog", "show", "nope"),
        ("xi", "/nonexistent.json", "H"),
        ("aubin", "--n", "1"),
    ],
)
def test_data_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_DATA
    assert err.startswith("error: ")


def test_reproduce_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "reproduce-paper")
    assert code == EXIT_OK
    assert out.rstrip().endswith("RESULT: all checks passed")

    entry = get_entry("bl-line-q3")
    wrong = dataclasses.replace(entry.expected[0], xi=Fraction(1))
    tampered = [dataclasses.replace(entry, expected=(wrong,)) if e.key == entry.key else e for e in catalog()]
    monkeypatch.setattr(report, "catalog", lambda: tampered)
    code, out, _ = run(capsys, "reproduce-paper")
    assert code == EXIT_MISMATCH
    assert "MISMATCH" in out


def test_reproduce_json(capsys):
    code, out, _ = run(capsys, "reproduce-paper", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["summary"] == {"failures": [], "ok": True}
