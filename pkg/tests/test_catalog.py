import itertools
from fractions import Fraction

import pytest

from fanoslope.catalog import (
    build_blp_yd,
    build_del_pezzo,
    catalog,
    catalog_keys,
    every_ray_has_length_one,
    get_entry,
    get_model,
    minus_one_classes,
    scan_destabilizers,
)
from fanoslope.errors import ModelDataError, PreconditionError
from fanoslope.model import is_nef, validate_model
from fanoslope.slope import Verdict, xi


def brute_force_minus_one(r, max_degree=6, max_mult=3):
    """Integer solutions of a0^2 - sum ai^2 = -1, 3 a0 - sum ai = 1 in the box."""
    found = set()
    for tail in itertools.product(range(-max_mult, max_mult + 1), repeat=r):
        num = 1 + sum(tail)
        if num % 3:
            continue
        a0 = num // 3
        if abs(a0) <= max_degree and a0 * a0 - sum(a * a for a in tail) == -1:
            found.add((a0,) + tail)
    return found


@pytest.mark.parametrize("r,count", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27)])
def test_del_pezzo_counts_match_brute_force(r, count):
    classes = set(minus_one_classes(r))
    assert len(classes) == count
    assert classes == brute_force_minus_one(r)
    m = build_del_pezzo(r)
    if r >= 2:
        assert len(m.rays) == count


def test_del_pezzo_large_rank_counts():
    assert len(minus_one_classes(7)) == 56
    assert len(minus_one_classes(8)) == 240


def test_del_pezzo_structure():
    for r in range(0, 9):
        m = build_del_pezzo(r)
        assert validate_model(m) == []
        assert m.anticanonical_volume() == 9 - r
        assert m.tensor.to_matrix()[0][0] == 1
    for r in range(2, 9):
        assert every_ray_has_length_one(build_del_pezzo(r))
    with pytest.raises(ModelDataError):
        build_del_pezzo(9)


def test_catalog_covers_required_varieties():
    keys = set(catalog_keys())
    required = {f"p{n}" for n in range(1, 9)} | {
        "q3", "p1xp2", "p1xp1xp1", "f1", "p1xp1", "p1xf1", "bl-line-p3", "bl-line-q3", "bl-conic-q3",
        "pp2-o1", "pp2-o2", "pf1-oef", "pp1p1-o11", "pp1p1-0110", "w111", "f1xp2-tp2",
        "blp-yd-1", "blp-yd-2", "blp-yd-3",
    }
    assert required <= keys
    assert any(k.startswith("blpt-") for k in keys)
    assert catalog_keys() == sorted(keys, key=catalog_keys().index)


def test_every_expectation_has_provenance():
    for entry in catalog():
        assert entry.expected, entry.key
        for exp in entry.expected:
            assert exp.provenance.kind in ("published", "derived")
            assert exp.provenance.note.strip()


@pytest.mark.parametrize("key", catalog_keys())
def test_catalog_expectations(key):
    entry = get_entry(key)
    assert validate_model(entry.model) == []
    for exp in entry.expected:
        rep = xi(entry.model, exp.divisor)
        assert rep.verdict is exp.verdict
        if exp.xi is not None:
            assert rep.xi == exp.xi


def test_unknown_key():
    with pytest.raises(ModelDataError):
        get_entry("nope")


def test_w111_cone_data():
    m = get_model("w111")
    named = m.named_divisors
    assert list(m.effective_generators) == [named["H1"], named["H2"], named["F13"], named["F23"]]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_blp_yd_cone_data(d):
    m = build_blp_yd(d)
    n = m.named_divisors
    assert n["F'"] == n["E"] * -d + n["H"] * d + n["F"] * (d - 1)
    assert m.anticanonical == n["E"] * -2 + n["H"] * 4 + n["F"] * 3
    for witness in (n["E"] + n["F'"], n["F"] + n["H"], (n["F"] + n["F'"]) * Fraction(1, d)):
        assert is_nef(m, witness)
    # nef test classes pair nonnegatively with every effective generator
    L = n["F"] + n["H"]
    M = (n["F"] + n["F'"]) * Fraction(1, d)
    for a, b in ((L, L), (M, M), (L, n["E"] + n["F'"]), (M, n["E"] + n["F'"])):
        for gen in m.effective_generators:
            assert m.tensor.intersect([gen, a, b]) >= 0
    # linear forms in (p, q, r) for D = pE + qH + rF
    E, H, F, W = n["E"], n["H"], n["F"], n["E"] + n["F'"]

    def form(a, b):
        return [m.tensor.intersect([c, a, b]) for c in (E, H, F)]

    assert form(L, L) == [0, 1, 0]
    assert form(M, M) == [1, 1, 0]
    assert form(L, W) == [0, 0, d]
    assert form(M, W) == [d - 1, 0, d]


def test_blp_y3_epsilon_from_ray_h():
    rep = xi(build_blp_yd(3), "D")
    assert rep.epsilon == 1 and rep.witness_ray == "h"
    assert rep.xi / 3 == Fraction(23, 6)


def test_scan_p1xp1xp1():
    res = scan_destabilizers(get_model("p1xp1xp1"), 2)
    assert len(res.records) == 26
    assert not res.unstable
    assert sorted(r.label for r in res.destabilizing) == ["H1", "H2", "H3"]


def test_scan_bl_line_q3_finds_f():
    res = scan_destabilizers(get_model("bl-line-q3"), 2)
    assert "F" in [r.label for r in res.unstable]


def test_scan_cubic_surface_fully_pruned():
    from dataclasses import replace

    m = build_del_pezzo(6)
    assert every_ray_has_length_one(m)
    for gen in m.effective_generators:
        rec = scan_destabilizers(replace(m, effective_generators=(gen,)), 1).records
        assert len(rec) == 1 and rec[0].pruned_by is not None and rec[0].verdict is Verdict.STABLE


def test_scan_limit():
    with pytest.raises(PreconditionError):
        scan_destabilizers(build_del_pezzo(6), 1)


@pytest.mark.parametrize("key", ["p1xp2", "p1xp1xp1", "pp1p1-0110", "bl-line-q3", "f1", "pp2-o1", "w111", "blp-yd-2"])
def test_ray_filter_is_sound(key):
    m = get_model(key)
    on = scan_destabilizers(m, 2)
    off = scan_destabilizers(m, 2, use_ray_filter=False)
    assert [r.label for r in on.destabilizing] == [r.label for r in off.destabilizing]
    for a, b in zip(on.records, off.records):
        if a.pruned_by is not None:
            assert b.verdict is Verdict.STABLE
