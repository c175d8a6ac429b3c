import pytest

from signsum import (
    INTEGERS, CheckSpec, UnknownCheckError, abs_set, evaluate_cell, list_checks, parse_subset, run_check,
    run_checks, sdeg, signed_sumset,
)

EXPECTED_IDS = {
    "T_NATH_DIRECT", "T_DEVOS", "L_RHO_PLAIN", "T_KEMP_INV", "T_BP_2FOLD", "T_BP_HFOLD", "T_BP_INV",
    "L_SIGNED_EQ_UNION", "C_INT_DIRECT", "C_INT_INV_EVEN_ODD", "C_INT_2FOLD", "L_HSET_EQ_UNION",
    "L_INTERVAL_SHIFT", "L_SDEG_RAISE", "T_RHO_CLASS_A", "T_RHO_S_BOUND", "T_RHO_S_TIGHT",
    "T_GEN_TRANSLATE", "T_INV_AP", "T_PARITY_20", "T_SYM_RESTRICT", "T_FIELD_H2", "T_FIELD_H3",
    "T_FIELD_H4", "T_RSS_FIELD", "L_RSS_INTERVAL", "T_RSS_GROUP", "T_RSS_FIELD_04", "C_RSS_CLASSES",
    "T_ANR", "T_DUPAN", "EX_Z17", "EX_Z41",
}


def test_catalog_covers_every_statement():
    rows = list_checks()
    ids = [r[0] for r in rows]
    assert len(ids) == len(set(ids)) >= 24
    assert set(ids) == EXPECTED_IDS
    assert all(anchor.strip() for _, anchor, _ in rows)
    assert len({anchor for _, anchor, _ in rows}) == len(rows)


def test_examples():
    r = run_check(CheckSpec("EX_Z17"))
    assert r.passed and r.cells == 1
    assert run_check(CheckSpec("EX_Z41")).passed


def test_empty_grid_passes():
    r = run_check(CheckSpec("L_SIGNED_EQ_UNION", grid={"groups": [], "negative_control": False}))
    assert r.passed and r.cells == 0 and r.failures == []


def test_signed_union_small_and_negative_control():
    r = run_check(CheckSpec("L_SIGNED_EQ_UNION", grid={"groups": ["Z5", "Z6"], "h": [2, 3]}))
    assert r.passed and r.cells > 0
    out = evaluate_cell("L_SIGNED_EQ_UNION", {"group": "Z", "A": "1,2", "h": 2, "control": True})
    assert out[0] and out[3] == "{0}"
    unguarded = run_check(CheckSpec("L_SIGNED_EQ_UNION", grid={"groups": ["Z5"], "h": [2], "guarded": False,
                                                               "negative_control": False}))
    assert not unguarded.passed


def test_unknown_id_and_grid_key():
    with pytest.raises(UnknownCheckError):
        run_check(CheckSpec("NOPE"))
    with pytest.raises(ValueError, match="no grid key"):
        run_check(CheckSpec("EX_Z17", grid={"bogus": 1}))


def test_reports_are_deterministic():
    spec = CheckSpec("T_RSS_FIELD", grid={"fields": ["F11"], "count": 40}, seed=7)
    a, b = run_check(spec), run_check(spec)
    assert a.as_dict(timing=False) == b.as_dict(timing=False)
    assert a.mode == "sampled" and a.seed == 7
    c = run_check(CheckSpec("T_RSS_FIELD", grid={"fields": ["F11"], "count": 40}, seed=8))
    assert c.grid == a.grid


def test_generic_sampling_is_seeded_subset():
    full = run_check(CheckSpec("T_NATH_DIRECT", grid={"values": [0, 6]}))
    s1 = run_check(CheckSpec("T_NATH_DIRECT", grid={"values": [0, 6]}, mode="sampled", count=25, seed=3))
    s2 = run_check(CheckSpec("T_NATH_DIRECT", grid={"values": [0, 6]}, mode="sampled", count=25, seed=3))
    assert s1.cells + s1.skipped == 25 <= full.cells
    assert s1.as_dict(False) == s2.as_dict(False)


def test_run_checks_concurrent_matches_sequential():
    specs = [CheckSpec("T_FIELD_H2", grid={"fields": ["F7"]}), CheckSpec("EX_Z17"),
             CheckSpec("L_RHO_PLAIN", grid={"groups": ["Z5", "Z6"]})]
    seq = [r.as_dict(False) for r in run_checks(specs, workers=1)]
    par = [r.as_dict(False) for r in run_checks(specs, workers=2)]
    assert seq == par
    assert [d["id"] for d in seq] == sorted(d["id"] for d in seq)


def test_literal_integer_corollary_fails_and_failures_rerun():
    # Read literally (m terms in A_abs), the inverse statement is false once s >= 2;
    # the catalog default uses m - floor(s/2) terms.
    grid = {"values": [-8, 8], "m": [3], "h": [3], "literal": True}
    r = run_check(CheckSpec("C_INT_INV_EVEN_ODD", grid=grid))
    assert not r.passed
    f = next(f for f in r.failures if f.params["A"] == "-8,0,8")
    assert evaluate_cell("C_INT_INV_EVEN_ODD", f.params)[0] is False
    A = parse_subset(INTEGERS, f.params["A"])
    m, s = len(A), sdeg(A)
    assert len(signed_sumset(A, 3)) == 2 * 3 * m - 3 * s - 3 + 1
    assert len(abs_set(A)) == 2 < m
    grid["literal"] = False
    assert run_check(CheckSpec("C_INT_INV_EVEN_ODD", grid=grid)).passed
    r2 = run_check(CheckSpec("C_INT_2FOLD", grid={"values": [-6, 6], "m": [3], "literal": True}))
    assert any(f.params["A"] == "-6,-2,2" for f in r2.failures)


@pytest.mark.parametrize("check_id", sorted(EXPECTED_IDS - {"T_KEMP_INV", "T_RSS_FIELD"}))
def test_every_check_passes_at_defaults(check_id):
    r = run_check(CheckSpec(check_id))
    assert r.passed, [f.as_dict() for f in r.failures[:3]]
    assert r.cells > 0


def test_kemperman_inverse_reduced_grid():
    r = run_check(CheckSpec("T_KEMP_INV", grid={"cases": [["Z7", 2], ["Z3xZ3", 2], ["Z5", 3]]}))
    assert r.passed and r.cells > 900
