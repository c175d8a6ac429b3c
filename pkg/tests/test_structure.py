import pytest

from signsum import (
    INTEGERS, GroupError, SymmetryClass, abs_set, classify, common_differences, detect_ap,
    intersect_with_negation, is_ap, sdeg, union_with_negation,
)

from conftest import make


def test_sdeg():
    assert sdeg(make("Z", 1, 2, 3)) == 0
    assert sdeg(make("Z", -1, 0, 1)) == 3
    assert sdeg(make("Z5", 1, 4)) == 2


def test_classify():
    assert classify(make("Z5", 1, 4)) is SymmetryClass.SYM
    assert classify(make("Z", 1, 2)) is SymmetryClass.ASYM
    assert classify(make("Z", -1, 1, 2)) is SymmetryClass.NSYM
    assert classify(make("Z", -2, -1, 1, 2, 5, 6)) is SymmetryClass.OTHER
    # a nonzero singleton {a} has a ∉ -A
    assert classify(make("Z", 3)) is SymmetryClass.ASYM


def test_detect_ap():
    w = detect_ap(make("Z", 3, 5, 7))
    assert (w.first, w.diff, w.length) == (3, 2, 3)
    assert detect_ap(make("Z", 0, 1, 3)) is None
    A = make("Z5", 0, 2, 4)
    w = detect_ap(A)
    assert w is not None and w.generate(A.group) == A
    with pytest.raises(ValueError):
        detect_ap(make("Z", 4))
    assert is_ap(make("Z", 4))


def test_detect_ap_against_brute_force():
    g = make("Z8").group
    from itertools import combinations
    for k in (2, 3, 4, 5):
        aps = set()
        for a in g.elements():
            for d in range(1, 8):
                pts = {(a + i * d) % 8 for i in range(k)}
                if len(pts) == k:
                    aps.add(frozenset(pts))
        for c in combinations(range(8), k):
            assert is_ap(make(g, *c)) == (frozenset(c) in aps), c


def test_abs_set():
    assert abs_set([-3, -1, 2]) == make("Z", 1, 2, 3)
    assert abs_set([0]) == make("Z", 0)
    assert abs_set([-2, 2]) == make("Z", 2)


def test_union_and_intersection():
    A = make("Z", 1, 2)
    assert union_with_negation(A) == make("Z", -2, -1, 1, 2)
    assert len(intersect_with_negation(A)) == 0
    B = make("Z5", 1, 4)
    assert union_with_negation(B) == B == intersect_with_negation(B)
    C = make("Z", 0)
    assert union_with_negation(C) == C == intersect_with_negation(C)


def test_common_differences():
    g = make("Z7").group
    assert common_differences([make(g, 0, 1), make(g, 3, 4, 5)]) == [1, 6]
    assert common_differences([make(g, 0, 2), make(g, 0, 1)]) == []
    with pytest.raises(GroupError):
        common_differences([make(INTEGERS, 1, 2)])
