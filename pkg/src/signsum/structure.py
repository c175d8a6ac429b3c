"""Symmetry classes, symmetry degree, and arithmetic-progression detection."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .groups import Element, Group, GroupError, INTEGERS, Subset


class SymmetryClass(enum.Enum):
    SYM = "sym"
    ASYM = "asym"
    NSYM = "nsym"
    OTHER = "other"


def union_with_negation(A: Subset) -> Subset:
    U = A | -A
    assert len(U) == 2 * len(A) - len(A & -A)
    return U


def intersect_with_negation(A: Subset) -> Subset:
    return A & -A


def sdeg(A: Subset) -> int:
    """Symmetry degree |A ∩ (-A)|."""
    g = A.group
    return sum(1 for a in A if g.neg(a) in A)


def is_sym(A: Subset) -> bool:
    return sdeg(A) == len(A)


def is_asym(A: Subset) -> bool:
    return sdeg(A) == 0


def is_nsym(A: Subset) -> bool:
    # removing a single element leaves a symmetric set iff exactly one
    # element of A has its negative outside A
    return sdeg(A) == len(A) - 1


def in_class_a(A: Subset) -> bool:
    return sdeg(A) in (0, len(A) - 1, len(A))


def classify(A: Subset) -> SymmetryClass:
    """Sym, then Asym, then Nsym, else Other.

    Singletons {a} with a != -a are both asymmetric and near-symmetric by
    definition; they are reported as Asym.
    """
    if len(A) == 0:
        raise ValueError("classify needs a nonempty set")
    s = sdeg(A)
    if s == len(A):
        return SymmetryClass.SYM
    if s == 0:
        return SymmetryClass.ASYM
    if s == len(A) - 1:
        return SymmetryClass.NSYM
    return SymmetryClass.OTHER


def abs_set(A: Iterable[int]) -> Subset:
    """{|a| : a in A} for a set of integers."""
    return Subset(INTEGERS, (abs(a) for a in A))


@dataclass(frozen=True)
class APWitness:
    first: Element
    diff: Element
    length: int

    def generate(self, g: Group) -> Subset:
        out, x = [], g.element(self.first)
        for _ in range(self.length):
            out.append(x)
            x = g.add(x, self.diff)
        S = Subset(g, out)
        if len(S) != self.length:
            raise GroupError("progression wraps onto itself")
        return S


def _ap_from(g: Group, members: frozenset, first, diff, k: int) -> bool:
    x = first
    for _ in range(k - 1):
        x = g.add(x, diff)
        if x not in members or x == first:
            return False
    return True


def is_ap_with_difference(A: Subset, d: Element) -> APWitness | None:
    """Witness that A = {a + i d} for this particular d, if any."""
    g = A.group
    d = g.element(d)
    if d == g.zero or len(A) == 0:
        return None
    members, k = A.as_set(), len(A)
    if k == 1:
        return APWitness(A.elements[0], d, 1) if g.element_order(d) > 1 else None
    for a in A:
        # the first term is the unique member whose predecessor is outside A,
        # unless A is a whole coset of <d>
        if g.add(a, g.neg(d)) in members and k < g.element_order(d):
            continue
        if _ap_from(g, members, a, d, k):
            return APWitness(a, d, k)
    return None


def detect_ap(A: Subset) -> APWitness | None:
    """Some (first, diff) with A = {first + i*diff : 0 <= i < |A|}, or None.

    Over Z the sorted consecutive differences are checked.  In a finite
    group every candidate difference a' - a (a, a' in A) is tried, firsts and
    differences in canonical order.
    """
    if len(A) < 2:
        raise ValueError("detect_ap needs |A| >= 2")
    g = A.group
    if not g.is_finite:
        xs = A.elements
        d = xs[1] - xs[0]
        if all(xs[i + 1] - xs[i] == d for i in range(len(xs) - 1)):
            return APWitness(xs[0], d, len(xs))
        return None
    members, k = A.as_set(), len(A)
    for a in A:
        diffs = sorted({g.add(b, g.neg(a)) for b in A if b != a}, key=g.index)
        for d in diffs:
            if _ap_from(g, members, a, d, k):
                return APWitness(a, d, k)
    return None


def is_ap(A: Subset) -> bool:
    """Singletons count as (one-term) progressions."""
    return len(A) == 1 or detect_ap(A) is not None


def common_differences(sets: Iterable[Subset]) -> list:
    """All nonzero d for which every given set is a progression with difference d."""
    sets = list(sets)
    g = sets[0].group
    if not g.is_finite:
        raise GroupError("common_differences scans a finite group")
    out = []
    for d in g.elements():
        if d == g.zero:
            continue
        if all(is_ap_with_difference(S, d) is not None for S in sets):
            out.append(d)
    return out
