"""Plain, restricted, signed and restricted signed h-fold sumsets.

Subsets are encoded as Python-int bitmasks over the canonical element order
(finite groups) or over an offset window of integers (Z).  Adding a group
element to every member of a set is then a handful of masked shifts, so each
sumset is a small dynamic program over bitmasks.  :func:`naive_sumset` keeps
the literal coefficient-vector definition around as an independent oracle.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .groups import Group, GroupError, Subset


class PreconditionError(ValueError):
    """An operation was called outside the hypothesis it relies on."""


class Kind(enum.Enum):
    PLAIN = "plain"
    RESTRICTED = "restricted"
    SIGNED = "signed"
    RESTRICTED_SIGNED = "restricted-signed"

    @classmethod
    def parse(cls, text) -> "Kind":
        if isinstance(text, Kind):
            return text
        t = str(text).strip().lower().replace("_", "-")
        aliases = {"rs": "restricted-signed", "signed-restricted": "restricted-signed"}
        try:
            return cls(aliases.get(t, t))
        except ValueError:
            raise ValueError(f"unknown sumset kind {text!r}") from None


def multiplicity_set(H) -> tuple:
    """Normalize ``H`` (an int or an iterable of ints) to a sorted tuple."""
    if isinstance(H, int):
        H = (H,)
    vals = tuple(sorted(set(int(h) for h in H)))
    if not vals:
        raise ValueError("multiplicity set must be nonempty")
    if vals[0] < 0:
        raise ValueError("multiplicities must be nonnegative")
    return vals


def interval(h: int) -> tuple:
    """The multiplicity set [0, h]."""
    return tuple(range(h + 1))


def parse_multiplicities(text: str) -> tuple:
    """``"2"``, ``"1,3"`` or ``"[0,3]"`` (an interval)."""
    t = text.strip()
    if t.startswith("[") and t.endswith("]"):
        lo, hi = (int(x) for x in t[1:-1].split(","))
        return multiplicity_set(range(lo, hi + 1))
    return multiplicity_set(int(x) for x in t.split(","))


# ---------------------------------------------------------------------------
# bitset engines


class FiniteEngine:
    """Bitmask arithmetic on a finite product of cyclic groups."""

    def __init__(self, g: Group):
        self.group = g
        self.n = n = g.order
        self.full = (1 << n) - 1
        self.zero_mask = 1
        moduli, strides = g.moduli, g.strides
        coords = [g.coords(x) for x in g.elements()]
        self._coords = coords
        # lo[i][a]: positions whose i-th coordinate survives a shift by a without wrapping
        lo = []
        for i, m in enumerate(moduli):
            row = [0] * m
            for a in range(1, m):
                bits = 0
                for idx, c in enumerate(coords):
                    if c[i] < m - a:
                        bits |= 1 << idx
                row[a] = bits
            lo.append(row)
        self._ops = []
        for c in coords:
            ops = []
            for i, a in enumerate(c):
                if a:
                    s = strides[i]
                    ops.append((lo[i][a], a * s, (moduli[i] - a) * s))
            self._ops.append(tuple(ops))
        self._strides = strides
        self._moduli = moduli
        self.neg_index = [self.mul(i, -1) for i in range(n)]

    def handle(self, x) -> int:
        return self.group.index(x)

    def element(self, i: int):
        return self.group.element_at(i)

    def mul(self, i: int, lam: int) -> int:
        return sum(((lam * c) % m) * s for c, m, s in zip(self._coords[i], self._moduli, self._strides))

    def shift(self, mask: int, i: int) -> int:
        for lo, up, down in self._ops[i]:
            mask = ((mask & lo) << up) | ((mask & ~lo) >> down)
        return mask

    def encode(self, handles: Iterable[int]) -> int:
        m = 0
        for i in handles:
            m |= 1 << i
        return m

    def decode(self, mask: int) -> list:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def negate_mask(self, mask: int) -> int:
        return self.encode(self.neg_index[i] for i in self.decode(mask))


class IntegerEngine:
    """Bitmask arithmetic on a window of Z; bit ``v + offset`` stands for ``v``."""

    def __init__(self, offset: int):
        self.offset = offset
        self.zero_mask = 1 << offset

    def handle(self, x: int) -> int:
        return x

    def element(self, v: int) -> int:
        return v

    def mul(self, v: int, lam: int) -> int:
        return lam * v

    def shift(self, mask: int, v: int) -> int:
        return mask << v if v >= 0 else mask >> -v

    def encode(self, values: Iterable[int]) -> int:
        m = 0
        for v in values:
            m |= 1 << (v + self.offset)
        return m

    def decode(self, mask: int) -> list:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1 - self.offset)
            mask ^= low
        return out


@lru_cache(maxsize=64)
def finite_engine(g: Group) -> FiniteEngine:
    return FiniteEngine(g)


def engine_for(A: Subset, hmax: int):
    """Engine able to hold every sum of at most ``hmax`` signed terms of ``A``."""
    g = A.group
    if g.is_finite:
        return finite_engine(g)
    span = max((abs(a) for a in A), default=0)
    return IntegerEngine(max(hmax, 1) * span + 1)


def layers(engine, handles: Sequence, hmax: int, kind: Kind) -> list:
    """Masks of the kind-h sumsets of ``handles`` for every h in [0, hmax]."""
    shift = engine.shift
    R = [0] * (hmax + 1)
    R[0] = engine.zero_mask
    if kind is Kind.PLAIN:
        for h in range(1, hmax + 1):
            prev, acc = R[h - 1], 0
            for a in handles:
                acc |= shift(prev, a)
            R[h] = acc
    elif kind is Kind.RESTRICTED:
        for i, a in enumerate(handles):
            for c in range(min(i, hmax - 1), -1, -1):
                if R[c]:
                    R[c + 1] |= shift(R[c], a)
    elif kind is Kind.RESTRICTED_SIGNED:
        mul = engine.mul
        for i, a in enumerate(handles):
            na = mul(a, -1)
            for c in range(min(i, hmax - 1), -1, -1):
                src = R[c]
                if src:
                    R[c + 1] |= shift(src, a) | shift(src, na)
    elif kind is Kind.SIGNED:
        # state after a prefix of A: R[w] = partial sums of total weight w
        mul = engine.mul
        for a in handles:
            mults = [(mul(a, t), mul(a, -t)) for t in range(hmax + 1)]
            new = R[:]
            for w in range(hmax):
                src = R[w]
                if not src:
                    continue
                for t in range(1, hmax - w + 1):
                    pos, negt = mults[t]
                    new[w + t] |= shift(src, pos) | shift(src, negt)
            R = new
    else:  # pragma: no cover
        raise ValueError(kind)
    return R


def union_mask(engine, handles, H: tuple, kind: Kind) -> int:
    R = layers(engine, handles, max(H), kind)
    out = 0
    for h in H:
        out |= R[h]
    return out


def _handles(engine, A: Subset) -> list:
    return [engine.handle(a) for a in A]


def _to_subset(engine, g: Group, mask: int) -> Subset:
    return Subset(g, (engine.element(i) for i in engine.decode(mask)))


def _check_nonempty(A: Subset):
    if len(A) == 0:
        raise ValueError("sumsets need a nonempty set A")


def _check_h(h: int):
    if not isinstance(h, int) or h < 0:
        raise ValueError(f"h must be a nonnegative integer, got {h!r}")


def kind_sumset(A: Subset, h: int, kind) -> Subset:
    kind = Kind.parse(kind)
    _check_nonempty(A)
    _check_h(h)
    eng = engine_for(A, h)
    return _to_subset(eng, A.group, layers(eng, _handles(eng, A), h, kind)[h])


def hfold_sumset(A: Subset, h: int) -> Subset:
    """hA: sums of h elements of A, repetition allowed.  0A = {0}."""
    return kind_sumset(A, h, Kind.PLAIN)


def restricted_sumset(A: Subset, h: int) -> Subset:
    """h^A: sums of h distinct elements; empty when h > |A|."""
    return kind_sumset(A, h, Kind.RESTRICTED)


def signed_sumset(A: Subset, h: int) -> Subset:
    """h±A: sums of l_i a_i with sum |l_i| = h over the distinct elements of A."""
    return kind_sumset(A, h, Kind.SIGNED)


def restricted_signed_sumset(A: Subset, h: int) -> Subset:
    """h±^A: sums ±a_1 ± ... ± a_h over h distinct elements of A."""
    return kind_sumset(A, h, Kind.RESTRICTED_SIGNED)


def union_fold(A: Subset, H, kind) -> Subset:
    """Union of the kind-h sumsets over h in H."""
    kind = Kind.parse(kind)
    H = multiplicity_set(H)
    _check_nonempty(A)
    eng = engine_for(A, max(H))
    return _to_subset(eng, A.group, union_mask(eng, _handles(eng, A), H, kind))


def sumset(*sets: Subset) -> Subset:
    """A_1 + ... + A_t for (possibly different) nonempty sets."""
    if not sets:
        raise ValueError("need at least one set")
    g = sets[0].group
    for S in sets:
        if S.group != g:
            raise GroupError("all summands must share a group")
        _check_nonempty(S)
    if g.is_finite:
        eng = finite_engine(g)
    else:
        eng = IntegerEngine(sum(max(abs(a) for a in S) for S in sets) + 1)
    acc = eng.zero_mask
    for S in sets:
        nxt = 0
        for a in S:
            nxt |= eng.shift(acc, eng.handle(a))
        acc = nxt
    return _to_subset(eng, g, acc)


def _intersects_negation(A: Subset) -> bool:
    g = A.group
    return any(g.neg(a) in A for a in A)


def signed_sumset_fast(A: Subset, h: int) -> Subset:
    """h±A computed as h(A ∪ (-A)); valid only when A meets -A."""
    _check_nonempty(A)
    if not _intersects_negation(A):
        raise PreconditionError("fast path needs A ∩ (-A) to be nonempty")
    return hfold_sumset(A | -A, h)


def interval_signed_sumset_fast(A: Subset, h: int) -> Subset:
    """[0,h]±A computed as h(A ∪ (-A) ∪ {0}); needs |A| >= 2."""
    if len(A) < 2:
        raise PreconditionError("fast path needs |A| >= 2")
    zero = Subset(A.group, [A.group.zero])
    return hfold_sumset(A | -A | zero, h)


# ---------------------------------------------------------------------------
# literal definition, used as a test oracle

_RANGES = {
    Kind.PLAIN: lambda h: range(0, h + 1),
    Kind.RESTRICTED: lambda h: range(0, 2),
    Kind.SIGNED: lambda h: range(-h, h + 1),
    Kind.RESTRICTED_SIGNED: lambda h: range(-1, 2),
}


def naive_sumset(A: Subset, h: int, kind) -> Subset:
    """Enumerate every coefficient vector allowed by the definition of the
    kind-h sumset and collect the sums.  Exponential in |A|."""
    kind = Kind.parse(kind)
    _check_nonempty(A)
    g = A.group
    signed = kind in (Kind.SIGNED, Kind.RESTRICTED_SIGNED)
    out = set()
    for lam in _cartesian(_RANGES[kind](h), repeat=len(A)):
        weight = sum(abs(x) for x in lam) if signed else sum(lam)
        if weight != h:
            continue
        s = g.zero
        for c, a in zip(lam, A):
            if c:
                s = g.add(s, g.scalar_mul(c, a))
        out.add(s)
    return Subset(g, out)
