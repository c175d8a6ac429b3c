"""Explicit extremal sets and the symmetry-raising replacement procedure."""
from __future__ import annotations

from .groups import Group, GroupError, INTEGERS, Subset, first_element_of_order
from .structure import sdeg
from .sumsets import PreconditionError, signed_sumset


def odd_spaced_ap(d: int, m: int) -> Subset:
    """{d, 3d, ..., (2m-1)d} in Z."""
    if d < 1 or m < 1:
        raise ValueError("odd_spaced_ap needs d >= 1 and m >= 1")
    return Subset(INTEGERS, (d * (2 * i + 1) for i in range(m)))


def interval_set(d: int, m: int) -> Subset:
    """{0, d, ..., (m-1)d} in Z."""
    if d < 1 or m < 1:
        raise ValueError("interval_set needs d >= 1 and m >= 1")
    return Subset(INTEGERS, (d * i for i in range(m)))


def generator_of_smallest_subgroup(g: Group):
    """First element, in canonical order, of order p(G).  For Z this is 1."""
    if not g.is_finite:
        return 1
    return first_element_of_order(g, g.p)


def rho_s_template(m: int, s: int) -> list:
    """Integer set with m elements and exactly s of them in A ∩ (-A).

    s = 2t+1: the interval [-t, m-t-1].
    s = 2t:   {-(2t-1), ..., -1, 1, 3, ..., 2(m-t)-1} (odd numbers only).
    """
    if not 1 <= s <= m:
        raise PreconditionError("template needs 1 <= s <= m")
    t, odd = divmod(s, 2)
    if odd:
        return list(range(-t, m - t))
    return list(range(-(2 * t - 1), 2 * (m - t), 2))


def rho_s_witness(g: Group, m: int, s: int) -> Subset:
    """m-set with |A ∩ (-A)| = s whose h-fold signed sumset has the least
    possible size min(p(G), 2hm - hs - h + 1) for every h, when 2m - s <= p(G)."""
    if not 1 <= s <= m:
        raise PreconditionError("rho_s_witness needs 1 <= s <= m")
    if 2 * m - s > g.p:
        raise PreconditionError(f"construction needs 2m - s <= p(G) = {g.p}")
    g0 = generator_of_smallest_subgroup(g)
    B = Subset(g, (g.scalar_mul(x, g0) for x in rho_s_template(m, s)))
    if len(B) != m or sdeg(B) != s:
        raise GroupError(f"template collapses in {g} (m={m}, s={s}); needs odd p(G)")
    return B


def subgroup_interval(g: Group, m: int) -> Subset:
    """{0, g0, ..., (m-1)g0} with g0 of order p(G); needs m <= p(G)."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > g.p:
        raise PreconditionError(f"subgroup_interval needs m <= p(G) = {g.p}")
    g0 = generator_of_smallest_subgroup(g)
    return Subset(g, (g.scalar_mul(i, g0) for i in range(m)))


def _admissible_pair(A: Subset):
    g = A.group
    free = [a for a in A if g.neg(a) not in A]
    for a in free:
        for b in free:
            if a != b:
                return a, b
    return None


def replacement_step(A: Subset) -> Subset | None:
    """(A ∪ {-b}) minus {a} for the lexicographically first pair a != b of
    elements whose negatives lie outside A; None when no such pair exists."""
    pair = _admissible_pair(A)
    if pair is None:
        return None
    a, b = pair
    g = A.group
    return Subset(g, [x for x in A if x != a] + [g.neg(b)])


def symmetrize_chain(A: Subset, h: int) -> list:
    """Sets A = A_0, A_1, ..., A_t, each obtained from the previous one by
    :func:`replacement_step`, ending once the symmetry degree reaches
    |A| - 1 or |A|.  At every step the h-fold signed sumset is checked not
    to grow."""
    if len(A) < 2:
        raise PreconditionError("symmetrize needs |A| >= 2")
    s = sdeg(A)
    if s == 0:
        raise PreconditionError("symmetrize needs A ∩ (-A) nonempty")
    if s > len(A) - 2:
        raise PreconditionError("symmetrize needs sdeg(A) <= |A| - 2")
    chain = [A]
    prev_sum = signed_sumset(A, h)
    while sdeg(chain[-1]) < len(A) - 1:
        cur = chain[-1]
        nxt = replacement_step(cur)
        nxt_sum = signed_sumset(nxt, h)
        assert len(nxt) == len(A) and sdeg(nxt) == sdeg(cur) + 2
        assert nxt_sum <= prev_sum, "signed sumset grew under replacement"
        chain.append(nxt)
        prev_sum = nxt_sum
    return chain


def symmetrize(A: Subset, h: int) -> Subset:
    return symmetrize_chain(A, h)[-1]
