"""Property-based tests over small random groups and subsets."""
import math

from hypothesis import HealthCheck, given, settings, strategies as st

from signsum import (
    INTEGERS, Kind, RhoQuery, Subset, is_quadratic_residue, liu_sun_K, naive_sumset, parse_group,
    restricted_signed_sumset, restricted_sumset, rho, rho_parallel, rho_value, signed_sumset, theta,
    union_fold, hfold_sumset,
)

GROUPS = ["Z2", "Z5", "Z6", "Z7", "Z8", "Z9", "Z12", "Z2xZ4", "Z3xZ3", "F2^3"]
KINDS = list(Kind)
fast = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def finite_sets(draw, groups=GROUPS, max_size=5):
    g = parse_group(draw(st.sampled_from(groups)))
    idx = draw(st.sets(st.integers(0, g.order - 1), min_size=1, max_size=min(max_size, g.order)))
    return Subset(g, (g.element_at(i) for i in idx))


int_sets = st.sets(st.integers(-12, 12), min_size=1, max_size=5).map(lambda xs: Subset(INTEGERS, xs))
any_sets = st.one_of(finite_sets(), int_sets)
small_h = st.integers(0, 4)


@fast
@given(any_sets, small_h)
def test_signed_sumsets_are_symmetric(A, h):
    S = signed_sumset(A, h)
    assert -S == S
    R = restricted_signed_sumset(A, h)
    assert -R == R


@fast
@given(any_sets, small_h)
def test_nesting(A, h):
    signed = signed_sumset(A, h)
    assert hfold_sumset(A, h) <= signed
    assert restricted_sumset(A, h) <= restricted_signed_sumset(A, h) <= signed


@fast
@given(finite_sets(groups=["Z5", "Z7", "Z8", "Z9", "Z10", "Z12"]), small_h, st.sampled_from(KINDS), st.data())
def test_unit_automorphisms_commute_with_sumsets(A, h, kind, data):
    g = A.group
    n = g.order
    u = data.draw(st.sampled_from([u for u in range(1, n) if math.gcd(u, n) == 1]))
    phi = lambda S: Subset(g, (u * x % n for x in S))
    assert phi(union_fold(A, (h,), kind)) == union_fold(phi(A), (h,), kind)


@fast
@given(any_sets, st.integers(0, 3), st.sampled_from(KINDS))
def test_bitset_engine_matches_definition(A, h, kind):
    assert union_fold(A, (h,), kind) == naive_sumset(A, h, kind)


@fast
@given(any_sets, st.sets(st.integers(0, 3), min_size=1, max_size=3), st.sampled_from(KINDS))
def test_hset_union_dominates_each_layer(A, H, kind):
    U = union_fold(A, tuple(H), kind)
    for h in H:
        assert union_fold(A, (h,), kind) <= U


@settings(max_examples=6, deadline=None)
@given(st.sampled_from(["Z11", "Z12", "Z3xZ3", "Z2xZ4"]), st.integers(2, 4),
       st.sampled_from([(2,), (3,), (0, 1, 2)]), st.sampled_from(["signed", "restricted-signed", "plain"]))
def test_parallel_search_is_deterministic(gtext, m, H, kind):
    q = RhoQuery(parse_group(gtext), m, H, kind)
    ref = rho(q)
    for w in (1, 2, 4):
        r = rho_parallel(q, w)
        assert (r.value, r.witness, r.sets_examined) == (ref.value, ref.witness, ref.sets_examined)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 13), st.integers(1, 5), st.sampled_from([(1,), (2,), (3,), (0, 2)]))
def test_pruning_never_changes_the_result(n, m, H):
    g = parse_group(f"Z{n}")
    m = min(m, n)
    q = RhoQuery(g, m, H, "signed")
    a, b = rho(q, prune=True), rho(q, prune=False)
    assert (a.value, a.witness) == (b.value, b.witness)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z3xZ3"]), st.integers(1, 5), st.integers(1, 3))
def test_rho_is_min_over_symmetry_degrees(gtext, m, h):
    g = parse_group(gtext)
    m = min(m, g.order)
    total = rho_value(g, m, h)
    by_s = [rho_value(g, m, h, "signed", f"sdeg={s}") for s in range(m + 1)]
    assert total == min(v for v in by_s if v is not None)


@given(st.integers(1, 40), st.integers(1, 6), st.data())
def test_liu_sun_parameter_matches_theta(k, h, data):
    s = data.draw(st.integers(0, k))
    assert liu_sun_K(2 * k - s, 2, h) == theta(k, h, s)


PRIMES = [p for p in range(3, 400) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


@given(st.sampled_from(PRIMES), st.integers(1, 10 ** 6))
def test_euler_criterion_matches_squares(p, a):
    squares = {x * x % p for x in range(1, p)}
    r = is_quadratic_residue(a, p)
    assert r is (None if a % p == 0 else (a % p in squares))


@given(st.sampled_from(PRIMES))
def test_two_is_a_residue_iff_p_is_pm1_mod_8(p):
    assert is_quadratic_residue(2, p) == (p % 8 in (1, 7))


@given(st.integers(2, 10 ** 4), st.integers(0, 50))
def test_h4_polynomial_constants(k, l):
    q = 32 * k * k - 64 * k - 32 * k * l + 32 * l + 8 * l * l
    assert q + 31 == 2 * (4 * k - 2 * l - 4) ** 2 - 1
    assert q + 32 == 2 * (4 * k - 2 * l - 4) ** 2
