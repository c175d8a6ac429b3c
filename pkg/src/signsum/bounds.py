"""Closed-form lower bounds and the polynomial-method coefficients behind them.

All arithmetic is exact (Python ints).  ``p`` arguments are the order of the
smallest nontrivial subgroup and may be ``math.inf`` (characteristic zero,
or the integers).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .groups import INFINITY, is_prime

DEGREE_CAP = 60


@dataclass(frozen=True)
class BoundResult:
    """A lower bound together with the case that produced it.

    ``value`` is None when no case of the statement applies.
    """

    value: int | None
    branch: str
    hypotheses: dict = dc_field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def as_dict(self) -> dict:
        return {"value": self.value, "branch": self.branch,
                "hypotheses": dict(sorted(self.hypotheses.items()))}


# ---------------------------------------------------------------------------
# coefficients


def multinomial(n: int, parts) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def _exponent(k: int, l: int, least: int) -> int:
    n = 2 * k - 1 - l
    if l < 0 or n < least:
        raise ValueError(f"need l >= 0 and 2k - 1 - l >= {least} (k={k}, l={l})")
    return n


def coeff_h2(k: int, l: int = 0) -> int:
    """Coefficient of (x1 x2)^(2k-1-l) in (x1+x2)^K (x1+x2): C(4k-2-2l, 2k-1-l)."""
    n = _exponent(k, l, 1)
    return math.comb(2 * n, n)


def coeff_h3(k: int, l: int = 0) -> int:
    """2(8k-7)(6k-6)! / ((2k-1)! (2k-2)!^2), with 2k replaced by 2k-l."""
    n = _exponent(k, l, 1)
    f = math.factorial
    num = 2 * (4 * n - 3) * f(3 * n - 3)
    den = f(n) * f(n - 1) ** 2
    assert num % den == 0
    return num // den


def coeff_h4(k: int, l: int = 0) -> int:
    """8(8k-10-4l)! (32k^2-64k-32kl+32l+8l^2+31) / ((2k-1-l)! (2k-2-l)!^2 (2k-3-l)!)."""
    if 2 * k - 3 - l < 0:
        raise ValueError(f"coeff_h4 needs 2k - 3 - l >= 0 (k={k}, l={l})")
    f = math.factorial
    quad = 32 * k * k - 64 * k - 32 * k * l + 32 * l + 8 * l * l + 31
    num = 8 * f(8 * k - 10 - 4 * l) * quad
    den = f(2 * k - 1 - l) * f(2 * k - 2 - l) ** 2 * f(2 * k - 3 - l)
    assert num % den == 0
    return num // den


def _shift_add(out, arr, axis):
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    src[axis] = slice(0, -1)
    dst[axis] = slice(1, None)
    out[tuple(dst)] += arr[tuple(src)]


def symbolic_coefficient_oracle(h: int, k: int, l: int = 0, degree_cap: int = DEGREE_CAP) -> int:
    """Coefficient of prod x_i^(2k-1-l) in (x_1+...+x_h)^K prod_{i<j}(x_i+x_j),
    K = h(2k-1-l) - h(h-1)/2, by repeated dense multiplication on an exponent
    grid truncated at the target exponent."""
    if h not in (2, 3, 4):
        raise ValueError("oracle covers h = 2, 3, 4")
    n = 2 * k - 1 - l
    K = h * n - h * (h - 1) // 2
    if n < 0 or K < 0:
        raise ValueError(f"no such coefficient for h={h}, k={k}, l={l}")
    if h * n > degree_cap:
        raise ValueError(f"total degree {h * n} exceeds cap {degree_cap}")
    poly = np.zeros((n + 1,) * h, dtype=object)
    poly[(0,) * h] = 1
    for i in range(h):
        for j in range(i + 1, h):
            nxt = np.zeros_like(poly)
            _shift_add(nxt, poly, i)
            _shift_add(nxt, poly, j)
            poly = nxt
    for _ in range(K):
        nxt = np.zeros_like(poly)
        for i in range(h):
            _shift_add(nxt, poly, i)
        poly = nxt
    return int(poly[(n,) * h])


# ---------------------------------------------------------------------------
# number theory


def is_quadratic_residue(a: int, p: int) -> bool | None:
    """Euler's criterion.  Returns None when p divides a."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if a % p == 0:
        return None
    return pow(a, (p - 1) // 2, p) == 1


# ---------------------------------------------------------------------------
# restricted signed sumsets in fields


def theta(k: int, h: int, s: int) -> int:
    """2hk - h(3h-1)/2 - hs."""
    return 2 * h * k - h * (3 * h - 1) // 2 - h * s


def ell(theta_val: int, p, h: int) -> int:
    """Least l >= 1 with theta - l h + 1 <= p < theta - (l-1) h + 1."""
    if p == INFINITY or p >= theta_val + 1:
        raise ValueError("ell is only defined when p < theta + 1")
    l = 1
    while True:
        if theta_val - l * h + 1 <= p < theta_val - (l - 1) * h + 1:
            return l
        l += 1


def bound_restricted_field(k: int, p, h: int, s: int) -> BoundResult:
    """Lower bound for |h±^A| when |A| = k and |A ∩ (-A)| = s in a field
    (or any group whose additive structure is that of a field) with p(F) = p."""
    if not 2 <= h <= k:
        raise ValueError("need 2 <= h <= k")
    if h - 1 > p:
        raise ValueError("need h - 1 <= p")
    th = theta(k, h, s)
    low = h * k - h * h + 1
    hyp = {"2<=h<=k": True, "h-1<=p": True}
    if min(p, th + 1) <= low:
        hyp["min(p,theta+1)<=hk-h^2+1"] = True
        return BoundResult(int(min(p, low)), "small-theta", hyp)
    if th + 1 <= p:
        hyp["hk-h^2+1<theta+1<=p"] = True
        return BoundResult(th + 1, "theta", hyp)
    hyp["hk-h^2+1<p<theta+1"] = True
    l = ell(th, p, h)
    return BoundResult(max(low, th - l * h + 1), f"ell={l}", hyp)


def liu_sun_K(k: int, m: int, h: int) -> int:
    """(k-1)h - (m+1)h(h-1)/2; may be negative."""
    return (k - 1) * h - (m + 1) * h * (h - 1) // 2


# ---------------------------------------------------------------------------
# signed sumsets of asymmetric sets in fields


def bound_signed_field(k: int, p, h: int) -> BoundResult:
    """Lower bound for |h±A|, h in {2,3,4}, A asymmetric with |A| = k."""
    if k < 1:
        raise ValueError("k must be positive")
    if h == 2:
        hyp = {"p>=4k-1": p >= 4 * k - 1}
        if hyp["p>=4k-1"]:
            return BoundResult(4 * k - 2, "p>=4k-1", hyp)
        return BoundResult(int(p) - 1, "otherwise", hyp)
    if h == 3:
        hyp = {"k>=2": k >= 2, "p>6k-6": p > 6 * k - 6, "p!=8k-7": p != 8 * k - 7}
        if all(hyp.values()):
            return BoundResult(6 * k - 5, "p>6k-6,p!=8k-7", hyp)
        return BoundResult(None, "inapplicable", hyp)
    if h == 4:
        q = 32 * k * k - 64 * k + 31
        pm3 = p != INFINITY and p % 8 in (3, 5)
        hyp = {
            "k>=2": k >= 2,
            "p>32k^2-64k+31": p > q,
            "8k-10<p<32k^2-64k+31": 8 * k - 10 < p < q,
            "8k-10<p,p=+-3(mod 8)": p > 8 * k - 10 and pm3,
        }
        if not hyp["k>=2"]:
            return BoundResult(None, "inapplicable", hyp)
        for case in ("p>32k^2-64k+31", "8k-10<p<32k^2-64k+31", "8k-10<p,p=+-3(mod 8)"):
            if hyp[case]:
                return BoundResult(8 * k - 9, case, hyp)
        hyp["p=+-3(mod 8)"] = pm3
        if pm3 and p <= 8 * k - 10:
            l = 1
            while not (8 * k - 10 - 4 * l < p < 8 * k - 10 - 4 * (l - 1)):
                l += 1
            return BoundResult(8 * k - 9 - 4 * l, f"l={l}", hyp)
        return BoundResult(None, "inapplicable", hyp)
    raise ValueError("bound_signed_field covers h = 2, 3, 4")


# ---------------------------------------------------------------------------
# closed-form bounds for groups


def _minp(p, x: int) -> int:
    return int(min(p, x))


def bound_plain(p, m: int, h: int) -> int:
    """min(p, hm - h + 1): least size of hA over m-sets."""
    return _minp(p, h * m - h + 1)


def bound_rho_s(p, m: int, h: int, s: int) -> int:
    """min(p, 2hm - hs - h + 1): least |h±A| over m-sets with sdeg s >= 1."""
    return _minp(p, 2 * h * m - h * s - h + 1)


def bound_restricted_interval(p, m: int, h: int, s: int, contains_zero: bool) -> int:
    """min(p, 2hm - h^2 - hs + 1), plus h when 0 is not in A, for |[0,h]±^A|."""
    return _minp(p, 2 * h * m - h * h - h * s + 1 + (0 if contains_zero else h))


def bound_restricted_classes(p, m: int, h: int) -> dict:
    """Class minima for |[0,h]±^A|: asym, sym, nsym."""
    return {
        "asym": _minp(p, 2 * h * m - h * h + h + 1),
        "sym": _minp(p, h * m - h * h + 1),
        "nsym": _minp(p, h * m - h * h + h + 1),
    }


def bound_restricted_plain(p, m: int, h: int) -> int:
    """min(p, hm - h^2 + 1) for h^A."""
    return _minp(p, h * m - h * h + 1)


def bound_rho_lemmas(p, m: int, h: int, s: int | None = None,
                     contains_zero: bool | None = None) -> dict:
    """Every group bound that makes sense for the given parameters."""
    out = {"plain": BoundResult(bound_plain(p, m, h), "min(p,hm-h+1)",
                                {"m<=p (equality)": m <= p})}
    if s is not None and s >= 1:
        out["signed_sdeg"] = BoundResult(
            bound_rho_s(p, m, h, s), "min(p,2hm-hs-h+1)",
            {"1<=s<=m": 1 <= s <= m, "2m-s<=p (equality)": 2 * m - s <= p})
    if s is not None and contains_zero is not None and 2 <= h <= m:
        out["restricted_interval"] = BoundResult(
            bound_restricted_interval(p, m, h, s, contains_zero),
            "0 in A" if contains_zero else "0 not in A", {"2<=h<=m": True})
    if 2 <= h <= m:
        for name, v in bound_restricted_classes(p, m, h).items():
            out[f"restricted_{name}"] = BoundResult(v, name, {"2<=h<=m": True})
    return out
