"""A registry of mechanical checks.

Every check turns one bound, identity or structural statement into a
predicate over a parameter grid.  A grid is a JSON-style dict; a *cell* is a
dict of plain values (group text, set literals, ints) from which the cell can
be re-evaluated on its own, so a recorded failure is always reproducible with
:func:`evaluate_cell`.

Anchors are short formula summaries of the statement under test.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product as _cartesian

from . import bounds as B
from .constructions import odd_spaced_ap, interval_set, replacement_step, rho_s_witness
from .groups import INFINITY, INTEGERS, Group, Subset, parse_group, parse_subset, subgroup_generated
from .rho import RhoQuery, EmptyClassError, rho, rho_parallel
from .structure import abs_set, common_differences, is_ap, sdeg
from .sumsets import (
    hfold_sumset, interval, restricted_signed_sumset, restricted_sumset,
    signed_sumset, sumset, union_fold,
)

DEFAULT_SEED = 20250101
MAX_RECORDED_FAILURES = 100

__all__ = [
    "DEFAULT_SEED", "CheckSpec", "CheckReport", "Failure", "UnknownCheckError",
    "list_checks", "get_check", "run_check", "run_checks", "evaluate_cell",
]


class UnknownCheckError(KeyError):
    pass


@dataclass(frozen=True)
class Failure:
    params: dict
    witness: str | None
    expected: object
    actual: object

    def as_dict(self) -> dict:
        return {"params": self.params, "witness": self.witness,
                "expected": self.expected, "actual": self.actual}


@dataclass
class CheckReport:
    id: str
    anchor: str
    mode: str
    seed: int | None
    grid: dict
    cells: int
    skipped: int
    failures: list
    failures_total: int
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return self.failures_total == 0

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "mode": self.mode,
            "seed": self.seed,
            "grid": self.grid,
            "cells": self.cells,
            "skipped": self.skipped,
            "passed": self.passed,
            "failures_total": self.failures_total,
            "failures": [f.as_dict() for f in self.failures],
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else None,
        }


@dataclass(frozen=True)
class _Check:
    id: str
    anchor: str
    grid: dict
    cells: object        # (grid, rng, count) -> iterable of cell dicts
    evaluate: object     # (cell, workers) -> None | (ok, witness, expected, actual)
    mode: str = "exhaustive"
    native_sampling: bool = False


_REGISTRY: dict = {}


def _register(id, anchor, grid, cells, mode="exhaustive", native_sampling=False):
    def deco(fn):
        _REGISTRY[id] = _Check(id, anchor, grid, cells, fn, mode, native_sampling)
        return fn
    return deco


@dataclass(frozen=True)
class CheckSpec:
    """Which check to run and on what.  ``grid`` entries override the
    check's default grid key by key; ``mode`` defaults to the check's own."""

    id: str
    grid: dict | None = None
    mode: str | None = None
    seed: int = DEFAULT_SEED
    count: int | None = None

    @property
    def anchor(self) -> str:
        return get_check(self.id).anchor


def get_check(id: str) -> _Check:
    try:
        return _REGISTRY[id]
    except KeyError:
        raise UnknownCheckError(f"unknown check {id!r}") from None


def list_checks() -> list:
    """(id, anchor, default grid) for every registered check, sorted by id."""
    return [(c.id, c.anchor, c.grid) for c in sorted(_REGISTRY.values(), key=lambda c: c.id)]


def evaluate_cell(id: str, cell: dict, workers: int = 1):
    """Re-evaluate one recorded cell: None when the cell's hypothesis does
    not hold, else (ok, witness, expected, actual)."""
    return get_check(id).evaluate(cell, workers)


def run_check(spec: CheckSpec, workers: int = 1) -> CheckReport:
    chk = get_check(spec.id)
    mode = spec.mode or chk.mode
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    grid = dict(chk.grid)
    for k, v in (spec.grid or {}).items():
        if k not in grid:
            raise ValueError(f"check {spec.id} has no grid key {k!r} (keys: {sorted(grid)})")
        grid[k] = v
    sampled = mode == "sampled"
    rng = random.Random(spec.seed) if sampled else None
    count = spec.count if spec.count is not None else grid.get("count")
    t0 = time.perf_counter()
    if sampled and chk.native_sampling:
        cells = chk.cells(grid, rng, count)
    elif sampled:
        every = list(chk.cells(grid, None, None))
        n = len(every) if count is None else min(count, len(every))
        cells = [every[i] for i in sorted(rng.sample(range(len(every)), n))]
    else:
        cells = chk.cells(grid, None, None)
    checked = skipped = total = 0
    failures = []
    for cell in cells:
        out = chk.evaluate(cell, workers)
        if out is None:
            skipped += 1
            continue
        checked += 1
        ok, witness, expected, actual = out
        if not ok:
            total += 1
            if len(failures) < MAX_RECORDED_FAILURES:
                failures.append(Failure(cell, witness, expected, actual))
    elapsed = (time.perf_counter() - t0) * 1000.0
    return CheckReport(spec.id, chk.anchor, mode, spec.seed if sampled else None, grid,
                       checked, skipped, failures, total, elapsed)


def _run_one(spec):
    return run_check(spec, 1)


def run_checks(specs, workers: int = 1) -> list:
    """Run several checks, concurrently when ``workers`` > 1, and return the
    reports sorted by id.  A single check gets all workers for itself."""
    specs = list(specs)
    for s in specs:
        get_check(s.id)
    if workers < 1:
        raise ValueError("workers must be positive")
    if workers == 1 or len(specs) <= 1:
        reports = [run_check(s, workers) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_run_one, specs))
    return sorted(reports, key=lambda r: r.id)


# ---------------------------------------------------------------------------
# helpers

@lru_cache(maxsize=None)
def _G(text: str) -> Group:
    return parse_group(text)


def _S(g: Group, lit: str) -> Subset:
    return parse_subset(g, lit)


def _lit(A: Subset) -> str:
    return A.to_literal()


def _wit(A: Subset) -> str:
    return "{" + A.to_literal() + "}"


def _pmin(p, x):
    return int(min(p, x))


def _finite_subsets(g: Group, sizes):
    els = g.elements()
    for m in sizes:
        if m > len(els):
            continue
        for c in combinations(els, m):
            yield Subset(g, c)


def _int_subsets(lo: int, hi: int, sizes):
    for m in sizes:
        for c in combinations(range(lo, hi + 1), m):
            yield Subset(INTEGERS, c)


def _sizes(g: Group, max_size, least=1):
    top = g.order if max_size is None else min(max_size, g.order)
    return range(least, top + 1)


def _asym_subsets(g: Group):
    """Every nonempty A with A ∩ (-A) empty, built pair by pair."""
    pairs = []
    for x in g.elements():
        nx = g.neg(x)
        if x == nx:
            continue
        if g.index(x) < g.index(nx):
            pairs.append((x, nx))
    for choice in _cartesian((0, 1, 2), repeat=len(pairs)):
        els = [pr[c - 1] for pr, c in zip(pairs, choice) if c]
        if els:
            yield Subset(g, els)


def _rho_value(q: RhoQuery, workers: int):
    try:
        res = rho_parallel(q, workers) if workers > 1 else rho(q)
    except EmptyClassError:
        return INFINITY, None
    return res.value, res.witness


def _is_odd_spaced(A: Subset) -> bool:
    xs = A.elements
    return xs[0] > 0 and A == odd_spaced_ap(xs[0], len(xs))


def _H(h) -> tuple:
    return tuple(h) if isinstance(h, (list, tuple)) else (h,)


# ---------------------------------------------------------------------------
# direct theorems over Z and small groups

def _cells_nath(grid, rng, count):
    lo, hi = grid["values"]
    for k in grid["k"]:
        for A in _int_subsets(lo, hi, [k]):
            for h in grid["h"]:
                yield {"A": _lit(A), "h": h}


@_register("T_NATH_DIRECT",
           "|hA| >= hk - h + 1 for a k-set A of integers, h >= 2; equality iff A is a k-term AP (k >= 2)",
           {"values": [0, 9], "k": [2, 3, 4], "h": [2, 3]}, _cells_nath)
def _ev_nath(cell, workers):
    A = _S(INTEGERS, cell["A"])
    h, k = cell["h"], len(A)
    n = len(hfold_sumset(A, h))
    b = h * k - h + 1
    ap = is_ap(A)
    ok = n >= b and ((n == b) == ap)
    return ok, _wit(A), {"bound": b, "equality_iff_ap": True}, {"size": n, "is_ap": ap}


def _cells_devos(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        sets = list(_finite_subsets(g, range(1, grid["max_size"] + 1)))
        for A, Bs in combinations_with_replacement(sets, 2):
            yield {"group": gt, "A": _lit(A), "B": _lit(Bs)}
    if grid["integer_values"]:
        lo, hi = grid["integer_values"]
        sets = list(_int_subsets(lo, hi, range(1, grid["max_size"] + 1)))
        for A, Bs in combinations_with_replacement(sets, 2):
            yield {"group": "Z", "A": _lit(A), "B": _lit(Bs)}


@_register("T_DEVOS", "|A + B| >= min(p(G), |A| + |B| - 1)",
           {"groups": ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z2xZ2", "Z2xZ4", "Z3xZ3"],
            "max_size": 3, "integer_values": [-3, 3]}, _cells_devos)
def _ev_devos(cell, workers):
    g = _G(cell["group"])
    A, Bs = _S(g, cell["A"]), _S(g, cell["B"])
    n = len(sumset(A, Bs))
    b = _pmin(g.p, len(A) + len(Bs) - 1)
    return n >= b, f"{_wit(A)} + {_wit(Bs)}", b, n


def _cells_rho_groups(grid, rng, count, hkey="h"):
    for gt in grid["groups"]:
        g = _G(gt)
        for m in _sizes(g, grid.get("max_m")):
            for h in grid[hkey]:
                yield {"group": gt, "m": m, hkey: h}


@_register("L_RHO_PLAIN", "rho(G, m, h) >= min(p(G), hm - h + 1), equality iff m <= p(G)",
           {"groups": ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4", "Z3xZ3"],
            "h": [1, 2, 3], "max_m": 6}, _cells_rho_groups)
def _ev_rho_plain(cell, workers):
    g = _G(cell["group"])
    m, h = cell["m"], cell["h"]
    r, w = _rho_value(RhoQuery(g, m, h, "plain"), workers)
    b = B.bound_plain(g.p, m, h)
    ok = r >= b and ((r == b) == (m <= g.p))
    return ok, w and _wit(w), {"bound": b, "equality": m <= g.p}, r


def _cells_kemp(grid, rng, count):
    for gt, h in grid["cases"]:
        g = _G(gt)
        sets = [_lit(A) for A in _finite_subsets(g, grid["sizes"])]
        for tup in combinations_with_replacement(sets, h):
            yield {"group": gt, "sets": list(tup)}


@_register("T_KEMP_INV",
           "|A_1 + ... + A_h| < p(G) - 1 (h = 2) or < p(G) (h >= 3), all |A_i| >= 2: "
           "|A_1 + ... + A_h| = sum |A_i| - h + 1 iff the A_i are APs with one common difference",
           {"cases": [["Z5", 2], ["Z7", 2], ["Z11", 2], ["Z3xZ3", 2], ["Z5", 3], ["Z7", 3]],
            "sizes": [2, 3]}, _cells_kemp)
def _ev_kemp(cell, workers):
    g = _G(cell["group"])
    sets = [_S(g, t) for t in cell["sets"]]
    h = len(sets)
    n = len(sumset(*sets))
    lim = g.p - 1 if h == 2 else g.p
    if n >= lim:
        return None
    tight = n == sum(len(S) for S in sets) - h + 1
    common = bool(common_differences(sets))
    w = " + ".join(_wit(S) for S in sets)
    return tight == common, w, {"tight_iff_common_ap": True}, {"size": n, "tight": tight, "common_ap": common}


# ---------------------------------------------------------------------------
# signed sumsets of positive integers

def _cells_bp(grid, rng, count, with_h=True):
    lo, hi = grid["values"]
    for k in grid["k"]:
        for A in _int_subsets(max(lo, 1), hi, [k]):
            if with_h:
                for h in grid["h"]:
                    yield {"A": _lit(A), "h": h}
            else:
                yield {"A": _lit(A), "h": 2}


@_register("T_BP_2FOLD", "A a k-set of positive integers, k >= 3: |2±A| >= 4k - 2; equality => A = d*{1,3,...,2k-1}",
           {"values": [1, 12], "k": [3, 4, 5]}, lambda g, r, c: _cells_bp(g, r, c, with_h=False))
def _ev_bp2(cell, workers):
    A = _S(INTEGERS, cell["A"])
    k = len(A)
    n = len(signed_sumset(A, 2))
    b = 4 * k - 2
    odd = _is_odd_spaced(A)
    return n >= b and (n != b or odd), _wit(A), {"bound": b}, {"size": n, "odd_spaced": odd}


def _cells_bph(grid, rng, count):
    yield from _cells_bp(grid, rng, count)
    for k in grid["k"]:
        for h in grid["h"]:
            for d in grid["tight_d"]:
                yield {"tight": True, "d": d, "k": k, "h": h}


@_register("T_BP_HFOLD", "A a k-set of positive integers, h >= 3, k >= 3: |h±A| >= 2hk - h + 1, attained by d*{1,3,...,2k-1}",
           {"values": [1, 12], "k": [3, 4, 5], "h": [3, 4], "tight_d": [1, 2, 3]}, _cells_bph)
def _ev_bph(cell, workers):
    h = cell["h"]
    if cell.get("tight"):
        A = odd_spaced_ap(cell["d"], cell["k"])
        b = 2 * h * len(A) - h + 1
        n = len(signed_sumset(A, h))
        return n == b, _wit(A), b, n
    A = _S(INTEGERS, cell["A"])
    b = 2 * h * len(A) - h + 1
    n = len(signed_sumset(A, h))
    return n >= b, _wit(A), {"bound": b}, n


@_register("T_BP_INV", "A a k-set of positive integers, h >= 3, k >= 3: |h±A| = 2hk - h + 1 => A = d*{1,3,...,2k-1}",
           {"values": [1, 12], "k": [3, 4, 5], "h": [3, 4]}, _cells_bp)
def _ev_bpinv(cell, workers):
    A = _S(INTEGERS, cell["A"])
    h = cell["h"]
    n = len(signed_sumset(A, h))
    if n != 2 * h * len(A) - h + 1:
        return None
    odd = _is_odd_spaced(A)
    return odd, _wit(A), "A = d*{1,3,...,2k-1}", {"odd_spaced": odd}


# ---------------------------------------------------------------------------
# identities between sumset flavours

def _cells_signed_union(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for A in _finite_subsets(g, _sizes(g, grid.get("max_size"))):
            for h in grid["h"]:
                yield {"group": gt, "A": _lit(A), "h": h, "guarded": grid["guarded"]}
    if grid["negative_control"]:
        yield {"group": "Z", "A": "1,2", "h": 2, "control": True}


@_register("L_SIGNED_EQ_UNION", "A ∩ (-A) nonempty => h±A = h(A ∪ (-A))",
           {"groups": [f"Z{n}" for n in range(2, 11)], "h": [0, 1, 2, 3, 4], "max_size": None,
            "guarded": True, "negative_control": True}, _cells_signed_union)
def _ev_signed_union(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h = cell["h"]
    lhs = signed_sumset(A, h)
    rhs = hfold_sumset(A | -A, h)
    if cell.get("control"):
        # the identity must break here, by exactly the element 0
        diff = rhs - lhs
        ok = lhs != rhs and lhs <= rhs and diff.elements == (g.zero,)
        return ok, _wit(A), "h(A ∪ -A) minus h±A = {0}", "{" + diff.to_literal() + "}"
    if cell["guarded"] and sdeg(A) == 0:
        return None
    return lhs == rhs, _wit(A), _wit(rhs), _wit(lhs)


def _cells_hset(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for A in _finite_subsets(g, _sizes(g, grid["max_size"])):
            for H in grid["H"]:
                yield {"group": gt, "A": _lit(A), "H": H}


@_register("L_HSET_EQ_UNION", "A ∩ (-A) nonempty => H±A = H(A ∪ (-A))",
           {"groups": ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4"],
            "H": [[0], [1], [2], [0, 2], [1, 3], [0, 1, 2, 3]], "max_size": 4}, _cells_hset)
def _ev_hset(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    if sdeg(A) == 0:
        return None
    H = _H(cell["H"])
    lhs = union_fold(A, H, "signed")
    rhs = union_fold(A | -A, H, "plain")
    return lhs == rhs, _wit(A), _wit(rhs), _wit(lhs)


def _cells_interval_shift(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for A in _finite_subsets(g, _sizes(g, grid.get("max_size"), least=2)):
            for h in grid["h"]:
                yield {"group": gt, "A": _lit(A), "h": h}


@_register("L_INTERVAL_SHIFT", "|A| >= 2 => [0,h]±A = h±(A ∪ {0}) = h(A ∪ (-A) ∪ {0})",
           {"groups": [f"Z{n}" for n in range(2, 11)], "h": [1, 2, 3], "max_size": None},
           _cells_interval_shift)
def _ev_interval_shift(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h = cell["h"]
    z = Subset(g, [g.zero])
    a = union_fold(A, interval(h), "signed")
    b = signed_sumset(A | z, h)
    c = hfold_sumset(A | -A | z, h)
    return a == b == c, _wit(A), _wit(a), {"with_zero": _wit(b), "plain": _wit(c)}


def _cells_sdeg(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for A in _finite_subsets(g, _sizes(g, grid["max_size"], least=3)):
            s = sdeg(A)
            if 1 <= s <= len(A) - 2:
                for h in grid["h"]:
                    yield {"group": gt, "A": _lit(A), "h": h}
    if grid["integer_values"]:
        lo, hi = grid["integer_values"]
        for A in _int_subsets(lo, hi, range(3, grid["max_size"] + 1)):
            s = sdeg(A)
            if 1 <= s <= len(A) - 2:
                for h in grid["h"]:
                    yield {"group": "Z", "A": _lit(A), "h": h}


@_register("L_SDEG_RAISE",
           "1 <= sdeg(A) <= |A| - 2: replacing a by -b raises sdeg by 2 without growing h±A, "
           "ending at sdeg(B) in {|A| - 1, |A|}",
           {"groups": ["Z5", "Z6", "Z7", "Z8", "Z9", "Z3xZ3"], "h": [1, 2, 3], "max_size": 6,
            "integer_values": [-4, 4]}, _cells_sdeg)
def _ev_sdeg(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h, m, s0 = cell["h"], len(A), sdeg(A)
    cur, cur_sum, steps = A, signed_sumset(A, h), 0
    problems = []
    while sdeg(cur) < m - 1:
        nxt = replacement_step(cur)
        if nxt is None:
            problems.append("no admissible pair")
            break
        nxt_sum = signed_sumset(nxt, h)
        if len(nxt) != m:
            problems.append("size changed")
        if sdeg(nxt) != sdeg(cur) + 2:
            problems.append("sdeg did not rise by 2")
        if not nxt_sum <= cur_sum:
            problems.append("signed sumset grew")
        cur, cur_sum, steps = nxt, nxt_sum, steps + 1
        if steps > m:
            problems.append("no termination")
            break
    if sdeg(cur) not in (m - 1, m):
        problems.append("final sdeg out of range")
    if steps > (m - s0) // 2:
        problems.append("too many steps")
    return not problems, _wit(A), "no violations", {"final": _wit(cur), "steps": steps, "problems": problems}


# ---------------------------------------------------------------------------
# extremal functions over groups

def _cells_class_a(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for m in _sizes(g, grid["max_m"]):
            for H in grid["H"]:
                yield {"group": gt, "m": m, "H": H}


@_register("T_RHO_CLASS_A", "rho±(G, m, H) = min |H±A| over A in Asym ∪ Sym ∪ Nsym",
           {"groups": ["Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4", "Z3xZ3"],
            "H": [[1], [2], [3], [0, 1, 2], [1, 3]], "max_m": 5}, _cells_class_a)
def _ev_class_a(cell, workers):
    g = _G(cell["group"])
    m, H = cell["m"], _H(cell["H"])
    r_all, w_all = _rho_value(RhoQuery(g, m, H, "signed", "all"), workers)
    r_a, w_a = _rho_value(RhoQuery(g, m, H, "signed", "classA"), workers)
    return r_all == r_a, w_all and _wit(w_all), r_all, {"classA_min": r_a, "witness": w_a and _wit(w_a)}


def _cells_rho_s(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        top = g.order if grid["max_m"] is None else min(g.order, grid["max_m"])
        for m in range(1, top + 1):
            for s in range(1, m + 1):
                for h in grid["h"]:
                    yield {"group": gt, "m": m, "s": s, "h": h}


@_register("T_RHO_S_BOUND",
           "rho±^(s)(G, m, h) >= min(p(G), 2hm - hs - h + 1) for 1 <= s <= m, equality iff m <= (s + p(G))/2",
           {"groups": ["Z3", "Z5", "Z7", "Z9", "Z11", "Z2xZ2", "Z2xZ4", "Z3xZ3"], "h": [2, 3],
            "max_m": None}, _cells_rho_s)
def _ev_rho_s(cell, workers):
    g = _G(cell["group"])
    m, s, h = cell["m"], cell["s"], cell["h"]
    r, w = _rho_value(RhoQuery(g, m, h, "signed", f"sdeg={s}"), workers)
    b = B.bound_rho_s(g.p, m, h, s)
    eq_pred = 2 * m - s <= g.p
    ok = r >= b and ((r == b) == eq_pred)
    return ok, w and _wit(w), {"bound": b, "equality": eq_pred}, ("inf" if r == INFINITY else r)


def _cells_rho_s_tight(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        top = g.order if g.is_finite else grid["max_m"]
        if grid["max_m"] is not None:
            top = min(top, grid["max_m"])
        for m in range(1, top + 1):
            for s in range(1, m + 1):
                if 2 * m - s <= g.p:
                    for h in grid["h"]:
                        yield {"group": gt, "m": m, "s": s, "h": h}


@_register("T_RHO_S_TIGHT",
           "2m - s <= p(G), p(G) odd: the interval [-t, m-t-1] (s = 2t+1) or the odd set "
           "{-(2t-1),...,-1,1,3,...,2(m-t)-1} (s = 2t) placed on an element of order p(G) "
           "has |h±A| = min(p(G), 2hm - hs - h + 1)",
           {"groups": ["Z3", "Z5", "Z7", "Z9", "Z11", "Z15", "Z3xZ3", "F5^2", "Z"], "h": [1, 2, 3, 4],
            "max_m": 8}, _cells_rho_s_tight)
def _ev_rho_s_tight(cell, workers):
    g = _G(cell["group"])
    m, s, h = cell["m"], cell["s"], cell["h"]
    A = rho_s_witness(g, m, s)
    n = len(signed_sumset(A, h))
    b = B.bound_rho_s(g.p, m, h, s)
    ok = len(A) == m and sdeg(A) == s and n == b
    return ok, _wit(A), b, {"size": n, "m": len(A), "sdeg": sdeg(A)}


def _cells_gen_translate(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for A in _finite_subsets(g, _sizes(g, grid["max_size"])):
            for a0 in A:
                for part in (1, 2):
                    for H in grid["H"]:
                        yield {"group": gt, "A": _lit(A), "g": _lit(Subset(g, [a0])),
                               "part": part, "H": H}


@lru_cache(maxsize=65536)
def _span(g: Group, elems: tuple) -> frozenset:
    return subgroup_generated(g, Subset(g, elems)).as_set()


@_register("T_GEN_TRANSLATE",
           "g in A, <g> ∩ <A - g> = {0} => |H±A| >= |H±(A - g)|; "
           "g in A, <g> ∩ <A minus {g}> = {0} => |H±A| >= |H±((A minus {g}) ∪ {0})|",
           {"groups": ["Z4", "Z6", "Z8", "Z10", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"],
            "H": [[1], [2], [3], [0, 1, 2], [1, 3]], "max_size": 3}, _cells_gen_translate)
def _ev_gen_translate(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    a0 = _S(g, cell["g"]).elements[0]
    H = _H(cell["H"])
    cg = _span(g, (a0,))
    if cell["part"] == 1:
        other = Subset(g, (g.add(a, g.neg(a0)) for a in A))
        span = _span(g, other.elements)
    else:
        rest = [a for a in A if a != a0]
        span = _span(g, tuple(rest))
        other = Subset(g, rest + [g.zero])
    if cg & span != {g.zero}:
        return None
    lhs = len(union_fold(A, H, "signed"))
    rhs = len(union_fold(other, H, "signed"))
    return lhs >= rhs, _wit(A), {"at_least": rhs, "compared_with": _wit(other)}, lhs


def _cells_inv_ap(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for A in _finite_subsets(g, _sizes(g, grid["max_size"])):
            for h in grid["h"]:
                yield {"group": gt, "A": _lit(A), "h": h}


@_register("T_INV_AP",
           "A ∩ (-A) nonempty: |2±A| = 4m - 2s - 1 < p(G) - 1, or h >= 3 and "
           "|h±A| = 2hm - hs - h + 1 < p(G), => A ∪ (-A) is an AP (s = |A ∩ (-A)|)",
           {"groups": ["Z5", "Z7", "Z11", "Z13", "Z3xZ3"], "h": [2, 3, 4], "max_size": 5}, _cells_inv_ap)
def _ev_inv_ap(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h, m, s = cell["h"], len(A), sdeg(A)
    U = A | -A
    # the underlying inverse theorem needs summands of size >= 2
    if s == 0 or len(U) < 2:
        return None
    n = len(signed_sumset(A, h))
    if h == 2:
        hyp = n == 4 * m - 2 * s - 1 and n < g.p - 1
    else:
        hyp = n == 2 * h * m - h * s - h + 1 and n < g.p
    if not hyp:
        return None
    ap = is_ap(U)
    return ap, _wit(A), "A ∪ (-A) is an AP", {"union": _wit(U), "is_ap": ap}


def _cells_parity(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for m in _sizes(g, grid["max_m"]):
            for s in range(1, m + 1):
                for h in grid["h"]:
                    yield {"group": gt, "m": m, "s": s, "h": h}


@_register("T_PARITY_20",
           "p(G) >= 3, 1 <= s <= m: rho±^(s)(G, m, [0,h]) = rho±^(s)(G, m, h) for odd s "
           "and rho±^(s+1)(G, m+1, h) for even s",
           {"groups": ["Z3", "Z5", "Z7", "Z9", "Z15", "Z3xZ3"], "h": [1, 2, 3], "max_m": 6}, _cells_parity)
def _ev_parity(cell, workers):
    g = _G(cell["group"])
    if g.p < 3:
        return None
    m, s, h = cell["m"], cell["s"], cell["h"]
    lhs, w = _rho_value(RhoQuery(g, m, interval(h), "signed", f"sdeg={s}"), workers)
    if s % 2:
        rhs, _ = _rho_value(RhoQuery(g, m, h, "signed", f"sdeg={s}"), workers)
    elif m + 1 <= g.order:
        rhs, _ = _rho_value(RhoQuery(g, m + 1, h, "signed", f"sdeg={s + 1}"), workers)
    else:
        rhs = INFINITY
    j = lambda v: "inf" if v == INFINITY else v
    return lhs == rhs, w and _wit(w), j(rhs), j(lhs)


def _cells_sym(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for m in range(2, (g.order if grid["max_m"] is None else min(g.order, grid["max_m"])) + 1):
            for h in grid["h"]:
                for part in (1, 2, 3, 4):
                    if part == 3 and m % 2 == 0:
                        continue
                    # the odd integer in the fourth statement is read as |G|
                    if part == 4 and g.order % 2 == 0:
                        continue
                    yield {"group": gt, "m": m, "h": h, "part": part}


@lru_cache(maxsize=4096)
def _sym_sets(g: Group, m: int, need_zero: bool) -> tuple:
    out = []
    for A in _finite_subsets(g, [m]):
        if sdeg(A) == m and (g.zero in A or not need_zero):
            out.append(A)
    return tuple(out)


@_register("T_SYM_RESTRICT",
           "m >= 2: rho±(G, m, [0,h]) = min over Sym(G, m) of |[0,h]±A| = min |h(A ∪ {0})|; "
           "m odd: = min |hA| over symmetric m-sets containing 0; |G| odd: = min |hA| over "
           "symmetric (2*floor(m/2)+1)-sets containing 0",
           {"groups": [f"Z{n}" for n in range(2, 11)] + ["Z2xZ2", "Z2xZ4", "Z3xZ3"],
            "h": [1, 2, 3], "max_m": 6}, _cells_sym)
def _ev_sym(cell, workers):
    g = _G(cell["group"])
    m, h, part = cell["m"], cell["h"], cell["part"]
    H = interval(h)
    r, w = _rho_value(RhoQuery(g, m, H, "signed"), workers)
    z = Subset(g, [g.zero])
    if part == 1:
        vals = [(len(union_fold(A, H, "signed")), A) for A in _sym_sets(g, m, False)]
    elif part == 2:
        vals = [(len(hfold_sumset(A | z, h)), A) for A in _sym_sets(g, m, False)]
    else:
        mm = m if part == 3 else 2 * (m // 2) + 1
        cands = _sym_sets(g, mm, True) if mm <= g.order else ()
        vals = [(len(hfold_sumset(A, h)), A) for A in cands]
    best = min(vals, key=lambda t: t[0]) if vals else (INFINITY, None)
    ok = best[0] == r
    return ok, best[1] and _wit(best[1]), r, ("inf" if best[0] == INFINITY else best[0])


# ---------------------------------------------------------------------------
# signed sumsets of asymmetric sets in fields

def _cells_field(grid, rng, count):
    for ft in grid["fields"]:
        g = _G(ft)
        for A in _asym_subsets(g):
            yield {"group": ft, "A": _lit(A)}


def _ev_field(h):
    def ev(cell, workers):
        g = _G(cell["group"])
        A = _S(g, cell["A"])
        res = B.bound_signed_field(len(A), g.p, h)
        if not res.applicable:
            return None
        n = len(signed_sumset(A, h))
        return n >= res.value, _wit(A), {"bound": res.value, "branch": res.branch}, n
    return ev


_register("T_FIELD_H2", "A ∩ (-A) empty, |A| = k: |2±A| >= 4k - 2 if p(F) >= 4k - 1, else >= p(F) - 1",
          {"fields": ["F5", "F7", "F11", "F13", "F3^2"]}, _cells_field)(_ev_field(2))
_register("T_FIELD_H3", "A ∩ (-A) empty, |A| = k >= 2, p(F) > 6k - 6, p(F) != 8k - 7: |3±A| >= 6k - 5",
          {"fields": ["F5", "F7", "F11", "F13", "F17", "F3^2"]}, _cells_field)(_ev_field(3))
_register("T_FIELD_H4",
          "A ∩ (-A) empty, |A| = k >= 2: |4±A| >= 8k - 9 when p(F) > 32k^2 - 64k + 31, or "
          "8k - 10 < p(F) < 32k^2 - 64k + 31, or 8k - 10 < p(F) with p(F) = ±3 mod 8; "
          "|4±A| >= 8k - 9 - 4l when 8k - 10 - 4l < p(F) < 8k - 10 - 4(l-1) and p(F) = ±3 mod 8",
          {"fields": ["F5", "F7", "F11", "F13", "F17", "F19", "F3^2"]}, _cells_field)(_ev_field(4))


# ---------------------------------------------------------------------------
# restricted signed sumsets

def _cells_rss_field(grid, rng, count):
    for ft in grid["fields"]:
        g = _G(ft)
        if rng is None:
            sets = _finite_subsets(g, range(2, g.order + 1))
        else:
            els = g.elements()
            n = grid["count"] if count is None else count
            sets = (Subset(g, rng.sample(els, rng.randint(2, len(els)))) for _ in range(n))
        for A in sets:
            for h in range(2, min(grid["max_h"], len(A)) + 1):
                yield {"group": ft, "A": _lit(A), "h": h}


@_register("T_RSS_FIELD",
           "2 <= h <= k = |A|, h - 1 <= p(F), theta = 2hk - h(3h-1)/2 - h|A ∩ (-A)|: "
           "|h±^A| >= min(p(F), hk - h^2 + 1) if min(p(F), theta + 1) <= hk - h^2 + 1; "
           ">= theta + 1 if hk - h^2 + 1 < theta + 1 <= p(F); >= max(hk - h^2 + 1, theta - lh + 1) "
           "if hk - h^2 + 1 < p(F) < theta + 1, l least with theta - lh + 1 <= p(F) < theta - (l-1)h + 1",
           {"fields": ["F11", "F13", "F17", "F19"], "count": 500, "max_h": 4},
           _cells_rss_field, mode="sampled", native_sampling=True)
def _ev_rss_field(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h = cell["h"]
    res = B.bound_restricted_field(len(A), g.p, h, sdeg(A))
    n = len(restricted_signed_sumset(A, h))
    return n >= res.value, _wit(A), {"bound": res.value, "branch": res.branch}, n


def _cells_rss_groups(grid, rng, count, least_h=1):
    for gt in grid["groups"]:
        g = _G(gt)
        if g.is_finite:
            sets = _finite_subsets(g, _sizes(g, grid["max_size"]))
        else:
            lo, hi = grid["integer_values"]
            sets = _int_subsets(lo, hi, range(1, grid["max_size"] + 1))
        for A in sets:
            for h in range(least_h, min(grid["max_h"], len(A)) + 1):
                yield {"group": gt, "A": _lit(A), "h": h}


_RSS_GROUPS = [f"Z{n}" for n in range(2, 11)] + ["Z2xZ2", "Z2xZ4", "Z3xZ3"]


@_register("L_RSS_INTERVAL",
           "h <= |A|: [0,h]±^A contains [0,h]^(A ∪ (-A) ∪ {0}), with equality when A ∩ (-A) is empty",
           {"groups": _RSS_GROUPS, "max_h": 4, "max_size": 6, "integer_values": [-3, 3]}, _cells_rss_groups)
def _ev_rss_interval(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h = cell["h"]
    lhs = union_fold(A, interval(h), "restricted-signed")
    rhs = union_fold(A | -A | Subset(g, [g.zero]), interval(h), "restricted")
    ok = rhs <= lhs and (sdeg(A) > 0 or lhs == rhs)
    return ok, _wit(A), _wit(rhs), _wit(lhs)


def _ev_rss_bound(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h = cell["h"]
    n = len(union_fold(A, interval(h), "restricted-signed"))
    z = g.zero in A
    b = B.bound_restricted_interval(g.p, len(A), h, sdeg(A), z)
    return n >= b, _wit(A), {"bound": b, "zero_in_A": z}, n


_register("T_RSS_GROUP",
          "G finite, 2 <= h <= m = |A|: |[0,h]±^A| >= min(p(G), 2hm - h^2 - h|A ∩ (-A)| + 1) if 0 in A, "
          "and >= min(p(G), 2hm - h^2 - h|A ∩ (-A)| + h + 1) if 0 not in A",
          {"groups": _RSS_GROUPS + ["Z2xZ2xZ2"], "max_h": 4, "max_size": 6, "integer_values": None},
          lambda g, r, c: _cells_rss_groups(g, r, c, least_h=2))(_ev_rss_bound)
_register("T_RSS_FIELD_04",
          "F a field (Z for characteristic 0), h <= m = |A|: |[0,h]±^A| >= min(p(F), 2hm - h^2 - h|A ∩ (-A)| + 1) "
          "if 0 in A, and >= min(p(F), 2hm - h^2 - h|A ∩ (-A)| + h + 1) if 0 not in A",
          {"groups": ["F2", "F3", "F5", "F7", "F11", "F3^2", "F2^3", "Z"], "max_h": 4, "max_size": 6,
           "integer_values": [-4, 4]}, _cells_rss_groups)(_ev_rss_bound)


def _cells_rss_classes(grid, rng, count):
    for gt in grid["groups"]:
        g = _G(gt)
        for m in _sizes(g, grid["max_m"], least=2):
            for h in range(2, m + 1):
                for cls in ("asym", "sym", "nsym"):
                    yield {"group": gt, "m": m, "h": h, "class": cls}


@_register("C_RSS_CLASSES",
           "2 <= h <= m: min |[0,h]±^A| >= min(p, 2hm - h^2 + h + 1) over Asym(G, m), "
           ">= min(p, hm - h^2 + 1) over Sym(G, m), >= min(p, hm - h^2 + h + 1) over Nsym(G, m)",
           {"groups": ["Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4", "Z3xZ3", "F11"],
            "max_m": 6}, _cells_rss_classes)
def _ev_rss_classes(cell, workers):
    g = _G(cell["group"])
    m, h, cls = cell["m"], cell["h"], cell["class"]
    r, w = _rho_value(RhoQuery(g, m, interval(h), "restricted-signed", cls), workers)
    if r == INFINITY:
        return None
    b = B.bound_restricted_classes(g.p, m, h)[cls]
    return r >= b, _wit(w), b, r


def _cells_plain_restricted(grid, rng, count, least_h):
    for gt in grid["groups"]:
        g = _G(gt)
        for A in _finite_subsets(g, _sizes(g, grid["max_size"])):
            for h in range(least_h, min(grid["max_h"], len(A)) + 1):
                yield {"group": gt, "A": _lit(A), "h": h}


def _ev_plain_restricted(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    h = cell["h"]
    n = len(restricted_sumset(A, h))
    b = B.bound_restricted_plain(g.p, len(A), h)
    return n >= b, _wit(A), b, n


_register("T_ANR", "F a field, 2 <= h <= m = |A|: |h^A| >= min(p(F), hm - h^2 + 1)",
          {"groups": ["F2", "F3", "F5", "F7", "F11", "F3^2", "F2^3"], "max_h": 5, "max_size": 7},
          lambda g, r, c: _cells_plain_restricted(g, r, c, 2))(_ev_plain_restricted)
_register("T_DUPAN", "G finite, 1 <= h <= |A|: |h^A| >= min(p(G), h|A| - h^2 + 1)",
          {"groups": _RSS_GROUPS + ["Z2xZ2xZ2", "Z12"], "max_h": 5, "max_size": 6},
          lambda g, r, c: _cells_plain_restricted(g, r, c, 1))(_ev_plain_restricted)


# ---------------------------------------------------------------------------
# integer corollaries

def _cells_int_cor(grid, rng, count):
    lo, hi = grid["values"]
    for A in _int_subsets(lo, hi, grid["m"]):
        for h in grid["h"]:
            cell = {"A": _lit(A), "h": h}
            if "literal" in grid:
                cell["literal"] = grid["literal"]
            yield cell


def _cells_int_direct(grid, rng, count):
    yield from _cells_int_cor(grid, rng, count)
    for m in grid["m"]:
        for s in range(0, m + 1):
            for h in grid["h"]:
                yield {"tight": True, "m": m, "s": s, "h": h}


@_register("C_INT_DIRECT", "A a set of m >= 3 integers, h >= 3: |h±A| >= 2hm - h|A ∩ (-A)| - h + 1, attained for every s",
           {"values": [-6, 6], "m": [3, 4, 5], "h": [3, 4]}, _cells_int_direct)
def _ev_int_direct(cell, workers):
    h = cell["h"]
    if cell.get("tight"):
        m, s = cell["m"], cell["s"]
        A = odd_spaced_ap(1, m) if s == 0 else rho_s_witness(INTEGERS, m, s)
        n = len(signed_sumset(A, h))
        b = 2 * h * m - h * s - h + 1
        return n == b and sdeg(A) == s, _wit(A), b, n
    A = _S(INTEGERS, cell["A"])
    m, s = len(A), sdeg(A)
    b = 2 * h * m - h * s - h + 1
    n = len(signed_sumset(A, h))
    return n >= b, _wit(A), {"bound": b}, n


def _abs_shape(A: Subset, literal: bool):
    """Whether A_abs has the predicted shape.  The predicted number of terms
    is |A| - floor(s/2); ``literal`` uses |A| instead."""
    s = sdeg(A)
    ab = abs_set(A)
    terms = len(A) if literal else len(A) - s // 2
    xs = ab.elements
    if s % 2 == 0:
        want = odd_spaced_ap(xs[0], terms) if xs[0] > 0 else None
        shape = f"d*{{1,3,...,{2 * terms - 1}}}"
    else:
        want = interval_set(xs[1], terms) if xs[0] == 0 and len(xs) > 1 else None
        shape = f"d*[0,{terms - 1}]"
    return want is not None and ab == want, shape, ab


@_register("C_INT_INV_EVEN_ODD",
           "A a set of m >= 3 integers, h >= 3, |h±A| = 2hm - hs - h + 1 (s = |A ∩ (-A)|): "
           "A_abs = d*{1,3,...} for even s, d*[0,...] for odd s, with m - floor(s/2) terms",
           {"values": [-6, 6], "m": [3, 4, 5], "h": [3, 4], "literal": False}, _cells_int_cor)
def _ev_int_inv(cell, workers):
    A = _S(INTEGERS, cell["A"])
    h, m, s = cell["h"], len(A), sdeg(A)
    if len(signed_sumset(A, h)) != 2 * h * m - h * s - h + 1:
        return None
    ok, shape, ab = _abs_shape(A, cell.get("literal", False))
    return ok, _wit(A), shape, _wit(ab)


def _cells_int_2fold(grid, rng, count):
    lo, hi = grid["values"]
    for A in _int_subsets(lo, hi, grid["m"]):
        yield {"A": _lit(A), "literal": grid["literal"]}


@_register("C_INT_2FOLD",
           "A a set of m >= 3 integers: |2±A| >= 4m - 2 if A ∩ (-A) is empty, else >= 4m - 2|A ∩ (-A)| - 1; "
           "at equality A_abs has the same shape as for h >= 3",
           {"values": [-6, 6], "m": [3, 4, 5], "literal": False}, _cells_int_2fold)
def _ev_int_2fold(cell, workers):
    A = _S(INTEGERS, cell["A"])
    m, s = len(A), sdeg(A)
    b = 4 * m - 2 if s == 0 else 4 * m - 2 * s - 1
    n = len(signed_sumset(A, 2))
    if n < b:
        return False, _wit(A), {"bound": b}, n
    if n > b:
        return True, _wit(A), {"bound": b}, n
    ok, shape, ab = _abs_shape(A, cell.get("literal", False))
    return ok, _wit(A), {"bound": b, "shape": shape}, {"size": n, "A_abs": _wit(ab)}


# ---------------------------------------------------------------------------
# worked examples

def _single(grid, rng, count):
    yield dict(grid)


@_register("EX_Z17", "A = {1,2,3,4,5} in Z17: |2±^A| = 16 = theta + 1",
           {"group": "Z17", "A": "1,2,3,4,5", "h": 2, "expected": 16}, _single)
def _ev_z17(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    n = len(restricted_signed_sumset(A, cell["h"]))
    b = B.bound_restricted_field(len(A), g.p, cell["h"], sdeg(A)).value
    return n == cell["expected"] == b, _wit(A), {"size": cell["expected"], "bound": cell["expected"]}, {"size": n, "bound": b}


@_register("EX_Z41", "A = {0,1,3,5,...,15} in Z41: 3±^A = Z41 minus {0}, size 40 = theta + 1",
           {"group": "Z41", "A": "0,1,3,5,7,9,11,13,15", "h": 3}, _single)
def _ev_z41(cell, workers):
    g = _G(cell["group"])
    A = _S(g, cell["A"])
    S = restricted_signed_sumset(A, cell["h"])
    want = Subset(g, [x for x in g.elements() if x != g.zero])
    b = B.bound_restricted_field(len(A), g.p, cell["h"], sdeg(A)).value
    return S == want and b == 40, _wit(A), {"set": "Z41 minus {0}", "bound": 40}, {"size": len(S), "bound": b}
