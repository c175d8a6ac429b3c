"""Exhaustive minimization of sumset sizes over m-subsets of a finite group.

The combination index space [0, C(|G|, m)) is walked in lexicographic order
of canonical element indices.  Parallel runs split it into contiguous chunks
and merge the local minima by (value, witness), so the reported witness is
always the lexicographically smallest minimizer whatever the worker count.
"""
from __future__ import annotations

import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, islice

from .groups import Group, GroupError, Subset
from .sumsets import Kind, finite_engine, multiplicity_set, union_mask

MAX_SEARCH_SPACE = 20_000_000


class EmptyClassError(ValueError):
    """The filtered class of m-subsets is empty."""


class EnvelopeError(ValueError):
    """Search space too large for exhaustive enumeration."""


@dataclass(frozen=True)
class SubsetFilter:
    """Which m-subsets take part in the minimum.

    ``name`` is one of all, sym, asym, nsym, classA, sdeg (with ``s``), zero.
    """

    name: str = "all"
    s: int | None = None

    NAMES = ("all", "sym", "asym", "nsym", "classA", "sdeg", "zero")

    def __post_init__(self):
        if self.name not in self.NAMES:
            raise ValueError(f"unknown filter {self.name!r}")
        if (self.name == "sdeg") != (self.s is not None):
            raise ValueError("the sdeg filter (and only it) takes a value s")

    @classmethod
    def parse(cls, text) -> "SubsetFilter":
        if isinstance(text, SubsetFilter):
            return text
        t = str(text).strip()
        if t.startswith("sdeg="):
            return cls("sdeg", int(t[5:]))
        low = {n.lower(): n for n in cls.NAMES}
        low.update({"a": "classA", "class-a": "classA", "contains-zero": "zero"})
        try:
            return cls(low[t.lower()])
        except KeyError:
            raise ValueError(f"unknown filter {text!r}") from None

    def accepts(self, m: int, sd: int, has_zero: bool) -> bool:
        n = self.name
        if n == "all":
            return True
        if n == "sym":
            return sd == m
        if n == "asym":
            return sd == 0
        if n == "nsym":
            return sd == m - 1
        if n == "classA":
            return sd == 0 or sd >= m - 1
        if n == "sdeg":
            return sd == self.s
        return has_zero

    def __str__(self):
        return f"sdeg={self.s}" if self.name == "sdeg" else self.name


@dataclass(frozen=True)
class RhoQuery:
    group: Group
    m: int
    H: tuple = (1,)
    kind: Kind = Kind.SIGNED
    filter: SubsetFilter = dc_field(default_factory=SubsetFilter)

    def __post_init__(self):
        object.__setattr__(self, "H", multiplicity_set(self.H))
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        object.__setattr__(self, "filter", SubsetFilter.parse(self.filter))
        if not self.group.is_finite:
            raise GroupError("rho needs a finite group")
        if not 1 <= self.m <= self.group.order:
            raise ValueError(f"need 1 <= m <= |G| = {self.group.order}")
        f = self.filter
        if f.name == "sdeg" and not 0 <= f.s <= self.m:
            raise ValueError("sdeg filter needs 0 <= s <= m")

    @property
    def search_space(self) -> int:
        return math.comb(self.group.order, self.m)


@dataclass(frozen=True)
class RhoResult:
    value: int
    witness: Subset
    sets_examined: int
    pruned_by_automorphism: int


def _units(n: int) -> list:
    return [u for u in range(2, n) if math.gcd(u, n) == 1]


def _pruning_maps(g: Group, prune: bool):
    if not prune or g.rank != 1:
        return None
    n = g.order
    return [[(u * x) % n for x in range(n)] for u in _units(n)]


def _is_canonical(combo: tuple, maps) -> bool:
    for mp in maps:
        if tuple(sorted(mp[i] for i in combo)) < combo:
            return False
    return True


def automorphism_orbit_prune(g: Group, A: Subset) -> bool:
    """True iff A is the lexicographically least member of its orbit under
    x -> ux (u a unit).  Always True outside single-factor cyclic groups."""
    maps = _pruning_maps(g, True)
    if maps is None:
        return True
    return _is_canonical(tuple(g.index(a) for a in A), maps)


def enumerate_subsets(g: Group, m: int, filt="all"):
    """Every m-subset passing the filter, once each, in lexicographic order."""
    filt = SubsetFilter.parse(filt)
    if not g.is_finite:
        raise GroupError("enumeration needs a finite group")
    eng = finite_engine(g)
    neg = eng.neg_index
    for combo in combinations(range(g.order), m):
        cs = set(combo)
        sd = sum(1 for i in combo if neg[i] in cs)
        if filt.accepts(m, sd, 0 in cs):
            yield Subset(g, (g.element_at(i) for i in combo))


def _scan(q: RhoQuery, start: int, stop: int, prune: bool, progress: float | None = None):
    g = q.group
    eng = finite_engine(g)
    neg = eng.neg_index
    H, kind, m, filt = q.H, q.kind, q.m, q.filter
    maps = _pruning_maps(g, prune)
    best_val, best_combo = None, None
    examined = pruned = 0
    t_last = time.monotonic()
    total = stop - start
    for step, combo in enumerate(islice(combinations(range(g.order), m), start, stop)):
        if progress is not None and step & 4095 == 0:
            now = time.monotonic()
            if now - t_last >= progress:
                print(f"[rho] {step}/{total} subsets visited", file=sys.stderr)
                t_last = now
        cs = set(combo)
        sd = 0
        for i in combo:
            if neg[i] in cs:
                sd += 1
        if not filt.accepts(m, sd, 0 in cs):
            continue
        if maps is not None and not _is_canonical(combo, maps):
            pruned += 1
            continue
        examined += 1
        val = union_mask(eng, combo, H, kind).bit_count()
        if best_val is None or val < best_val:
            best_val, best_combo = val, combo
    return best_val, best_combo, examined, pruned


def _check_envelope(q: RhoQuery, max_search: int):
    if q.search_space > max_search:
        raise EnvelopeError(
            f"C({q.group.order}, {q.m}) = {q.search_space} subsets exceeds the "
            f"exhaustive-search cap of {max_search}"
        )


def _finish(q: RhoQuery, best_val, best_combo, examined, pruned) -> RhoResult:
    if best_val is None:
        raise EmptyClassError(f"no {q.m}-subset of {q.group} passes filter {q.filter}")
    g = q.group
    witness = Subset(g, (g.element_at(i) for i in best_combo))
    return RhoResult(best_val, witness, examined, pruned)


def rho(q: RhoQuery, prune: bool = True, max_search: int = MAX_SEARCH_SPACE,
        progress: float | None = None) -> RhoResult:
    """Exact minimum of |H-fold kind sumset| over the filtered m-subsets."""
    _check_envelope(q, max_search)
    return _finish(q, *_scan(q, 0, q.search_space, prune, progress))


def rho_value(group: Group, m: int, H, kind="signed", filt="all", **kw) -> int | None:
    """Convenience wrapper; None when the filtered class is empty."""
    try:
        return rho(RhoQuery(group, m, H, kind, filt), **kw).value
    except EmptyClassError:
        return None


def _scan_chunk(args):
    return _scan(*args)


def rho_parallel(q: RhoQuery, workers: int, prune: bool = True,
                 max_search: int = MAX_SEARCH_SPACE, chunks_per_worker: int = 4) -> RhoResult:
    """Same result as :func:`rho`, computed by ``workers`` processes."""
    if not isinstance(workers, int) or workers < 1:
        raise ValueError("workers must be a positive integer")
    if workers == 1:
        return rho(q, prune=prune, max_search=max_search)
    _check_envelope(q, max_search)
    total = q.search_space
    nchunks = max(1, min(total, workers * chunks_per_worker))
    bounds = [total * i // nchunks for i in range(nchunks + 1)]
    jobs = [(q, bounds[i], bounds[i + 1], prune) for i in range(nchunks)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_scan_chunk, jobs))
    best = None
    examined = pruned = 0
    for val, combo, ex_count, pr_count in parts:
        examined += ex_count
        pruned += pr_count
        if val is not None and (best is None or (val, combo) < best):
            best = (val, combo)
    if best is None:
        return _finish(q, None, None, examined, pruned)
    return _finish(q, best[0], best[1], examined, pruned)
