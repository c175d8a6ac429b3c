"""Ambient groups: the integers, finite products of cyclic groups, and the
additive groups of prime-characteristic fields.

Elements of a group with a single cyclic factor (``Z``, ``Z17``, ``F5``)
are plain ints; elements of a product with several factors are tuples of
reduced coordinates.  Canonical order for finite groups is lexicographic in
the coordinates, which is also the order of the element *index* used by the
bitset machinery in :mod:`signsum.sumsets`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Sequence, Union

INFINITY = math.inf

Element = Union[int, tuple]


class GroupError(ValueError):
    """Invalid group description or element/group mismatch."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


@dataclass(frozen=True)
class Group:
    """An additive abelian group.

    ``kind`` is one of ``"integers"``, ``"product"`` or ``"field"``.  A field
    model ``F<p>^<r>`` is additively the product of ``r`` copies of ``Z<p>``;
    only its label and ``char_p`` differ.
    """

    kind: str
    moduli: tuple = ()
    char_p: int | None = None
    ext_degree: int | None = None

    def __post_init__(self):
        if self.kind == "integers":
            if self.moduli:
                raise GroupError("the integers carry no moduli")
        elif self.kind == "product":
            if not self.moduli:
                raise GroupError("a finite product needs at least one modulus")
            for n in self.moduli:
                if not isinstance(n, int) or n < 2:
                    raise GroupError(f"modulus must be an integer >= 2, got {n!r}")
        elif self.kind == "field":
            p, r = self.char_p, self.ext_degree
            if not isinstance(p, int) or not is_prime(p):
                raise GroupError(f"field characteristic must be prime, got {p!r}")
            if not isinstance(r, int) or r < 1:
                raise GroupError(f"extension degree must be >= 1, got {r!r}")
            object.__setattr__(self, "moduli", (p,) * r)
        else:
            raise GroupError(f"unknown group kind {self.kind!r}")

    # construction ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Group":
        """Parse ``Z``, ``Z<n>``, ``Z<n1>xZ<n2>x...`` or ``F<p>^<r>``."""
        t = text.strip().replace(" ", "")
        if t == "Z":
            return INTEGERS
        m = re.fullmatch(r"F(\d+)(?:\^(\d+))?", t)
        if m:
            return field(int(m.group(1)), int(m.group(2) or 1))
        parts = t.split("x")
        moduli = []
        for part in parts:
            m = re.fullmatch(r"Z(\d+)", part)
            if not m:
                raise GroupError(f"cannot parse group {text!r} (bad factor {part!r})")
            moduli.append(int(m.group(1)))
        return product(*moduli)

    def __str__(self):
        if self.kind == "integers":
            return "Z"
        if self.kind == "field":
            r = self.ext_degree
            return f"F{self.char_p}" if r == 1 else f"F{self.char_p}^{r}"
        return "x".join(f"Z{n}" for n in self.moduli)

    # basic invariants -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != "integers"

    @property
    def rank(self) -> int:
        """Number of coordinates (1 for the integers)."""
        return len(self.moduli) if self.is_finite else 1

    @property
    def is_cyclic(self) -> bool:
        if not self.is_finite:
            return True
        n = 1
        for m in self.moduli:
            if math.gcd(n, m) != 1:
                return False
            n *= m
        return True

    @cached_property
    def order(self) -> int | float:
        if not self.is_finite:
            return INFINITY
        return math.prod(self.moduli)

    @cached_property
    def p(self) -> int | float:
        """Order of the smallest nontrivial subgroup (INFINITY for Z)."""
        if self.kind == "integers":
            return INFINITY
        if self.kind == "field":
            return self.char_p
        return min(smallest_prime_factor(n) for n in self.moduli)

    # elements -------------------------------------------------------------

    @property
    def zero(self) -> Element:
        if self.rank == 1:
            return 0
        return (0,) * self.rank

    def element(self, x) -> Element:
        """Validate ``x`` and return it in reduced canonical form."""
        if not self.is_finite:
            if isinstance(x, bool) or not isinstance(x, int):
                raise GroupError(f"{x!r} is not an element of Z")
            return x
        if self.rank == 1:
            if isinstance(x, tuple) and len(x) == 1:
                x = x[0]
            if isinstance(x, bool) or not isinstance(x, int):
                raise GroupError(f"{x!r} is not an element of {self}")
            return x % self.moduli[0]
        if not isinstance(x, tuple) or len(x) != self.rank:
            raise GroupError(f"{x!r} is not an element of {self}")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in x):
            raise GroupError(f"{x!r} is not an element of {self}")
        return tuple(c % n for c, n in zip(x, self.moduli))

    def coords(self, x: Element) -> tuple:
        return (x,) if self.rank == 1 else x

    def _from_coords(self, c: Sequence[int]) -> Element:
        return c[0] if self.rank == 1 else tuple(c)

    def add(self, a: Element, b: Element) -> Element:
        a, b = self.element(a), self.element(b)
        if not self.is_finite:
            return a + b
        return self._from_coords(
            [(x + y) % n for x, y, n in zip(self.coords(a), self.coords(b), self.moduli)]
        )

    def neg(self, a: Element) -> Element:
        return self.scalar_mul(-1, a)

    def scalar_mul(self, n: int, a: Element) -> Element:
        a = self.element(a)
        if not self.is_finite:
            return n * a
        return self._from_coords([(n * x) % m for x, m in zip(self.coords(a), self.moduli)])

    def element_order(self, a: Element) -> int | float:
        a = self.element(a)
        if not self.is_finite:
            return 1 if a == 0 else INFINITY
        o = 1
        for x, n in zip(self.coords(a), self.moduli):
            o = math.lcm(o, n // math.gcd(x, n))
        return o

    # canonical indexing (finite groups only) --------------------------------

    @cached_property
    def strides(self) -> tuple:
        self._require_finite("indexing")
        s, out = 1, []
        for n in reversed(self.moduli):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    def index(self, a: Element) -> int:
        """Position of ``a`` in the canonical enumeration."""
        self._require_finite("indexing")
        a = self.element(a)
        return sum(c * s for c, s in zip(self.coords(a), self.strides))

    def element_at(self, i: int) -> Element:
        self._require_finite("indexing")
        return self._elements[i]

    @cached_property
    def _elements(self) -> tuple:
        if self.rank == 1:
            return tuple(range(self.moduli[0]))
        return tuple(_cartesian(*(range(n) for n in self.moduli)))

    def elements(self) -> list:
        """All elements in canonical (lexicographic coordinate) order."""
        self._require_finite("enumeration")
        return list(self._elements)

    def sort_key(self, a: Element):
        return a if not self.is_finite else self.index(a)

    def _require_finite(self, what: str):
        if not self.is_finite:
            raise GroupError(f"{what} needs a finite group, got Z")


INTEGERS = Group("integers")


def integers() -> Group:
    return INTEGERS


def cyclic(n: int) -> Group:
    return Group("product", (n,))


def product(*moduli: int) -> Group:
    return Group("product", tuple(moduli))


def field(p: int, r: int = 1) -> Group:
    return Group("field", char_p=p, ext_degree=r)


def parse_group(text: str) -> Group:
    return Group.parse(text)


# functional spellings of the group operations


def p_of_group(g: Group) -> int | float:
    return g.p


def add(g: Group, a: Element, b: Element) -> Element:
    return g.add(a, b)


def neg(g: Group, a: Element) -> Element:
    return g.neg(a)


def scalar_mul(g: Group, n: int, a: Element) -> Element:
    return g.scalar_mul(n, a)


def enumerate_elements(g: Group) -> list:
    return g.elements()


class Subset:
    """A finite subset of a group, deduplicated and canonically ordered."""

    __slots__ = ("group", "elements", "_set")

    def __init__(self, group: Group, elements: Iterable = ()):
        elems = {group.element(x) for x in elements}
        self.group = group
        self.elements = tuple(sorted(elems, key=group.sort_key))
        self._set = frozenset(elems)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            return self.group.element(x) in self._set
        except GroupError:
            return False

    def __eq__(self, other):
        if not isinstance(other, Subset):
            return NotImplemented
        return self.group == other.group and self._set == other._set

    def __hash__(self):
        return hash((self.group, self._set))

    def __le__(self, other: "Subset"):
        return self.group == other.group and self._set <= other._set

    def __or__(self, other: "Subset") -> "Subset":
        _same_group(self, other)
        return Subset(self.group, self._set | other._set)

    def __and__(self, other: "Subset") -> "Subset":
        _same_group(self, other)
        return Subset(self.group, self._set & other._set)

    def __sub__(self, other: "Subset") -> "Subset":
        _same_group(self, other)
        return Subset(self.group, self._set - other._set)

    def __neg__(self) -> "Subset":
        return Subset(self.group, (self.group.neg(a) for a in self.elements))

    def scaled(self, n: int) -> "Subset":
        return Subset(self.group, (self.group.scalar_mul(n, a) for a in self.elements))

    def translated(self, g: Element) -> "Subset":
        return Subset(self.group, (self.group.add(a, g) for a in self.elements))

    def as_set(self) -> frozenset:
        return self._set

    def to_literal(self) -> str:
        return format_elements(self.elements)

    def __repr__(self):
        return f"Subset({self.group}, {{{self.to_literal()}}})"


def _same_group(a: Subset, b: Subset):
    if a.group != b.group:
        raise GroupError(f"subsets live in different groups: {a.group} vs {b.group}")


def format_element(x: Element) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(str(c) for c in x) + ")"
    return str(x)


def format_elements(elems: Iterable[Element]) -> str:
    return ",".join(format_element(x) for x in elems)


_TOKEN = re.compile(r"\s*(\((?:\s*-?\d+\s*,)*\s*-?\d+\s*\)|-?\d+)\s*(,|$)")


def parse_elements(text: str) -> list:
    """Parse a comma-separated element literal list such as ``1,-2,3`` or
    ``(0,1),(1,1)``.  Raises :class:`GroupError` naming the bad position."""
    out, pos, text = [], 0, text.strip()
    if not text:
        return out
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupError(f"cannot parse element list at position {pos}: {text[pos:]!r}")
        tok = m.group(1)
        if tok.startswith("("):
            out.append(tuple(int(c) for c in tok[1:-1].split(",")))
        else:
            out.append(int(tok))
        pos = m.end()
        if m.group(2) == "" and pos < len(text):
            raise GroupError(f"cannot parse element list at position {pos}")
    return out


def parse_subset(group: Group, text: str) -> Subset:
    return Subset(group, parse_elements(text))


def subgroup_generated(g: Group, S: Subset | Iterable) -> Subset:
    """Closure of ``S ∪ {0}`` under addition and negation."""
    gens = list(S)
    if not g.is_finite:
        if all(x == 0 for x in gens):
            return Subset(g, [0])
        raise GroupError("subgroup of Z generated by a nonzero element is infinite")
    gens = [g.element(x) for x in gens]
    seen = {g.zero}
    frontier = [g.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.add(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    # in a finite group the additive closure already contains all negatives
    return Subset(g, seen)


def first_element_of_order(g: Group, order: int) -> Element:
    for x in g.elements():
        if g.element_order(x) == order:
            return x
    raise GroupError(f"{g} has no element of order {order}")
