"""Finite-rank ordered abelian groups embedded lexicographically in Q^r.

A group is a lexicographic product of rank-one components, each either
``c*Z`` or ``c*Z[1/l]`` for a prime ``l``.  Coordinate 0 is the most
significant.  Values are exact tuples of :class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Sequence, Union

from .errors import SpecValidationError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _strip_prime(den: int, prime: int) -> int:
    while den % prime == 0:
        den //= prime
    return den


@dataclass(frozen=True)
class Component:
    """The rank-one group ``gen*Z`` (``div is None``) or ``gen*Z[1/div]``."""

    gen: Fraction
    div: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "gen", Fraction(self.gen))
        if self.gen <= 0:
            raise SpecValidationError(f"component generator must be positive, got {self.gen}")
        if self.div is not None and not _is_prime(self.div):
            raise SpecValidationError(f"divisibility must be a prime, got {self.div}")

    @property
    def dense(self) -> bool:
        return self.div is not None

    def contains(self, q: Fraction) -> bool:
        r = Fraction(q) / self.gen
        if r.denominator == 1:
            return True
        if self.div is None:
            return False
        return _strip_prime(r.denominator, self.div) == 1

    def floor(self, q: Fraction) -> Fraction:
        """Largest element <= q (discrete components only)."""
        return self.gen * ((Fraction(q) / self.gen).__floor__())

    def ceil(self, q: Fraction) -> Fraction:
        """Smallest element >= q (discrete components only)."""
        return self.gen * ((Fraction(q) / self.gen).__ceil__())


@dataclass(frozen=True)
class ValueGroup:
    components: tuple

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Component) else Component(*c) for c in self.components)
        if not comps:
            raise SpecValidationError("a value group needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *specs) -> "ValueGroup":
        """``ValueGroup.of(1, (Fraction(1, 2), 2))`` -> Z x_lex (1/2)Z[1/2]."""
        comps = []
        for s in specs:
            if isinstance(s, Component):
                comps.append(s)
            elif isinstance(s, tuple):
                comps.append(Component(Fraction(s[0]), s[1]))
            else:
                comps.append(Component(Fraction(s)))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return len(self.components)

    def contains(self, coords: Sequence[Fraction]) -> bool:
        if len(coords) != self.rank:
            raise ValueError(f"rank mismatch: {len(coords)} coordinates for rank {self.rank}")
        return all(c.contains(x) for c, x in zip(self.components, coords))

    def prefix_contains(self, coords: Sequence[Fraction]) -> bool:
        """Membership of a truncated vector in the product of the leading components."""
        return all(c.contains(x) for c, x in zip(self.components, coords))

    def __call__(self, *coords) -> "Value":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return Value(tuple(Fraction(x) for x in coords), self)

    def zero(self) -> "Value":
        return Value((Fraction(0),) * self.rank, self)

    def unit(self, k: int) -> "Value":
        """The generator of component ``k`` (0-based) as a group element."""
        coords = [Fraction(0)] * self.rank
        coords[k] = self.components[k].gen
        return Value(tuple(coords), self)

    def subgroup(self, start: int) -> "ConvexSubgroup":
        return ConvexSubgroup(self, start)

    @property
    def trivial(self) -> "ConvexSubgroup":
        return ConvexSubgroup(self, self.rank + 1)

    @property
    def whole(self) -> "ConvexSubgroup":
        return ConvexSubgroup(self, 1)

    def describe(self) -> str:
        parts = []
        for c in self.components:
            g = "" if c.gen == 1 else f"({c.gen})"
            parts.append(f"{g}Z" if c.div is None else f"{g}Z[1/{c.div}]")
        return " x_lex ".join(parts)


@total_ordering
class _Infinity:
    """The absorbing top element of Gamma_infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("purediff-infinity")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf is undefined")
        return self

    def __mul__(self, k):
        if k <= 0:
            raise ArithmeticError("infinity may only be scaled by a positive integer")
        return self

    __rmul__ = __mul__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@total_ordering
@dataclass(frozen=True, eq=False)
class ExtValue:
    """A point of Q^r under the lexicographic order, not tied to any group."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other):
        if isinstance(other, ExtValue) and other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __eq__(self, other):
        if isinstance(other, ExtValue):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        if other is INF:
            return True
        if not isinstance(other, ExtValue):
            return NotImplemented
        self._check(other)
        return self.coords < other.coords

    def _combine(self, other, coords):
        group = getattr(self, "group", None)
        if group is not None and group == getattr(other, "group", None):
            return Value(coords, group)
        return ExtValue(coords)

    def __add__(self, other):
        if other is INF:
            return INF
        if not isinstance(other, ExtValue):
            return NotImplemented
        self._check(other)
        return self._combine(other, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if other is INF:
            raise ArithmeticError("cannot subtract infinity")
        if not isinstance(other, ExtValue):
            return NotImplemented
        self._check(other)
        return self._combine(other, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return self._combine(self, tuple(-a for a in self.coords))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return self._combine(self, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def first_nonzero(self) -> Optional[int]:
        for i, a in enumerate(self.coords):
            if a:
                return i
        return None

    def __repr__(self):
        return f"ExtValue({format_coords(self.coords)})"

    def __str__(self):
        return format_coords(self.coords)


@dataclass(frozen=True, eq=False, repr=False)
class Value(ExtValue):
    """An element of a specific :class:`ValueGroup`."""

    group: ValueGroup = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        if self.group is None:
            raise TypeError("Value requires a group; use ExtValue for free points")
        if not self.group.contains(self.coords):
            raise SpecValidationError(f"{format_coords(self.coords)} is not in {self.group.describe()}")

    @classmethod
    def trusted(cls, coords: tuple, group: ValueGroup) -> "Value":
        """Skip validation, for Fraction coordinates already known to lie in the group."""
        v = object.__new__(cls)
        object.__setattr__(v, "coords", coords)
        object.__setattr__(v, "group", group)
        return v

    def __repr__(self):
        return f"Value({format_coords(self.coords)})"


ValueInf = Union[Value, _Infinity]


@dataclass(frozen=True)
class ConvexSubgroup:
    """The suffix subgroup ``{x : x_1 = ... = x_{start-1} = 0}`` (1-based start)."""

    group: ValueGroup
    suffix_start: int

    def __post_init__(self):
        if not 1 <= self.suffix_start <= self.group.rank + 1:
            raise ValueError(f"suffix_start must lie in 1..{self.group.rank + 1}")

    @property
    def prefix_len(self) -> int:
        """Number of leading coordinates that survive in the quotient."""
        return self.suffix_start - 1

    @property
    def is_trivial(self) -> bool:
        return self.suffix_start == self.group.rank + 1

    @property
    def is_whole(self) -> bool:
        return self.suffix_start == 1

    def contains(self, x) -> bool:
        if x is INF:
            return False
        return not any(x.coords[: self.prefix_len])

    def __le__(self, other: "ConvexSubgroup") -> bool:
        return self.suffix_start >= other.suffix_start

    def __lt__(self, other: "ConvexSubgroup") -> bool:
        return self.suffix_start > other.suffix_start

    def __str__(self):
        if self.is_trivial:
            return "(0)"
        if self.is_whole:
            return "Gamma"
        return f"0^{self.prefix_len} x_lex ..."


def cmp(a, b) -> int:
    """Three-way lexicographic comparison; -1, 0 or 1."""
    if a is INF or b is INF:
        return (a is not INF and -1) or (b is not INF and 1) or 0
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    return (a.coords > b.coords) - (a.coords < b.coords)


def greatest_isolated_below(G: ValueGroup, gamma: ExtValue) -> ConvexSubgroup:
    """Largest convex subgroup all of whose elements are < gamma."""
    if gamma is INF or not gamma > G.zero():
        raise ValueError("gamma must be a positive finite value")
    j = gamma.first_nonzero()
    return ConvexSubgroup(G, j + 2)


def quotient_min_positive(G: ValueGroup, D: ConvexSubgroup) -> Optional[Value]:
    """Minimal positive element of G/D lifted with zeros on D, if one exists."""
    k = D.prefix_len
    if k == 0:
        return None
    comp = G.components[k - 1]
    if comp.dense:
        return None
    return G.unit(k - 1)


def min_positive(G: ValueGroup) -> Optional[Value]:
    return quotient_min_positive(G, G.trivial)


def in_subgroup(x: ExtValue, H: ValueGroup) -> bool:
    if x is INF:
        return False
    return H.contains(x.coords)


def is_subgroup(H: ValueGroup, G: ValueGroup) -> bool:
    """Whether H is contained in G (both lexicographic products over the same Q^r)."""
    if H.rank != G.rank:
        return False
    for h, g in zip(H.components, G.components):
        if not g.contains(h.gen):
            return False
        if h.dense and not (g.dense and g.div == h.div):
            return False
    return True


_TUPLE = re.compile(r"^\(\s*(.*?)\s*\)$")


def parse_coords(text: str) -> tuple:
    text = str(text).strip()
    m = _TUPLE.match(text)
    body = m.group(1) if m else text
    parts = [p.strip() for p in body.split(",")] if body else []
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecValidationError(f"malformed value {text!r}") from exc


def parse_value(text, group: Optional[ValueGroup] = None, ext: bool = False):
    """Parse ``"inf"``, ``"1/2"`` or ``"(1/2,0)"``.

    With ``ext=True`` the result is an :class:`ExtValue` even if it lies in the group.
    """
    if isinstance(text, (int, Fraction)):
        text = str(text)
    if str(text).strip().lower() in ("inf", "infinity", "oo"):
        return INF
    coords = parse_coords(text)
    if group is not None and len(coords) != group.rank:
        raise SpecValidationError(f"value {text!r} has rank {len(coords)}, group has rank {group.rank}")
    if group is None or ext:
        return ExtValue(coords)
    return Value(coords, group)


def format_coords(coords: Iterable[Fraction]) -> str:
    coords = tuple(coords)
    if len(coords) == 1:
        return str(coords[0])
    return "(" + ",".join(str(c) for c in coords) + ")"


def format_value(x) -> str:
    if x is INF:
        return "inf"
    return format_coords(x.coords)
