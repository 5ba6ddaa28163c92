"""Totally ordered abelian groups used as value groups.

Three kinds are supported:

* ``Z``          -- the integers,
* ``LexZ(k)``    -- Z^k under lexicographic order (rank k, k >= 2),
* ``Quad(d)``    -- the dense subgroup Z + Z*sqrt(d) of the reals.

Order decisions are exact; the Quad order is decided by integer sign
analysis, never by floating point.  Countable subsets of a group enter as
finite *descriptors* so that greatest lower bounds are decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, total_ordering
from typing import Optional, Sequence

from .errors import GroupMismatch, MalformedDescriptor

LT, EQ, GT = -1, 0, 1

_MAX_RANK = 4


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class GroupId:
    kind: str
    param: int = 1

    def __post_init__(self):
        if self.kind == "Z":
            if self.param != 1:
                raise ValueError("Z takes no parameter")
        elif self.kind == "LexZ":
            if not 2 <= self.param <= _MAX_RANK:
                raise ValueError(f"LexZ rank must be in [2, {_MAX_RANK}], got {self.param}")
        elif self.kind == "Quad":
            if not _squarefree(self.param):
                raise ValueError(f"Quad needs a square-free d >= 2, got {self.param}")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    @property
    def rank(self) -> int:
        """Number of integer coordinates of an element."""
        if self.kind == "Z":
            return 1
        if self.kind == "LexZ":
            return self.param
        return 2

    @property
    def archimedean(self) -> bool:
        return self.kind != "LexZ"

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, *coords: int) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def unit_vector(self, i: int) -> "GroupElement":
        c = [0] * self.rank
        c[i] = 1
        return GroupElement(self, tuple(c))

    def __str__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "LexZ":
            return f"LexZ({self.param})"
        return f"Quad({self.param})"


Z = GroupId("Z")


def LexZ(k: int) -> GroupId:
    return GroupId("LexZ", k)


def Quad(d: int) -> GroupId:
    return GroupId("Quad", d)


# --- exact arithmetic in Q(sqrt d) -------------------------------------------

def quad_sign(r, s, d: int) -> int:
    """Sign of r + s*sqrt(d) for rationals r, s and non-square d."""
    r, s = Fraction(r), Fraction(s)
    if s == 0:
        return (r > 0) - (r < 0)
    if r == 0:
        return (s > 0) - (s < 0)
    if (r > 0) == (s > 0):
        return 1 if r > 0 else -1
    diff = r * r - s * s * d
    # diff == 0 would make sqrt(d) rational
    if diff > 0:
        return 1 if r > 0 else -1
    return 1 if s > 0 else -1


@dataclass(frozen=True)
class QuadNumber:
    """An element r + s*sqrt(d) of Q(sqrt d), rational coordinates."""

    r: Fraction
    s: Fraction
    d: int

    def __sub__(self, other: "QuadNumber") -> "QuadNumber":
        return QuadNumber(self.r - other.r, self.s - other.s, self.d)

    def __add__(self, other: "QuadNumber") -> "QuadNumber":
        return QuadNumber(self.r + other.r, self.s + other.s, self.d)

    def sign(self) -> int:
        return quad_sign(self.r, self.s, self.d)

    def cmp(self, other: "QuadNumber") -> int:
        return (self - other).sign()

    def floor(self) -> int:
        scale = 1 << 64
        approx_sqrt = Fraction(math.isqrt(self.d * scale * scale), scale)
        n = math.floor(self.r + self.s * approx_sqrt)
        while QuadNumber(self.r - n, self.s, self.d).sign() < 0:
            n -= 1
        while QuadNumber(self.r - n - 1, self.s, self.d).sign() >= 0:
            n += 1
        return n

    def __truediv__(self, other: "QuadNumber") -> "QuadNumber":
        # multiply through by the conjugate of the denominator
        norm = other.r * other.r - other.s * other.s * self.d
        r = (self.r * other.r - self.s * other.s * self.d) / norm
        s = (self.s * other.r - self.r * other.s) / norm
        return QuadNumber(r, s, self.d)

    def __str__(self):
        return f"{self.r} + {self.s}*sqrt({self.d})"


# --- group elements ----------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class GroupElement:
    group: GroupId
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.group.rank:
            raise ValueError(
                f"{self.group} elements have {self.group.rank} coordinates, got {self.coords}"
            )
        if not all(isinstance(c, int) for c in self.coords):
            object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatch(f"cannot combine {self.group} with {getattr(other, 'group', other)}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, m: int) -> "GroupElement":
        return GroupElement(self.group, tuple(m * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sign(self) -> int:
        return compare(self, self.group.zero())

    def as_quad(self) -> QuadNumber:
        a, b = self.coords
        return QuadNumber(Fraction(a), Fraction(b), self.group.param)

    def __lt__(self, other: "GroupElement") -> bool:
        return compare(self, other) == LT

    def __str__(self):
        if self.group.kind == "Z":
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def compare(a: GroupElement, b: GroupElement) -> int:
    """Three-way comparison in the group order: LT (-1), EQ (0) or GT (1)."""
    if a.group != b.group:
        raise GroupMismatch(f"cannot compare elements of {a.group} and {b.group}")
    if a.group.kind == "Quad":
        return quad_sign(a.coords[0] - b.coords[0], a.coords[1] - b.coords[1], a.group.param)
    return (a.coords > b.coords) - (a.coords < b.coords)


def group_min(elems: Sequence[GroupElement]) -> GroupElement:
    best = elems[0]
    for e in elems[1:]:
        if compare(e, best) == LT:
            best = e
    return best


def sort_key():
    return cmp_to_key(compare)


def leading_index(g: GroupElement) -> Optional[int]:
    """Index of the first nonzero coordinate; for LexZ this fixes the convex subgroup of g."""
    for i, c in enumerate(g.coords):
        if c:
            return i
    return None


def least_positive(group: GroupId) -> Optional[GroupElement]:
    """The smallest strictly positive element, which exists unless the group is dense."""
    if group.kind == "Quad":
        return None
    return group.unit_vector(group.rank - 1)


def positive_below(g: GroupElement) -> GroupElement:
    """Some h with 0 < h < g.  Raises if g is the least positive element."""
    if g.sign() != GT:
        raise ValueError(f"{g} is not positive")
    G = g.group
    if G.kind != "Quad":
        h = least_positive(G)
        if compare(h, g) != LT:
            raise ValueError(f"{g} is the least positive element of {G}")
        return h
    # b*sqrt(d) - a for growing b gets arbitrarily small
    target = g.as_quad()
    b = 1
    while True:
        a = QuadNumber(Fraction(0), Fraction(b), G.param).floor()
        h = G.element(-a, b)
        if h.sign() == GT and compare(h, g) == LT:
            return h
        b += 1
        if b > 10**6:  # pragma: no cover - density makes this unreachable
            raise RuntimeError(f"no positive element below {target} found")


# --- descriptors of countable subsets ---------------------------------------

class SequenceDescriptor:
    """Finite description of a countable subset of a value group."""

    group: GroupId


@dataclass(frozen=True)
class Finite(SequenceDescriptor):
    elements: tuple

    def __post_init__(self):
        if not self.elements:
            raise MalformedDescriptor("finite descriptor must be non-empty")
        groups = {e.group for e in self.elements}
        if len(groups) != 1:
            raise MalformedDescriptor("finite descriptor mixes groups")

    @property
    def group(self) -> GroupId:
        return self.elements[0].group

    def __str__(self):
        return "finite[" + ", ".join(str(e) for e in self.elements) + "]"


@dataclass(frozen=True)
class Affine(SequenceDescriptor):
    """The set {u + m*w : m = 0, 1, 2, ...}."""

    u: GroupElement
    w: GroupElement

    def __post_init__(self):
        if self.u.group != self.w.group:
            raise MalformedDescriptor("affine descriptor mixes groups")
        if self.w.is_zero():
            raise MalformedDescriptor("affine step must be nonzero")

    @property
    def group(self) -> GroupId:
        return self.u.group

    def __str__(self):
        return f"affine({self.u};{self.w})"


@dataclass(frozen=True)
class ConvergentQuad(SequenceDescriptor):
    """A strictly decreasing sequence in Quad(d) with infimum p + q*sqrt(d)."""

    group: GroupId
    p: Fraction
    q: Fraction

    def __post_init__(self):
        if self.group.kind != "Quad":
            raise MalformedDescriptor("convergent descriptors live in Quad groups only")
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    @property
    def limit(self) -> QuadNumber:
        return QuadNumber(self.p, self.q, self.group.param)

    def __str__(self):
        return f"conv({self.p} + {self.q}*sqrt({self.group.param}))"


def _check_descriptor(s: SequenceDescriptor):
    if not isinstance(s, (Finite, Affine, ConvergentQuad)):
        raise MalformedDescriptor(f"not a sequence descriptor: {s!r}")


def glb(s: SequenceDescriptor) -> Optional[GroupElement]:
    """Greatest lower bound of the described set in its group, or None if there is none."""
    _check_descriptor(s)
    if isinstance(s, Finite):
        return group_min(list(s.elements))
    if isinstance(s, Affine):
        if s.w.sign() == GT:
            return s.u
        # Decreasing without a minimum.  Archimedean: unbounded below.  LexZ: the
        # lower bounds are the elements whose prefix before the leading index of w
        # is smaller than u's, and adding a unit at that index beats any of them.
        return None
    if s.p.denominator == 1 and s.q.denominator == 1:
        return s.group.element(int(s.p), int(s.q))
    return None


def is_lower_bound(g: GroupElement, s: SequenceDescriptor) -> bool:
    """Exact decision of g <= x for every x in the described (possibly infinite) set."""
    _check_descriptor(s)
    if g.group != s.group:
        raise GroupMismatch(f"{g} is not in {s.group}")
    if isinstance(s, Finite):
        return all(compare(g, e) != GT for e in s.elements)
    if isinstance(s, Affine):
        if s.w.sign() == GT:
            return compare(g, s.u) != GT
        if s.group.archimedean:
            return False
        i = leading_index(s.w)
        return g.coords[:i] < s.u.coords[:i]
    return g.as_quad().cmp(s.limit) <= 0


def all_positive(s: SequenceDescriptor) -> bool:
    _check_descriptor(s)
    if isinstance(s, ConvergentQuad):
        return s.limit.sign() >= 0
    if isinstance(s, Finite):
        return all(e.sign() == GT for e in s.elements)
    return is_lower_bound(s.group.zero(), s) and s.u.sign() == GT


def all_nonnegative(s: SequenceDescriptor) -> bool:
    return is_lower_bound(s.group.zero(), s)


def materialize(s: SequenceDescriptor, n: int) -> list:
    """The first n described elements (decreasing and approaching the limit for ConvergentQuad)."""
    _check_descriptor(s)
    if n < 1:
        raise MalformedDescriptor("materialize needs n >= 1")
    if isinstance(s, Finite):
        return list(s.elements[:n])
    if isinstance(s, Affine):
        return [s.u + s.w.scale(m) for m in range(n)]
    return _approach_from_above(s, n)


def _approach_from_above(s: ConvergentQuad, n: int) -> list:
    G, limit = s.group, s.limit
    d = G.param
    out = []
    radius = 1
    prev = None
    while len(out) < n:
        best = None
        for b in range(-radius, radius + 1):
            # least a with a + b*sqrt(d) strictly above the limit
            a = QuadNumber(limit.r, limit.s - b, d).floor() + 1
            cand = G.element(a, b)
            if prev is not None and compare(cand, prev) != LT:
                continue
            if best is None or compare(cand, best) == LT:
                best = cand
        if best is None:
            radius *= 2
            continue
        out.append(best)
        prev = best
    return out
