"""A closed tower of concrete commutative rings with exact arithmetic.

Rings are immutable, hashable descriptions (``Integers()``, ``UniPoly(base, "T")``,
``HahnVal(LexZ(2), QQ)``, ...).  Elements are :class:`Elem` values pairing a ring
with a canonical payload, so structural equality is mathematical equality.

Payloads by ring kind:

=================  ==========================================================
Int                int
IntMod(n), GF(p)   int in [0, n)
Rationals          Fraction
UniPoly            tuple of base payloads, ascending degree, trailing zeros trimmed
BiPolyQ            tuple of ((i, j), Fraction), sorted by (i, j), no zero terms
HahnVal            tuple of (coords, residue payload), ascending in the group order
PolyQuotient       tuple of base-field payloads of degree < deg(modulus)
=================  ==========================================================

Hahn payloads model a valuation ring with value group G through finite sums
c_g t^g with g >= 0.  Only support minima matter for ideal theory, so a unit
such as 2 + t counts as invertible even though its inverse has infinite support.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional

from sympy import isprime

from .errors import RingMismatch, UnsupportedRing, WrongRingKind
from .valgroup import GT, LT, GroupElement, GroupId, compare


class Ring:
    """Base class.  Subclasses implement arithmetic on raw payloads."""

    kind = "abstract"
    is_field = False
    is_domain = False
    #: finitely generated ideals have a single canonical generator
    principal = False

    # payload-level interface
    def _zero(self):
        raise NotImplementedError

    def _one(self):
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _from_int(self, n: int):
        raise NotImplementedError

    def _str(self, x) -> str:
        raise NotImplementedError

    def _is_unit(self, x) -> bool:
        raise NotImplementedError

    def _random(self, rng: random.Random, coeff: int, degree: int):
        raise NotImplementedError

    # element-level conveniences
    def zero(self) -> "Elem":
        return Elem(self, self._zero())

    def one(self) -> "Elem":
        return Elem(self, self._one())

    def __call__(self, value) -> "Elem":
        if isinstance(value, Elem):
            if value.ring == self:
                return value
            return self.embed(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return Elem(self, self._from_int(value))
        if isinstance(value, Fraction):
            return Elem(self, self._from_fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def _from_fraction(self, q: Fraction):
        if q.denominator == 1:
            return self._from_int(q.numerator)
        den = Elem(self, self._from_int(q.denominator))
        if not den.is_unit():
            raise ValueError(f"{q} does not exist in {self}")
        return (Elem(self, self._from_int(q.numerator)) * den.inverse()).v

    def embed(self, e: "Elem") -> "Elem":
        """Image of e under the structural inclusion of e.ring into self."""
        raise RingMismatch(f"no inclusion {e.ring} -> {self}")

    def random(self, rng: random.Random, coeff: int = 9, degree: int = 3) -> "Elem":
        return Elem(self, self._random(rng, coeff, degree))

    def inverse(self, x):
        raise ValueError(f"{self._str(x)} is not invertible in {self}")


class Elem:
    """An element of a ring; immutable, hashable, compared structurally."""

    __slots__ = ("ring", "v")

    def __init__(self, ring: Ring, v):
        self.ring = ring
        self.v = v

    def _coerce(self, other) -> "Elem":
        if isinstance(other, Elem):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Elem(self.ring, self.ring._add(self.v, other.v))

    __radd__ = __add__

    def __neg__(self):
        return Elem(self.ring, self.ring._neg(self.v))

    def __sub__(self, other):
        other = self._coerce(other)
        return Elem(self.ring, self.ring._add(self.v, self.ring._neg(other.v)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return Elem(self.ring, self.ring._mul(self.v, other.v))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Elem) and self.ring == other.ring and self.v == other.v

    def __hash__(self):
        return hash((self.ring, self.v))

    def __repr__(self):
        return f"Elem({self.ring}, {self})"

    def __str__(self):
        return self.ring._str(self.v)

    def is_zero(self) -> bool:
        return self.v == self.ring._zero()

    def is_one(self) -> bool:
        return self.v == self.ring._one()

    def is_unit(self) -> bool:
        return self.ring._is_unit(self.v)

    def inverse(self) -> "Elem":
        return Elem(self.ring, self.ring.inverse(self.v))


def _sign_join(terms: list) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def _compound(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def _term(coef: str, mono: str) -> str:
    """Render coef*mono with 1 and -1 absorbed and compound coefficients bracketed."""
    if not mono:
        return coef
    if coef == "1":
        return mono
    if coef == "-1":
        return "-" + mono
    if _compound(coef):
        coef = f"({coef})"
    return f"{coef}*{mono}"


# --- scalar rings ------------------------------------------------------------

@dataclass(frozen=True)
class Integers(Ring):
    kind = "Int"
    is_domain = True
    principal = True

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _from_int(self, n):
        return n

    def _str(self, x):
        return str(x)

    def _is_unit(self, x):
        return abs(x) == 1

    def inverse(self, x):
        if abs(x) != 1:
            raise ValueError(f"{x} is not a unit in Int")
        return x

    def _random(self, rng, coeff, degree):
        return rng.randint(-coeff, coeff)

    def __str__(self):
        return "Int"


@dataclass(frozen=True)
class IntegersMod(Ring):
    n: int
    kind = "IntMod"
    principal = True

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")

    @property
    def is_domain(self):
        return isprime(self.n)

    @property
    def is_field(self):
        return isprime(self.n)

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, x, y):
        return (x + y) % self.n

    def _neg(self, x):
        return (-x) % self.n

    def _mul(self, x, y):
        return (x * y) % self.n

    def _from_int(self, n):
        return n % self.n

    def _str(self, x):
        return str(x)

    def _is_unit(self, x):
        return math.gcd(x, self.n) == 1

    def inverse(self, x):
        return pow(x, -1, self.n)

    def is_nilpotent(self, x) -> bool:
        rad = math.prod(_prime_factors(self.n))
        return x % rad == 0

    def _random(self, rng, coeff, degree):
        return rng.randrange(self.n)

    def embed(self, e):
        if isinstance(e.ring, Integers):
            return Elem(self, e.v % self.n)
        return super().embed(e)

    def __str__(self):
        return f"IntMod({self.n})"


@dataclass(frozen=True)
class PrimeField(IntegersMod):
    kind = "PrimeField"

    def __post_init__(self):
        if not isprime(self.n):
            raise ValueError(f"{self.n} is not prime")

    is_domain = True
    is_field = True

    @property
    def p(self) -> int:
        return self.n

    def __str__(self):
        return f"GF({self.n})"


@dataclass(frozen=True)
class Rationals(Ring):
    kind = "Rationals"
    is_domain = True
    is_field = True
    principal = True

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _from_int(self, n):
        return Fraction(n)

    def _from_fraction(self, q):
        return Fraction(q)

    def _str(self, x):
        return str(x)

    def _is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return 1 / x

    def _random(self, rng, coeff, degree):
        return Fraction(rng.randint(-coeff, coeff), rng.randint(1, 3))

    def embed(self, e):
        if isinstance(e.ring, Integers):
            return Elem(self, Fraction(e.v))
        return super().embed(e)

    def __str__(self):
        return "Q"


ZZ = Integers()
QQ = Rationals()


def _prime_factors(n: int) -> list:
    from sympy import factorint

    return sorted(factorint(abs(n)))


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# --- univariate polynomials --------------------------------------------------

_POLY_BASES = (Integers, IntegersMod, Rationals)


def _trim(coeffs: list, zero) -> tuple:
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class UniPoly(Ring):
    base: Ring
    var: str
    kind = "UniPoly"

    def __post_init__(self):
        if isinstance(self.base, UniPoly):
            if self.base.depth >= 3:
                raise UnsupportedRing("polynomial towers are limited to depth 3")
            if self.var in self.base.variables:
                raise ValueError(f"variable {self.var} already used in {self.base}")
        elif not isinstance(self.base, _POLY_BASES):
            raise UnsupportedRing(f"UniPoly over {self.base} is not part of the tower")

    @property
    def depth(self) -> int:
        return 1 + (self.base.depth if isinstance(self.base, UniPoly) else 0)

    @property
    def variables(self) -> tuple:
        inner = self.base.variables if isinstance(self.base, UniPoly) else ()
        return inner + (self.var,)

    @property
    def scalars(self) -> Ring:
        """The coefficient ring at the bottom of the tower."""
        return self.base.scalars if isinstance(self.base, UniPoly) else self.base

    @property
    def is_domain(self):
        return self.base.is_domain

    @property
    def principal(self):
        return self.base.is_field

    def _zero(self):
        return ()

    def _one(self):
        return (self.base._one(),)

    def _add(self, x, y):
        b = self.base
        if len(x) < len(y):
            x, y = y, x
        out = list(x)
        for i, c in enumerate(y):
            out[i] = b._add(out[i], c)
        return _trim(out, b._zero())

    def _neg(self, x):
        return tuple(self.base._neg(c) for c in x)

    def _mul(self, x, y):
        if not x or not y:
            return ()
        b = self.base
        zero = b._zero()
        out = [zero] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            if a == zero:
                continue
            for j, c in enumerate(y):
                if c == zero:
                    continue
                out[i + j] = b._add(out[i + j], b._mul(a, c))
        return _trim(out, zero)

    def _from_int(self, n):
        return _trim([self.base._from_int(n)], self.base._zero())

    def _from_fraction(self, q):
        return _trim([self.base._from_fraction(q)], self.base._zero())

    def _str(self, x):
        terms = []
        for k, c in enumerate(x):
            if c == self.base._zero():
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            terms.append(_term(self.base._str(c), mono))
        return _sign_join(terms)

    def _is_unit(self, x):
        if not x:
            return False
        if not self.base._is_unit(x[0]):
            return False
        return all(self._coeff_nilpotent(c) for c in x[1:])

    def _coeff_nilpotent(self, c) -> bool:
        b = self.base
        if c == b._zero():
            return True
        if b.is_domain:
            return False
        if isinstance(b, IntegersMod):
            return b.is_nilpotent(c)
        return all(b._coeff_nilpotent(a) for a in c)

    def inverse(self, x):
        if len(x) == 1 and self.base._is_unit(x[0]):
            return (self.base.inverse(x[0]),)
        raise ValueError(f"{self._str(x)} has no inverse computed in {self}")

    def _random(self, rng, coeff, degree):
        d = rng.randint(0, degree)
        inner_degree = max(0, degree - 1)
        return _trim(
            [self.base._random(rng, coeff, inner_degree) for _ in range(d + 1)],
            self.base._zero(),
        )

    def embed(self, e):
        if e.ring == self.base:
            return Elem(self, _trim([e.v], self.base._zero()))
        return Elem(self, self.embed_payload(self.base.embed(e)))

    def embed_payload(self, e: Elem):
        return _trim([e.v], self.base._zero())

    # element helpers
    def gen(self) -> Elem:
        return Elem(self, (self.base._zero(), self.base._one()))

    def from_coeffs(self, coeffs) -> Elem:
        return Elem(self, _trim([self.base(c).v for c in coeffs], self.base._zero()))

    def coeffs(self, e: Elem) -> list:
        return [Elem(self.base, c) for c in e.v]

    def degree(self, e: Elem) -> int:
        return len(e.v) - 1

    def divmod(self, f: Elem, g: Elem):
        """Division with remainder over a field base; g must be nonzero."""
        b = self.base
        if not b.is_field:
            raise UnsupportedRing(f"division with remainder needs a field, not {b}")
        if not g.v:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(f.v)
        q = [b._zero()] * max(0, len(r) - len(g.v) + 1)
        lead_inv = b.inverse(g.v[-1])
        while len(r) >= len(g.v) and r:
            shift = len(r) - len(g.v)
            c = b._mul(r[-1], lead_inv)
            q[shift] = c
            for i, gc in enumerate(g.v):
                r[shift + i] = b._add(r[shift + i], b._neg(b._mul(c, gc)))
            r = list(_trim(r, b._zero()))
        return Elem(self, _trim(q, b._zero())), Elem(self, tuple(r))

    def monic(self, f: Elem) -> Elem:
        if not f.v:
            return f
        inv = self.base.inverse(f.v[-1])
        return Elem(self, tuple(self.base._mul(inv, c) for c in f.v))

    def __str__(self):
        return f"{self.base}[{self.var}]"


# --- bivariate polynomials over Q --------------------------------------------

@dataclass(frozen=True)
class BiPolyQ(Ring):
    vars: tuple = ("x", "y")
    kind = "BiPolyQ"
    is_domain = True

    def __post_init__(self):
        if len(self.vars) != 2 or self.vars[0] == self.vars[1]:
            raise ValueError("BiPolyQ needs two distinct variable names")

    def _zero(self):
        return ()

    def _one(self):
        return (((0, 0), Fraction(1)),)

    @staticmethod
    def _pack(d: dict) -> tuple:
        return tuple(sorted((m, c) for m, c in d.items() if c != 0))

    def _add(self, x, y):
        d = dict(x)
        for m, c in y:
            d[m] = d.get(m, 0) + c
        return self._pack(d)

    def _neg(self, x):
        return tuple((m, -c) for m, c in x)

    def _mul(self, x, y):
        d = {}
        for (i, j), a in x:
            for (k, l), b in y:
                key = (i + k, j + l)
                d[key] = d.get(key, 0) + a * b
        return self._pack(d)

    def _from_int(self, n):
        return self._pack({(0, 0): Fraction(n)})

    def _from_fraction(self, q):
        return self._pack({(0, 0): Fraction(q)})

    def _mono_str(self, m) -> str:
        parts = []
        for v, e in zip(self.vars, m):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def _str(self, x):
        # total degree ascending, then x-exponent descending
        order = sorted(x, key=lambda t: (sum(t[0]), -t[0][0]))
        return _sign_join([_term(str(c), self._mono_str(m)) for m, c in order])

    def _is_unit(self, x):
        return len(x) == 1 and x[0][0] == (0, 0)

    def inverse(self, x):
        if not self._is_unit(x):
            raise ValueError(f"{self._str(x)} is not a unit")
        return (((0, 0), 1 / x[0][1]),)

    def _random(self, rng, coeff, degree):
        d = {}
        for _ in range(rng.randint(0, 3)):
            i = rng.randint(0, degree)
            j = rng.randint(0, degree - i)
            d[(i, j)] = d.get((i, j), 0) + Fraction(rng.randint(-coeff, coeff))
        return self._pack(d)

    def embed(self, e):
        if isinstance(e.ring, (Integers, Rationals)):
            return Elem(self, self._from_fraction(Fraction(e.v)))
        return super().embed(e)

    # element helpers
    def gens(self) -> tuple:
        return (Elem(self, (((1, 0), Fraction(1)),)), Elem(self, (((0, 1), Fraction(1)),)))

    def monomial(self, i: int, j: int, c=1) -> Elem:
        return Elem(self, self._pack({(i, j): Fraction(c)}))

    def terms(self, e: Elem) -> dict:
        return dict(e.v)

    def total_degree(self, e: Elem) -> int:
        return max((i + j for (i, j), _ in e.v), default=-1)

    def is_homogeneous(self, e: Elem) -> bool:
        return len({i + j for (i, j), _ in e.v}) <= 1

    def __str__(self):
        return f"Q[{self.vars[0]},{self.vars[1]}]"


# --- Hahn-series valuation rings --------------------------------------------

@dataclass(frozen=True)
class HahnVal(Ring):
    """Finite-support Hahn series sum c_g t^g with g >= 0 and coefficients in a field."""

    group: GroupId
    residue: Ring = QQ
    kind = "HahnVal"
    is_domain = True
    principal = True

    def __post_init__(self):
        if not isinstance(self.residue, (Rationals, PrimeField)):
            raise UnsupportedRing("Hahn residue field must be Q or GF(p)")

    def _key(self, coords):
        if self.group.kind == "Quad":
            return _quad_key(self.group)(coords)
        return coords

    def _pack(self, d: dict) -> tuple:
        z = self.residue._zero()
        return tuple(sorted(((g, c) for g, c in d.items() if c != z), key=lambda t: self._key(t[0])))

    def _zero(self):
        return ()

    def _one(self):
        return ((self.group.zero().coords, self.residue._one()),)

    def _add(self, x, y):
        res = self.residue
        d = dict(x)
        for g, c in y:
            d[g] = res._add(d[g], c) if g in d else c
        return self._pack(d)

    def _neg(self, x):
        return tuple((g, self.residue._neg(c)) for g, c in x)

    def _mul(self, x, y):
        res = self.residue
        d = {}
        for g, a in x:
            for h, b in y:
                k = tuple(p + q for p, q in zip(g, h))
                prod = res._mul(a, b)
                d[k] = res._add(d[k], prod) if k in d else prod
        return self._pack(d)

    def _from_int(self, n):
        return self._pack({self.group.zero().coords: self.residue._from_int(n)})

    def _from_fraction(self, q):
        return self._pack({self.group.zero().coords: self.residue._from_fraction(q)})

    def _str(self, x):
        terms = []
        for g, c in x:
            ge = GroupElement(self.group, g)
            mono = "" if ge.is_zero() else "t^(" + ",".join(str(a) for a in g) + ")"
            terms.append(_term(self.residue._str(c), mono))
        return _sign_join(terms)

    def _valuation(self, x) -> Optional[GroupElement]:
        return GroupElement(self.group, x[0][0]) if x else None

    def _is_unit(self, x):
        return bool(x) and GroupElement(self.group, x[0][0]).is_zero()

    def inverse(self, x):
        if len(x) == 1 and self._is_unit(x):
            return ((x[0][0], self.residue.inverse(x[0][1])),)
        raise ValueError("inverse of a non-monomial unit has infinite support")

    def _random(self, rng, coeff, degree):
        d = {}
        for _ in range(rng.randint(0, 3)):
            g = _random_nonneg(self.group, rng, degree)
            d[g.coords] = self.residue._random(rng, coeff, degree)
        return self._pack(d)

    def embed(self, e):
        if e.ring == self.residue or isinstance(e.ring, Integers):
            return Elem(self, self._pack({self.group.zero().coords: self.residue(e).v}))
        return super().embed(e)

    def monomial(self, g: GroupElement, c=1) -> Elem:
        if g.group != self.group:
            raise RingMismatch(f"{g} is not in {self.group}")
        if compare(g, self.group.zero()) == LT:
            raise ValueError(f"t^{g} is not in the valuation ring (negative exponent)")
        return Elem(self, self._pack({g.coords: self.residue(c).v}))

    def support(self, e: Elem) -> list:
        return [GroupElement(self.group, g) for g, _ in e.v]

    def shift(self, e: Elem, g: GroupElement) -> Elem:
        """Multiply by t^g where g may be negative; the result must stay in the ring."""
        moved = {tuple(a + b for a, b in zip(k, g.coords)): c for k, c in e.v}
        out = Elem(self, self._pack(moved))
        if out.v and compare(GroupElement(self.group, out.v[0][0]), self.group.zero()) == LT:
            raise ValueError("shift leaves the valuation ring")
        return out

    def __str__(self):
        return f"Hahn({self.group},{self.residue})"


_QUAD_KEYS = {}


def _quad_key(group: GroupId):
    if group not in _QUAD_KEYS:
        _QUAD_KEYS[group] = cmp_to_key(
            lambda a, b: compare(GroupElement(group, a), GroupElement(group, b))
        )
    return _QUAD_KEYS[group]


def _random_nonneg(group: GroupId, rng: random.Random, bound: int) -> GroupElement:
    while True:
        coords = tuple(rng.randint(-bound, bound) for _ in range(group.rank))
        if group.kind == "Z":
            coords = (abs(coords[0]),)
        g = GroupElement(group, coords)
        if compare(g, group.zero()) != LT:
            return g


# --- quotients k[x]/(m) ------------------------------------------------------

@dataclass(frozen=True)
class PolyQuotient(Ring):
    """k[x]/(m) for a field k and monic m of positive degree."""

    poly: UniPoly
    modulus: tuple
    kind = "PolyQuotient"
    principal = True

    def __post_init__(self):
        if not isinstance(self.poly, UniPoly) or not self.poly.base.is_field:
            raise UnsupportedRing("quotients are taken of polynomial rings over fields")
        m = Elem(self.poly, tuple(self.modulus))
        if self.poly.degree(m) < 1:
            raise ValueError("modulus must have positive degree")
        object.__setattr__(self, "modulus", self.poly.monic(m).v)

    @property
    def modulus_elem(self) -> Elem:
        return Elem(self.poly, self.modulus)

    @property
    def base(self) -> Ring:
        return self.poly.base

    @property
    def var(self) -> str:
        return self.poly.var

    @property
    def is_domain(self):
        return _irreducible_over(self.poly, self.modulus_elem)

    @property
    def is_field(self):
        return self.is_domain

    def reduce(self, f: Elem) -> Elem:
        _, r = self.poly.divmod(f, self.modulus_elem)
        return Elem(self, r.v)

    def lift(self, e: Elem) -> Elem:
        return Elem(self.poly, e.v)

    def _zero(self):
        return ()

    def _one(self):
        return self.poly._one()

    def _add(self, x, y):
        return self.poly._add(x, y)

    def _neg(self, x):
        return self.poly._neg(x)

    def _mul(self, x, y):
        return self.reduce(Elem(self.poly, self.poly._mul(x, y))).v

    def _from_int(self, n):
        return self.poly._from_int(n)

    def _from_fraction(self, q):
        return self.poly._from_fraction(q)

    def _str(self, x):
        return self.poly._str(x)

    def _is_unit(self, x):
        g = poly_gcd(self.poly, Elem(self.poly, x), self.modulus_elem)
        return self.poly.degree(g) == 0

    def inverse(self, x):
        s, _, g = poly_xgcd(self.poly, Elem(self.poly, x), self.modulus_elem)
        if self.poly.degree(g) != 0:
            raise ValueError(f"{self._str(x)} is a zero divisor")
        return self.reduce(s).v

    def _random(self, rng, coeff, degree):
        return self.reduce(self.poly.random(rng, coeff, degree)).v

    def embed(self, e):
        if e.ring == self.poly:
            return self.reduce(e)
        return self.reduce(self.poly(e))

    def gen(self) -> Elem:
        return self.reduce(self.poly.gen())

    def coords(self, e: Elem) -> list:
        """Coordinates of e in the basis 1, x, ..., x^(n-1)."""
        n = len(self.modulus) - 1
        padded = list(e.v) + [self.base._zero()] * (n - len(e.v))
        return [Elem(self.base, c) for c in padded]

    def __str__(self):
        return f"{self.poly}/({self.poly._str(self.modulus)})"


def poly_gcd(R: UniPoly, f: Elem, g: Elem) -> Elem:
    """Monic gcd over a field base (zero if both are zero)."""
    return poly_xgcd(R, f, g)[2]


def poly_xgcd(R: UniPoly, f: Elem, g: Elem):
    """(s, t, d) with s*f + t*g = d and d the monic gcd (or zero)."""
    r0, r1 = f, g
    s0, s1 = R.one(), R.zero()
    t0, t1 = R.zero(), R.one()
    while not r1.is_zero():
        q, r = R.divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return s0, t0, r0
    inv = R(Elem(R.base, R.base.inverse(r0.v[-1])))
    return s0 * inv, t0 * inv, r0 * inv


def _irreducible_over(R: UniPoly, f: Elem) -> bool:
    from .factor import factor_poly

    factors = factor_poly(R, f)[1]
    return len(factors) == 1 and factors[0][1] == 1


# --- valuation, units, homomorphisms -----------------------------------------

def valuation(a: Elem) -> Optional[GroupElement]:
    """Minimum of the support of a Hahn element; None for zero."""
    if not isinstance(a.ring, HahnVal):
        raise WrongRingKind(f"valuation is defined on Hahn rings, not {a.ring}")
    return a.ring._valuation(a.v)


def is_unit(a: Elem) -> bool:
    return a.is_unit()


def arith(op: str, a: Elem, b: Optional[Elem] = None) -> Elem:
    """Dispatch form of the ring operations: op is Add, Sub, Mul or Neg."""
    if op == "Neg":
        return -a
    if b is None or a.ring != b.ring:
        raise RingMismatch(f"{op} needs two elements of one ring")
    if op == "Add":
        return a + b
    if op == "Sub":
        return a - b
    if op == "Mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class RingHom:
    """A ring homomorphism used as a certificate.

    ``rule`` is one of

    * ``("quotient", g)``   -- reduction modulo the generator g,
    * ``("eval", ((var, image), ...))`` -- substitute every source variable,
    * ``("inclusion",)``    -- structural inclusion into a larger ring.

    Construction runs a fixed-seed self-test on 200 random pairs.
    """

    source: Ring
    target: Ring
    rule: tuple
    selftest: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.rule[0] == "quotient":
            g, T = self.rule[1], self.target
            if isinstance(T, IntegersMod) and abs(g.v) != T.n:
                raise ValueError(f"{T} is not Int/({g})")
            if isinstance(T, PolyQuotient) and T.poly.monic(g) != T.modulus_elem:
                raise ValueError(f"{T} is not {T.poly}/({g})")
        if self.selftest:
            _selftest(self)

    def __call__(self, a: Elem) -> Elem:
        return apply_hom(self, a)

    def describe(self) -> str:
        kind = self.rule[0]
        if kind == "quotient":
            return f"mod {self.rule[1]}"
        if kind == "eval":
            return ", ".join(f"{v}->{img}" for v, img in self.rule[1])
        return "inclusion"


def apply_hom(h: RingHom, a: Elem) -> Elem:
    if a.ring != h.source:
        raise RingMismatch(f"{h.describe()} acts on {h.source}, got {a.ring}")
    kind = h.rule[0]
    T = h.target
    if kind == "inclusion":
        return T(a)
    if kind == "quotient":
        if isinstance(T, IntegersMod) and isinstance(a.ring, Integers):
            return Elem(T, a.v % T.n)
        if isinstance(T, PolyQuotient):
            return T.reduce(a)
        raise UnsupportedRing(f"no quotient map {h.source} -> {T}")
    images = dict(h.rule[1])
    S = h.source
    if isinstance(S, BiPolyQ):
        xi, yi = images[S.vars[0]], images[S.vars[1]]
        xp, yp = _powers(xi, a.v, 0), _powers(yi, a.v, 1)
        out = T.zero()
        for (i, j), c in a.v:
            out = out + T(c) * xp[i] * yp[j]
        return out
    if isinstance(S, UniPoly):
        img = images[S.var]
        out = T.zero()
        for c in reversed(S.coeffs(a)):
            out = out * img + T(c)
        return out
    raise UnsupportedRing(f"substitution is not defined on {S}")


def _powers(base: Elem, terms, slot: int) -> list:
    top = max((m[slot] for m, _ in terms), default=0)
    out = [base.ring.one()]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def _selftest(h: RingHom, pairs: int = 200, seed: int = 20240611):
    rng = random.Random(seed)
    S = h.source
    if not apply_hom(h, S.one()).is_one() or not apply_hom(h, S.zero()).is_zero():
        raise ValueError(f"{h.describe()} does not preserve 0 and 1")
    for _ in range(pairs):
        a = S.random(rng, coeff=5, degree=2)
        b = S.random(rng, coeff=5, degree=2)
        if apply_hom(h, a + b) != apply_hom(h, a) + apply_hom(h, b):
            raise ValueError(f"{h.describe()} is not additive at ({a}, {b})")
        if apply_hom(h, a * b) != apply_hom(h, a) * apply_hom(h, b):
            raise ValueError(f"{h.describe()} is not multiplicative at ({a}, {b})")
