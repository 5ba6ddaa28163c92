"""Coefficient content c and Ohm-Rush content orc, covers, localization and towers."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .errors import MalformedDescriptor, MalformedTower, NotPrime, UnsupportedRing
from .factor import factor_int
from .ideals import Ideal, ideal_sum
from .rings import (
    ZZ,
    BiPolyQ,
    Elem,
    HahnVal,
    Integers,
    IntegersMod,
    PolyQuotient,
    Rationals,
    Ring,
    UniPoly,
    _sign_join,
    _term,
)
from .valgroup import SequenceDescriptor, all_nonnegative, glb


@dataclass(frozen=True)
class PolyOverRing:
    """f = sum coeffs[i] * var**i over ``base``; also read as a finite-support series."""

    base: Ring
    coeffs: tuple = ()
    var: str = "T"

    def __post_init__(self):
        cs = [self.base(c) for c in self.coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, base: Ring, coeffs, var: str = "T") -> "PolyOverRing":
        return cls(base, tuple(coeffs), var)

    @classmethod
    def from_element(cls, e: Elem) -> "PolyOverRing":
        R = e.ring
        if not isinstance(R, UniPoly):
            raise UnsupportedRing(f"{R} is not a polynomial ring")
        return cls(R.base, tuple(R.coeffs(e)), R.var)

    def to_element(self) -> Elem:
        R = UniPoly(self.base, self.var)
        return R.from_coeffs(self.coeffs)

    @classmethod
    def random(cls, base: Ring, rng: random.Random, degree: int = 3, coeff: int = 9, var: str = "T"):
        n = rng.randint(0, degree)
        return cls(base, tuple(base.random(rng, coeff, 2) for _ in range(n + 1)), var)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: "PolyOverRing"):
        if self.base != other.base or self.var != other.var:
            raise UnsupportedRing(f"{self.base}[{self.var}] vs {other.base}[{other.var}]")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.base.zero()
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return PolyOverRing(self.base, tuple(x + y for x, y in zip(a, b)), self.var)

    def __neg__(self):
        return PolyOverRing(self.base, tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolyOverRing):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PolyOverRing(self.base, (), self.var)
        out = [self.base.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyOverRing(self.base, tuple(out), self.var)

    def scale(self, r) -> "PolyOverRing":
        r = self.base(r)
        return PolyOverRing(self.base, tuple(r * c for c in self.coeffs), self.var)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            terms.append(_term(str(c), mono))
        return _sign_join(terms) if terms else "0"


def _as_poly(f) -> PolyOverRing:
    if isinstance(f, PolyOverRing):
        return f
    if isinstance(f, Elem) and isinstance(f.ring, UniPoly):
        return PolyOverRing.from_element(f)
    raise UnsupportedRing(f"expected a polynomial, got {f!r}")


def coefficients(f) -> tuple:
    """Coefficients of f over its coefficient ring: polynomial coefficients or quotient coordinates."""
    if isinstance(f, Elem) and isinstance(f.ring, PolyQuotient):
        return tuple(f.ring.coords(f))
    return _as_poly(f).coeffs


def coefficient_ring(f) -> Ring:
    if isinstance(f, Elem) and isinstance(f.ring, PolyQuotient):
        return f.ring.base
    return _as_poly(f).base


def poly_content(f) -> Ideal:
    """c(f): the ideal generated by the coefficients, c(0) = (0)."""
    base = coefficient_ring(f)
    cs = coefficients(f)
    return Ideal.of(base, list(cs) or [base.zero()])


_ORC_BASES = (Integers, IntegersMod, Rationals, UniPoly, BiPolyQ, HahnVal)


def orc_poly(f) -> Ideal:
    """orc(f) for finite-support f; equal to c(f) on the supported (Noetherian or Hahn) bases."""
    base = coefficient_ring(f)
    if not isinstance(base, _ORC_BASES):
        raise UnsupportedRing(f"Ohm-Rush content is not available over {base}")
    return poly_content(f)


def orc_of_ideal(gens: list) -> Ideal:
    """orc of the ideal generated by ``gens``, as the sum of generator contents."""
    parts = [orc_poly(h) for h in gens]
    out = parts[0]
    for p in parts[1:]:
        out = ideal_sum(out, p)
    return out


# --- series over valuation rings ----------------------------------------------

@dataclass(frozen=True)
class SeriesDescriptor:
    """A power series over a Hahn valuation ring, described by its coefficient valuations."""

    base: HahnVal
    values: SequenceDescriptor

    def __post_init__(self):
        if not isinstance(self.base, HahnVal):
            raise MalformedDescriptor("series descriptors live over Hahn valuation rings")
        if self.values.group != self.base.group:
            raise MalformedDescriptor(f"values in {self.values.group}, ring over {self.base.group}")
        if not all_nonnegative(self.values):
            raise MalformedDescriptor("coefficient valuations must be >= 0")


def smallest_fg_cover(s: SeriesDescriptor) -> Optional[Ideal]:
    """The least finitely generated ideal containing all coefficients, if one exists."""
    g = glb(s.values)
    if g is None:
        return None
    return Ideal.of(s.base, [s.base.monomial(g)])


# --- localization of Int at a prime -----------------------------------------------

@dataclass(frozen=True)
class LocalizedIdeal:
    """An ideal of Z localized at (p): (p^exponent), the unit ideal at exponent 0, (0) when None.

    prime 0 stands for the fraction field Q.
    """

    prime: int
    exponent: Optional[int]
    checks: tuple = ()

    @property
    def is_unit(self) -> bool:
        return self.exponent == 0

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __str__(self):
        if self.exponent is None:
            return "(0)"
        if self.exponent == 0:
            return "(1)"
        return f"({self.prime}^{self.exponent})" if self.exponent > 1 else f"({self.prime})"


def padic_valuation(n: int, p: int) -> Optional[int]:
    if n == 0:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def localize_content(f, P) -> LocalizedIdeal:
    """orc(f) extended to Z localized at P, with an independent coefficientwise check."""
    f = _as_poly(f)
    if not isinstance(f.base, Integers):
        raise UnsupportedRing("localization is modeled for Int only")
    p = _prime_value(P)
    content = orc_poly(f)
    d = content.normal.v
    if d == 0:
        exponent = None
    elif p == 0:
        exponent = 0
    else:
        exponent = padic_valuation(d, p)
    # independent route: localize the coefficients first, then take content
    vals = [0 if p == 0 else padic_valuation(c.v, p) for c in f.coeffs if not c.is_zero()]
    direct = min(vals) if vals else None
    check = {"lemma": "localized content", "from_generator": exponent, "from_coefficients": direct,
             "agree": exponent == direct}
    if exponent != direct:  # pragma: no cover - would indicate an arithmetic bug
        raise AssertionError(f"localization mismatch for {f} at {p}: {exponent} vs {direct}")
    return LocalizedIdeal(p, exponent, (check,))


def _prime_value(P) -> int:
    if isinstance(P, Ideal):
        P = P.normal
    if isinstance(P, Elem):
        P = P.v
    p = int(P)
    if p < 0:
        p = -p
    if p != 0 and (p == 1 or list(factor_int(p).items()) != [(p, 1)]):
        raise NotPrime(f"{P} is not prime")
    return p


# --- towers ---------------------------------------------------------------------

@dataclass(frozen=True)
class TowerId:
    """R -> R[T] (-> R[T][U]): a base ring and the successive extension symbols."""

    base: Ring
    symbols: tuple

    def __post_init__(self):
        if not 1 <= len(self.symbols) <= 2:
            raise MalformedTower("towers have 2 or 3 levels")
        if len(set(self.symbols)) != len(self.symbols):
            raise MalformedTower("extension symbols must be distinct")

    @property
    def levels(self) -> list:
        rings = [self.base]
        for s in self.symbols:
            rings.append(UniPoly(rings[-1], s))
        return rings

    def __str__(self):
        return " -> ".join(str(r) for r in self.levels)


def flatten(tower: TowerId, f) -> list:
    """All base coefficients of a top-level element."""
    R, S, T = tower.levels
    f = _as_poly(f) if not (isinstance(f, Elem) and f.ring == T) else PolyOverRing.from_element(f)
    out = []
    for h in f.coeffs:
        out.extend(S.coeffs(h))
    return out


def compose_content(tower: TowerId, f):
    """(direct, composed): orc_TR(f) and orc_SR(orc_TS(f))."""
    if len(tower.levels) != 3:
        raise MalformedTower("composition needs three levels R -> S -> T")
    R, S, T = tower.levels
    if isinstance(f, Elem):
        if f.ring != T:
            raise MalformedTower(f"{f} is not in {T}")
        f = PolyOverRing.from_element(f)
    if f.base != S or f.var != tower.symbols[1]:
        raise MalformedTower(f"element over {f.base}[{f.var}] does not match {tower}")
    direct = Ideal.of(R, flatten(tower, f) or [R.zero()])
    orc_ts = orc_poly(f)
    composed = orc_of_ideal(list(orc_ts.gens))
    return direct, composed


def int_tower() -> TowerId:
    return TowerId(ZZ, ("T", "U"))


def orc_by_intersection(f) -> Ideal:
    """orc over Int from its definition: intersect every (k) with f in (k)[T].

    Only divisors of the coefficient gcd qualify, so the intersection is finite.
    Used as a cross-check on :func:`orc_poly`.
    """
    f = _as_poly(f)
    if not isinstance(f.base, Integers):
        raise UnsupportedRing("the intersection cross-check is implemented over Int")
    from .ideals import ideal_intersect

    d = poly_content(f).normal.v
    if d == 0:
        return Ideal.of(ZZ, [0])
    out = Ideal.of(ZZ, [1])
    for k in _divisors(d):
        if all(c.v % k == 0 for c in f.coeffs):
            out = ideal_intersect(out, Ideal.of(ZZ, [k]))
    return out


def _divisors(n: int) -> list:
    ds = [1]
    for p, k in factor_int(n).items():
        ds = [d * p ** e for d in ds for e in range(k + 1)]
    return sorted(ds)
