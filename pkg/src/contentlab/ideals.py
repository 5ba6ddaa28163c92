"""Finitely generated ideals: arithmetic, certified membership, primality and decomposition.

Principal rings (Int, Z/n, fields, k[x], k[x]/(m), Hahn valuation rings) carry a
canonical generator and decide everything exactly.  Ideals of Q[x, y] go
through bounded linear algebra and return ``Unknown`` rather than guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Optional

from . import bivariate
from .errors import RingMismatch, UnsupportedOp, UnsupportedRing
from .factor import factor_int, factor_poly
from .rings import (
    QQ,
    ZZ,
    BiPolyQ,
    Elem,
    HahnVal,
    Integers,
    IntegersMod,
    PolyQuotient,
    Rationals,
    RingHom,
    UniPoly,
    poly_xgcd,
    valuation,
)
from .valgroup import LT, compare, leading_index, least_positive, positive_below
from .verdicts import PropertyVerdict

MEMBER, NONMEMBER, UNKNOWN = "Member", "NonMember", "Unknown"

DEFAULT_BOUND = 6
DEFAULT_POWBOUND = 4


# --- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class DivisionCert:
    """e = quotient*d + remainder with remainder nonzero and smaller than d.

    ``cofactors`` and ``quotients`` certify that d generates the ideal:
    sum cofactors_i*gens_i = d and gens_i = quotients_i*d.
    """

    normal: Elem
    cofactors: tuple
    quotients: tuple
    quotient: Elem
    remainder: Elem


@dataclass(frozen=True)
class ValuationCert:
    """Hahn rings: membership is decided by comparing support minima."""

    element_valuation: object
    ideal_valuation: object
    radical: bool = False


@dataclass(frozen=True)
class ZeroIdealCert:
    """Every generator is zero and the element is not (radical: and the ring is a domain)."""

    radical: bool = False


@dataclass(frozen=True)
class CoprimeCert:
    """A non-unit s dividing the generator d with u*s + w*e = 1, so no power of e lies in (d).

    For Z/n and k[x]/(m) the residual and Bezout pair live in the covering
    ring Int or k[x], with d the lifted generator (n or m for the zero ideal).
    """

    normal: Elem
    cofactors: tuple
    quotients: tuple
    residual: Elem
    residual_cofactor: Elem
    bezout: tuple


@dataclass(frozen=True)
class CoefficientCert:
    """In R[T], I*R[T] consists of the polynomials with every coefficient in I."""

    position: int
    coefficient: Elem
    inner: "MembershipResult"


@dataclass(frozen=True)
class HomCert:
    """A homomorphism into a ring with decidable membership separating e from the ideal."""

    hom: RingHom
    image: Elem
    image_gens: tuple
    inner: "MembershipResult"
    radical: bool = False


@dataclass(frozen=True)
class DualCert:
    """A linear form on terms of degree < order at ``point`` that kills the ideal but not e."""

    point: tuple
    order: int
    functional: tuple


@dataclass(frozen=True)
class MembershipResult:
    """Member(coeffs) | NonMember(certificate) | Unknown(bound).

    ``power`` > 1 marks a radical test: the claim concerns element**power.
    With ``basis == "normal"`` the coefficients multiply the canonical
    generator ``normal`` instead of ``gens``.
    """

    status: str
    element: Elem
    gens: tuple
    coeffs: tuple = ()
    basis: str = "gens"
    normal: Optional[Elem] = None
    certificate: object = None
    power: int = 1
    bound: Optional[int] = None

    @property
    def is_member(self) -> bool:
        return self.status == MEMBER

    @property
    def is_nonmember(self) -> bool:
        return self.status == NONMEMBER

    @property
    def verdict(self) -> str:
        return self.status


# --- ideals ------------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    ring: object
    gens: tuple
    normal: Optional[Elem] = None
    cofactors: Optional[tuple] = field(default=None, compare=False, repr=False)
    quotients: Optional[tuple] = field(default=None, compare=False, repr=False)

    @classmethod
    def of(cls, ring, gens) -> "Ideal":
        gens = [ring(g) for g in gens]
        kept = []
        for g in gens:
            if not g.is_zero() and g not in kept:
                kept.append(g)
        if not kept:
            kept = [ring.zero()]
        nf = _normal_form(ring, kept)
        if nf is None:
            return cls(ring, tuple(kept))
        normal, cof, quo = nf
        return cls(ring, tuple(kept), normal, cof, quo)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.gens)

    @property
    def generator(self) -> Elem:
        """The canonical generator; only for principal rings."""
        if self.normal is None:
            raise UnsupportedRing(f"ideals of {self.ring} have no canonical generator")
        return self.normal

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def describe(self) -> str:
        s = str(self)
        if self.normal is not None:
            s += f" = ({self.normal})"
        return s


def ideal(ring, *gens) -> Ideal:
    return Ideal.of(ring, gens)


def unit_ideal(ring) -> Ideal:
    return Ideal.of(ring, [ring.one()])


def _int_xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _chain_xgcd(values, xgcd, zero, one):
    """Fold an extended gcd over a list: returns (d, [c_i]) with sum c_i*v_i = d."""
    d, coeffs = zero, []
    for v in values:
        g, s, t = xgcd(d, v)
        coeffs = [c * s for c in coeffs] + [t]
        d = g
    return d, coeffs


def _normal_form(ring, gens):
    if isinstance(ring, Integers):
        d, cof = _chain_xgcd([g.v for g in gens], _int_xgcd, 0, 1)
        quo = [g.v // d if d else 0 for g in gens]
        return ring(d), tuple(ring(c) for c in cof), tuple(ring(q) for q in quo)
    if isinstance(ring, IntegersMod):
        n = ring.n
        d, cof = _chain_xgcd([n] + [g.v for g in gens], _int_xgcd, 0, 1)
        cof = cof[1:]
        quo = [(g.v // d) % n for g in gens]
        return ring(d), tuple(ring(c) for c in cof), tuple(ring(q) for q in quo)
    if isinstance(ring, Rationals):
        return _field_normal(ring, gens)
    if isinstance(ring, UniPoly) and ring.base.is_field:
        def xg(a, b):
            s, t, g = poly_xgcd(ring, a, b)
            return g, s, t

        d, cof = _chain_xgcd(gens, xg, ring.zero(), ring.one())
        quo = [ring.divmod(g, d)[0] if not d.is_zero() else ring.zero() for g in gens]
        return d, tuple(cof), tuple(quo)
    if isinstance(ring, PolyQuotient):
        P = ring.poly

        def xg(a, b):
            s, t, g = poly_xgcd(P, a, b)
            return g, s, t

        d, cof = _chain_xgcd([ring.modulus_elem] + [ring.lift(g) for g in gens], xg, P.zero(), P.one())
        cof = cof[1:]
        quo = [P.divmod(ring.lift(g), d)[0] for g in gens]
        return (
            ring.reduce(d),
            tuple(ring.reduce(c) for c in cof),
            tuple(ring.reduce(q) for q in quo),
        )
    if isinstance(ring, HahnVal):
        nonzero = [g for g in gens if not g.is_zero()]
        if not nonzero:
            return ring.zero(), None, tuple(ring.zero() for _ in gens)
        v = min((valuation(g) for g in nonzero), key=_vkey(ring))
        normal = ring.monomial(v)
        quo = tuple(ring.shift(g, -v) for g in gens)
        return normal, None, quo
    if getattr(ring, "is_field", False):
        return _field_normal(ring, gens)
    return None


def _field_normal(ring, gens):
    nonzero = [k for k, g in enumerate(gens) if not g.is_zero()]
    if not nonzero:
        return ring.zero(), tuple(ring.zero() for _ in gens), tuple(ring.zero() for _ in gens)
    k = nonzero[0]
    cof = tuple(gens[k].inverse() if i == k else ring.zero() for i in range(len(gens)))
    return ring.one(), cof, tuple(gens)


def _vkey(ring: HahnVal):
    return cmp_to_key(compare)


# --- ideal arithmetic --------------------------------------------------------

def _same_ring(A: Ideal, B: Ideal):
    if A.ring != B.ring:
        raise RingMismatch(f"ideals live in {A.ring} and {B.ring}")


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    _same_ring(A, B)
    return Ideal.of(A.ring, list(A.gens) + list(B.gens))


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    _same_ring(A, B)
    return Ideal.of(A.ring, [a * b for a in A.gens for b in B.gens])


def ideal_power(A: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("ideal powers need n >= 0")
    out = unit_ideal(A.ring)
    for _ in range(n):
        out = ideal_product(out, A)
    return out


def ideal_intersect(A: Ideal, B: Ideal) -> Ideal:
    _same_ring(A, B)
    R = A.ring
    if A.normal is None or B.normal is None:
        raise UnsupportedOp(f"intersection is not supported in {R}")
    a, b = A.normal, B.normal
    if a.is_zero() or b.is_zero():
        return Ideal.of(R, [R.zero()])
    if isinstance(R, (Integers, IntegersMod)):
        return Ideal.of(R, [math.lcm(a.v, b.v)])
    if isinstance(R, HahnVal):
        va, vb = valuation(a), valuation(b)
        return Ideal.of(R, [a if compare(va, vb) != LT else b])
    if isinstance(R, UniPoly):
        g = Ideal.of(R, [a, b]).normal
        return Ideal.of(R, [R.divmod(a * b, g)[0]])
    if isinstance(R, PolyQuotient):
        P = R.poly
        la, lb = R.lift(a), R.lift(b)
        g = Ideal.of(P, [la, lb]).normal
        return Ideal.of(R, [R.reduce(P.divmod(la * lb, g)[0])])
    if R.is_field:
        return Ideal.of(R, [R.one()])
    raise UnsupportedOp(f"intersection is not supported in {R}")  # pragma: no cover


def ideal_op(op: str, A: Ideal, B: Optional[Ideal] = None, n: Optional[int] = None) -> Ideal:
    """Sum, Product, Power(n) or Intersect, named as in the command-line interface."""
    key = op.lower()
    if key == "sum":
        return ideal_sum(A, B)
    if key == "product":
        return ideal_product(A, B)
    if key == "power":
        return ideal_power(A, n)
    if key == "intersect":
        return ideal_intersect(A, B)
    raise ValueError(f"unknown ideal operation {op!r}")


# --- membership ---------------------------------------------------------------

def _lifted_divisor(A: Ideal):
    """The canonical generator as an integer / polynomial in the covering ring."""
    R = A.ring
    if isinstance(R, IntegersMod):
        return A.normal.v or R.n
    if isinstance(R, PolyQuotient):
        return R.modulus_elem if A.normal.is_zero() else R.lift(A.normal)
    return A.normal


def _euclid(R, e: Elem, A: Ideal):
    """(quotient, remainder) of e by the canonical generator."""
    d = A.normal
    if isinstance(R, Integers):
        if d.is_zero():
            return R.zero(), e
        q, r = divmod(e.v, d.v)
        return R(q), R(r)
    if isinstance(R, IntegersMod):
        q, r = divmod(e.v, _lifted_divisor(A))
        return R(q), R(r)
    if isinstance(R, UniPoly):
        if d.is_zero():
            return R.zero(), e
        return R.divmod(e, d)
    if isinstance(R, PolyQuotient):
        q, r = R.poly.divmod(R.lift(e), _lifted_divisor(A))
        return Elem(R, q.v), Elem(R, r.v)
    # fields
    if d.is_zero():
        return R.zero(), e
    return e, R.zero()


def _exact_quotient(R, a: Elem, b: Elem) -> Optional[Elem]:
    if b.is_zero():
        return None
    if isinstance(R, Integers):
        return R(a.v // b.v) if a.v % b.v == 0 else None
    if isinstance(R, UniPoly) and R.base.is_field:
        q, r = R.divmod(a, b)
        return q if r.is_zero() else None
    if getattr(R, "is_field", False) and not isinstance(R, PolyQuotient):
        return a * b.inverse()
    return None


def _size(R, q: Elem):
    if isinstance(R, Integers):
        return abs(q.v)
    if isinstance(R, UniPoly):
        return len(q.v)
    return 0


def membership(e: Elem, A: Ideal, bound: int = DEFAULT_BOUND) -> MembershipResult:
    """Decide e in A with a certificate, or Unknown(bound) for Q[x, y] past the search bound."""
    if e.ring != A.ring:
        raise RingMismatch(f"{e} is in {e.ring}, the ideal in {A.ring}")
    R = A.ring
    if e.is_zero():
        return MembershipResult(MEMBER, e, A.gens, coeffs=tuple(R.zero() for _ in A.gens))
    if isinstance(R, HahnVal):
        return _hahn_membership(e, A)
    if A.normal is not None:
        return _principal_membership(e, A)
    if isinstance(R, BiPolyQ):
        return _bivariate_membership(e, A, bound)
    if isinstance(R, UniPoly):
        return _extended_membership(e, A, bound)
    raise UnsupportedRing(f"membership is not implemented for {R}")  # pragma: no cover


def _principal_membership(e: Elem, A: Ideal) -> MembershipResult:
    R = A.ring
    q, r = _euclid(R, e, A)
    if not r.is_zero():
        cert = DivisionCert(A.normal, A.cofactors, A.quotients, q, r)
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert)
    best = None
    for k, g in enumerate(A.gens):
        c = _exact_quotient(R, e, g)
        if c is not None and (best is None or _size(R, c) < best[0]):
            best = (_size(R, c), k, c)
    if best is not None:
        coeffs = tuple(best[2] if i == best[1] else R.zero() for i in range(len(A.gens)))
    else:
        coeffs = tuple(q * c for c in A.cofactors)
    return MembershipResult(MEMBER, e, A.gens, coeffs=coeffs)


def _hahn_membership(e: Elem, A: Ideal) -> MembershipResult:
    R: HahnVal = A.ring
    ve = valuation(e)
    if A.normal.is_zero():
        return MembershipResult(NONMEMBER, e, A.gens, certificate=ValuationCert(ve, None))
    vi = valuation(A.normal)
    if compare(ve, vi) == LT:
        return MembershipResult(NONMEMBER, e, A.gens, certificate=ValuationCert(ve, vi))
    return MembershipResult(
        MEMBER, e, A.gens, coeffs=(R.shift(e, -vi),), basis="normal", normal=A.normal
    )


def _extended_membership(e: Elem, A: Ideal, bound: int) -> MembershipResult:
    """Membership in I*R[T] for I generated by constants of R."""
    R: UniPoly = A.ring
    base_gens = _constant_generators(A)
    if base_gens is None:
        raise UnsupportedRing(f"membership in {R} is supported only for ideals extended from {R.base}")
    B = Ideal.of(R.base, base_gens)
    per_coeff = []
    for k, c in enumerate(R.coeffs(e)):
        res = membership(c, B, bound)
        if res.status != MEMBER:
            if res.status == NONMEMBER:
                return MembershipResult(NONMEMBER, e, A.gens, certificate=CoefficientCert(k, c, res))
            return MembershipResult(UNKNOWN, e, A.gens, bound=bound)
        per_coeff.append(_expand_coeffs(res, B))
    T = R.gen()
    coeffs = []
    for i in range(len(B.gens)):
        acc = R.zero()
        for k, cs in enumerate(per_coeff):
            acc = acc + R(cs[i]) * T ** k
        coeffs.append(acc)
    # A.gens and B.gens agree up to the embedding
    return MembershipResult(MEMBER, e, A.gens, coeffs=tuple(coeffs))


def _expand_coeffs(res: MembershipResult, B: Ideal) -> tuple:
    """Coefficients with respect to B.gens, expanding a normal-basis Hahn answer."""
    if res.basis == "gens":
        return res.coeffs
    raise UnsupportedRing("Hahn coefficients do not lift to polynomial cofactors")


def _constant_generators(A: Ideal):
    R = A.ring
    out = []
    for g in A.gens:
        if len(g.v) > 1:
            return None
        out.append(R.coeffs(g)[0] if g.v else R.base.zero())
    return out


def bivariate_homs(R: BiPolyQ) -> tuple:
    """The fixed certificate family: x->0, y->0, x->y into Q[v], then evaluations at {-2..2}^2."""
    return tuple(_hom(R, k) for k in range(3 + len(_points())))


@lru_cache(maxsize=None)
def _hom(R: BiPolyQ, k: int) -> RingHom:
    # built lazily: each construction runs the self-test
    x, y = R.vars
    if k < 3:
        v = y if k != 1 else x
        P = UniPoly(QQ, v)
        images = [
            ((x, P.zero()), (y, P.gen())),
            ((x, P.gen()), (y, P.zero())),
            ((x, P.gen()), (y, P.gen())),
        ][k]
        return RingHom(R, P, ("eval", images))
    a, b = _points()[k - 3]
    return RingHom(R, QQ, ("eval", ((x, QQ(a)), (y, QQ(b)))))


def _points():
    pts = [(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    return sorted(pts, key=lambda p: (abs(p[0]) + abs(p[1]), p))


def _bivariate_membership(e: Elem, A: Ideal, bound: int) -> MembershipResult:
    R: BiPolyQ = A.ring
    gens = [g for g in A.gens if not g.is_zero()]
    if not gens:
        return MembershipResult(NONMEMBER, e, A.gens, certificate=ZeroIdealCert())
    for k, g in enumerate(A.gens):
        if R._is_unit(g.v):
            coeffs = tuple(e * g.inverse() if i == k else R.zero() for i in range(len(A.gens)))
            return MembershipResult(MEMBER, e, A.gens, coeffs=coeffs)
    de = R.total_degree(e)
    dmax = max(R.total_degree(g) for g in gens)
    for D in range(max(0, de - dmax), bound + 1):
        cof = bivariate.find_cofactors(e, list(A.gens), D)
        if cof is not None:
            return MembershipResult(MEMBER, e, A.gens, coeffs=tuple(cof), bound=bound)
    cert = _hom_certificate(e, A, radical=False) or _dual_certificate(e, A, bound)
    if cert is not None:
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert, bound=bound)
    return MembershipResult(UNKNOWN, e, A.gens, bound=bound)


def _hom_certificate(e: Elem, A: Ideal, radical: bool) -> Optional[HomCert]:
    gens = [g for g in A.gens if not g.is_zero()]
    for k in range(3 + len(_points())):
        # an evaluation can only separate e when every generator vanishes there
        if k >= 3 and any(bivariate.evaluate(g, _points()[k - 3]) != 0 for g in gens):
            continue
        h = _hom(A.ring, k)
        img = h(e)
        img_gens = tuple(h(g) for g in A.gens)
        J = Ideal.of(h.target, img_gens)
        inner = radical_membership(img, J) if radical else membership(img, J)
        if inner.is_nonmember:
            return HomCert(h, img, img_gens, inner, radical=radical)
    return None


def _dual_certificate(e: Elem, A: Ideal, bound: int) -> Optional[DualCert]:
    gens = [g for g in A.gens if not g.is_zero()]
    for p in _points():
        if any(bivariate.evaluate(g, p) != 0 for g in gens):
            continue
        for order in range(1, bound + 2):
            lam = bivariate.find_dual_functional(e, gens, p, order)
            if lam is not None:
                return DualCert(tuple(Fraction(c) for c in p), order, tuple(sorted(lam.items())))
    return None


# --- equality -----------------------------------------------------------------

def ideal_equal(A: Ideal, B: Ideal, bound: int = DEFAULT_BOUND) -> PropertyVerdict:
    """Mutual membership of generators; Fails carries the offending generator and its certificate."""
    _same_ring(A, B)
    checks, unknown = [], []
    for side, (X, Y) in (("left", (A, B)), ("right", (B, A))):
        for g in X.gens:
            res = membership(g, Y, bound)
            if res.is_nonmember:
                return PropertyVerdict.fails(
                    {"kind": "ideal_inclusion", "side": side, "element": g, "membership": res}
                )
            (checks if res.is_member else unknown).append(res)
    if unknown:
        return PropertyVerdict.unknown(f"membership undecided within degree bound {bound}", *checks)
    return PropertyVerdict.holds(*checks)


def contains(A: Ideal, B: Ideal, bound: int = DEFAULT_BOUND) -> PropertyVerdict:
    """B subset of A, with the same certificate conventions as :func:`ideal_equal`."""
    _same_ring(A, B)
    checks, unknown = [], []
    for g in B.gens:
        res = membership(g, A, bound)
        if res.is_nonmember:
            return PropertyVerdict.fails({"kind": "ideal_inclusion", "side": "right", "element": g, "membership": res})
        (checks if res.is_member else unknown).append(res)
    if unknown:
        return PropertyVerdict.unknown(f"membership undecided within degree bound {bound}", *checks)
    return PropertyVerdict.holds(*checks)


# --- radicals -----------------------------------------------------------------

def radical_membership(e: Elem, A: Ideal, powbound: int = DEFAULT_POWBOUND, bound: int = DEFAULT_BOUND) -> MembershipResult:
    """Decide e in sqrt(A): exact for principal rings, bounded powers for Q[x, y]."""
    if e.ring != A.ring:
        raise RingMismatch(f"{e} is in {e.ring}, the ideal in {A.ring}")
    R = A.ring
    if e.is_zero():
        return _power_member(e, A, 1)
    if isinstance(R, HahnVal):
        return _hahn_radical(e, A)
    if A.normal is not None:
        return _principal_radical(e, A)
    if isinstance(R, BiPolyQ):
        for k in range(1, powbound + 1):
            res = membership(e ** k, A, bound)
            if res.is_member:
                return _with_power(res, e, k)
        cert = _hom_certificate(e, A, radical=True)
        if cert is not None:
            return MembershipResult(NONMEMBER, e, A.gens, certificate=cert, bound=powbound)
        return MembershipResult(UNKNOWN, e, A.gens, bound=powbound)
    raise UnsupportedRing(f"radical membership is not implemented for {R}")


def _with_power(res: MembershipResult, e: Elem, k: int) -> MembershipResult:
    return MembershipResult(
        res.status, e, res.gens, coeffs=res.coeffs, basis=res.basis, normal=res.normal,
        certificate=res.certificate, power=k, bound=res.bound,
    )


def _power_member(e: Elem, A: Ideal, k: int) -> MembershipResult:
    res = membership(e ** k, A)
    assert res.is_member
    return _with_power(res, e, k)


def _principal_radical(e: Elem, A: Ideal) -> MembershipResult:
    R = A.ring
    if isinstance(R, IntegersMod):
        d, ev = _lifted_divisor(A), e.v
        s = d
        while True:
            g = math.gcd(s, ev)
            if g == 1:
                break
            s //= g
        if s == 1:
            return _first_power(e, A)
        g, u, w = _int_xgcd(s, ev)
        cert = CoprimeCert(A.normal, A.cofactors, A.quotients, ZZ(s), ZZ(d // s), (ZZ(u), ZZ(w)))
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert)
    if isinstance(R, PolyQuotient):
        P = R.poly
        d, ev = _lifted_divisor(A), R.lift(e)
        s = _poly_residual(P, d, ev)
        if P.degree(s) == 0:
            return _first_power(e, A)
        u, w, _ = poly_xgcd(P, s, ev)
        cert = CoprimeCert(A.normal, A.cofactors, A.quotients, s, P.divmod(d, s)[0], (u, w))
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert)
    d = A.normal
    if d.is_zero():
        # domains: the nilradical is zero
        return MembershipResult(NONMEMBER, e, A.gens, certificate=ZeroIdealCert(radical=True))
    if isinstance(R, Integers):
        s = d.v
        while True:
            g = math.gcd(s, e.v)
            if g == 1:
                break
            s //= g
        if s == 1:
            return _first_power(e, A)
        g, u, w = _int_xgcd(s, e.v)
        cert = CoprimeCert(d, A.cofactors, A.quotients, R(s), R(d.v // s), (R(u), R(w)))
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert)
    if isinstance(R, UniPoly):
        s = _poly_residual(R, d, e)
        if R.degree(s) == 0:
            return _first_power(e, A)
        u, w, _ = poly_xgcd(R, s, e)
        cert = CoprimeCert(d, A.cofactors, A.quotients, s, R.divmod(d, s)[0], (u, w))
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert)
    # fields with the unit ideal
    return _first_power(e, A)


def _poly_residual(P: UniPoly, d: Elem, e: Elem) -> Elem:
    s = d
    while True:
        _, _, g = poly_xgcd(P, s, e)
        if P.degree(g) <= 0:
            return P.monic(s)
        s = P.divmod(s, g)[0]


def _first_power(e: Elem, A: Ideal) -> MembershipResult:
    k = 1
    while True:
        res = membership(e ** k, A)
        if res.is_member:
            return _with_power(res, e, k)
        k += 1


def _hahn_radical(e: Elem, A: Ideal) -> MembershipResult:
    R: HahnVal = A.ring
    ve = valuation(e)
    if A.normal.is_zero():
        return MembershipResult(NONMEMBER, e, A.gens, certificate=ZeroIdealCert(radical=True))
    vi = valuation(A.normal)
    if vi.is_zero():
        return _power_member(e, A, 1)
    cert = ValuationCert(ve, vi, radical=True)
    if ve.is_zero():
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert)
    if R.group.kind == "LexZ" and leading_index(ve) > leading_index(vi):
        return MembershipResult(NONMEMBER, e, A.gens, certificate=cert)
    return _power_member(e, A, _hahn_power(ve, vi))


def _hahn_power(ve, vi) -> int:
    """Least k with k*ve >= vi, for 0 < ve in the same or a larger archimedean class than vi."""
    if compare(ve, vi) != LT:
        return 1
    G = ve.group
    if G.kind == "Quad":
        k = max(1, (vi.as_quad() / ve.as_quad()).floor())
    else:
        i = leading_index(ve)
        k = max(1, -(-vi.coords[i] // ve.coords[i])) if leading_index(vi) == i else 1
    while compare(ve.scale(k), vi) == LT:
        k += 1
    return k


# --- primality ----------------------------------------------------------------

def _pair_witness(A: Ideal, a: Elem, b: Elem, radical_b: bool) -> dict:
    ab = membership(a * b, A)
    ma = membership(a, A)
    mb = radical_membership(b, A) if radical_b else membership(b, A)
    return {
        "kind": "primary_pair" if radical_b else "prime_pair",
        "a": a,
        "b": b,
        "product": ab,
        "a_membership": ma,
        "b_membership": mb,
    }


def _unit_witness(A: Ideal) -> dict:
    return {"kind": "unit_ideal", "membership": membership(A.ring.one(), A)}


def is_prime(A: Ideal) -> PropertyVerdict:
    return _classify(A, primary=False)


def is_primary(A: Ideal) -> PropertyVerdict:
    return _classify(A, primary=True)


def _classify(A: Ideal, primary: bool) -> PropertyVerdict:
    R = A.ring
    what = "primary" if primary else "prime"
    if isinstance(R, HahnVal):
        return _hahn_classify(A, primary)
    if isinstance(R, BiPolyQ):
        return _bivariate_classify(A, primary)
    if isinstance(R, UniPoly) and not R.base.is_field:
        base_gens = _constant_generators(A)
        if base_gens is None or primary:
            raise UnsupportedRing(f"{what} test in {R} is limited to extended prime ideals")
        inner = _classify(Ideal.of(R.base, base_gens), primary)
        if inner.ok:
            return PropertyVerdict.holds(f"{R}/I{R} = ({R.base}/I)[{R.var}] is a domain", inner)
        return inner
    if A.normal is None:
        raise UnsupportedRing(f"{what} test is not supported in {R}")
    if isinstance(R, Integers):
        d = A.normal.v
        if d == 0:
            return PropertyVerdict.holds("(0) is prime in the domain Int")
        if d == 1:
            return PropertyVerdict.fails(_unit_witness(A))
        return _factor_verdict(A, factor_int(d), lambda p: R(p), primary)
    if isinstance(R, IntegersMod):
        d = _lifted_divisor(A)
        if d == 1:
            return PropertyVerdict.fails(_unit_witness(A))
        return _factor_verdict(A, factor_int(d), lambda p: R(p), primary)
    if isinstance(R, UniPoly) or isinstance(R, PolyQuotient):
        P = R if isinstance(R, UniPoly) else R.poly
        d = A.normal if isinstance(R, UniPoly) else _lifted_divisor(A)
        if d.is_zero():
            return PropertyVerdict.holds(f"(0) is prime in the domain {R}")
        if P.degree(d) == 0:
            return PropertyVerdict.fails(_unit_witness(A))
        _, facs = factor_poly(P, d)
        fac = {f: k for f, k in facs}
        embed = (lambda p: p) if isinstance(R, UniPoly) else (lambda p: R.reduce(p))
        return _factor_verdict(A, fac, embed, primary)
    if R.is_field:
        if A.normal.is_zero():
            return PropertyVerdict.holds(f"(0) is prime in the field {R}")
        return PropertyVerdict.fails(_unit_witness(A))
    raise UnsupportedRing(f"{what} test is not supported in {R}")  # pragma: no cover


def _factor_verdict(A: Ideal, fac: dict, embed, primary: bool) -> PropertyVerdict:
    primes = list(fac)
    p = primes[0]
    k = fac[p]
    if primary:
        if len(primes) == 1:
            return PropertyVerdict.holds(f"generator is a prime power {p}^{k}")
        a = embed(p) ** k
        rest = embed(_product([q ** fac[q] for q in primes[1:]]))
        return PropertyVerdict.fails(_pair_witness(A, a, rest, radical_b=True))
    if len(primes) == 1 and k == 1:
        return PropertyVerdict.holds(f"generator {p} is prime")
    a = embed(p)
    b = embed(_product([q ** (fac[q] - (1 if q == p else 0)) for q in primes]))
    return PropertyVerdict.fails(_pair_witness(A, a, b, radical_b=False))


def _product(xs):
    out = xs[0]
    for x in xs[1:]:
        out = out * x
    return out


def _hahn_classify(A: Ideal, primary: bool) -> PropertyVerdict:
    R: HahnVal = A.ring
    G = R.group
    if A.normal.is_zero():
        return PropertyVerdict.holds("(0) is prime in the valuation domain")
    g = valuation(A.normal)
    if g.is_zero():
        return PropertyVerdict.fails(_unit_witness(A))
    if primary:
        # (t^g) is primary iff g lies in the smallest nonzero convex subgroup
        if G.kind != "LexZ" or leading_index(g) == G.rank - 1:
            return PropertyVerdict.holds(f"{g} lies in the minimal convex subgroup; radical is the maximal ideal")
        h = least_positive(G)
        a = R.monomial(g - h)
        b = R.monomial(h)
        return PropertyVerdict.fails(_pair_witness(A, a, b, radical_b=True))
    lp = least_positive(G)
    if lp is not None and compare(g, lp) == 0:
        return PropertyVerdict.holds(f"{g} is the least positive value: (t^{g}) is the maximal ideal")
    h = positive_below(g)
    return PropertyVerdict.fails(_pair_witness(A, R.monomial(h), R.monomial(g - h), radical_b=False))


def _bivariate_classify(A: Ideal, primary: bool) -> PropertyVerdict:
    R: BiPolyQ = A.ring
    gens = [g for g in A.gens if not g.is_zero()]
    if not gens:
        return PropertyVerdict.holds("(0) is prime in the domain Q[x,y]")
    if all(len(g.v) == 1 for g in gens):
        return _monomial_classify(A, [g.v[0][0] for g in gens], primary)
    if len(gens) == 1:
        return _principal_bivariate(A, gens[0], primary)
    raise UnsupportedRing("bivariate primality is limited to monomial and principal ideals")


def _monomial_classify(A: Ideal, monos: list, primary: bool) -> PropertyVerdict:
    R: BiPolyQ = A.ring
    minimal = [m for m in monos if not any(n != m and n[0] <= m[0] and n[1] <= m[1] for n in monos)]
    minimal = sorted(set(minimal))
    if (0, 0) in minimal:
        return PropertyVerdict.fails(_unit_witness(A))
    if primary:
        for var in (0, 1):
            used = any(m[var] > 0 for m in minimal)
            pure = any(m[var] > 0 and m[1 - var] == 0 for m in minimal)
            if used and not pure:
                m = next(m for m in minimal if m[var] > 0 and m[1 - var] > 0)
                f = R.monomial(*(m[0] if var == 0 else 0, m[1] if var == 1 else 0))
                g = R.monomial(*(m[0] if var == 1 else 0, m[1] if var == 0 else 0))
                return PropertyVerdict.fails(_pair_witness(A, g, f, radical_b=True))
        return PropertyVerdict.holds("every variable in a minimal generator has a pure power")
    for m in minimal:
        if m[0] + m[1] >= 2:
            a = (1, 0) if m[0] else (0, 1)
            b = (m[0] - a[0], m[1] - a[1])
            return PropertyVerdict.fails(_pair_witness(A, R.monomial(*a), R.monomial(*b), radical_b=False))
    return PropertyVerdict.holds("generated by variables")


def _principal_bivariate(A: Ideal, f: Elem, primary: bool) -> PropertyVerdict:
    from sympy import Poly, Rational, symbols

    R: BiPolyQ = A.ring
    X, Y = symbols("x y")
    expr = sum(Rational(c.numerator, c.denominator) * X ** i * Y ** j for (i, j), c in f.v)
    _, facs = Poly(expr, X, Y, domain="QQ").factor_list()

    def back(p):
        d = p.as_dict()
        return Elem(R, R._pack({k: Fraction(int(v.p), int(v.q)) for k, v in d.items()}))

    if not facs:
        return PropertyVerdict.fails(_unit_witness(A))
    if primary:
        if len(facs) == 1:
            return PropertyVerdict.holds(f"generator is a power of an irreducible ({facs[0][1]})")
        a = back(facs[0][0]) ** facs[0][1]
        b = _product([back(p) ** k for p, k in facs[1:]])
        return PropertyVerdict.fails(_pair_witness(A, a, b, radical_b=True))
    if len(facs) == 1 and facs[0][1] == 1:
        return PropertyVerdict.holds("generator is irreducible in the UFD Q[x,y]")
    p0, k0 = facs[0]
    a = back(p0)
    b = _product([back(p) ** (k - (1 if i == 0 else 0)) for i, (p, k) in enumerate(facs)])
    return PropertyVerdict.fails(_pair_witness(A, a, b, radical_b=False))


# --- primary decomposition -------------------------------------------------------

def primary_decomposition(A: Ideal) -> list:
    """Primary components whose intersection is A (prime-power factorization of the generator)."""
    R = A.ring
    if isinstance(R, Integers):
        d = A.normal.v
        if d == 0:
            return [A]
        return [Ideal.of(R, [p ** k]) for p, k in factor_int(d).items()]
    if isinstance(R, IntegersMod):
        d = _lifted_divisor(A)
        return [Ideal.of(R, [p ** k]) for p, k in factor_int(d).items()]
    if isinstance(R, UniPoly) and R.base.is_field:
        d = A.normal
        if d.is_zero():
            return [A]
        return [Ideal.of(R, [p ** k]) for p, k in factor_poly(R, d)[1]]
    if isinstance(R, PolyQuotient):
        d = _lifted_divisor(A)
        return [Ideal.of(R, [R.reduce(p ** k)]) for p, k in factor_poly(R.poly, d)[1]]
    raise UnsupportedRing(f"primary decomposition is not supported in {R}")
