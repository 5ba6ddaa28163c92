"""Factorization backed by sympy: integers and univariate polynomials over Q or GF(p)."""

from __future__ import annotations

from fractions import Fraction

from sympy import Poly, Rational, factor_list, factorint, symbols

from .errors import UnsupportedRing
from .rings import Elem, PrimeField, Rationals, UniPoly

_X = symbols("_x")


def factor_int(n: int) -> dict:
    """Prime factorization of |n| as {p: k}; empty for units."""
    if n == 0:
        raise ValueError("0 has no factorization")
    return dict(sorted(factorint(abs(n)).items()))


def _to_sympy(R: UniPoly, f: Elem) -> Poly:
    base = R.base
    coeffs = [c for c in reversed(f.v)]
    if isinstance(base, PrimeField):
        return Poly([int(c) for c in coeffs], _X, modulus=base.p)
    if isinstance(base, Rationals):
        return Poly([Rational(c.numerator, c.denominator) for c in coeffs], _X, domain="QQ")
    raise UnsupportedRing(f"polynomial factorization over {base} is not supported")


def _from_sympy(R: UniPoly, p: Poly) -> Elem:
    base = R.base
    coeffs = list(reversed(p.all_coeffs()))
    if isinstance(base, PrimeField):
        return R.from_coeffs([int(c) % base.p for c in coeffs])
    return R.from_coeffs([Fraction(int(c.p), int(c.q)) for c in coeffs])


def factor_poly(R: UniPoly, f: Elem):
    """(leading coefficient, [(monic irreducible, multiplicity), ...]) over a field base."""
    if f.is_zero():
        raise ValueError("0 has no factorization")
    lead, facs = _to_sympy(R, f).factor_list()
    out = []
    for p, k in facs:
        out.append((R.monic(_from_sympy(R, p)), k))
    out.sort(key=lambda t: irreducible_key(R, t[0]))
    return R.base(_coerce_lead(R, lead)), out


def _coerce_lead(R: UniPoly, lead):
    if isinstance(R.base, PrimeField):
        return int(lead) % R.base.p
    lead = Rational(lead)
    return Fraction(int(lead.p), int(lead.q))


def irreducible_key(R: UniPoly, p: Elem):
    """Canonical order on monic irreducibles: degree, then coefficient sizes, then values."""
    if isinstance(R.base, PrimeField):
        vals = tuple(int(c) for c in p.v)
        return (len(p.v), vals, vals)
    return (len(p.v), tuple(abs(c) for c in p.v), tuple(p.v))
