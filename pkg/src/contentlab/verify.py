"""Independent replay of membership certificates and failure witnesses.

Nothing here calls the solvers: every check is recomputed from the stored
data with plain ring arithmetic.  Certificates are recognized by class name
so this module does not import the code that produced them.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .rings import (
    ZZ,
    BiPolyQ,
    Elem,
    HahnVal,
    Integers,
    IntegersMod,
    PolyQuotient,
    UniPoly,
    apply_hom,
)
from .valgroup import GroupElement


class VerificationError(Exception):
    pass


def _require(cond, why: str):
    if not cond:
        raise VerificationError(why)


def _kind(obj) -> str:
    return type(obj).__name__


# --- helpers ------------------------------------------------------------------

def _nonzero(gens):
    return [g for g in gens if not g.is_zero()]


def _gen_set(gens) -> frozenset:
    nz = _nonzero(gens)
    return frozenset(nz) if nz else frozenset()


def _generates(normal: Elem, gens, cofactors, quotients):
    """normal and gens generate the same ideal: cofactor and quotient identities."""
    R = normal.ring
    _require(len(quotients) == len(gens), "quotient count")
    for g, q in zip(gens, quotients):
        _require(q * normal == g, f"{g} is not {q} * {normal}")
    acc = R.zero()
    for g, c in zip(gens, cofactors):
        acc = acc + c * g
    _require(acc == normal, f"cofactors do not reproduce {normal}")


def _hahn_val(e: Elem):
    """Minimum of the support, computed by pairwise comparison."""
    best = None
    for g, _ in e.v:
        ge = GroupElement(e.ring.group, g)
        if best is None or (ge - best).sign() < 0:
            best = ge
    return best


def _lift_int(e: Elem) -> int:
    return e.v


def _degree(P: UniPoly, f: Elem) -> int:
    return len(f.v) - 1


# --- membership ---------------------------------------------------------------

def verify_membership(res) -> bool:
    """Replay a Member or NonMember result; Unknown results never verify."""
    _require(_kind(res) == "MembershipResult", f"not a membership result: {res!r}")
    target = res.element ** res.power
    if res.status == "Member":
        if res.basis == "normal":
            _verify_hahn_normal(res.normal, res.gens)
            _require(res.coeffs[0] * res.normal == target, "normal-basis identity fails")
            return True
        _require(len(res.coeffs) == len(res.gens), "coefficient count")
        acc = target.ring.zero()
        for c, g in zip(res.coeffs, res.gens):
            acc = acc + c * g
        _require(acc == target, f"sum of cofactors is {acc}, not {target}")
        return True
    _require(res.status == "NonMember", f"status {res.status} carries no certificate")
    _require(not target.is_zero() or res.power == 1, "zero is in every ideal")
    cert = res.certificate
    kind = _kind(cert)
    handler = {
        "DivisionCert": _verify_division,
        "ValuationCert": _verify_valuation,
        "ZeroIdealCert": _verify_zero_ideal,
        "CoprimeCert": _verify_coprime,
        "CoefficientCert": _verify_coefficient,
        "HomCert": _verify_hom,
        "DualCert": _verify_dual,
    }.get(kind)
    _require(handler is not None, f"unknown certificate {kind}")
    handler(res, cert)
    return True


def _verify_hahn_normal(normal: Elem, gens):
    R = normal.ring
    _require(isinstance(R, HahnVal), "normal basis is used for Hahn rings only")
    _require(len(normal.v) == 1 and normal.v[0][1] == R.residue.one().v, "normal generator is t^v")
    vs = [_hahn_val(g) for g in _nonzero(gens)]
    v = _hahn_val(normal)
    _require(vs and all((w - v).sign() >= 0 for w in vs) and any((w - v).is_zero() for w in vs),
             "t^v is not the least valuation among the generators")


def _lifted(R, e: Elem):
    if isinstance(R, IntegersMod):
        return ZZ(e.v)
    if isinstance(R, PolyQuotient):
        return Elem(R.poly, e.v)
    return e


def _lifted_generator(R, normal: Elem):
    if isinstance(R, IntegersMod):
        return ZZ(normal.v or R.n)
    if isinstance(R, PolyQuotient):
        return Elem(R.poly, normal.v) if normal.v else R.modulus_elem
    return normal


def _cover_size(x: Elem):
    """Euclidean size in Int or k[x]: absolute value or degree (-1 for zero)."""
    if isinstance(x.ring, Integers):
        return abs(x.v)
    return len(x.v) - 1


def _verify_division(res, cert):
    R = res.element.ring
    _generates(cert.normal, res.gens, cert.cofactors, cert.quotients)
    d = _lifted_generator(R, cert.normal)
    e = _lifted(R, res.element)
    q, r = _lifted(R, cert.quotient), _lifted(R, cert.remainder)
    _require(q * d + r == e, "division identity fails")
    _require(not r.is_zero(), "remainder is zero")
    if isinstance(R, IntegersMod):
        _require(R.n % d.v == 0, "lifted generator must divide the modulus")
    if isinstance(R, PolyQuotient):
        _require(R.poly.divmod(R.modulus_elem, d)[1].is_zero(), "generator must divide the modulus")
    if d.is_zero():
        return
    if isinstance(d.ring, Integers):
        _require(0 < r.v < abs(d.v), "remainder out of range")
    else:
        _require(_cover_size(r) < _cover_size(d), "remainder degree too large")


def _verify_valuation(res, cert):
    R = res.element.ring
    _require(isinstance(R, HahnVal), "valuation certificate outside a Hahn ring")
    ve = _hahn_val(res.element)
    gens = _nonzero(res.gens)
    if not gens:
        _require(ve is not None, "element is zero")
        return
    vi = None
    for g in gens:
        w = _hahn_val(g)
        vi = w if vi is None or (w - vi).sign() < 0 else vi
    if not cert.radical:
        _require((ve - vi).sign() < 0, "element valuation is not below the ideal")
        return
    _require(vi.sign() > 0, "the unit ideal contains everything")
    if ve.is_zero():
        return
    # k*ve < vi for all k: ve lies in a strictly smaller convex subgroup
    _require(R.group.kind == "LexZ", "archimedean groups have no infinitesimals")
    lead = lambda g: next(i for i, c in enumerate(g.coords) if c)
    _require(lead(ve) > lead(vi), "element valuation is not infinitesimal against the ideal")


def _verify_zero_ideal(res, cert):
    _require(not _nonzero(res.gens), "ideal has a nonzero generator")
    _require(not res.element.is_zero(), "element is zero")
    if cert.radical:
        _require(res.element.ring.is_domain, "nilpotents exist outside domains")


def _verify_coprime(res, cert):
    R = res.element.ring
    _generates(cert.normal, res.gens, cert.cofactors, cert.quotients)
    d = _lifted_generator(R, cert.normal)
    s, c = cert.residual, cert.residual_cofactor
    _require(s * c == d, "residual does not divide the generator")
    if isinstance(s.ring, Integers):
        _require(abs(s.v) > 1, "residual is a unit")
    else:
        _require(_cover_size(s) >= 1, "residual is a unit")
    u, w = cert.bezout
    e = _lifted(R, res.element)
    _require(u * s + w * e == s.ring.one(), "Bezout identity fails")


def _verify_coefficient(res, cert):
    R = res.element.ring
    _require(isinstance(R, UniPoly), "coefficient certificate outside a polynomial ring")
    coeffs = R.coeffs(res.element)
    _require(coeffs[cert.position] == cert.coefficient, "wrong coefficient")
    consts = []
    for g in res.gens:
        cs = R.coeffs(g) if g.v else [R.base.zero()]
        _require(len(cs) == 1, "generators must be constants")
        consts.append(cs[0])
    inner = cert.inner
    _require(inner.element == cert.coefficient and inner.power == 1, "inner claim mismatch")
    _require(_gen_set(inner.gens) == _gen_set(consts), "inner ideal mismatch")
    _require(inner.status == "NonMember", "inner result is not a NonMember")
    verify_membership(inner)


def _verify_hom(res, cert):
    h = cert.hom
    _require(h.source == res.element.ring, "hom source mismatch")
    _require(apply_hom(h, res.element) == cert.image, "image mismatch")
    _require(tuple(apply_hom(h, g) for g in res.gens) == tuple(cert.image_gens), "generator images mismatch")
    inner = cert.inner
    _require(inner.element == cert.image and inner.status == "NonMember", "inner claim mismatch")
    _require(_gen_set(inner.gens) == _gen_set(cert.image_gens), "inner ideal mismatch")
    verify_membership(inner)
    if cert.radical:
        _require(_radical_claim(inner), "inner certificate is not a radical certificate")


def _radical_claim(res) -> bool:
    cert = res.certificate
    kind = _kind(cert)
    if kind in ("CoprimeCert",):
        return True
    if kind in ("ValuationCert", "ZeroIdealCert"):
        return cert.radical
    if kind == "HomCert":
        return cert.radical
    return False


def _shift(f: Elem, a: Fraction, b: Fraction) -> Elem:
    R: BiPolyQ = f.ring
    x, y = R.gens()
    xs, ys = x + R(a), y + R(b)
    out = R.zero()
    for (i, j), c in f.v:
        out = out + R(c) * xs ** i * ys ** j
    return out


def _apply_functional(lam: dict, f: Elem, order: int) -> Fraction:
    return sum((c * lam.get(m, Fraction(0)) for m, c in f.v if m[0] + m[1] < order), Fraction(0))


def _verify_dual(res, cert):
    R = res.element.ring
    _require(isinstance(R, BiPolyQ), "dual certificates live in Q[x,y]")
    a, b = cert.point
    lam = dict(cert.functional)
    N = cert.order
    _require(_apply_functional(lam, _shift(res.element ** res.power, a, b), N) != 0,
             "functional vanishes on the element")
    for g in _nonzero(res.gens):
        gs = _shift(g, a, b)
        for d in range(N):
            for i in range(d + 1):
                mono = R.monomial(i, d - i)
                _require(_apply_functional(lam, mono * gs, N) == 0, "functional does not vanish on the ideal")


# --- failure witnesses ---------------------------------------------------------------

def _content_gens(f):
    """Coefficients of a polynomial, or quotient coordinates over the base field."""
    if isinstance(f, Elem) and isinstance(f.ring, PolyQuotient):
        return list(f.ring.coords(f))
    if isinstance(f, Elem):
        return list(f.ring.coeffs(f))
    return list(f.coeffs)


def _verify_inclusion(w) -> bool:
    m = w["membership"]
    _require(m.element == w["element"] and m.status == "NonMember", "inclusion witness mismatch")
    return verify_membership(m)


def _verify_gaussian(w):
    f, g = w["f"], w["g"]
    cf, cg, cfg = _content_gens(f), _content_gens(g), _content_gens(f * g)
    prod = [a * b for a in cf for b in cg]
    inner = w["inclusion"]
    m = inner["membership"]
    sides = {"left": (cfg, prod), "right": (prod, cfg)}[inner["side"]]
    _require(inner["element"] in _nonzero(sides[0]), "witness is not a generator")
    _require(_gen_set(m.gens) == _gen_set(sides[1]), "wrong target ideal")
    return _verify_inclusion(inner)


def _verify_weak(w):
    f, g = w["f"], w["g"]
    cf, cg, cfg = _content_gens(f), _content_gens(g), _content_gens(f * g)
    _require(w["a"] in cf and w["b"] in cg, "witness generators are not contents")
    m = w["membership"]
    _require(m.element == w["a"] * w["b"] and m.status == "NonMember", "claim mismatch")
    _require(_gen_set(m.gens) == _gen_set(cfg), "wrong target ideal")
    verify_membership(m)
    _require(_radical_claim(m), "certificate does not exclude powers")
    return True


def _verify_pair(w, primary: bool):
    a, b = w["a"], w["b"]
    p, ma, mb = w["product"], w["a_membership"], w["b_membership"]
    gens = _gen_set(p.gens)
    _require(_gen_set(ma.gens) == gens and _gen_set(mb.gens) == gens, "memberships use different ideals")
    _require(p.element == a * b and p.status == "Member" and p.power == 1, "product claim")
    _require(ma.element == a and ma.status == "NonMember", "a claim")
    _require(mb.element == b and mb.status == "NonMember", "b claim")
    for m in (p, ma, mb):
        verify_membership(m)
    if primary:
        _require(_radical_claim(mb), "b is not excluded from the radical")
    return True


def _verify_unit(w):
    m = w["membership"]
    _require(m.element.is_one() and m.status == "Member", "unit claim")
    return verify_membership(m)


def _verify_extension(w, primary: bool):
    prod = w["product"]
    coeffs = _content_gens(w["f"] * w["g"])
    _require(len(prod) == len(coeffs), "product scan incomplete")
    for c, m in zip(coeffs, prod):
        _require(m.element == c and m.status == "Member", "product coefficient claim")
        verify_membership(m)
    gm = w["g_membership"]
    _require(gm.element in _content_gens(w["g"]) and gm.status == "NonMember", "g claim")
    verify_membership(gm)
    if not primary:
        fm = w["f_membership"]
        _require(fm.element in _content_gens(w["f"]) and fm.status == "NonMember", "f claim")
        verify_membership(fm)
    return True


def verify_witness(w: dict) -> bool:
    kind = w.get("kind")
    if kind == "ideal_inclusion":
        return _verify_inclusion(w)
    if kind == "gaussian":
        return _verify_gaussian(w)
    if kind == "weak_content":
        return _verify_weak(w)
    if kind in ("prime_pair", "primary_pair"):
        return _verify_pair(w, kind == "primary_pair")
    if kind == "unit_ideal":
        return _verify_unit(w)
    if kind in ("prime_extension", "primary_extension"):
        return _verify_extension(w, kind == "primary_extension")
    raise VerificationError(f"no replay for witness kind {kind!r}")


def verify_verdict(v) -> bool:
    _require(v.status == "Fails", "only Fails verdicts carry witnesses")
    return verify_witness(v.witness)


def verify_artifact(a) -> bool:
    if _kind(a) == "MembershipResult":
        return verify_membership(a)
    return verify_verdict(a)


# --- collection -------------------------------------------------------------------------

def collect_artifacts(obj) -> list:
    """Every decided MembershipResult and Fails PropertyVerdict reachable from obj."""
    out, seen = [], set()

    def walk(x):
        if isinstance(x, (str, int, Fraction, Elem, GroupElement)) or x is None:
            return
        if id(x) in seen:
            return
        seen.add(id(x))
        kind = _kind(x)
        if kind == "MembershipResult":
            if x.status in ("Member", "NonMember"):
                out.append(x)
            walk(x.certificate)
            return
        if kind == "PropertyVerdict" and x.status == "Fails":
            out.append(x)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, (list, tuple)):
            for v in x:
                walk(v)
        elif dataclasses.is_dataclass(x) and not isinstance(x, type):
            for f in dataclasses.fields(x):
                walk(getattr(x, f.name))

    walk(obj)
    return out


def replay_all(obj) -> tuple:
    """(verified, total) over everything :func:`collect_artifacts` finds; failures raise."""
    arts = collect_artifacts(obj)
    for a in arts:
        verify_artifact(a)
    return len(arts), len(arts)
