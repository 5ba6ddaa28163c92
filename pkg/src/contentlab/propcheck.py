"""Executable checks of the content-algebra properties at pair and sample level.

Fails verdicts carry certificates that replay through :mod:`contentlab.verify`;
Holds verdicts over samples are evidence and record their seed and bounds.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .content import (
    PolyOverRing,
    SeriesDescriptor,
    TowerId,
    coefficient_ring,
    coefficients,
    compose_content,
    int_tower,
    orc_poly,
    poly_content,
    smallest_fg_cover,
)
from .errors import NotPrimaryInput, NotPrimeInput, PrecondViolated, UnsupportedGroup, UnsupportedRing
from .ideals import (
    DEFAULT_BOUND,
    DEFAULT_POWBOUND,
    Ideal,
    contains,
    ideal_equal,
    ideal_power,
    ideal_product,
    is_primary,
    is_prime,
    membership,
    radical_membership,
)
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
    UniPoly,
)
from .valgroup import (
    GT,
    LT,
    Affine,
    ConvergentQuad,
    Finite,
    GroupId,
    QuadNumber,
    compare,
    glb,
    is_lower_bound,
    least_positive,
    materialize,
)
from .verdicts import FAILS, HOLDS, UNKNOWN, PropertyVerdict

DEFAULT_SAMPLES = 500
DEFAULT_DEGREE = 6
DEFAULT_COEFF = 9


def case_rng(seed, i: int) -> random.Random:
    """Per-case generator: results do not depend on the order cases run in."""
    return random.Random(f"{seed}:{i}")


def _product(f, g):
    return f * g


# --- Dedekind-Mertens -------------------------------------------------------------

@dataclass(frozen=True)
class DMReport:
    exponent: Optional[int]
    max_tried: int
    per_n: tuple

    @property
    def status(self) -> str:
        if self.exponent is not None:
            return HOLDS
        return UNKNOWN if any(v.status == UNKNOWN for v in self.per_n) else FAILS


def dm_exponent(f, g, max_n: int = 4, bound: int = DEFAULT_BOUND) -> DMReport:
    """Least n <= max_n with orc(f)^n orc(g) = orc(f)^(n-1) orc(fg)."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    cf, cg, cfg = orc_poly(f), orc_poly(g), orc_poly(_product(f, g))
    trace = []
    for n in range(1, max_n + 1):
        lhs = ideal_product(ideal_power(cf, n), cg)
        rhs = ideal_product(ideal_power(cf, n - 1), cfg)
        v = ideal_equal(lhs, rhs, bound)
        trace.append(v)
        if v.status == HOLDS:
            return DMReport(n, n, tuple(trace))
        if v.status == UNKNOWN:
            # a later success would not be certified as least
            return DMReport(None, n, tuple(trace))
    return DMReport(None, max_n, tuple(trace))


# --- Gaussian and weak content -------------------------------------------------------

def check_gaussian(f, g, bound: int = DEFAULT_BOUND) -> PropertyVerdict:
    """orc(fg) = orc(f) orc(g)."""
    cf, cg, cfg = orc_poly(f), orc_poly(g), orc_poly(_product(f, g))
    v = ideal_equal(cfg, ideal_product(cf, cg), bound)
    if v.failed:
        return PropertyVerdict.fails({"kind": "gaussian", "f": f, "g": g, "inclusion": v.witness})
    return v


def check_weak_content_pair(f, g, powbound: int = DEFAULT_POWBOUND, bound: int = DEFAULT_BOUND) -> PropertyVerdict:
    """orc(f) orc(g) inside the radical of orc(fg), generator by generator."""
    cf, cg, cfg = orc_poly(f), orc_poly(g), orc_poly(_product(f, g))
    checks, unknown = [], False
    for a in cf.gens:
        for b in cg.gens:
            res = radical_membership(a * b, cfg, powbound, bound)
            if res.is_nonmember:
                return PropertyVerdict.fails(
                    {"kind": "weak_content", "f": f, "g": g, "a": a, "b": b, "membership": res}
                )
            unknown |= res.status == UNKNOWN
            checks.append(res)
    if unknown:
        return PropertyVerdict.unknown(f"radical membership undecided within power {powbound}", *checks)
    return PropertyVerdict.holds(*checks)


# --- prime and primary extension ---------------------------------------------------

def _in_extension(f, P: Ideal) -> list:
    """Coefficientwise membership of f in P[T]; the first NonMember stops the scan."""
    out = []
    for c in coefficients(f):
        res = membership(c, P)
        out.append(res)
        if not res.is_member:
            break
    return out


def _ext_member(f, P: Ideal) -> Optional[bool]:
    res = _in_extension(f, P)
    if all(r.is_member for r in res):
        return True
    return False if res[-1].is_nonmember else None


def _ext_radical(f, Q: Ideal) -> bool:
    # sqrt(Q[T]) = sqrt(Q)[T] for polynomial extensions
    return all(radical_membership(c, Q).is_member for c in coefficients(f))


def _quotient_description(P: Ideal) -> str:
    R = P.ring
    if isinstance(R, Integers):
        p = P.normal.v
        return "Int/(0) = Int" if p == 0 else f"Int/({p}) = GF({p})"
    return f"{R}/{P}"


def check_prime_extension(P: Ideal, samples: int = 100, seed: int = 0, degree: int = 3,
                          coeff: int = DEFAULT_COEFF) -> PropertyVerdict:
    """P prime in R implies P*R[T] prime: structural argument plus a sampled search."""
    pv = is_prime(P)
    if not pv.ok:
        raise NotPrimeInput(f"{P.describe()} is not prime in {P.ring}", pv.witness)
    R = P.ring
    structural = {
        "kind": "structural",
        "claim": f"R[T]/P[T] = (R/P)[T] is a domain since R/P is",
        "quotient": _quotient_description(P),
    }
    for i in range(samples):
        rng = case_rng(seed, i)
        f = PolyOverRing.random(R, rng, degree, coeff)
        g = PolyOverRing.random(R, rng, degree, coeff)
        if _ext_member(f * g, P) and _ext_member(f, P) is False and _ext_member(g, P) is False:
            return PropertyVerdict.fails({
                "kind": "prime_extension", "f": f, "g": g,
                "product": _in_extension(f * g, P), "f_membership": _in_extension(f, P)[-1],
                "g_membership": _in_extension(g, P)[-1],
            })
    return PropertyVerdict.holds(structural, {"kind": "sampled", "samples": samples, "seed": seed,
                                              "degree": degree, "coeff": coeff})


def exhaustive_primary_check(n: int, degree: int) -> dict:
    """In (Z/n)[T] up to the given degree: fg = 0 with f not nilpotent forces g = 0."""
    Zn = IntegersMod(n)
    P = UniPoly(Zn, "T")
    polys = [P.from_coeffs([Zn(c) for c in cs]) for cs in itertools.product(range(n), repeat=degree + 1)]
    nilpotent = {f: all(Zn.is_nilpotent(c.v) for c in P.coeffs(f)) for f in polys}
    pairs = bad = 0
    first = None
    for f in polys:
        if nilpotent[f]:
            continue
        for g in polys:
            pairs += 1
            if (f * g).is_zero() and not g.is_zero():
                bad += 1
                first = first or (f, g)
    return {"kind": "exhaustive", "ring": str(P), "degree": degree, "pairs": pairs,
            "violations": bad, "first": first}


def _exhaustive_degree(n: int, budget: int = 10_000) -> int:
    d = -1
    while d < 2 and n ** (2 * (d + 2)) <= budget:
        d += 1
    return d


def check_primary_extension(Q: Ideal, samples: int = DEFAULT_SAMPLES, seed: int = 0, degree: int = 3,
                            coeff: int = DEFAULT_COEFF) -> PropertyVerdict:
    """Q primary in R implies Q*R[T] primary (sampled zero-divisor pairs plus structure)."""
    R = Q.ring
    if not (isinstance(R, Integers) or (isinstance(R, UniPoly) and R.base.is_field)):
        raise UnsupportedRing(f"primary extension is checked over Int and k[x], not {R}")
    pv = is_primary(Q)
    if not pv.ok:
        raise NotPrimaryInput(f"{Q.describe()} is not primary in {R}", pv.witness)
    evidence = [{
        "kind": "structural",
        "claim": "in (R/Q)[T] every zero divisor has all coefficients in the nilradical of R/Q",
        "quotient": f"{R}/{Q.normal}",
    }]
    if isinstance(R, Integers) and Q.normal.v > 1:
        d = _exhaustive_degree(Q.normal.v)
        if d >= 0:
            ex = exhaustive_primary_check(Q.normal.v, d)
            if ex["violations"]:
                f, g = ex["first"]
                return PropertyVerdict.fails({"kind": "primary_extension_exhaustive", "f": f, "g": g})
            evidence.append(ex)
    gen = Q.normal
    hits = 0
    for i in range(samples):
        rng = case_rng(seed, i)
        f = PolyOverRing.random(R, rng, degree, coeff)
        g = PolyOverRing.random(R, rng, degree, coeff)
        # push part of the sample into the interesting region fg in Q[T]
        if i % 2:
            g = g.scale(gen ** rng.randint(1, 2))
        if not _ext_member(f * g, Q) or _ext_radical(f, Q):
            continue
        hits += 1
        gm = _in_extension(g, Q)
        if not all(r.is_member for r in gm):
            return PropertyVerdict.fails({
                "kind": "primary_extension", "f": f, "g": g,
                "product": _in_extension(f * g, Q), "g_membership": gm[-1],
            })
    evidence.append({"kind": "sampled", "samples": samples, "zero_divisor_pairs": hits, "seed": seed,
                     "degree": degree, "coeff": coeff})
    return PropertyVerdict.holds(*evidence)


# --- semicontent witnesses ----------------------------------------------------------

def _candidates(R, cf: Ideal, bound: int):
    yield R.one()
    for n in range(1, 4):
        yield from ideal_power(cf, n).gens
    if isinstance(R, Integers):
        for k in range(2, bound + 1):
            yield R(k)
    elif isinstance(R, BiPolyQ):
        for d in range(1, bound + 1):
            for i in range(d, -1, -1):
                yield R.monomial(i, d - i)
    elif isinstance(R, UniPoly):
        x = R.gen()
        for d in range(1, bound + 1):
            yield x ** d
            yield x + R(d)


def semicontent_witness(P: Ideal, f, g, bound: int = DEFAULT_BOUND) -> Optional[Elem]:
    """Some t outside P with t*orc(g) inside orc(fg), or None if the bounded search is exhausted."""
    R = P.ring
    cf = orc_poly(f)
    inside = contains(P, poly_content(f))
    if inside.ok:
        raise PrecondViolated(f"f = {f} lies in {P}{R}[T]")
    cg, cfg = orc_poly(g), orc_poly(_product(f, g))
    seen = set()
    for t in _candidates(R, cf, bound):
        if t in seen or t.is_zero():
            continue
        seen.add(t)
        if not membership(t, P, bound).is_nonmember:
            continue
        scaled = Ideal.of(R, [t * h for h in cg.gens])
        if contains(cfg, scaled, bound).ok:
            assert membership(t, P, bound).is_nonmember
            return t
    return None


# --- valuation rings ------------------------------------------------------------

OHM_RUSH_GAUSSIAN = "OhmRushGaussian"
NOT_OHM_RUSH = "NotOhmRush"


@dataclass(frozen=True)
class ValuationVerdict:
    group: GroupId
    verdict: str
    descriptor: object = None
    cover: object = None
    oracle: dict = field(default_factory=dict)
    samples: tuple = ()

    @property
    def status(self) -> str:
        return HOLDS if self.verdict == OHM_RUSH_GAUSSIAN else FAILS


def canonical_obstruction(group: GroupId):
    """The standard positive set without a glb: u - m*e_last in LexZ, a sequence to an irrational in Quad."""
    if group.kind == "LexZ":
        u = group.unit_vector(0)
        return Affine(u, -group.unit_vector(group.rank - 1))
    if group.kind == "Quad":
        return ConvergentQuad(group, Fraction(0), Fraction(1, 2))
    raise UnsupportedGroup(f"{group} has no glb obstruction")


def _below_limit(s: ConvergentQuad, b: int):
    """The largest a + b*sqrt(d) strictly below the limit, for fixed b."""
    d = s.group.param
    diff = QuadNumber(s.p, s.q - b, d)
    a = diff.floor()
    if diff.sign() == 0 or QuadNumber(diff.r - a, diff.s, d).sign() == 0:
        a -= 1
    return s.group.element(a, b)


def lower_bound_improvement(s, window: int = 50) -> dict:
    """Every lower bound in the coordinate window is beaten by a strictly larger lower bound."""
    G = s.group
    checked = 0
    for coords in itertools.product(range(-window, window + 1), repeat=G.rank):
        g = G.element(*coords)
        if not is_lower_bound(g, s):
            continue
        checked += 1
        better = None
        if isinstance(s, Affine):
            h = least_positive(G)
            cand = g + h
            if is_lower_bound(cand, s):
                better = cand
        else:
            for b in itertools.count():
                for bb in (b, -b):
                    cand = _below_limit(s, bb)
                    if compare(cand, g) == GT:
                        better = cand
                        break
                if better is not None:
                    break
        if better is None:
            return {"kind": "improvement", "window": window, "checked": checked, "improved": False,
                    "stuck_at": g}
    return {"kind": "improvement", "window": window, "checked": checked, "improved": True}


def random_descriptor(group: GroupId, rng: random.Random):
    """A random descriptor of a set of positive values."""
    def pos():
        while True:
            c = tuple(rng.randint(-5, 5) for _ in range(group.rank))
            if group.kind == "Z":
                c = (rng.randint(1, 20),)
            e = group.element(*c)
            if e.sign() == GT:
                return e

    if rng.random() < 0.5:
        return Finite(tuple(pos() for _ in range(rng.randint(1, 8))))
    return Affine(pos(), pos())


def valuation_verdict(group: GroupId, samples: int = 50, seed: int = 0, window: int = 50) -> ValuationVerdict:
    """Z: Gaussian Ohm-Rush power series; LexZ and Quad: obstruction without a finitely generated cover."""
    if group.kind not in ("Z", "LexZ", "Quad"):
        raise UnsupportedGroup(str(group))
    V = HahnVal(group, QQ)
    if group.kind == "Z":
        runs = []
        for i in range(samples):
            s = random_descriptor(group, case_rng(seed, i))
            cover = smallest_fg_cover(SeriesDescriptor(V, s))
            runs.append({"descriptor": s, "cover": cover, "exists": cover is not None})
        ok = all(r["exists"] for r in runs)
        return ValuationVerdict(group, OHM_RUSH_GAUSSIAN if ok else NOT_OHM_RUSH, samples=tuple(runs))
    s = canonical_obstruction(group)
    cover = smallest_fg_cover(SeriesDescriptor(V, s))
    oracle = lower_bound_improvement(s, window if group.rank <= 2 else 6)
    verdict = NOT_OHM_RUSH if cover is None and oracle["improved"] else OHM_RUSH_GAUSSIAN
    return ValuationVerdict(group, verdict, descriptor=s, cover=cover, oracle=oracle,
                            samples=({"first": materialize(s, 3)},))


# --- suites -------------------------------------------------------------------

def _tower_element(tower: TowerId, rng: random.Random, degree: int = 2, coeff: int = 9) -> PolyOverRing:
    R, S, T = tower.levels
    kind = rng.random()
    if kind < 0.1:
        return PolyOverRing(S, (S(R.random(rng, coeff, 1)),), tower.symbols[1])
    return PolyOverRing(S, tuple(S.random(rng, coeff, degree) for _ in range(rng.randint(1, degree + 1))),
                        tower.symbols[1])


def transitivity_suite(seed: int = 1, n_cases: int = 100, primes=(2, 3, 5, 7), base=None) -> PropertyVerdict:
    """Content composition, Gaussian agreement and prime chains along R -> R[T] -> R[T][U]."""
    tower = int_tower() if base is None else TowerId(base, ("T", "U"))
    R, S, T = tower.levels
    for i in range(n_cases):
        rng = case_rng(seed, i)
        f = _tower_element(tower, rng)
        direct, composed = compose_content(tower, f)
        v = ideal_equal(direct, composed)
        if not v.ok:
            return PropertyVerdict.fails({"kind": "composition", "case": i, "f": f, "inclusion": v.witness})
        g = _tower_element(tower, rng)
        top = ideal_equal(compose_content(tower, f * g)[0],
                          ideal_product(compose_content(tower, f)[0], compose_content(tower, g)[0]))
        via = ideal_equal(compose_content(tower, f * g)[1],
                          ideal_product(compose_content(tower, f)[1], compose_content(tower, g)[1]))
        if top.status != via.status:
            return PropertyVerdict.fails({"kind": "gaussian_agreement", "case": i, "f": f, "g": g,
                                          "direct": top, "composed": via})
    chains = []
    for p in primes:
        P = Ideal.of(R, [p])
        v1 = check_prime_extension(P, samples=20, seed=seed)
        PS = Ideal.of(S, [S(p)])
        v2 = check_prime_extension(PS, samples=20, seed=seed, degree=2, coeff=3)
        if not (v1.ok and v2.ok):
            return PropertyVerdict.fails({"kind": "prime_chain", "p": p, "first": v1, "second": v2})
        chains.append({"kind": "prime_chain", "p": p, "levels": [str(P), str(PS)]})
    return PropertyVerdict.holds({"kind": "sampled", "seed": seed, "cases": n_cases, "tower": str(tower)},
                                 *chains)


def canonical_pair(R: BiPolyQ = None):
    """f = x + yT, g = y + xT over Q[x, y]."""
    R = R or BiPolyQ()
    x, y = R.gens()
    return PolyOverRing(R, (x, y)), PolyOverRing(R, (y, x))


def pruefer_gauss_suite(base, n_pairs: int = 500, seed: int = 0, degree: int = 3,
                        coeff: int = DEFAULT_COEFF) -> PropertyVerdict:
    """Gaussian on sampled pairs over Pruefer bases; the canonical failure over Q[x, y]."""
    if isinstance(base, BiPolyQ):
        f, g = canonical_pair(base)
        v = check_gaussian(f, g)
        return v if v.failed else PropertyVerdict.unknown("canonical pair did not fail", v)
    prufer = isinstance(base, (Integers, Rationals, HahnVal)) or (
        isinstance(base, UniPoly) and base.base.is_field) or (
        isinstance(base, IntegersMod) and base.is_field)
    if not prufer:
        raise UnsupportedRing(f"{base} is not one of the suite's bases")
    for i in range(n_pairs):
        rng = case_rng(seed, i)
        f = PolyOverRing.random(base, rng, degree, coeff)
        g = PolyOverRing.random(base, rng, degree, coeff)
        v = check_gaussian(f, g)
        if not v.ok:
            return v if v.failed else PropertyVerdict.unknown(f"case {i}: {v.reason}")
    return PropertyVerdict.holds({"kind": "sampled", "base": str(base), "pairs": n_pairs, "seed": seed,
                                  "degree": degree, "coeff": coeff})


def field_case(samples: int = 100, seed: int = 0) -> dict:
    """k-algebras over a field: weak content fails in Q[x]/(x^2) and holds in the domain Q[x]."""
    P = UniPoly(QQ, "x")
    A = PolyQuotient(P, P.gen().__pow__(2).v)
    xb = A.gen()
    broken = check_weak_content_pair(xb, xb)
    gauss_broken = check_gaussian(xb, xb)
    passes = []
    for i in range(samples):
        rng = case_rng(seed, i)
        f, g = P.random(rng, 9, 3), P.random(rng, 9, 3)
        passes.append(check_weak_content_pair(f, g).ok and check_gaussian(f, g).ok)
    prime = is_prime(Ideal.of(A, [A.zero()]))
    return {"quotient": A, "weak": broken, "gaussian": gauss_broken, "zero_ideal_prime": prime,
            "domain_samples": samples, "domain_passes": sum(passes), "domain_ok": all(passes)}
