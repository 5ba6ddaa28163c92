import math
import random

import pytest
import sympy
from conftest import sample

from contentlab.errors import UnsupportedOp, UnsupportedRing
from contentlab.ideals import (
    MEMBER,
    NONMEMBER,
    UNKNOWN,
    DivisionCert,
    Ideal,
    contains,
    ideal,
    ideal_equal,
    ideal_op,
    is_primary,
    is_prime,
    membership,
    primary_decomposition,
    radical_membership,
)
from contentlab.parser import parse_element, parse_ring
from contentlab.rings import GF, QQ, ZZ, BiPolyQ, HahnVal, IntegersMod, UniPoly
from contentlab.valgroup import LexZ, Quad, Z
from contentlab.verify import verify_membership, verify_verdict

R2 = BiPolyQ()
x, y = R2.gens()


def P(text, ring=R2):
    return parse_element(text, ring)


# --- worked examples -----------------------------------------------------------

def test_int_member_with_cofactors():
    res = membership(ZZ(6), ideal(ZZ, 2, 3))
    assert res.status == MEMBER
    assert [c.v for c in res.coeffs] == [0, 2]


def test_int_nonmember_division_certificate():
    res = membership(ZZ(5), ideal(ZZ, 4, 6))
    assert res.status == NONMEMBER
    assert isinstance(res.certificate, DivisionCert)
    assert res.certificate.normal == ZZ(2)
    assert verify_membership(res)


def test_hahn_membership_by_valuation():
    V = HahnVal(LexZ(2), QQ)
    assert membership(P("t^(1,1)", V), ideal(V, P("t^(1,0)", V))).status == MEMBER
    assert membership(P("t^(0,5)", V), ideal(V, P("t^(1,0)", V))).status == NONMEMBER


def test_canonical_bivariate_nonmember():
    A = ideal(R2, x * y, x ** 2 + y ** 2)
    res = membership(x ** 2, A)
    assert res.status == NONMEMBER
    assert verify_membership(res)
    # oracle: the degree-4 cofactor system is infeasible, and a Groebner basis agrees
    X, Y = sympy.symbols("x y")
    G = sympy.groebner([X * Y, X ** 2 + Y ** 2], X, Y, order="grevlex")
    assert not G.contains(X ** 2)
    from contentlab.bivariate import find_cofactors
    assert find_cofactors(x ** 2, list(A.gens), 4) is None


def test_ideal_op_examples():
    assert ideal_op("Intersect", ideal(ZZ, 4), ideal(ZZ, 6)).normal == ZZ(12)
    prod = ideal_op("Product", ideal(ZZ, 2, 3), ideal(ZZ, 5))
    assert [g.v for g in prod.gens] == [10, 15] and prod.normal == ZZ(5)
    sq = ideal_op("Power", ideal(R2, x, y), n=2)
    assert set(sq.gens) == {x ** 2, x * y, y ** 2}
    with pytest.raises(UnsupportedOp):
        ideal_op("Intersect", ideal(R2, x), ideal(R2, y))


def test_ideal_equal_examples():
    assert ideal_equal(ideal(ZZ, 2, 3), ideal(ZZ, 1)).ok
    v = ideal_equal(ideal_op("Power", ideal(R2, x, y), n=2), ideal(R2, x * y, x ** 2 + y ** 2))
    assert v.failed
    assert v.witness["element"] == x ** 2
    assert verify_verdict(v)
    assert ideal_equal(ideal(ZZ, 0), ideal(ZZ, 0)).ok


def test_radical_examples():
    assert radical_membership(ZZ(2), ideal(ZZ, 8)).status == MEMBER
    res = radical_membership(ZZ(2), ideal(ZZ, 3))
    assert res.status == NONMEMBER and verify_membership(res)
    res = radical_membership(x, ideal(R2, x ** 2))
    assert res.status == MEMBER and res.power == 2


def test_prime_primary_examples():
    assert is_prime(ideal(ZZ, 7)).ok
    nine = ideal(ZZ, 9)
    assert is_primary(nine).ok
    v = is_prime(nine)
    assert v.failed and v.witness["a"] == ZZ(3) and v.witness["b"] == ZZ(3)
    v = is_primary(ideal(ZZ, 6))
    assert v.failed and verify_verdict(v)
    assert {v.witness["a"].v, v.witness["b"].v} == {2, 3}


def test_primary_decomposition_examples():
    assert [I.normal.v for I in primary_decomposition(ideal(ZZ, 12))] == [4, 3]
    assert [I.normal.v for I in primary_decomposition(ideal(ZZ, 7))] == [7]
    Qx = UniPoly(QQ, "x")
    comps = primary_decomposition(ideal(Qx, P("x^2*(x - 1)", Qx)))
    assert [str(I.normal) for I in comps] == ["x^2", "-1 + x"]


# --- properties ------------------------------------------------------------------

def test_int_membership_against_gcd():
    rng = random.Random(11)
    for _ in range(500):
        gens = [rng.randint(-60, 60) for _ in range(rng.randint(1, 3))]
        e = rng.randint(-200, 200)
        res = membership(ZZ(e), Ideal.of(ZZ, gens))
        g = math.gcd(*gens)
        expected = (e == 0) if g == 0 else (e % g == 0)
        assert (res.status == MEMBER) == expected
        assert verify_membership(res)


def test_univariate_membership_against_sympy():
    Qx = UniPoly(QQ, "x")
    X = sympy.symbols("x")

    def to_sym(f):
        return sum(sympy.Rational(c.v.numerator, c.v.denominator) * X ** i for i, c in enumerate(Qx.coeffs(f)))

    for f, g, e in zip(sample(Qx, 150, 1), sample(Qx, 150, 2), sample(Qx, 150, 3)):
        A = Ideal.of(Qx, [f, g])
        d = sympy.gcd(to_sym(f), to_sym(g))
        res = membership(e, A)
        if d == 0:
            expected = res.element.is_zero()
        else:
            expected = sympy.rem(to_sym(res.element), d, X) == 0
        assert (res.status == MEMBER) == expected
        assert verify_membership(res)


def _groebner_contains(gens, e):
    X, Y = sympy.symbols("x y")

    def conv(f):
        return sum(sympy.Rational(c.numerator, c.denominator) * X ** i * Y ** j for (i, j), c in f.v)

    G = sympy.groebner([conv(g) for g in gens], X, Y, order="grevlex")
    return G.contains(conv(e))


def test_bivariate_membership_sound_against_groebner():
    rng = random.Random(12)
    atoms = [x, y, x + y, x - y, x * y, x ** 2 + y ** 2, x ** 2, y ** 2, x + 1, y - 2]
    decided = 0
    for _ in range(120):
        gens = rng.sample(atoms, rng.randint(1, 2))
        A = Ideal.of(R2, gens)
        e = rng.choice(atoms) * rng.choice(atoms) + rng.choice([R2.zero(), rng.choice(atoms)])
        res = membership(e, A, bound=4)
        if res.status != UNKNOWN:
            decided += 1
            assert (res.status == MEMBER) == _groebner_contains(gens, e)
            assert verify_membership(res)
    assert decided >= 100


def test_product_equals_square():
    rng = random.Random(13)
    for _ in range(200):
        A = Ideal.of(ZZ, [rng.randint(-30, 30) for _ in range(rng.randint(1, 3))])
        assert ideal_equal(ideal_op("Product", A, A), ideal_op("Power", A, n=2)).ok
    atoms = [x, y, x + y, x * y, x ** 2 - y, y + 1]
    unknown = 0
    for _ in range(200):
        A = Ideal.of(R2, rng.sample(atoms, rng.randint(1, 2)))
        v = ideal_equal(ideal_op("Product", A, A), ideal_op("Power", A, n=2), bound=4)
        assert not v.failed
        unknown += not v.ok
    assert unknown == 0


def test_primary_decomposition_intersects_back():
    rng = random.Random(14)
    cases = [rng.randint(2, 10 ** 6) for _ in range(300)] + [2 ** 19, 3 ** 12, 999983, 720720]
    for n in cases:
        A = ideal(ZZ, n)
        comps = primary_decomposition(A)
        acc = Ideal.of(ZZ, [1])
        for Q in comps:
            assert is_primary(Q).ok
            acc = ideal_op("Intersect", acc, Q)
        assert acc.normal == A.normal
        assert math.prod(Q.normal.v for Q in comps) == n  # coprime components, oracle by product


def test_prime_implies_primary():
    rings_and_gens = [(ZZ, [ZZ(n) for n in range(0, 60)]),
                      (IntegersMod(12), [IntegersMod(12)(n) for n in range(12)]),
                      (UniPoly(QQ, "x"), sample(UniPoly(QQ, "x"), 60, 4)),
                      (UniPoly(GF(3), "x"), sample(UniPoly(GF(3), "x"), 60, 5))]
    for R, gens in rings_and_gens:
        for g in gens:
            A = ideal(R, g)
            if is_prime(A).ok:
                assert is_primary(A).ok
    for text in ("t^(0,1)", "t^(1,0)", "t^(0,2)", "t^(2,0)", "0", "1"):
        V = HahnVal(LexZ(2), QQ)
        A = ideal(V, P(text, V))
        if is_prime(A).ok:
            assert is_primary(A).ok


def test_hahn_prime_spectrum():
    V = HahnVal(LexZ(2), QQ)
    assert is_prime(ideal(V, P("t^(0,1)", V))).ok  # the maximal ideal
    assert is_prime(ideal(V, P("t^(0,2)", V))).failed
    assert is_primary(ideal(V, P("t^(0,2)", V))).ok  # inside the minimal convex subgroup
    assert is_primary(ideal(V, P("t^(1,0)", V))).failed
    W = HahnVal(Z, QQ)
    assert is_prime(ideal(W, P("t", W))).ok and is_primary(ideal(W, P("t^3", W))).ok
    Vq = HahnVal(Quad(2), QQ)
    assert is_prime(ideal(Vq, Vq.zero())).ok
    assert is_prime(ideal(Vq, P("t^(1,0)", Vq))).failed


def test_hahn_normal_forms_are_principal():
    for G in (Z, LexZ(2), Quad(2)):
        V = HahnVal(G, QQ)
        xs = [a for a in sample(V, 200, 6) if not a.is_zero()]
        for a, b in zip(xs[0::2], xs[1::2]):
            A = ideal(V, a, b)
            assert A.normal is not None
            assert ideal_equal(A, ideal(V, A.normal)).ok


def test_contains_witness_replays():
    v = contains(ideal(ZZ, 4), ideal(ZZ, 2))
    assert v.failed and v.witness["kind"] == "ideal_inclusion"
    assert verify_verdict(v)


def test_bivariate_prime_scope():
    assert is_prime(ideal(R2, x, y)).ok
    assert is_prime(ideal(R2, x * y)).failed
    assert is_primary(ideal(R2, x ** 2)).ok
    with pytest.raises(UnsupportedRing):
        is_prime(ideal(R2, x ** 2 + y, x * y + 1))


def test_quotient_rings():
    A = parse_ring("Q[x]/(x^2)")
    xb = A.gen()
    assert is_prime(ideal(A, A.zero())).failed
    assert radical_membership(xb, ideal(A, A.zero())).status == MEMBER
    res = radical_membership(A.one() + xb, ideal(A, A.zero()))
    assert res.status == NONMEMBER and verify_membership(res)
    Zn = IntegersMod(12)
    assert radical_membership(Zn(6), ideal(Zn, 0)).status == MEMBER
    res = radical_membership(Zn(2), ideal(Zn, 0))
    assert res.status == NONMEMBER and verify_membership(res)
