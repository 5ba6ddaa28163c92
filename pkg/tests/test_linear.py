import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from contentlab.bivariate import evaluate, find_cofactors, solve_rational, translate
from contentlab.factor import factor_int
from contentlab.rings import BiPolyQ

QXY = BiPolyQ()


@settings(max_examples=300, deadline=None)
@given(n=st.integers(-10**6, 10**6).filter(bool))
def test_factor_int_multiplies_back(n):
    fs = factor_int(n)
    prod = 1
    for p, k in fs.items():
        assert all(p % q for q in range(2, int(p ** 0.5) + 1))
        prod *= p ** k
    assert prod == abs(n)


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_solve_rational_against_sympy(data):
    m = data.draw(st.integers(1, 5))
    n = data.draw(st.integers(1, 5))
    ints = st.integers(-4, 4)
    A = [[data.draw(ints) for _ in range(n)] for _ in range(m)]
    b = [data.draw(ints) for _ in range(m)]
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in A]
    x = solve_rational(rows, [Fraction(v) for v in b], n)
    M, B = sympy.Matrix(A), sympy.Matrix(b)
    consistent = M.rank() == M.row_join(B).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert all(sum(A[i][j] * x[j] for j in range(n)) == b[i] for i in range(m))


def test_cofactors_reconstruct_target():
    rng = random.Random(5)
    x, y = QXY.gens()
    for _ in range(50):
        gens = [QXY.random(rng, 3, 2) for _ in range(2)]
        p = [QXY.random(rng, 3, 1) for _ in range(2)]
        e = gens[0] * p[0] + gens[1] * p[1]
        cof = find_cofactors(e, gens, 1)
        assert cof is not None
        assert cof[0] * gens[0] + cof[1] * gens[1] == e
    assert find_cofactors(QXY.one(), [x, y], 3) is None


def test_translate_matches_evaluation():
    rng = random.Random(9)
    for _ in range(50):
        f = QXY.random(rng, 5, 3)
        a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3), 2)
        assert evaluate(translate(f, (a, b)), (0, 0)) == evaluate(f, (a, b))
