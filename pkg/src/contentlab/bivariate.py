"""Bounded linear algebra over Q for ideals of Q[x, y].

Two searches, both exact:

* cofactor search: find p_i with sum p_i g_i = e and deg p_i <= D;
* local dual functionals: a linear form on polynomials truncated below order N
  at a point, vanishing on the ideal and not on e.  Such a form certifies
  e not in I, since e in I would force the form to vanish on e.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .rings import BiPolyQ, Elem


def solve_rational(rows: list, rhs: list, ncols: int) -> Optional[list]:
    """A particular solution of rows * x = rhs over Q, or None if inconsistent.

    ``rows`` holds sparse rows as {column: Fraction}.
    """
    nrows = len(rows)
    data = {}
    for i, row in enumerate(rows):
        entries = {j: QQ(v.numerator, v.denominator) for j, v in row.items() if v}
        if rhs[i]:
            entries[ncols] = QQ(rhs[i].numerator, rhs[i].denominator)
        if entries:
            data[i] = entries
    if nrows == 0:
        return [Fraction(0)] * ncols
    M = DomainMatrix(data, (nrows, ncols + 1), QQ)
    R, pivots = M.rref()
    if pivots and pivots[-1] == ncols:
        return None
    dense = R.to_sdm()
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        v = dense.get(i, {}).get(ncols)
        if v is not None:
            x[c] = Fraction(int(v.numerator), int(v.denominator))
    return x


def monomials_upto(D: int) -> list:
    """Exponent pairs of total degree <= D in graded order."""
    return [(i, d - i) for d in range(D + 1) for i in range(d, -1, -1)]


def find_cofactors(e: Elem, gens: list, D: int) -> Optional[list]:
    """Cofactors of total degree <= D expressing e in the ideal, or None."""
    R: BiPolyQ = e.ring
    monos = monomials_upto(D)
    columns = [(k, m) for k in range(len(gens)) for m in monos]
    rowindex = {}
    rows = []
    for col, (k, (a, b)) in enumerate(columns):
        for (i, j), c in gens[k].v:
            key = (i + a, j + b)
            if key not in rowindex:
                rowindex[key] = len(rows)
                rows.append({})
            rows[rowindex[key]][col] = c
    target = dict(e.v)
    for key in target:
        if key not in rowindex:
            rowindex[key] = len(rows)
            rows.append({})
    rhs = [Fraction(0)] * len(rows)
    for key, c in target.items():
        rhs[rowindex[key]] = c
    sol = solve_rational(rows, rhs, len(columns))
    if sol is None:
        return None
    out = []
    for k in range(len(gens)):
        terms = {m: sol[idx] for idx, (kk, m) in enumerate(columns) if kk == k and sol[idx]}
        out.append(Elem(R, R._pack(terms)))
    return out


def translate(f: Elem, point) -> Elem:
    """f(x + a, y + b) for a rational point (a, b)."""
    R: BiPolyQ = f.ring
    a, b = (Fraction(c) for c in point)
    x, y = R.gens()
    xs, ys = x + R(a), y + R(b)
    out = R.zero()
    for (i, j), c in f.v:
        out = out + R(c) * xs ** i * ys ** j
    return out


def truncate(f: Elem, order: int) -> dict:
    """Terms of total degree < order."""
    return {m: c for m, c in f.v if m[0] + m[1] < order}


def find_dual_functional(e: Elem, gens: list, point, order: int) -> Optional[dict]:
    """A functional on monomials of degree < order at ``point`` killing the ideal but not e."""
    R: BiPolyQ = e.ring
    monos = monomials_upto(order - 1)
    col = {m: k for k, m in enumerate(monos)}
    shifted = [translate(g, point) for g in gens]
    rows, rhs = [], []
    for g in shifted:
        for (a, b) in monos:
            prod = R.monomial(a, b) * g
            row = {col[m]: c for m, c in truncate(prod, order).items()}
            if row:
                rows.append(row)
                rhs.append(Fraction(0))
    target = truncate(translate(e, point), order)
    if not target:
        return None
    rows.append({col[m]: c for m, c in target.items()})
    rhs.append(Fraction(1))
    sol = solve_rational(rows, rhs, len(monos))
    if sol is None:
        return None
    return {m: sol[k] for m, k in col.items() if sol[k]}


def evaluate(f: Elem, point) -> Fraction:
    a, b = (Fraction(c) for c in point)
    return sum((c * a ** i * b ** j for (i, j), c in f.v), Fraction(0))
