"""Text syntax: ring elements, ring ids, value groups and sequence descriptors.

Elements go through a recursive-descent parser producing an :class:`Expr`
tree, then elaborate against a ring.  Precedence: ``^`` binds tighter than
``*``, which binds tighter than ``+``/``-``.  Every syntax error reports a
line, a column and the set of tokens that would have been accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import ElaborationError, ExprSyntaxError, MalformedDescriptor
from .rings import (
    QQ,
    ZZ,
    BiPolyQ,
    Elem,
    GF,
    HahnVal,
    IntegersMod,
    PolyQuotient,
    Ring,
    UniPoly,
)
from .valgroup import Affine, ConvergentQuad, Finite, GroupElement, GroupId, LexZ, Quad, Z

# --- tokens -----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),;\[\]]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(src: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while True:
        # skip whitespace while tracking lines
        while pos < len(src) and src[pos].isspace():
            if src[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
        if pos >= len(src):
            out.append(Token("end", "", line, pos - line_start + 1))
            return out
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1,
                                  ("integer", "name", "(", "-"))
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), line, m.start(kind) - line_start + 1))
        pos = m.end()


# --- syntax tree --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: tuple  # one int, or a coordinate tuple for Hahn monomials
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


Expr = Union[Num, Var, Neg, BinOp, Pow]
"""Syntax tree of an element; ``pos`` is (line, column) and is ignored by equality."""

_PREC = {"+": 1, "-": 1, "*": 2}


def unparse(e) -> str:
    """Canonical text of an expression; parse(unparse(e)) == e."""
    return _unparse(e, 0)


def _unparse(e, ctx: int) -> str:
    if isinstance(e, Num):
        s = str(e.value)
        return f"({s})" if "/" in s and ctx >= 3 else s
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        s = "-" + _unparse(e.arg, 3)
        return f"({s})" if ctx >= 2 else s
    if isinstance(e, Pow):
        b = _unparse(e.base, 4)
        if len(e.exponent) == 1 and e.exponent[0] >= 0:
            s = f"{b}^{e.exponent[0]}"
        else:
            s = f"{b}^(" + ",".join(str(c) for c in e.exponent) + ")"
        return f"({s})" if ctx >= 4 else s
    p = _PREC[e.op]
    left = _unparse(e.left, p)
    right = _unparse(e.right, p + 1)
    s = f"{left} {e.op} {right}" if e.op != "*" else f"{left}*{right}"
    return f"({s})" if p < ctx else s


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected, message=None):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprSyntaxError(message or f"unexpected {what}", t.line, t.column, expected)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.fail((text,))

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "int":
            self.fail(("integer",))
        v = int(self.tok.text)
        self.i += 1
        return sign * v

    def parse_all(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail(("+", "-", "*", "^", "end of input"))
        return e

    def expr(self):
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.tok
            self.i += 1
            left = BinOp(t.text, left, self.term(), (t.line, t.column))
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text == "*":
            t = self.tok
            self.i += 1
            left = BinOp("*", left, self.unary(), (t.line, t.column))
        return left

    def unary(self):
        t = self.tok
        if self.accept("-"):
            return Neg(self.unary(), (t.line, t.column))
        return self.power()

    def power(self):
        base = self.atom()
        t = self.tok
        if self.accept("^"):
            if self.accept("("):
                coords = [self.integer()]
                while self.accept(","):
                    coords.append(self.integer())
                self.expect(")")
                return Pow(base, tuple(coords), (t.line, t.column))
            if self.tok.kind != "int":
                self.fail(("integer", "("))
            n = int(self.tok.text)
            self.i += 1
            return Pow(base, (n,), (t.line, t.column))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            value = Fraction(int(t.text))
            if self.accept("/"):
                if self.tok.kind != "int":
                    self.fail(("integer",))
                den = int(self.tok.text)
                if den == 0:
                    self.fail(("nonzero integer",), "division by zero")
                self.i += 1
                value = value / den
            return Num(value, (t.line, t.column))
        if t.kind == "name":
            self.i += 1
            return Var(t.text, (t.line, t.column))
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail(("integer", "name", "(", "-"))


def parse_expr(src: str):
    return _Parser(src).parse_all()


# --- elaboration ------------------------------------------------------------------

def _variable(ring: Ring, name: str, pos) -> Optional[Elem]:
    if isinstance(ring, UniPoly):
        if name == ring.var:
            return ring.gen()
        inner = _variable(ring.base, name, pos)
        return None if inner is None else ring(inner)
    if isinstance(ring, BiPolyQ):
        if name in ring.vars:
            return ring.gens()[ring.vars.index(name)]
        return None
    if isinstance(ring, PolyQuotient):
        return ring.gen() if name == ring.var else None
    return None


def elaborate(e, ring: Ring) -> Elem:
    try:
        return _elab(e, ring)
    except ElaborationError:
        raise
    except (ValueError, ZeroDivisionError, TypeError) as ex:
        line, col = getattr(e, "pos", (1, 1))
        raise ElaborationError(str(ex), line, col) from None


def _elab(e, ring: Ring) -> Elem:
    if isinstance(e, Num):
        return ring(e.value)
    if isinstance(e, Var):
        if isinstance(ring, HahnVal) and e.name == "t":
            if ring.group.kind != "Z":
                raise ElaborationError(f"t needs an exponent in {ring.group}", *e.pos)
            return ring.monomial(ring.group.element(1))
        v = _variable(ring, e.name, e.pos)
        if v is None:
            raise ElaborationError(f"unknown variable {e.name} in {ring}", *e.pos)
        return v
    if isinstance(e, Neg):
        return -_elab(e.arg, ring)
    if isinstance(e, BinOp):
        a, b = _elab(e.left, ring), _elab(e.right, ring)
        return a + b if e.op == "+" else a - b if e.op == "-" else a * b
    if isinstance(e, Pow):
        if isinstance(ring, HahnVal) and isinstance(e.base, Var) and e.base.name == "t":
            G = ring.group
            if len(e.exponent) != G.rank:
                raise ElaborationError(f"exponent of t needs {G.rank} coordinates in {G}", *e.pos)
            return ring.monomial(G.element(*e.exponent))
        if len(e.exponent) != 1:
            raise ElaborationError("coordinate exponents apply to t in Hahn rings only", *e.pos)
        base = _elab(e.base, ring)
        return base ** e.exponent[0]
    raise ElaborationError(f"cannot elaborate {e!r}")  # pragma: no cover


def parse_element(src: str, ring: Ring) -> Elem:
    """Parse canonical element text in the given ring."""
    return elaborate(parse_expr(src), ring)


def _poly_elab(e, base: Ring, var: str) -> dict:
    """Elaborate e as a polynomial in ``var`` with coefficients in ``base``: {degree: coeff}."""
    if isinstance(e, Var) and e.name == var:
        return {1: base.one()}
    if isinstance(e, Neg):
        return {k: -c for k, c in _poly_elab(e.arg, base, var).items()}
    if isinstance(e, BinOp):
        a, b = _poly_elab(e.left, base, var), _poly_elab(e.right, base, var)
        if e.op == "*":
            out = {}
            for i, x in a.items():
                for j, y in b.items():
                    out[i + j] = out.get(i + j, base.zero()) + x * y
            return out
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, base.zero()) + (c if e.op == "+" else -c)
        return out
    if isinstance(e, Pow) and _mentions(e.base, var):
        if len(e.exponent) != 1 or e.exponent[0] < 0:
            raise ElaborationError(f"{var} takes a nonnegative integer exponent", *e.pos)
        out = {0: base.one()}
        for _ in range(e.exponent[0]):
            out = _poly_elab(BinOp("*", _Const(out), e.base, e.pos), base, var)
        return out
    if isinstance(e, _Const):
        return e.value
    if _mentions(e, var):  # pragma: no cover - every constructor is handled above
        raise ElaborationError(f"cannot elaborate {e!r}")
    return {0: elaborate(e, base)}


@dataclass(frozen=True)
class _Const:
    value: dict
    pos: tuple = field(default=(1, 1), compare=False)


def _mentions(e, var: str) -> bool:
    if isinstance(e, Var):
        return e.name == var
    if isinstance(e, Neg):
        return _mentions(e.arg, var)
    if isinstance(e, BinOp):
        return _mentions(e.left, var) or _mentions(e.right, var)
    if isinstance(e, Pow):
        return _mentions(e.base, var)
    return False


def parse_coeffs(src: str, base: Ring, var: str = "T") -> list:
    """Coefficient list of a polynomial in ``var`` over ``base`` (any coefficient ring)."""
    terms = {k: c for k, c in _poly_elab(parse_expr(src), base, var).items() if not c.is_zero()}
    n = max(terms, default=-1)
    return [terms.get(k, base.zero()) for k in range(n + 1)]


# --- rings, groups, descriptors ------------------------------------------------------

class _Ids(_Parser):
    def name(self, *allowed) -> str:
        if self.tok.kind != "name" or (allowed and self.tok.text not in allowed):
            self.fail(allowed or ("name",))
        s = self.tok.text
        self.i += 1
        return s

    def group(self) -> GroupId:
        n = self.name("Z", "LexZ", "Quad")
        if n == "Z":
            return Z
        self.expect("(")
        k = self.integer()
        self.expect(")")
        try:
            return LexZ(k) if n == "LexZ" else Quad(k)
        except ValueError as ex:
            self.i -= 2
            self.fail(("valid parameter",), str(ex))

    def ring(self) -> Ring:
        start = self.tok
        n = self.name("Int", "Z", "ZZ", "Q", "QQ", "IntMod", "GF", "PrimeField", "Hahn", "HahnVal")
        if n in ("Int", "Z", "ZZ"):
            R = ZZ
        elif n in ("Q", "QQ"):
            R = QQ
        elif n in ("IntMod", "GF", "PrimeField"):
            self.expect("(")
            k = self.integer()
            self.expect(")")
            try:
                R = IntegersMod(k) if n == "IntMod" else GF(k)
            except ValueError as ex:
                raise ExprSyntaxError(str(ex), start.line, start.column, ("valid modulus",)) from None
        else:
            self.expect("(")
            G = self.group()
            residue = QQ
            if self.accept(","):
                residue = self.ring()
            self.expect(")")
            try:
                R = HahnVal(G, residue)
            except Exception as ex:
                raise ExprSyntaxError(str(ex), start.line, start.column, ("Q", "GF(p)")) from None
        while self.accept("["):
            names = [self.name()]
            while self.accept(","):
                names.append(self.name())
            self.expect("]")
            try:
                if len(names) == 2:
                    if R != QQ:
                        self.fail(("]",), "two-variable rings are Q[x,y] only")
                    R = BiPolyQ(tuple(names))
                elif len(names) == 1:
                    R = UniPoly(R, names[0])
                else:
                    self.fail(("]",), "at most two variables")
            except ExprSyntaxError:
                raise
            except Exception as ex:
                raise ExprSyntaxError(str(ex), start.line, start.column, ()) from None
        if self.accept("/"):
            self.expect("(")
            depth, j = 1, self.i
            while depth:
                t = self.toks[j]
                if t.kind == "end":
                    self.i = j
                    self.fail((")",))
                depth += {"(": 1, ")": -1}.get(t.text, 0) if t.kind == "op" else 0
                j += 1
            inner = _Parser.__new__(_Parser)
            inner.toks = self.toks[self.i:j - 1] + [Token("end", "", self.toks[j - 1].line, self.toks[j - 1].column)]
            inner.i = 0
            modulus = elaborate(inner.parse_all(), R)
            self.i = j
            try:
                R = PolyQuotient(R, modulus.v)
            except Exception as ex:
                raise ExprSyntaxError(str(ex), start.line, start.column, ()) from None
        return R

    def element(self, G: GroupId) -> GroupElement:
        if self.accept("("):
            coords = [self.integer()]
            while self.accept(","):
                coords.append(self.integer())
            self.expect(")")
        else:
            coords = [self.integer()]
        if len(coords) != G.rank:
            raise MalformedDescriptor(f"{G} elements have {G.rank} coordinates, got {len(coords)}")
        return G.element(*coords)

    def rational(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "int":
            self.fail(("integer",))
        v = Fraction(int(self.tok.text))
        self.i += 1
        if self.accept("/"):
            if self.tok.kind != "int" or int(self.tok.text) == 0:
                self.fail(("nonzero integer",))
            v /= int(self.tok.text)
            self.i += 1
        return sign * v

    def descriptor(self, G: GroupId):
        kind = self.name("finite", "affine", "conv")
        if kind == "finite":
            self.expect("[")
            elems = [self.element(G)]
            while self.accept(","):
                elems.append(self.element(G))
            self.expect("]")
            return Finite(tuple(elems))
        self.expect("(")
        if kind == "affine":
            u = self.element(G)
            self.expect(";")
            w = self.element(G)
            self.expect(")")
            return Affine(u, w)
        p = self.rational()
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.expect("+")
        q = sign * self.rational()
        self.expect("*")
        self.name("sqrt")
        self.expect("(")
        d = self.integer()
        self.expect(")")
        self.expect(")")
        if G.kind != "Quad" or G.param != d:
            raise MalformedDescriptor(f"sqrt({d}) does not match the group {G}")
        return ConvergentQuad(G, p, q)

    def finish(self):
        if self.tok.kind != "end":
            self.fail(("end of input",))


def parse_ring(src: str) -> Ring:
    p = _Ids(src)
    R = p.ring()
    p.finish()
    return R


def parse_group(src: str) -> GroupId:
    p = _Ids(src)
    G = p.group()
    p.finish()
    return G


def parse_group_element(src: str, G: GroupId) -> GroupElement:
    p = _Ids(src)
    g = p.element(G)
    p.finish()
    return g


def parse_descriptor(src: str, G: GroupId):
    p = _Ids(src)
    s = p.descriptor(G)
    p.finish()
    return s


def parse_ideal(src: str, ring: Ring) -> list:
    """Generators from ``(g1, g2, ...)`` or a single element."""
    p = _Parser(src)
    if p.accept("("):
        try:
            gens = [p.expr()]
            while p.accept(","):
                gens.append(p.expr())
            p.expect(")")
            if p.tok.kind == "end":
                return [elaborate(g, ring) for g in gens]
        except ExprSyntaxError:
            pass
    return [parse_element(src, ring)]
