"""Quadratic maps of the plane and the affine action ``f -> L o f o R``."""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational

from .errors import MalformedInput, SingularAffine
from .exact.poly import XY, Poly
from .exact.tower import TowerScalar

#: coefficient order of one component: a x^2 + b xy + c y^2 + d x + e y + f
MONOMIALS = ("x2", "xy", "y2", "x", "y", "1")
_EXPS = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))


def _scalar(c):
    if isinstance(c, TowerScalar):
        return c.to_rational() if c.is_rational() else c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def scalar_to_json(c):
    if isinstance(c, TowerScalar):
        return c.to_json()
    return str(Fraction(c))


def parse_scalar(text, rationalize=None, where="coefficient"):
    """Parse an exact coefficient string ``"p"`` or ``"p/q"``.

    Decimal literals are accepted only when ``rationalize`` gives the number
    of decimal digits to keep; the rounding is then explicit.
    """
    if isinstance(text, bool):
        raise MalformedInput(f"{where}: expected a rational string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedInput(f"{where}: expected a rational string, got {text!r}")
    s = text.strip()
    if re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        num, _, den = s.partition("/")
        if den and int(den) == 0:
            raise MalformedInput(f"{where}: zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    if re.fullmatch(r"[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?", s):
        if rationalize is None:
            raise MalformedInput(
                f"{where}: decimal literal {text!r} needs --rationalize K"
            )
        try:
            exact = Fraction(Decimal(s))
        except InvalidOperation:
            raise MalformedInput(f"{where}: bad decimal {text!r}") from None
        scale = 10 ** rationalize
        return Fraction(round(exact * scale), scale)
    raise MalformedInput(f"{where}: not a rational number: {text!r}")


def _linear_product(p, q):
    """Product of two affine forms ``(cx, cy, c1)`` as a 6-coefficient tuple."""
    p1, p2, p3 = p
    q1, q2, q3 = q
    return (
        p1 * q1,
        p1 * q2 + p2 * q1,
        p2 * q2,
        p1 * q3 + p3 * q1,
        p2 * q3 + p3 * q2,
        p3 * q3,
    )


def compose_quadratic(coeffs, R):
    """Coefficients of ``q o R`` for a quadratic ``q`` and affine ``R``."""
    a, b, c, d, e, f = coeffs
    X = (R.matrix[0][0], R.matrix[0][1], R.shift[0])
    Y = (R.matrix[1][0], R.matrix[1][1], R.shift[1])
    xx, xy, yy = _linear_product(X, X), _linear_product(X, Y), _linear_product(Y, Y)
    out = []
    for k in range(6):
        val = a * xx[k] + b * xy[k] + c * yy[k]
        if k == 3:
            val += d * X[0] + e * Y[0]
        elif k == 4:
            val += d * X[1] + e * Y[1]
        elif k == 5:
            val += d * X[2] + e * Y[2] + f
        out.append(val)
    return tuple(out)


class QuadraticMap:
    """``f = (g, h)`` with ``deg g, deg h <= 2``: a point of the 12-dim space.

    ``g`` and ``h`` are coefficient 6-tuples in the order of ``MONOMIALS``.
    """

    __slots__ = ("g", "h")

    def __init__(self, g, h):
        if len(g) != 6 or len(h) != 6:
            raise ValueError("each component needs exactly 6 coefficients")
        self.g = tuple(_scalar(c) for c in g)
        self.h = tuple(_scalar(c) for c in h)

    @classmethod
    def from_polys(cls, g, h):
        comps = []
        for p in (g, h):
            if not isinstance(p, Poly):
                p = Poly.const(p, XY)
            if p.gens != XY:
                p = p.embed(XY)
            if p.degree() > 2:
                raise MalformedInput(f"component {p} has degree > 2")
            comps.append(tuple(p.coeff(*e) for e in _EXPS))
        return cls(*comps)

    @classmethod
    def zero(cls):
        return cls((0,) * 6, (0,) * 6)

    @property
    def coefficients(self):
        """The 12 coefficients ``a1..f1, a2..f2``."""
        return self.g + self.h

    def polys(self):
        def mk(cs):
            return Poly({e: c for e, c in zip(_EXPS, cs)}, XY)

        return mk(self.g), mk(self.h)

    def __call__(self, x, y):
        g, h = self.polys()
        return g(x, y), h(x, y)

    def is_rational(self):
        return all(isinstance(c, Fraction) for c in self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, QuadraticMap):
            return NotImplemented
        return self.g == other.g and self.h == other.h

    def __hash__(self):
        return hash((self.g, self.h))

    def __str__(self):
        g, h = self.polys()
        return f"({g}, {h})"

    def __repr__(self):
        return f"QuadraticMap{self}"

    def to_json(self):
        return {
            "g": {k: scalar_to_json(c) for k, c in zip(MONOMIALS, self.g)},
            "h": {k: scalar_to_json(c) for k, c in zip(MONOMIALS, self.h)},
        }

    @classmethod
    def from_json(cls, data, rationalize=None):
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if not isinstance(data, dict) or set(data) - {"g", "h"} or not {"g", "h"} <= set(data):
            raise MalformedInput('map JSON must be an object with keys "g" and "h"')
        comps = []
        for name in ("g", "h"):
            comp = data[name]
            if not isinstance(comp, dict):
                raise MalformedInput(f"{name}: expected an object of monomial coefficients")
            unknown = set(comp) - set(MONOMIALS)
            if unknown:
                raise MalformedInput(f"{name}: unknown monomial key(s) {sorted(unknown)}")
            comps.append(tuple(
                parse_scalar(comp.get(k, "0"), rationalize, where=f"{name}.{k}")
                for k in MONOMIALS
            ))
        return cls(*comps)


@dataclass(frozen=True)
class GradedParts:
    """Homogeneous pieces of both components.

    ``g2``/``h2`` are ``(a, b, c)`` binary forms, ``g1``/``h1`` are ``(d, e)``
    linear forms and ``g0``/``h0`` constants.
    """

    g2: tuple
    g1: tuple
    g0: object
    h2: tuple
    h1: tuple
    h0: object

    def reassemble(self):
        return QuadraticMap(self.g2 + self.g1 + (self.g0,), self.h2 + self.h1 + (self.h0,))


def graded_parts(f):
    return GradedParts(f.g[:3], f.g[3:5], f.g[5], f.h[:3], f.h[3:5], f.h[5])


class AffineMap:
    """``z -> M z + s`` on the plane."""

    __slots__ = ("matrix", "shift")

    def __init__(self, matrix=((1, 0), (0, 1)), shift=(0, 0)):
        self.matrix = tuple(tuple(_scalar(c) for c in row) for row in matrix)
        self.shift = tuple(_scalar(c) for c in shift)

    @classmethod
    def identity(cls):
        return cls()

    @property
    def det(self):
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def is_invertible(self):
        return bool(self.det)

    def __call__(self, x, y):
        (a, b), (c, d) = self.matrix
        return a * x + b * y + self.shift[0], c * x + d * y + self.shift[1]

    def compose(self, other):
        """``self o other``."""
        (a, b), (c, d) = self.matrix
        (p, q), (r, s) = other.matrix
        m = ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))
        return AffineMap(m, self(*other.shift))

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self):
        det = self.det
        if not det:
            raise SingularAffine(f"linear part of {self} is not invertible")
        (a, b), (c, d) = self.matrix
        m = ((d / det, -b / det), (-c / det, a / det))
        s0, s1 = self.shift
        shift = (-(m[0][0] * s0 + m[0][1] * s1), -(m[1][0] * s0 + m[1][1] * s1))
        return AffineMap(m, shift)

    def as_polys(self, gens=XY):
        X, Y = (Poly.var(g, gens) for g in gens)
        (a, b), (c, d) = self.matrix
        return a * X + b * Y + self.shift[0], c * X + d * Y + self.shift[1]

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.matrix == other.matrix and self.shift == other.shift

    def __hash__(self):
        return hash((self.matrix, self.shift))

    def __repr__(self):
        (a, b), (c, d) = self.matrix
        return f"AffineMap([[{a}, {b}], [{c}, {d}]] + [{self.shift[0]}, {self.shift[1]}])"

    def to_json(self, encode=scalar_to_json):
        return {
            "matrix": [[encode(c) for c in row] for row in self.matrix],
            "shift": [encode(c) for c in self.shift],
        }

    @classmethod
    def from_json(cls, data):
        try:
            matrix = [[parse_scalar(c) for c in row] for row in data["matrix"]]
            shift = [parse_scalar(c) for c in data["shift"]]
        except (KeyError, TypeError):
            raise MalformedInput('affine map JSON needs "matrix" and "shift"') from None
        if len(matrix) != 2 or any(len(r) != 2 for r in matrix) or len(shift) != 2:
            raise MalformedInput("affine map needs a 2x2 matrix and a 2-vector shift")
        return cls(matrix, shift)


class AffinePair:
    """``(L, R)`` acting by ``f -> L o f o R``.

    Composition follows the twisted law ``(L1, R1)(L2, R2) = (L1 L2, R2 R1)``
    so that acting by a product is acting twice.
    """

    __slots__ = ("L", "R")

    def __init__(self, L, R):
        if not L.is_invertible() or not R.is_invertible():
            raise SingularAffine("both affine maps of a pair must be invertible")
        self.L = L
        self.R = R

    @classmethod
    def identity(cls):
        return cls(AffineMap(), AffineMap())

    def compose(self, other):
        return AffinePair(self.L @ other.L, other.R @ self.R)

    def __mul__(self, other):
        if not isinstance(other, AffinePair):
            return NotImplemented
        return self.compose(other)

    def inverse(self):
        return AffinePair(self.L.inverse(), self.R.inverse())

    def __eq__(self, other):
        if not isinstance(other, AffinePair):
            return NotImplemented
        return self.L == other.L and self.R == other.R

    def __hash__(self):
        return hash((self.L, self.R))

    def __repr__(self):
        return f"AffinePair(L={self.L!r}, R={self.R!r})"

    def to_json(self, encode=scalar_to_json):
        return {"L": self.L.to_json(encode), "R": self.R.to_json(encode)}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(AffineMap.from_json(data["L"]), AffineMap.from_json(data["R"]))


def act(pair, f):
    """``L o f o R`` as a new :class:`QuadraticMap`."""
    if not pair.L.is_invertible() or not pair.R.is_invertible():
        raise SingularAffine("acting pair has a singular linear part")
    g = compose_quadratic(f.g, pair.R)
    h = compose_quadratic(f.h, pair.R)
    (a, b), (c, d) = pair.L.matrix
    s, t = pair.L.shift
    new_g = [a * p + b * q for p, q in zip(g, h)]
    new_h = [c * p + d * q for p, q in zip(g, h)]
    new_g[5] += s
    new_h[5] += t
    return QuadraticMap(new_g, new_h)


def random_affine_map(rng, bound, max_den=1):
    while True:
        vals = [
            Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
            for _ in range(6)
        ]
        A = AffineMap(((vals[0], vals[1]), (vals[2], vals[3])), (vals[4], vals[5]))
        if A.det:
            return A


def random_affine_pair(seed, bound, max_den=1):
    """Deterministic random pair with entries in ``[-bound, bound]``.

    With ``max_den > 1`` entries are integers in that range divided by a
    random denominator up to ``max_den``. Singular draws are resampled.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    L = random_affine_map(rng, bound, max_den)
    R = random_affine_map(rng, bound, max_den)
    return AffinePair(L, R)


def random_map(rng, bound):
    """Random map with integer coefficients uniform in ``[-bound, bound]``."""
    vals = [Fraction(rng.randint(-bound, bound)) for _ in range(12)]
    return QuadraticMap(vals[:6], vals[6:])


# -- inline map syntax ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([xy])|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text, rationalize):
        self.text = text
        self.rationalize = rationalize
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise MalformedInput(f"unexpected character {text[pos:].strip()[0]!r} at column {pos + 1}")
            kind = "num" if m.group(1) else "var" if m.group(2) else "op"
            self.tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex) + 1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text) + 1)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        p = self.expr()
        kind, val, col = self.peek()
        if kind is not None:
            raise MalformedInput(f"unexpected {val!r} at column {col}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, col = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or not q:
                    raise MalformedInput(f"division by a non-constant or zero at column {col}")
                p = p / q.constant_term()
        return p

    def unary(self):
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[1] in ("^", "**"):
            _, _, col = self.take()
            kind, val, col = self.take()
            if kind != "num" or not val.isdigit():
                raise MalformedInput(f"exponent must be a non-negative integer at column {col}")
            p = p ** int(val)
        return p

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return Poly.const(parse_scalar(val, self.rationalize, where=f"column {col}"), XY)
        if kind == "var":
            return Poly.var(val, XY)
        if val == "(":
            p = self.expr()
            if self.take()[1] != ")":
                raise MalformedInput(f"missing ')' for '(' at column {col}")
            return p
        raise MalformedInput(f"unexpected {val!r} at column {col}" if val else "unexpected end of input")


def _split_components(text):
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in ",;" and depth == 0:
            return text[:i], text[i + 1:]
    raise MalformedInput("inline map needs two components separated by ',' or ';'")


def parse_map(text, rationalize=None):
    """Parse ``"x^2 + y, y^2 + x"`` (optionally parenthesized) into a map."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        inner = s[1:-1]
        depth, balanced = 0, True
        for ch in inner:
            depth += ch == "("
            depth -= ch == ")"
            if depth < 0:
                balanced = False
                break
        if balanced and depth == 0:
            s = inner
    left, right = _split_components(s)
    polys = [_Parser(part, rationalize).parse() for part in (left, right)]
    return QuadraticMap.from_polys(*polys)
