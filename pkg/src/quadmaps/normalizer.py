"""Explicit witnesses ``(L, R)`` taking a map to its orbit representative."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classifier import OrbitLabel, classify_complex, orbit_metadata
from .errors import UnsupportedOrbit
from .exact.tower import QQ, Tower, adjoin_sqrt
from .invariants import jacobian_conic, reduce_to_pencil_chart
from .maps import AffineMap, AffinePair, act, scalar_to_json

_NONCONSTRUCTIVE = {OrbitLabel.F1, OrbitLabel.F1P, OrbitLabel.F2, OrbitLabel.F3,
                    OrbitLabel.F4, OrbitLabel.F4P}


@dataclass(frozen=True)
class Witness:
    label: OrbitLabel
    pair: AffinePair
    tower: Tower = QQ

    def to_json(self):
        def enc(c):
            return self.tower(c).to_json() if self.tower.depth else [scalar_to_json(c)]

        return {
            "label": str(self.label),
            "tower": [str(d.to_rational()) if d.is_rational() else d.to_json()
                      for d in self.tower.radicands],
            "L": self.pair.L.to_json(encode=enc),
            "R": self.pair.R.to_json(encode=enc),
        }


def verify_witness(pair, f, label):
    return act(pair, f) == orbit_metadata(label).representative


class _Builder:
    """Current map ``cur = L o f o R``, updated one elementary move at a time."""

    def __init__(self, f):
        self.L = AffineMap.identity()
        self.R = AffineMap.identity()
        self.cur = f

    def target(self, L):
        self.cur = act(AffinePair(L, AffineMap.identity()), self.cur)
        self.L = L @ self.L

    def source(self, R):
        self.cur = act(AffinePair(AffineMap.identity(), R), self.cur)
        self.R = self.R @ R

    def target_shift(self, du, dv):
        self.target(AffineMap(((1, 0), (0, 1)), (du, dv)))

    def target_linear(self, m):
        self.target(AffineMap(m, (0, 0)))

    def source_shift(self, dx, dy):
        self.source(AffineMap(((1, 0), (0, 1)), (dx, dy)))

    def drop_constants(self):
        self.target_shift(-self.cur.g[5], -self.cur.h[5])

    def forms_to_xy(self, l1, l2):
        """Source change with ``l1 o R = x`` and ``l2 o R = y``."""
        N = AffineMap((tuple(l1), tuple(l2)), (0, 0))
        self.source(N.inverse())

    def form_to_x(self, l):
        a, b = l
        self.forms_to_xy(l, (0, 1) if a else (1, 0))


def _sqrt_direction(q):
    """``l`` with ``q = k * l^2`` for a square binary form ``q``, and ``k``."""
    a, b, c = q
    if a:
        return (1, b / (2 * a)), a
    return (0, 1), c


def _squarefree_kernel(d):
    """``(s, k)`` with ``d = s^2 * k``, ``s`` rational and ``k`` a squarefree integer."""
    d = Fraction(d)
    n = d.numerator * d.denominator
    s, k, p = 1, 1, 2
    sign = -1 if n < 0 else 1
    n = abs(n)
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            k *= p
        p += 1
    return Fraction(s, d.denominator), sign * k * n


def _split(q):
    """``q = k * l1 * l2`` with linear forms over ``Q(sqrt(disc))``."""
    a, b, c = q
    s, kernel = _squarefree_kernel(b * b - 4 * a * c)
    tower, root = adjoin_sqrt(QQ, kernel)
    root = root * s
    if a:
        r1 = (-b + root) / (2 * a)
        r2 = (-b - root) / (2 * a)
        return (1, -r1), (1, -r2), a, tower
    return (0, 1), (b, c), 1, tower


def _pencil_coords(l, m):
    """``(p, q)`` with ``m = p * l1 + q * l2`` for a basis ``l = (l1, l2)``."""
    (a1, b1), (a2, b2) = l
    d = a1 * b2 - a2 * b1
    return (m[0] * b2 - m[1] * a2) / d, (a1 * m[1] - b1 * m[0]) / d


def _normal_f5_f6(b):
    J = jacobian_conic(b.cur)
    direction, _ = _sqrt_direction((J.A, J.B, J.C))
    b.form_to_x(direction)
    (a1, b1, _, _, _, _), (a2, b2, _, _, _, _) = b.cur.g, b.cur.h
    b.target(AffineMap(((a1, b1), (a2, b2)), (0, 0)).inverse())
    e2, d2 = b.cur.h[4], b.cur.h[3]
    b.source_shift(-e2, -d2)
    b.drop_constants()
    p = b.cur.g[3]
    if p:
        b.source(AffineMap(((-p, 0), (0, 1)), (0, 0)))
        b.target_linear(((1 / (p * p), 0), (0, -1 / p)))


def _normal_pencil(b, label):
    L0, _, _ = reduce_to_pencil_chart(b.cur)
    b.target(L0)
    g, h = b.cur.g, b.cur.h
    g2, g1, h1 = g[:3], g[3:5], h[3:5]
    tower = QQ
    L = OrbitLabel
    if label is L.F17:
        b.drop_constants()
    elif label is L.F16:
        b.form_to_x(g1)
        b.drop_constants()
    elif label is L.F12:
        A = AffineMap((g1, h1), (g[5], h[5]))
        b.target(A.inverse())
    elif label is L.F15:
        l, k = _sqrt_direction(g2)
        b.form_to_x(l)
        b.source_shift(-b.cur.g[3] / (2 * k), 0)
        b.drop_constants()
        b.target_linear(((1 / k, 0), (0, 1)))
    elif label is L.F14:
        l, k = _sqrt_direction(g2)
        b.forms_to_xy(l, g1)
        b.source(AffineMap(((1, 0), (0, k)), (0, 0)))
        b.drop_constants()
        b.target_linear(((1 / k, 0), (0, 1)))
    elif label is L.F13:
        l1, l2, k, tower = _split(g2)
        b.forms_to_xy(l1, l2)
        k = b.cur.g[1]
        b.source_shift(-b.cur.g[4] / k, -b.cur.g[3] / k)
        b.drop_constants()
        b.target_linear(((1 / k, 0), (0, 1)))
    elif label is L.F7:
        l1, l2, k, tower = _split(g2)
        p, q = _pencil_coords((l1, l2), h1)
        b.forms_to_xy(tuple(c * p for c in l1), tuple(c * q for c in l2))
        b.target_linear(((1 / b.cur.g[1], 0), (0, 1)))
        d1, e1, f1, f2 = b.cur.g[3], b.cur.g[4], b.cur.g[5], b.cur.h[5]
        b.source_shift(-e1, -d1)
        b.target_shift(e1 * d1 - f1, d1 + e1 - f2)
    elif label is L.F8:
        a, bb, c = g2
        d, e = h1
        # g2 = h1 * m with m = s x + r y
        s, r = (a / d, c / e) if d and e else ((a / d, bb / d) if d else (bb / e, c / e))
        b.forms_to_xy(h1, (s, r))
        k = b.cur.g[1]
        b.source_shift(-b.cur.g[4] / k, 0)
        d1 = b.cur.g[3]
        b.drop_constants()
        b.target_linear(((1 / k, -d1 / k), (0, 1)))
        b.target_linear(((0, 1), (1, 0)))
    elif label is L.F9:
        l, k = _sqrt_direction(g2)
        b.forms_to_xy(l, h1)
        b.target_linear(((1, -b.cur.g[4]), (0, 1)))
        b.source_shift(-b.cur.g[3] / (2 * k), 0)
        b.drop_constants()
        b.target_linear(((1 / k, 0), (0, 1)))
    elif label is L.F10:
        k = _binary_ratio(g2, h1)
        b.forms_to_xy(h1, g1)
        b.source(AffineMap(((1, 0), (0, k)), (0, 0)))
        b.drop_constants()
        b.target_linear(((1 / k, 0), (0, 1)))
    elif label is L.F11:
        k = _binary_ratio(g2, h1)
        b.form_to_x(h1)
        m = b.cur.g[3]
        b.target_linear(((1, -m), (0, 1)))
        b.drop_constants()
        b.target_linear(((1 / k, 0), (0, 1)))
    else:
        raise UnsupportedOrbit(f"no constructive normal form for {label}")
    return tower


def _binary_ratio(q, l):
    """``k`` with ``q = k * l^2``."""
    a, b, c = q
    d, e = l
    return a / (d * d) if d else c / (e * e)


def normalize(f):
    label = classify_complex(f)
    if label in _NONCONSTRUCTIVE:
        raise UnsupportedOrbit(f"no constructive witness for orbit {label}")
    b = _Builder(f)
    if label in (OrbitLabel.F5, OrbitLabel.F6):
        tower = QQ
        _normal_f5_f6(b)
    else:
        tower = _normal_pencil(b, label)
    pair = AffinePair(b.L, b.R)
    if not verify_witness(pair, f, label):
        raise AssertionError(f"witness for {f} does not reach {label}: got {act(pair, f)}")
    return Witness(label, pair, tower)


__all__ = ["Witness", "normalize", "verify_witness"]
