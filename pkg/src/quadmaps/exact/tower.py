"""Exact arithmetic in towers of quadratic extensions of the rationals.

An element of ``Q(s_1, ..., s_k)`` with ``s_i**2 = d_i`` is stored as ``2**k``
rational coordinates over the multi-quadratic basis: index ``m`` holds the
coefficient of the product of the ``s_i`` whose bit ``i - 1`` is set in ``m``.
The lower half of the coordinates is therefore the part free of ``s_k`` and
the upper half the coefficient of ``s_k``, which is what every operation
recurses on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt
from numbers import Rational

from ..errors import DepthExceeded

MAX_DEPTH = 3


def _zero(n):
    return (Fraction(0),) * n


def _is_zero(x):
    return not any(x)


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _neg(x):
    return tuple(-a for a in x)


def _mul(rads, x, y):
    if not rads:
        return (x[0] * y[0],)
    h = len(x) // 2
    lower = rads[:-1]
    a, b, c, e = x[:h], x[h:], y[:h], y[h:]
    if _is_zero(b) and _is_zero(e):
        return _mul(lower, a, c) + _zero(h)
    be = _mul(lower, b, e)
    first = _add(_mul(lower, a, c), _mul(lower, be, rads[-1]))
    second = _add(_mul(lower, a, e), _mul(lower, b, c))
    return first + second


def _inv(rads, x):
    if not rads:
        return (1 / x[0],)
    h = len(x) // 2
    lower = rads[:-1]
    a, b = x[:h], x[h:]
    if _is_zero(b):
        return _inv(lower, a) + _zero(h)
    norm = _sub(_mul(lower, a, a), _mul(lower, _mul(lower, b, b), rads[-1]))
    ninv = _inv(lower, norm)
    return _mul(lower, a, ninv) + _neg(_mul(lower, b, ninv))


def _rational_sqrt(q):
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _sqrt(rads, x):
    """Square root of ``x`` inside the tower given by ``rads`` or None."""
    if not rads:
        r = _rational_sqrt(x[0])
        return None if r is None else (r,)
    h = len(x) // 2
    lower = rads[:-1]
    d = rads[-1]
    a, b = x[:h], x[h:]
    if _is_zero(b):
        p = _sqrt(lower, a)
        if p is not None:
            return p + _zero(h)
        # a = q^2 d  =>  sqrt(a) = q s
        q = _sqrt(lower, _mul(lower, a, _inv(lower, d)))
        if q is not None:
            return _zero(h) + q
        return None
    norm = _sub(_mul(lower, a, a), _mul(lower, _mul(lower, b, b), d))
    r = _sqrt(lower, norm)
    if r is None:
        return None
    half = (Fraction(1, 2),) + _zero(h - 1)
    for cand in (_add(a, r), _sub(a, r)):
        p = _sqrt(lower, _mul(lower, cand, half))
        if p is None or _is_zero(p):
            continue
        q = _mul(lower, b, _inv(lower, _add(p, p)))
        return p + q
    return None


def _sign(rads, x):
    if not rads:
        return (x[0] > 0) - (x[0] < 0)
    h = len(x) // 2
    lower = rads[:-1]
    a, b = x[:h], x[h:]
    sa, sb = _sign(lower, a), _sign(lower, b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d
    diff = _sub(_mul(lower, a, a), _mul(lower, _mul(lower, b, b), rads[-1]))
    return sa * _sign(lower, diff)


class Tower:
    """The field ``Q(sqrt(d_1), ..., sqrt(d_k))`` for ``k <= MAX_DEPTH``.

    Each radicand ``d_i`` is an element of the tower below it that is not a
    square there. Towers are compared by their radicand sequence.
    """

    __slots__ = ("radicands", "_coords", "_real")

    def __init__(self, radicands=()):
        radicands = tuple(radicands)
        if len(radicands) > MAX_DEPTH:
            raise DepthExceeded(f"tower depth {len(radicands)} exceeds {MAX_DEPTH}")
        coords = []
        for i, d in enumerate(radicands):
            sub = Tower(radicands[:i]) if i else None
            coords.append(_coerce_coords(sub, d, 1 << i))
        self.radicands = radicands
        self._coords = tuple(coords)
        self._real = None

    @property
    def depth(self):
        return len(self.radicands)

    @property
    def dimension(self):
        return 1 << self.depth

    def __eq__(self, other):
        return isinstance(other, Tower) and self._coords == other._coords

    def __hash__(self):
        return hash(self._coords)

    def __repr__(self):
        return f"Tower({[str(d) for d in self.radicands]})"

    def extends(self, other):
        return self._coords[: other.depth] == other._coords

    def is_real(self):
        """True when every radicand is positive, so the tower embeds in R."""
        if self._real is None:
            self._real = all(
                _sign(self._coords[:i], c) > 0 for i, c in enumerate(self._coords)
            )
        return self._real

    def __call__(self, value):
        return TowerScalar(self, _coerce_coords(self, value, self.dimension))

    def zero(self):
        return TowerScalar(self, _zero(self.dimension))

    def one(self):
        return self(1)

    def generator(self, i=-1):
        """The adjoined root ``sqrt(d_i)`` (default: the last one)."""
        i = range(self.depth)[i]
        coords = list(_zero(self.dimension))
        coords[1 << i] = Fraction(1)
        return TowerScalar(self, tuple(coords))

    def sqrt(self, value):
        """Exact square root of ``value`` in this tower, or None."""
        r = _sqrt(self._coords, _coerce_coords(self, value, self.dimension))
        return None if r is None else TowerScalar(self, r)


QQ = Tower()


def _coerce_coords(tower, value, n):
    if isinstance(value, TowerScalar):
        if tower is None or not tower.extends(value.tower):
            if _is_zero(value.coords[1:]):
                return (value.coords[0],) + _zero(n - 1)
            raise ValueError(f"{value!r} does not lie in {tower!r}")
        return value.coords + _zero(n - len(value.coords))
    if isinstance(value, (int, Rational)):
        return (Fraction(value),) + _zero(n - 1)
    raise TypeError(f"cannot coerce {type(value).__name__} into a tower")


def adjoin_sqrt(base, d):
    """Return ``(tower, root)`` with ``root**2 == d`` inside ``tower``.

    When ``d`` is already a square in ``base`` the base itself is returned.
    """
    d = base(d)
    if not d:
        raise ValueError("cannot adjoin the square root of zero")
    r = base.sqrt(d)
    if r is not None:
        return base, r
    ext = Tower(base.radicands + (d,))
    return ext, ext.generator()


def common_tower(*values):
    """Deepest tower among ``values``; all others must embed in it."""
    best = QQ
    for v in values:
        if isinstance(v, TowerScalar) and v.tower.depth > best.depth:
            best = v.tower
    for v in values:
        if isinstance(v, TowerScalar) and not best.extends(v.tower):
            if not _is_zero(v.coords[1:]):
                raise ValueError(f"{v.tower!r} and {best!r} are incompatible")
    return best


@total_ordering
class TowerScalar:
    """An immutable element of a :class:`Tower`."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower, coords):
        self.tower = tower
        self.coords = tuple(coords)

    def _lift(self, other):
        if isinstance(other, TowerScalar):
            if other.tower == self.tower:
                return self.tower, self.coords, other.coords
            t = common_tower(self, other)
            return t, _coerce_coords(t, self, t.dimension), _coerce_coords(t, other, t.dimension)
        if isinstance(other, (int, Rational)):
            return self.tower, self.coords, (Fraction(other),) + _zero(len(self.coords) - 1)
        return None

    def __add__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        t, x, y = lifted
        return TowerScalar(t, _add(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        t, x, y = lifted
        return TowerScalar(t, _sub(x, y))

    def __rsub__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        t, x, y = lifted
        return TowerScalar(t, _sub(y, x))

    def __neg__(self):
        return TowerScalar(self.tower, _neg(self.coords))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return TowerScalar(self.tower, tuple(a * other for a in self.coords))
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        t, x, y = lifted
        return TowerScalar(t, _mul(t._coords, x, y))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero tower element")
        return TowerScalar(self.tower, _inv(self.tower._coords, self.coords))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return TowerScalar(self.tower, tuple(a / other for a in self.coords))
        if not isinstance(other, TowerScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.tower.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return not _is_zero(self.coords)

    def __eq__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        _, x, y = lifted
        return x == y

    def __hash__(self):
        if _is_zero(self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.tower, self.coords))

    def is_rational(self):
        return _is_zero(self.coords[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def sign(self):
        if not self.tower.is_real():
            raise ValueError(f"sign is undefined in non-real {self.tower!r}")
        return _sign(self.tower._coords, self.coords)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def sqrt(self):
        return self.tower.sqrt(self)

    def __repr__(self):
        return f"TowerScalar({self})"

    def __str__(self):
        parts = []
        for m, c in enumerate(self.coords):
            if not c:
                continue
            names = [f"s{i + 1}" for i in range(self.tower.depth) if m >> i & 1]
            parts.append("*".join([str(c)] + names) if names else str(c))
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return [str(c) for c in self.coords]
