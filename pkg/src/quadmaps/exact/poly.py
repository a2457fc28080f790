"""Sparse exact polynomials in a fixed tuple of variables.

Most of the package works in two variables (``x, y`` on the source and
``u, v`` on the target), but elimination passes through three or four, so the
class is written for any number of generators. Coefficients are Python ints,
:class:`fractions.Fraction` or :class:`~quadmaps.exact.tower.TowerScalar`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd as igcd
from numbers import Rational

from ..errors import NotDivisible, ZeroPolynomial
from .tower import TowerScalar

XY = ("x", "y")
UV = ("u", "v")


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _norm(a / b)


def _is_scalar(c):
    return isinstance(c, (int, Rational, TowerScalar))


def parse_rational(text):
    """Parse ``"p"`` or ``"p/q"`` into a Fraction; decimals are rejected."""
    text = text.strip()
    num, _, den = text.partition("/")
    try:
        return Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None


def grlex_key(exps):
    return (sum(exps), exps)


class Poly:
    """An immutable sparse polynomial ``{exponent tuple: coefficient}``.

    Zero coefficients are never stored, so ``terms`` is empty exactly for the
    zero polynomial.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, terms=None, gens=XY):
        self.gens = tuple(gens)
        clean = {}
        if terms:
            n = len(self.gens)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match generators {self.gens}")
                if c:
                    clean[e] = _norm(c)
        self.terms = clean

    @classmethod
    def _raw(cls, terms, gens):
        p = object.__new__(cls)
        p.gens = gens
        p.terms = terms
        return p

    @classmethod
    def const(cls, c, gens=XY):
        gens = tuple(gens)
        return cls._raw({(0,) * len(gens): _norm(c)} if c else {}, gens)

    @classmethod
    def var(cls, name, gens=XY):
        gens = tuple(gens)
        e = tuple(int(g == name) for g in gens)
        if sum(e) != 1:
            raise ValueError(f"{name!r} is not one of {gens}")
        return cls._raw({e: 1}, gens)

    @classmethod
    def zero(cls, gens=XY):
        return cls._raw({}, tuple(gens))

    def index(self, var):
        try:
            return self.gens.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not one of {self.gens}") from None

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.gens != self.gens:
                raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
            return other
        if _is_scalar(other):
            return Poly.const(other, self.gens)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = _norm(s)
            else:
                terms.pop(e, None)
        return Poly._raw(terms, self.gens)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.gens)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        if not c:
            return Poly.zero(self.gens)
        return Poly._raw({e: _norm(v * c) for e, v in self.terms.items()}, self.gens)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(terms, self.gens)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Poly.const(1, self.gens), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        if not _is_scalar(c):
            return NotImplemented
        return Poly._raw({e: _div(v, c) for e, v in self.terms.items()}, self.gens)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.gens == other.gens and self.terms == other.terms
        if _is_scalar(other):
            return self.terms == Poly.const(other, self.gens).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.gens), 0)

    def coeff(self, *exps):
        return self.terms.get(tuple(exps), 0)

    def degree(self, var=None):
        """Total degree, or the degree in ``var``; the zero polynomial has -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.index(var)
        return max(e[i] for e in self.terms)

    def variables(self):
        return [g for i, g in enumerate(self.gens) if any(e[i] for e in self.terms)]

    def coeffs_in(self, var):
        """Map ``k -> coefficient of var**k`` (polynomials free of ``var``)."""
        i = self.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: Poly._raw(t, self.gens) for k, t in out.items()}

    def leading_coeff(self, var):
        if not self.terms:
            return Poly.zero(self.gens)
        parts = self.coeffs_in(var)
        return parts[max(parts)]

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    def diff(self, var):
        i = self.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Poly(terms, self.gens)

    # -- substitution -----------------------------------------------------

    def subs(self, var, value):
        """Substitute a scalar for ``var``; generators are kept."""
        i = self.index(var)
        powers = {}
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k if k else 1
            e2 = e[:i] + (0,) + e[i + 1:]
            terms[e2] = terms.get(e2, 0) + c * powers[k]
        return Poly(terms, self.gens)

    def __call__(self, *values):
        """Evaluate at a point given in generator order."""
        if len(values) != len(self.gens):
            raise ValueError(f"expected {len(self.gens)} values")
        total = 0
        cache = [dict() for _ in values]
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    p = cache[i].get(k)
                    if p is None:
                        p = cache[i][k] = values[i] ** k
                    t = t * p
            total = total + t
        return _norm(total) if isinstance(total, Fraction) else total

    def compose(self, mapping, gens=None):
        """Substitute polynomials for generators: ``mapping[var] -> Poly``.

        Generators missing from ``mapping`` are replaced by themselves, which
        requires the target generators to contain them.
        """
        gens = tuple(gens) if gens is not None else self.gens
        images = []
        for g in self.gens:
            if g in mapping:
                img = mapping[g]
                if not isinstance(img, Poly):
                    img = Poly.const(img, gens)
            else:
                img = Poly.var(g, gens)
            images.append(img)
        cache = [{0: Poly.const(1, gens), 1: img} for img in images]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = power(i, k - 1) * images[i]
            return cache[i][k]

        result = Poly.zero(gens)
        for e, c in self.terms.items():
            t = Poly.const(c, gens)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def embed(self, gens):
        """Re-express in a larger or reordered generator tuple."""
        gens = tuple(gens)
        idx = []
        for i, g in enumerate(self.gens):
            if g in gens:
                idx.append(gens.index(g))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"{g!r} occurs but is not in {gens}")
            else:
                idx.append(None)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(gens)
            for i, k in enumerate(e):
                if idx[i] is not None:
                    new[idx[i]] = k
            terms[tuple(new)] = c
        return Poly._raw(terms, gens)

    def rename(self, gens):
        return Poly._raw(dict(self.terms), tuple(gens))

    # -- division and normalization ---------------------------------------

    def exact_div(self, other):
        """Quotient of an exact division; raises NotDivisible otherwise."""
        if not other.terms:
            raise ZeroPolynomial("division by the zero polynomial")
        if other.is_constant():
            return self / other.constant_term()
        lead = max(other.terms)
        lc = other.terms[lead]
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem)
            m = tuple(a - b for a, b in zip(e, lead))
            if min(m) < 0:
                raise NotDivisible("polynomial division is not exact")
            c = _div(rem[e], lc)
            quot[m] = c
            for e2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(e2, m))
                s = rem.get(k, 0) - c * c2
                if s:
                    rem[k] = _norm(s)
                else:
                    rem.pop(k, None)
        return Poly._raw(quot, self.gens)

    def content(self):
        """Positive rational content: coefficients / content are coprime ints."""
        num, den = 0, 1
        for c in self.terms.values():
            c = Fraction(c)
            num = igcd(num, c.numerator)
            den = den * c.denominator // igcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def canonical(self):
        """Integer coefficients with content 1, leading grlex coefficient > 0."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self / c

    def is_canonical(self):
        return self == self.canonical()

    # -- rendering --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            neg = c < 0 if not isinstance(c, TowerScalar) else False
            mag = -c if neg else c
            if isinstance(c, TowerScalar):
                body = f"({c})*{mono}" if mono else f"({c})"
            elif not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, gens={self.gens})"

    def to_json(self):
        """Term list ``[{"i":..., "j":..., "c":"p/q"}]`` in grlex order.

        Exponents are keyed ``i, j, k, l`` for the first four generators.
        """
        keys = "ijkl"
        if len(self.gens) > len(keys):
            raise ValueError("JSON form supports at most four generators")
        out = []
        for e, c in self.sorted_terms():
            term = {keys[n]: k for n, k in enumerate(e)}
            term["c"] = c.to_json() if isinstance(c, TowerScalar) else str(Fraction(c))
            out.append(term)
        return out

    @classmethod
    def from_json(cls, data, gens=UV):
        if isinstance(data, str):
            data = json.loads(data)
        gens = tuple(gens)
        keys = "ijkl"[: len(gens)]
        terms = {}
        for term in data:
            e = tuple(int(term.get(k, 0)) for k in keys)
            terms[e] = terms.get(e, 0) + parse_rational(term["c"])
        return cls(terms, gens)


# -- determinants and resultants -------------------------------------------


def _exact_div_any(a, b):
    if isinstance(a, Poly):
        return a.exact_div(b)
    return _div(a, b)


def bareiss_det(matrix):
    """Fraction-free determinant of a square matrix over an integral domain.

    Entries may be scalars or :class:`Poly` objects over the same generators.
    """
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[0][0] * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                val = pivot * row_i[j] - mik * row_k[j]
                row_i[j] = val if prev is None else _exact_div_any(val, prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(p_coeffs, q_coeffs, zero=0):
    """Sylvester matrix from coefficient lists in decreasing degree order."""
    m, n = len(p_coeffs) - 1, len(q_coeffs) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p_coeffs) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q_coeffs) + [zero] * (size - n - 1 - i))
    return rows


def _check_operands(p, q):
    if not isinstance(p, Poly) or not isinstance(q, Poly):
        raise TypeError("resultant operands must be Poly objects")
    if p.gens != q.gens:
        raise ValueError(f"generator mismatch: {p.gens} vs {q.gens}")
    if not p.terms or not q.terms:
        raise ZeroPolynomial("resultant of the zero polynomial")


def _special_degrees(p, q, m, n):
    if m == 0:
        return p ** n
    if n == 0:
        return q ** m
    return None


def resultant_bareiss(p, q, var):
    """Resultant as a symbolic Sylvester determinant with Poly entries."""
    _check_operands(p, q)
    m, n = p.degree(var), q.degree(var)
    special = _special_degrees(p, q, m, n)
    if special is not None:
        return special
    pc, qc = p.coeffs_in(var), q.coeffs_in(var)
    zero = Poly.zero(p.gens)
    prow = [pc.get(k, zero) for k in range(m, -1, -1)]
    qrow = [qc.get(k, zero) for k in range(n, -1, -1)]
    return bareiss_det(sylvester_matrix(prow, qrow, zero))


def _scalar_rows(p, var, degree):
    i = p.index(var)
    row = [0] * (degree + 1)
    for e, c in p.terms.items():
        row[degree - e[i]] = c
    return row


def _interp_resultant(p, q, var, m, n):
    others = [g for g in p.gens if g != var and (p.degree(g) > 0 or q.degree(g) > 0)]
    if not others:
        det = bareiss_det(sylvester_matrix(_scalar_rows(p, var, m), _scalar_rows(q, var, n)))
        return Poly.const(det, p.gens)
    w = others[0]
    bound = n * max(p.degree(w), 0) + m * max(q.degree(w), 0)
    nodes = list(range(bound + 1))
    values = [_interp_resultant(p.subs(w, t), q.subs(w, t), var, m, n) for t in nodes]
    return _newton_interpolate(nodes, values, w)


def _newton_interpolate(nodes, values, var):
    gens = values[0].gens
    coeffs = list(values)
    count = len(nodes)
    for j in range(1, count):
        for i in range(count - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (nodes[i] - nodes[i - j])
    x = Poly.var(var, gens)
    result = coeffs[-1]
    for i in range(count - 2, -1, -1):
        result = result * (x - nodes[i]) + coeffs[i]
    return result


def resultant(p, q, var):
    """``Res_var(p, q)``: the Sylvester determinant with respect to ``var``.

    If ``p`` is free of ``var`` the result is ``p**deg_var(q)`` and
    symmetrically. The determinant is evaluated fraction-free at integer
    points of the remaining variables and interpolated back, using the formal
    degrees of ``p`` and ``q`` so that leading-coefficient cancellation at a
    node cannot corrupt the result.
    """
    _check_operands(p, q)
    m, n = p.degree(var), q.degree(var)
    special = _special_degrees(p, q, m, n)
    if special is not None:
        return special
    return _interp_resultant(p, q, var, m, n)


# -- gcd and squarefree parts ----------------------------------------------


def _content_in(p, var):
    g = None
    for c in p.coeffs_in(var).values():
        g = c if g is None else gcd_prs(g, c)
        if g.is_constant():
            return Poly.const(1, p.gens)
    return g


def _primitive_in(p, var):
    if not p.terms:
        return p
    return p.exact_div(_content_in(p, var))


def pseudo_remainder(a, b, var):
    """``lc(b)**k * a mod b`` with respect to ``var``."""
    db = b.degree(var)
    lb = b.leading_coeff(var)
    x = Poly.var(var, a.gens)
    r = a
    while r.terms and r.degree(var) >= db:
        dr = r.degree(var)
        r = lb * r - r.leading_coeff(var) * x ** (dr - db) * b
    return r


def gcd_prs(p, q):
    """Canonical gcd over Q via recursive primitive polynomial remainder sequences."""
    if not p.terms:
        return q.canonical()
    if not q.terms:
        return p.canonical()
    vs = [g for g in p.gens if p.degree(g) > 0 or q.degree(g) > 0]
    if not vs:
        return Poly.const(1, p.gens)
    z = vs[0]
    cp, cq = _content_in(p, z), _content_in(q, z)
    c = gcd_prs(cp, cq)
    a, b = p.exact_div(cp), q.exact_div(cq)
    if a.degree(z) < b.degree(z):
        a, b = b, a
    while True:
        if not b.terms:
            g = _primitive_in(a, z)
            break
        if b.degree(z) == 0:
            g = Poly.const(1, p.gens)
            break
        r = pseudo_remainder(a, b, z)
        a, b = b, _primitive_in(r, z)
    return (c * g).canonical()


def _int_content(p):
    g = 0
    for c in p.terms.values():
        g = igcd(g, c)
    return g


def _max_norm(p):
    return max(abs(c) for c in p.terms.values())


def _symmetric_mod(c, m):
    r = c % m
    return r - m if 2 * r > m else r


def _divides(d, p):
    try:
        p.exact_div(d)
    except NotDivisible:
        return False
    return True


def _heu(a, b, vs, tries=6):
    """Full gcd (with integer content) of integer polynomials, or None."""
    if not a.terms:
        return b
    if not b.terms:
        return a
    if not vs:
        return Poly.const(igcd(a.constant_term(), b.constant_term()), a.gens)
    z, rest = vs[0], vs[1:]
    ca, cb = _int_content(a), _int_content(b)
    c = igcd(ca, cb)
    a, b = a / ca, b / cb
    xi = 2 * min(_max_norm(a), _max_norm(b)) + 29
    zv = Poly.var(z, a.gens)
    for _ in range(tries):
        gamma = _heu(a.subs(z, xi), b.subs(z, xi), rest)
        if gamma is None:
            return None
        g, e = Poly.zero(a.gens), 0
        while gamma.terms:
            digit = Poly({k: _symmetric_mod(v, xi) for k, v in gamma.terms.items()}, a.gens)
            g = g + digit * zv**e
            gamma = (gamma - digit) / xi
            e += 1
        if g.terms:
            g = g / _int_content(g)
            if _divides(g, a) and _divides(g, b):
                return g * c
        xi = xi * 73794 // 27011
    return None


def gcd(p, q):
    """Canonical gcd over Q.

    Rational inputs go through the heuristic evaluation gcd (reconstruction
    from an integer image, accepted only after exact division checks); other
    inputs, or a heuristic failure, use :func:`gcd_prs`.
    """
    if not p.terms or not q.terms:
        return gcd_prs(p, q)
    rational = all(isinstance(c, Rational) for c in p.terms.values()) and all(
        isinstance(c, Rational) for c in q.terms.values()
    )
    if rational:
        a, b = p.canonical(), q.canonical()
        vs = [g for g in p.gens if a.degree(g) > 0 or b.degree(g) > 0]
        g = _heu(a, b, vs)
        if g is not None:
            return g.canonical()
    return gcd_prs(p, q)


def squarefree_part(p):
    """Product of the distinct irreducible factors of ``p``, canonically scaled."""
    if not p.terms:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    g = p
    for var in p.variables():
        g = gcd(g, p.diff(var))
        if g.is_constant():
            break
    return p.exact_div(g).canonical()


# -- univariate helpers -----------------------------------------------------


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p, var):
    """Distinct rational roots of ``p``, which must involve only ``var``."""
    others = [g for g in p.variables() if g != var]
    if others:
        raise ValueError(f"{p} is not univariate in {var}")
    if not p.terms:
        raise ZeroPolynomial("roots of the zero polynomial")
    i = p.index(var)
    coeffs = {e[i]: Fraction(c) for e, c in p.terms.items()}
    low = min(coeffs)
    roots = {Fraction(0)} if low > 0 else set()
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // igcd(den, c.denominator)
    ints = {k - low: int(c * den) for k, c in coeffs.items()}
    top = max(ints)
    if top == 0:
        return sorted(roots)
    for a in _divisors(ints[0]):
        for b in _divisors(ints[top]):
            for r in (Fraction(a, b), Fraction(-a, b)):
                if sum(c * r**k for k, c in ints.items()) == 0:
                    roots.add(r)
    return sorted(roots)
