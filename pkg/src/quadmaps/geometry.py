"""Critical conic, topological degree, non-properness set and discriminant."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ExtraneousFactorUnresolved, GenericityExhausted, NotGenericallyFinite
from .exact.linalg import det, rank
from .exact.poly import UV, Poly, gcd, rational_roots, resultant, squarefree_part
from .invariants import jacobian_conic
from .maps import AffineMap, AffinePair, act

XYUV = ("x", "y", "u", "v")

# degree of the complex discriminant per orbit (0: empty curve)
EXPECTED_DISCRIMINANT_DEGREE = {
    "f1": 4, "f2": 3, "f3": 3, "f4": 2, "f5": 2, "f6": 1,
    "f7": 2, "f8": 1, "f9": 1, "f10": 0, "f12": 0,
}


# -- critical set -------------------------------------------------------------


@dataclass(frozen=True)
class ConicDescription:
    field: str
    kind: str
    poly: Poly

    def to_json(self):
        return {"field": self.field, "kind": self.kind, "poly": str(self.poly)}


def classify_conic(J, field="C"):
    """Kind of the zero set of the conic ``J`` over ``field`` ("C" or "R")."""
    poly = J.poly()
    A, B, C, D, E, F = J.as_tuple()
    if J.is_zero():
        return ConicDescription(field, "whole_plane", poly)
    if not (A or B or C):
        kind = "single_line" if (D or E) else "empty"
        return ConicDescription(field, kind, poly)
    q, full = J.quadratic_matrix(), J.full_matrix()
    r1, d1, d2 = rank(q), det(q), det(full)
    if r1 == 2:
        if field == "C" or d1 < 0:
            kind = "hyperbola" if d2 else "two_intersecting_lines"
        elif not d2:
            kind = "point"
        else:
            kind = "ellipse" if (A + C) * d2 < 0 else "empty"
    elif d2:
        kind = "parabola"
    elif rank(full) == 2:
        kind = "two_parallel_lines"
        if field == "R":
            disc = D * D - 4 * A * F if A else E * E - 4 * C * F
            if disc <= 0:
                kind = "empty"
    else:
        kind = "double_line"
    return ConicDescription(field, kind, poly)


def critical_set(f, field="C"):
    return classify_conic(jacobian_conic(f), field)


# -- coordinates and elimination -----------------------------------------------


def _random_linear(rng, bound=3, shift=True):
    while True:
        m = [[rng.randint(-bound, bound) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            s = (rng.randint(-bound, bound), rng.randint(-bound, bound)) if shift else (0, 0)
            return AffineMap(m, s)


def _components(f):
    """``(g - u, h - v)`` over the generators ``x, y, u, v``."""
    g, h = (p.embed(XYUV) for p in f.polys())
    return g - Poly.var("u", XYUV), h - Poly.var("v", XYUV)


def _pullback(p, T):
    """``p o T`` for a polynomial in ``u, v`` given in ``XYUV`` generators."""
    (a, b), (c, d) = T.matrix
    s, t = T.shift
    u, v = Poly.var("u", XYUV), Poly.var("v", XYUV)
    return p.compose({"u": u * a + v * b + s, "v": u * c + v * d + t})


def _to_uv(p):
    return p.embed(UV)


def _is_trivial(p):
    return p.is_constant()


def _gcd_all(polys):
    acc = None
    for p in polys:
        if not p.terms:
            continue
        acc = p if acc is None else gcd(acc, p)
    return acc


@dataclass
class _Chart:
    """A map in random coordinates ``F = T o f o S`` with its eliminants."""

    f: object
    S: AffineMap
    T: AffineMap

    def __post_init__(self):
        self.F = act(AffinePair(self.T, self.S), self.f)
        self.P, self.Q = _components(self.F)
        self._res = {}

    def eliminant(self, var):
        """``Res_var(g - u, h - v)``; the other source variable stays free."""
        if var not in self._res:
            self._res[var] = resultant(self.P, self.Q, var)
        return self._res[var]


def _in_general_position(F):
    """Every nonconstant component and J(F) has constant leading coefficients in x and y."""
    polys = list(F.polys()) + [jacobian_conic(F).poly()]
    for p in polys:
        d = p.degree()
        if d > 0 and (p.degree("x") != d or p.degree("y") != d):
            return False
    return True


def _random_chart(f, rng, tries=100):
    for _ in range(tries):
        chart = _Chart(f, _random_linear(rng), _random_linear(rng))
        if _in_general_position(chart.F):
            return chart
    raise GenericityExhausted(f"no chart in general position found for {f}")


# -- topological degree ----------------------------------------------------------


def _count_at(R, var, target):
    """Distinct roots in ``var`` of ``R(target)`` if the genericity checks pass."""
    lc = R.leading_coeff(var)
    if not lc.subs("u", target[0]).subs("v", target[1]).terms:
        return None
    r = R.subs("u", target[0]).subs("v", target[1])
    if gcd(r, r.diff(var)).degree(var) > 0:
        return None
    return r.degree(var)


def topological_degree(f, seed=0, max_attempts=20):
    """Number of preimages of a generic point, by exact fibre counting."""
    if jacobian_conic(f).is_zero():
        raise NotGenericallyFinite(f"the Jacobian of {f} vanishes identically")
    rng = seed if isinstance(seed, random.Random) else random.Random(f"degree:{seed}")
    identity = AffineMap.identity()
    chart = _Chart(f, identity, identity)
    for attempt in range(max_attempts):
        if attempt >= 3:
            chart = _Chart(f, _random_linear(rng, shift=False), identity)
        target = (rng.randint(-50, 50), rng.randint(-50, 50))
        nx = _count_at(chart.eliminant("y"), "x", target)
        if nx is None:
            continue
        ny = _count_at(chart.eliminant("x"), "y", target)
        if nx == ny:
            return nx
    raise GenericityExhausted(f"no generic target found for {f} in {max_attempts} attempts")


# -- non-properness set -----------------------------------------------------------


def _escape_polys(chart):
    """Leading coefficients whose zeros are where fibre points run off to infinity.

    A fibre point escapes over ``p`` iff its x or its y coordinate is
    unbounded, i.e. iff the leading x-coefficient of ``Res_y(g - u, h - v)``
    or the leading y-coefficient of ``Res_x(g - u, h - v)`` vanishes at ``p``.
    """
    return (
        chart.eliminant("y").leading_coeff("x"),
        chart.eliminant("x").leading_coeff("y"),
    )


def _leading_locus(chart):
    a, b = _escape_polys(chart)
    locus = a * b
    if _is_trivial(locus):
        return Poly.const(1, XYUV)
    return _pullback(squarefree_part(locus), chart.T)


def _rational_points(N, rng, tries=8):
    """Rational points on every component of ``N`` along one random line."""
    t = Poly.var("x", XYUV)
    for _ in range(tries):
        p0 = (rng.randint(-9, 9), rng.randint(-9, 9))
        d = (rng.randint(-5, 5), rng.randint(1, 5))
        line = N.compose({"u": t * d[0] + p0[0], "v": t * d[1] + p0[1]})
        if line.degree("x") < N.degree():
            continue
        roots = rational_roots(line, "x")
        probe = Poly.const(1, XYUV)
        for r in roots:
            probe = probe * (t - r)
        if probe.degree() == squarefree_part(line).degree():
            return [(p0[0] + r * d[0], p0[1] + r * d[1]) for r in roots]
    return None


def _verify_nonproper_point(f, point, rng):
    """An escaping fibre branch over ``point`` in fresh random coordinates.

    Along a target path into ``point`` one root of an eliminant runs off to
    infinity: the eliminant's degree over ``point`` is below its degree over
    a generic point of the path.
    """
    chart = _random_chart(f, rng)
    pu, pv = chart.T(*point)
    for var, other in (("x", "y"), ("y", "x")):
        R = chart.eliminant(other)
        at = R.subs("u", pu).subs("v", pv)
        if at.degree(var) < R.degree(var):
            return True
    return False


@dataclass(frozen=True)
class DiscriminantCurve:
    """Squarefree canonical curve in ``(u, v)``; ``polynomial`` is None if empty."""

    polynomial: Poly | None
    from_critical_image: bool = False
    from_nonproperness: bool = False
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def is_empty(self):
        return self.polynomial is None

    def __str__(self):
        return "empty" if self.polynomial is None else str(self.polynomial)

    def to_json(self):
        return {
            "empty": self.is_empty,
            "poly": None if self.is_empty else str(self.polynomial),
            "terms": None if self.is_empty else self.polynomial.to_json(),
            "from_critical_image": self.from_critical_image,
            "from_nonproperness": self.from_nonproperness,
        }


def _curve(p, **flags):
    if p is None or p.is_constant():
        return DiscriminantCurve(None, **flags)
    return DiscriminantCurve(_to_uv(squarefree_part(p)), **flags)


def nonproperness_set(f, seed=0, rounds=2):
    if jacobian_conic(f).is_zero():
        raise NotGenericallyFinite(f"the Jacobian of {f} vanishes identically")
    rng = seed if isinstance(seed, random.Random) else random.Random(f"nonproper:{seed}")
    charts = [_random_chart(f, rng) for _ in range(rounds)]
    return _nonproper_from(f, charts, rng)


def _nonproper_from(f, charts, rng):
    N = _gcd_all(_leading_locus(c) for c in charts)
    if N is None or _is_trivial(N):
        return DiscriminantCurve(None, from_nonproperness=True)
    points = _rational_points(N, rng)
    if points is None:
        raise ExtraneousFactorUnresolved(f"no rational points found on the non-proper locus {N}")
    for p in points:
        if not _verify_nonproper_point(f, p, rng):
            raise ExtraneousFactorUnresolved(f"no escaping branch over {p} on {N}")
    return _curve(N, from_nonproperness=True)


# -- discriminant ---------------------------------------------------------------


def _critical_candidates(chart):
    """Images of ``C(F)`` eliminated in both orders, pulled back to ``f``'s target."""
    J = jacobian_conic(chart.F).poly().embed(XYUV)
    out = []
    for first, second in (("x", "y"), ("y", "x")):
        r1 = resultant(chart.P, J, first)
        r2 = resultant(chart.Q, J, first)
        cand = resultant(r1, r2, second)
        if cand.terms:
            out.append(_pullback(cand, chart.T))
    return out


def discriminant_complex(f, seed=0, min_rounds=2, max_rounds=8, expected_degree=None):
    """``Delta(f)``: critical image joined with the non-properness set.

    Each round eliminates in random coordinates ``T o f o S`` with both
    elimination orders; the gcd over rounds strips the factors that depend on
    the coordinates. The result is checked against the expected degree of
    the orbit of ``f``.
    """
    if jacobian_conic(f).is_zero():
        raise NotGenericallyFinite(f"the Jacobian of {f} vanishes identically")
    if expected_degree is None:
        from .classifier import classify_complex

        expected_degree = EXPECTED_DISCRIMINANT_DEGREE.get(classify_complex(f).value)
    rng = seed if isinstance(seed, random.Random) else random.Random(f"discriminant:{seed}")
    charts, image = [], None
    result = None
    for k in range(max_rounds):
        chart = _random_chart(f, rng)
        charts.append(chart)
        image = _gcd_all([image] + _critical_candidates(chart) if image is not None
                         else _critical_candidates(chart))
        if k + 1 < min_rounds:
            continue
        if image is None:
            image = Poly.const(1, XYUV)
        nonproper = _nonproper_from(f, charts[:2], rng)
        total = image
        if not nonproper.is_empty:
            total = total * nonproper.polynomial.embed(XYUV)
        degree = 0 if total.is_constant() else squarefree_part(total).degree()
        result = _curve(
            total,
            from_critical_image=not image.is_constant(),
            from_nonproperness=not nonproper.is_empty,
        )
        if expected_degree is None or degree == expected_degree:
            return result
    raise ExtraneousFactorUnresolved(
        f"discriminant of {f} has degree {degree}, expected {expected_degree}: {result}"
    )


def verify_singular_point(p, pt):
    """True iff ``p`` and both partial derivatives vanish at ``pt``."""
    a, b = p.gens
    return all(not q(*pt) for q in (p, p.diff(a), p.diff(b)))


__all__ = [
    "ConicDescription",
    "DiscriminantCurve",
    "EXPECTED_DISCRIMINANT_DEGREE",
    "classify_conic",
    "critical_set",
    "discriminant_complex",
    "nonproperness_set",
    "topological_degree",
    "verify_singular_point",
]
