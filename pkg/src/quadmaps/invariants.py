"""Jacobian conic, the coefficient matrices and their ranks, chart tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotInPencil, UndefinedTest
from .exact.linalg import det, rank
from .exact.poly import XY, Poly
from .maps import AffineMap, QuadraticMap, graded_parts, scalar_to_json


@dataclass(frozen=True)
class JacobianConic:
    """``J(f) = A x^2 + B xy + C y^2 + D x + E y + F``."""

    A: object
    B: object
    C: object
    D: object
    E: object
    F: object

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def poly(self, gens=XY):
        exps = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))
        return Poly(dict(zip(exps, self.as_tuple())), gens)

    def is_zero(self):
        return not any(self.as_tuple())

    def quadratic_matrix(self):
        return [[2 * self.A, self.B], [self.B, 2 * self.C]]

    def full_matrix(self):
        A, B, C, D, E, F = self.as_tuple()
        return [[2 * A, B, D], [B, 2 * C, E], [D, E, 2 * F]]


def jacobian_conic(f):
    a1, b1, c1, d1, e1, _ = f.g
    a2, b2, c2, d2, e2, _ = f.h
    return JacobianConic(
        2 * a1 * b2 - 2 * a2 * b1,
        4 * a1 * c2 - 4 * a2 * c1,
        2 * b1 * c2 - 2 * b2 * c1,
        2 * a1 * e2 + d1 * b2 - 2 * a2 * e1 - d2 * b1,
        2 * d1 * c2 + b1 * e2 - 2 * d2 * c1 - b2 * e1,
        d1 * e2 - d2 * e1,
    )


def jacobian_poly(f):
    """``g_x h_y - g_y h_x`` computed symbolically (independent of the formulas)."""
    g, h = f.polys()
    return g.diff("x") * h.diff("y") - g.diff("y") * h.diff("x")


def phi3(f):
    return [list(f.g[:3]), list(f.h[:3])]


def phi4(f):
    return [list(f.g[:5]), list(f.h[:5])]


def psi1(f):
    a1, b1, c1, d1, e1, _ = f.g
    a2, b2, c2, d2, e2, _ = f.h
    return [
        [2 * a1, b1, 2 * a2, b2],
        [b1, 2 * c1, b2, 2 * c2],
        [d1, e1, d2, e2],
    ]


def sign(x):
    return (x > 0) - (x < 0)


def inertia(sym):
    """``(n_plus, n_minus)`` of a real symmetric 2x2 matrix, from det and trace."""
    (p, q), (_, r) = sym
    d = p * r - q * q
    t = p + r
    if d > 0:
        return (2, 0) if t > 0 else (0, 2)
    if d < 0:
        return (1, 1)
    return (1, 0) if t > 0 else (0, 1) if t < 0 else (0, 0)


def form_matrix(q):
    """Symmetric matrix of the binary form ``a x^2 + b xy + c y^2`` (doubled)."""
    a, b, c = q
    return [[2 * a, b], [b, 2 * c]]


@dataclass(frozen=True)
class InvariantReport:
    jacobian: JacobianConic
    phi1: list
    phi2: list
    phi3: list
    phi4: list
    psi1: list
    det_phi1: object
    det_phi2: object
    rank_phi1: int
    rank_phi2: int
    rank_phi3: int
    rank_phi4: int
    rank_psi1: int
    inertia_g2: tuple | None = None
    inertia_jacobian: tuple | None = None
    checks: dict = field(default_factory=dict)

    def to_json(self):
        enc = scalar_to_json

        def mat(m):
            return [[enc(c) for c in row] for row in m]

        J = self.jacobian
        out = {
            "jacobian": {k: enc(getattr(J, k)) for k in "ABCDEF"},
            "jacobian_poly": str(J.poly()),
            "phi1": mat(self.phi1),
            "phi2": mat(self.phi2),
            "phi3": mat(self.phi3),
            "phi4": mat(self.phi4),
            "psi1": mat(self.psi1),
            "det_phi1": enc(self.det_phi1),
            "det_phi2": enc(self.det_phi2),
            "ranks": {
                "phi1": self.rank_phi1,
                "phi2": self.rank_phi2,
                "phi3": self.rank_phi3,
                "phi4": self.rank_phi4,
                "psi1": self.rank_psi1,
            },
        }
        if self.inertia_g2 is not None:
            out["inertia_g2"] = list(self.inertia_g2)
        if self.inertia_jacobian is not None:
            out["inertia_jacobian"] = list(self.inertia_jacobian)
        return out


def invariant_report(f):
    J = jacobian_conic(f)
    p1, p2 = J.quadratic_matrix(), J.full_matrix()
    p3, p4, s1 = phi3(f), phi4(f), psi1(f)
    r1, r2, r3 = rank(p1), rank(p2), rank(p3)
    real = f.is_rational()
    inertia_g2 = inertia_j = None
    if real:
        inertia_j = inertia(p1)
        # g2 of the essential (pencil-reduced) map when quadratic parts are dependent
        q = f.g[:3]
        if r3 <= 1:
            _, reduced, _ = reduce_to_pencil_chart(f)
            q = reduced.g[:3]
        inertia_g2 = inertia(form_matrix(q))
    report = InvariantReport(
        jacobian=J,
        phi1=p1,
        phi2=p2,
        phi3=p3,
        phi4=p4,
        psi1=s1,
        det_phi1=det(p1),
        det_phi2=det(p2),
        rank_phi1=r1,
        rank_phi2=r2,
        rank_phi3=r3,
        rank_phi4=rank(p4),
        rank_psi1=rank(s1),
        inertia_g2=inertia_g2,
        inertia_jacobian=inertia_j,
        checks={
            "phi1_zero_iff_phi3_deficient": (r1 == 0) == (r3 < 2),
            "phi2_rank_bracket": r1 <= r2 <= r1 + 2,
        },
    )
    if not all(report.checks.values()):
        raise AssertionError(f"invariant report self-check failed: {report.checks}")
    return report


def _pivot(rows, columns):
    """Largest column index with a nonzero entry; ties go to the first row."""
    for k in reversed(columns):
        for r, row in enumerate(rows):
            if row[k]:
                return r, k
    return None


def reduce_to_pencil_chart(f):
    """Move ``f`` with dependent quadratic parts into ``Omega(2, 1)``.

    Returns ``(L, f', parts)`` with ``f' = L o f``: the retained component is
    first, the second has no quadratic part, and it is the zero constant when
    the two components are affinely dependent.
    """
    if rank(phi3(f)) == 2:
        raise NotInPencil(f"quadratic parts of {f} are independent")
    rows = (f.g, f.h)
    choice = _pivot(rows, (0, 1, 2)) or _pivot(rows, (3, 4))
    if choice is None:
        # constant map
        L = AffineMap(((1, 0), (0, 1)), (0, -f.h[5]))
        return L, QuadraticMap(f.g, (0,) * 6), graded_parts(QuadraticMap(f.g, (0,) * 6))
    r, k = choice
    keep, other = rows[r], rows[1 - r]
    lam = other[k] / keep[k]
    second = tuple(o - lam * c for o, c in zip(other, keep))
    shift = 0
    if not any(second[:5]):
        shift = -second[5]
        second = (0,) * 6
    # L(u, v) = (w_r, w_other - lam * w_r + shift) in terms of (g, h)
    if r == 0:
        matrix = ((1, 0), (-lam, 1))
    else:
        matrix = ((0, 1), (1, -lam))
    L = AffineMap(matrix, (0, shift))
    reduced = QuadraticMap(keep, second)
    return L, reduced, graded_parts(reduced)


class _NotApplicable:
    """Marker for a form test whose precondition fails.

    Using it as a boolean raises :class:`UndefinedTest`.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise UndefinedTest("form test is not applicable to this input")

    def __repr__(self):
        return "NOT_APPLICABLE"


NOT_APPLICABLE = _NotApplicable()


def _binary(q, x, y):
    a, b, c = q
    return a * x * x + b * x * y + c * y * y


def square_root_direction(q):
    """A nonzero vector on which the square form ``q = k * l^2`` vanishes."""
    a, b, c = q
    if a or b:
        return (b, -2 * a)
    return (1, 0)


@dataclass(frozen=True)
class FormTests:
    g2_is_square: object
    h1_divides_g2: object
    h1_divides_g1: object
    g1_parallel_sqrt_g2: object


def form_tests(parts):
    """Square / divisibility tests on a map in the reduced chart ``h2 = 0``.

    Divisibility by ``h1 = d x + e y`` is tested by evaluating on its kernel
    direction ``(e, -d)``. Tests whose precondition fails return
    ``NOT_APPLICABLE``.
    """
    if any(parts.h2):
        raise UndefinedTest("form tests need the reduced chart h2 = 0")
    a, b, c = parts.g2
    g2_zero = not any(parts.g2)
    square = NOT_APPLICABLE if g2_zero else b * b - 4 * a * c == 0
    d, e = parts.h1
    if d or e:
        divides_g2 = _binary(parts.g2, e, -d) == 0
        g1d, g1e = parts.g1
        divides_g1 = g1d * e - g1e * d == 0
    else:
        divides_g2 = divides_g1 = NOT_APPLICABLE
    if square is True:
        kx, ky = square_root_direction(parts.g2)
        g1d, g1e = parts.g1
        parallel = g1d * kx + g1e * ky == 0
    else:
        parallel = NOT_APPLICABLE
    return FormTests(square, divides_g2, divides_g1, parallel)


def chart_conditions(f):
    """The three chart expressions in the chart ``a1 != 0``.

    Returns ``(square, h1_divides_g2, h1_divides_g1)`` as polynomial values
    that vanish exactly when the corresponding condition holds, or None
    outside the chart.
    """
    a1, b1, c1, d1, e1, _ = f.g
    a2, _, _, d2, e2, _ = f.h
    if not a1:
        return None
    p = a1 * e2 - a2 * e1
    q = a1 * d2 - a2 * d1
    return (
        4 * a1 * c1 - b1 * b1,
        a1 * p * p - b1 * p * q + c1 * q * q,
        d1 * p - e1 * q,
    )


def det_phi1(f):
    return det(jacobian_conic(f).quadratic_matrix())


def det_phi2(f):
    return det(jacobian_conic(f).full_matrix())


__all__ = [
    "FormTests",
    "InvariantReport",
    "JacobianConic",
    "NOT_APPLICABLE",
    "chart_conditions",
    "det_phi1",
    "det_phi2",
    "form_matrix",
    "form_tests",
    "inertia",
    "invariant_report",
    "jacobian_conic",
    "jacobian_poly",
    "phi3",
    "phi4",
    "psi1",
    "reduce_to_pencil_chart",
]
