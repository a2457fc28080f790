"""Exact scalars and polynomials: rationals, quadratic towers, elimination."""

from fractions import Fraction as Rational

from .linalg import det, rank
from .poly import (
    UV,
    XY,
    Poly,
    bareiss_det,
    gcd,
    parse_rational,
    resultant,
    resultant_bareiss,
    squarefree_part,
)
from .tower import MAX_DEPTH, QQ, Tower, TowerScalar, adjoin_sqrt

BivariatePolynomial = Poly

__all__ = [
    "BivariatePolynomial",
    "MAX_DEPTH",
    "Poly",
    "QQ",
    "Rational",
    "Tower",
    "TowerScalar",
    "UV",
    "XY",
    "adjoin_sqrt",
    "bareiss_det",
    "det",
    "gcd",
    "parse_rational",
    "rank",
    "resultant",
    "resultant_bareiss",
    "squarefree_part",
]
