import random
from fractions import Fraction

import pytest
import sympy as sp

from quadmaps.classifier import COMPLEX_LABELS, REAL_LABELS, orbit_metadata, representative
from quadmaps.errors import NotGenericallyFinite
from quadmaps.exact import QQ, UV, Poly, adjoin_sqrt, gcd, resultant, squarefree_part
from quadmaps.geometry import (
    EXPECTED_DISCRIMINANT_DEGREE,
    critical_set,
    discriminant_complex,
    nonproperness_set,
    topological_degree,
    verify_singular_point,
)
from quadmaps.maps import act, parse_map

from helpers import pairs

u, v = Poly.var("u", UV), Poly.var("v", UV)
FINITE = list(EXPECTED_DISCRIMINANT_DEGREE)

# Delta(f1') recomputed by elimination and cross-checked with a Groebner basis
DELTA_F1P = (256 * u**4 + 512 * u**2 * v**2 + 256 * v**4 - 512 * u**3 + 1536 * u * v**2
             + 288 * u**2 + 288 * v**2 - 27)

DISCRIMINANTS = {
    "f1": 256 * u**2 * v**2 - 256 * u**3 - 256 * v**3 + 288 * u * v - 27,
    "f2": 4 * u**3 - 27 * v**2,
    "f3": u**2 * v - v**2,
    "f4": u * v,
    "f5": 4 * u**2 + u,
    "f6": u,
    "f7": v**2 - 4 * u,
    "f8": u,
    "f9": u,
}


# -- critical set ---------------------------------------------------------------


def test_critical_set_examples():
    c = critical_set(parse_map("x^2+y, y^2+x"), "C")
    assert c.kind == "hyperbola" and str(c.poly) == "4*x*y - 1"
    c = critical_set(representative("f1'"), "R")
    assert c.kind == "ellipse" and str(c.poly) == "4*x^2 + 4*y^2 - 1"
    assert critical_set(representative("f4'"), "R").kind == "point"
    assert critical_set(representative("f17"), "C").kind == "whole_plane"
    assert critical_set(representative("f12"), "C").kind == "empty"


@pytest.mark.parametrize("label", REAL_LABELS, ids=str)
def test_critical_set_matches_table_and_is_invariant(label):
    info = orbit_metadata(label)
    rep = info.representative
    want = (critical_set(rep, "C").kind, critical_set(rep, "R").kind)
    assert want == (info.critical_set_complex, info.critical_set_real)
    for pair in pairs(f"conic:{label}", 100, max_den=2):
        f = act(pair, rep)
        assert (critical_set(f, "C").kind, critical_set(f, "R").kind) == want


def test_conic_sign_pattern_on_sample_points():
    # 20 sampled points: indefinite kinds take both signs, a point-conic one sign
    rng = random.Random("conic-points")
    for label in ("f1", "f1'", "f4", "f4'", "f5"):
        c = critical_set(representative(label), "R")
        pts = [(0, 0), (Fraction(1, 4), Fraction(-1, 4))]
        pts += [(Fraction(rng.randint(-40, 40), 7), Fraction(rng.randint(-40, 40), 9)) for _ in range(18)]
        signs = {(c.poly(*p) > 0) - (c.poly(*p) < 0) for p in pts}
        if c.kind == "point":
            assert c.poly(0, 0) == 0 and len(signs - {0}) == 1
        else:
            assert {-1, 1} <= signs, label


# -- topological degree -----------------------------------------------------------


@pytest.mark.parametrize("label", FINITE)
def test_degree_table(label):
    assert topological_degree(representative(label)) == orbit_metadata(label).mu


@pytest.mark.parametrize("label", FINITE)
def test_degree_invariance(label):
    rep = representative(label)
    mu = orbit_metadata(label).mu
    for i, pair in enumerate(pairs(f"degree:{label}", 100)):
        assert topological_degree(act(pair, rep), seed=i) == mu


def test_degree_not_finite():
    with pytest.raises(NotGenericallyFinite):
        topological_degree(representative("f13"))


def test_degree_reproducible():
    f = act(pairs("repro", 1)[0], representative("f3"))
    assert topological_degree(f, seed=5) == topological_degree(f, seed=5) == 4


# -- non-properness ------------------------------------------------------------------


def test_nonproperness_examples():
    assert nonproperness_set(representative("f5")).polynomial == u
    assert nonproperness_set(parse_map("x, x*y")).polynomial == u
    assert nonproperness_set(representative("f1")).is_empty


@pytest.mark.parametrize("label", FINITE)
def test_properness_matches_table(label):
    assert nonproperness_set(representative(label)).is_empty == orbit_metadata(label).proper


def test_f1_fibres_have_four_points():
    # off the discriminant, Res_y(g - u0, h - v0) has 4 distinct roots x and
    # y = u0 - x^2 is then forced, so every fibre has exactly 4 points
    f = representative("f1")
    g, h = f.polys()
    D = DISCRIMINANTS["f1"]
    rng = random.Random("f1-fibres")
    done = 0
    while done < 50:
        t = (Fraction(rng.randint(-30, 30), 7), Fraction(rng.randint(-30, 30), 5))
        if D(*t) == 0:
            continue
        R = resultant(g - t[0], h - t[1], "y")
        assert R.degree("x") == 4
        assert gcd(R, R.diff("x")).is_constant()
        done += 1


# -- discriminant -----------------------------------------------------------------------


@pytest.mark.parametrize("label", list(DISCRIMINANTS))
def test_discriminant_fixtures(label):
    curve = discriminant_complex(representative(label))
    assert curve.polynomial == DISCRIMINANTS[label].canonical()


def test_discriminant_f1_prime():
    assert discriminant_complex(representative("f1'")).polynomial == DELTA_F1P


def test_empty_discriminants():
    for label in ("f10", "f12"):
        assert discriminant_complex(representative(label)).is_empty


def test_provenance_flags():
    c = discriminant_complex(representative("f5"))
    assert c.from_critical_image and c.from_nonproperness
    c = discriminant_complex(representative("f2"))
    assert c.from_critical_image and not c.from_nonproperness


def test_discriminant_not_finite():
    with pytest.raises(NotGenericallyFinite):
        discriminant_complex(representative("f11"))


def _groebner_discriminant(f):
    """Independent oracle: eliminate x, y from (g - u, h - v, J) by a lex basis."""
    x, y, U, V = sp.symbols("x y u v")
    g, h = (sp.sympify(str(p).replace("^", "**"), locals={"x": x, "y": y}) for p in f.polys())
    J = sp.diff(g, x) * sp.diff(h, y) - sp.diff(g, y) * sp.diff(h, x)
    G = sp.groebner([g - U, h - V, J], x, y, U, V, order="lex")
    elim = [p for p in G.exprs if not p.has(x) and not p.has(y)]
    assert len(elim) == 1
    return sp.Poly(elim[0], U, V)


def _to_sympy(p):
    U, V = sp.symbols("u v")
    return sp.Poly(sum(int(c) * U**e[0] * V**e[1] for e, c in p.terms.items()), U, V)


@pytest.mark.parametrize("label", ["f1", "f1'", "f2", "f3"])
def test_discriminant_matches_groebner_oracle(label):
    ours = _to_sympy(discriminant_complex(representative(label)).polynomial)
    oracle = sp.Poly(sp.sqf_part(_groebner_discriminant(representative(label))), *ours.gens)
    assert sp.simplify(ours.as_expr() / oracle.as_expr()).is_number


@pytest.mark.parametrize("label", FINITE)
def test_discriminant_equivariance(label):
    rep = representative(label)
    base = discriminant_complex(rep)
    for i, pair in enumerate(pairs(f"equivariance:{label}", 50)):
        got = discriminant_complex(act(pair, rep), seed=i)
        if base.is_empty:
            assert got.is_empty
            continue
        Lu, Lv = pair.L.inverse().as_polys(UV)
        moved = base.polynomial.compose({"u": Lu, "v": Lv})
        assert got.polynomial == squarefree_part(moved)


# -- singular points ------------------------------------------------------------------------


def test_singular_point_examples():
    D1, D2 = DISCRIMINANTS["f1"], DISCRIMINANTS["f2"]
    f1 = representative("f1")
    assert f1(Fraction(1, 2), Fraction(1, 2)) == (Fraction(3, 4), Fraction(3, 4))
    assert verify_singular_point(D1, (Fraction(3, 4), Fraction(3, 4)))
    assert verify_singular_point(D2, (0, 0))
    assert D2(3, 2) == 0 and not verify_singular_point(D2, (3, 2))


def test_f1_prime_critical_values_in_q_sqrt3():
    f = representative("f1'")
    tower, r3 = adjoin_sqrt(QQ, 3)
    quarter, half = tower(Fraction(1, 4)), tower(Fraction(1, 2))
    for pt in ((quarter, r3 / 4), (quarter, -r3 / 4), (half, tower(0))):
        assert DELTA_F1P(*f(*pt)) == 0


def test_f1_prime_has_three_real_cusps():
    # cusps sit over the critical points at angles 0 and +-120 degrees
    f = representative("f1'")
    tower, r3 = adjoin_sqrt(QQ, 3)
    quarter, half = tower(Fraction(1, 4)), tower(Fraction(1, 2))
    for pt in ((half, tower(0)), (-quarter, r3 / 4), (-quarter, -r3 / 4)):
        assert verify_singular_point(DELTA_F1P, f(*pt))
