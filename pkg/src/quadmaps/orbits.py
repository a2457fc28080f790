"""Orbit dimensions, the closure poset, degeneration families and the census."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .classifier import COMPLEX_LABELS, OrbitLabel, classify_complex, orbit_metadata
from .errors import MalformedFamily, MalformedInput
from .exact.linalg import rank
from .exact.poly import XY, Poly
from .maps import MONOMIALS, QuadraticMap, parse_scalar, random_map, scalar_to_json

_EXPS = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))


def _coefficients(p):
    return [p.coeff(*e) for e in _EXPS]


def tangent_action_matrix(f):
    """12x12 derivative of ``(L, R) -> L o f o R`` at the identity.

    Rows are the coefficients of ``(g, h)``; columns are the target fields
    ``(1,0), (u,0), (v,0), (0,1), (0,u), (0,v)`` followed by the source fields
    ``(1,0), (x,0), (y,0), (0,1), (0,x), (0,y)``.
    """
    g, h = f.polys()
    one, zero = Poly.const(1, XY), Poly.zero(XY)
    x, y = Poly.var("x", XY), Poly.var("y", XY)
    fields = [(one, zero), (g, zero), (h, zero), (zero, one), (zero, g), (zero, h)]
    gx, gy, hx, hy = g.diff("x"), g.diff("y"), h.diff("x"), h.diff("y")
    for r1, r2 in [(one, zero), (x, zero), (y, zero), (zero, one), (zero, x), (zero, y)]:
        fields.append((gx * r1 + gy * r2, hx * r1 + hy * r2))
    columns = [_coefficients(a) + _coefficients(b) for a, b in fields]
    return [list(row) for row in zip(*columns)]


def orbit_dimension(f):
    return rank(tangent_action_matrix(f))


# Cover relations (upper, lower) of the orbit-closure order; each one is
# witnessed by a bundled degeneration family.
POSET_EDGES = (
    ("f1", "f2"), ("f1", "f3"),
    ("f2", "f5"), ("f2", "f7"),
    ("f3", "f4"), ("f3", "f5"), ("f3", "f7"),
    ("f4", "f6"), ("f4", "f9"),
    ("f5", "f6"), ("f5", "f8"),
    ("f7", "f8"), ("f7", "f9"),
    ("f6", "f11"), ("f6", "f13"),
    ("f8", "f11"), ("f8", "f13"),
    ("f9", "f10"),
    ("f10", "f11"), ("f10", "f12"), ("f10", "f14"),
    ("f13", "f14"),
    ("f11", "f15"),
    ("f14", "f15"),
    ("f15", "f16"),
    ("f12", "f16"),
    ("f16", "f17"),
)


@dataclass(frozen=True)
class ClosurePoset:
    dims: dict
    edges: tuple

    def has_edge(self, upper, lower):
        return (OrbitLabel.parse(upper), OrbitLabel.parse(lower)) in self.edges

    def below(self, label):
        """All orbits in the closure of ``label`` (excluding itself)."""
        label = OrbitLabel.parse(label)
        out, stack = set(), [label]
        while stack:
            top = stack.pop()
            for a, b in self.edges:
                if a == top and b not in out:
                    out.add(b)
                    stack.append(b)
        return out

    def to_json(self):
        return {
            "nodes": [{"label": str(l), "dim": d} for l, d in self.dims.items()],
            "edges": [[str(a), str(b)] for a, b in self.edges],
        }


def closure_poset():
    dims = {l: orbit_dimension(orbit_metadata(l).representative) for l in COMPLEX_LABELS}
    edges = tuple((OrbitLabel(a), OrbitLabel(b)) for a, b in POSET_EDGES)
    for a, b in edges:
        if not dims[a] > dims[b]:
            raise AssertionError(f"poset edge {a}-{b} does not decrease orbit dimension")
    return ClosurePoset(dims, edges)


class DegenerationFamily:
    """A map whose 12 coefficients are polynomials in one parameter ``t``.

    ``coeffs`` maps ``("g"|"h", monomial)`` to ``{power: coefficient}``.
    """

    def __init__(self, coeffs):
        clean = {}
        for key, poly in coeffs.items():
            comp, mono = key
            if comp not in ("g", "h") or mono not in MONOMIALS:
                raise MalformedFamily(f"{comp}:{mono} is not a coefficient of a quadratic map")
            terms = {}
            for k, c in poly.items():
                if int(k) != k or k < 0:
                    raise MalformedFamily(f"bad power of t: {k!r}")
                if c:
                    terms[int(k)] = Fraction(c)
            if terms:
                clean[key] = terms
        self.coeffs = clean

    @classmethod
    def from_maps(cls, *maps):
        """``maps[0] + t * maps[1] + t^2 * maps[2] + ...``"""
        coeffs = {}
        for k, f in enumerate(maps):
            for comp, cs in (("g", f.g), ("h", f.h)):
                for mono, c in zip(MONOMIALS, cs):
                    if c:
                        coeffs.setdefault((comp, mono), {})[k] = c
        return cls(coeffs)

    def at(self, t):
        vals = {"g": [0] * 6, "h": [0] * 6}
        for (comp, mono), terms in self.coeffs.items():
            vals[comp][MONOMIALS.index(mono)] = sum(c * t**k for k, c in terms.items())
        return QuadraticMap(vals["g"], vals["h"])

    def to_json(self):
        out = {"g": {}, "h": {}}
        for (comp, mono), terms in sorted(self.coeffs.items()):
            out[comp][mono] = [[k, scalar_to_json(c)] for k, c in sorted(terms.items())]
        return out

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or set(data) - {"g", "h"}:
            raise MalformedFamily("a family has the keys 'g' and 'h'")
        coeffs = {}
        for comp, monos in data.items():
            if not isinstance(monos, dict):
                raise MalformedFamily(f"component {comp!r} must map monomials to term lists")
            for mono, terms in monos.items():
                try:
                    coeffs[(comp, mono)] = {int(k): parse_scalar(str(c)) for k, c in terms}
                except (TypeError, ValueError, MalformedInput) as exc:
                    raise MalformedFamily(f"bad term list for {comp}:{mono}: {exc}") from None
        return cls(coeffs)

    def __repr__(self):
        return f"DegenerationFamily({self.to_json()})"


def check_degeneration(family, edge, seed=0, samples=10):
    """Generic members lie in the upper orbit and ``t = 0`` in the lower one."""
    upper, lower = (OrbitLabel.parse(l) for l in edge)
    if classify_complex(family.at(0)) is not lower:
        return False
    rng = random.Random(f"degeneration:{seed}")
    for _ in range(samples):
        t = Fraction(rng.choice([-1, 1]) * rng.randint(1, 97), rng.randint(1, 13))
        if classify_complex(family.at(t)) is not upper:
            return False
    return True


def bundled_families():
    """Degeneration families shipped with the package, keyed by edge."""
    text = resources.files("quadmaps.data").joinpath("degenerations.json").read_text()
    out = {}
    for entry in json.loads(text):
        out[(entry["upper"], entry["lower"])] = DegenerationFamily.from_json(entry["family"])
    return out


def _census_chunk(args):
    seed, bound, start, stop = args
    counts = Counter()
    for i in range(start, stop):
        rng = random.Random(f"{seed}:{i}")
        counts[classify_complex(random_map(rng, bound)).value] += 1
    return counts


def sample_census(n, seed=0, bound=10, workers=None):
    """Label histogram of ``n`` random integer maps; sample ``i`` uses its own seed."""
    if n < 1:
        raise ValueError("census needs n >= 1")
    if not workers or workers == 1:
        counts = _census_chunk((seed, bound, 0, n))
    else:
        from concurrent.futures import ProcessPoolExecutor

        step = -(-n // workers)
        jobs = [(seed, bound, a, min(a + step, n)) for a in range(0, n, step)]
        counts = Counter()
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_census_chunk, jobs):
                counts.update(part)
    order = [l.value for l in COMPLEX_LABELS]
    return {k: counts[k] for k in order if counts[k]}


__all__ = [
    "ClosurePoset",
    "DegenerationFamily",
    "POSET_EDGES",
    "bundled_families",
    "check_degeneration",
    "closure_poset",
    "orbit_dimension",
    "sample_census",
    "tangent_action_matrix",
]
