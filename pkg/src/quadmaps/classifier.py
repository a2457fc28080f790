"""Orbit labels over C and R, the decision tree and the orbit table."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import UnknownLabel
from .invariants import (
    form_matrix,
    form_tests,
    inertia,
    invariant_report,
    reduce_to_pencil_chart,
)
from .maps import QuadraticMap, parse_map


class OrbitLabel(enum.Enum):
    F1 = "f1"
    F1P = "f1'"
    F2 = "f2"
    F3 = "f3"
    F4 = "f4"
    F4P = "f4'"
    F5 = "f5"
    F6 = "f6"
    F7 = "f7"
    F8 = "f8"
    F9 = "f9"
    F10 = "f10"
    F11 = "f11"
    F12 = "f12"
    F13 = "f13"
    F14 = "f14"
    F15 = "f15"
    F16 = "f16"
    F17 = "f17"

    def __str__(self):
        return self.value

    @property
    def is_real_only(self):
        return self in (OrbitLabel.F1P, OrbitLabel.F4P)

    @property
    def complex_label(self):
        """The complex orbit containing this real orbit."""
        return {OrbitLabel.F1P: OrbitLabel.F1, OrbitLabel.F4P: OrbitLabel.F4}.get(self, self)

    @property
    def index(self):
        return int(self.value.strip("f'"))

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip()
        for label in cls:
            if key in (label.value, label.name) or key.lower() == label.name.lower():
                return label
        raise UnknownLabel(f"unknown orbit label {text!r}")


COMPLEX_LABELS = tuple(l for l in OrbitLabel if not l.is_real_only)
REAL_LABELS = tuple(OrbitLabel)


@dataclass(frozen=True)
class OrbitInfo:
    label: OrbitLabel
    representative: QuadraticMap
    dim_orbit: int
    mu: int | None
    proper: bool | None
    generically_finite: bool
    critical_set_complex: str
    critical_set_real: str
    discriminant_complex: str
    discriminant_real: str
    topological_class: int

    @property
    def dim_stabilizer(self):
        return 12 - self.dim_orbit

    def to_json(self):
        return {
            "label": str(self.label),
            "representative": self.representative.to_json(),
            "representative_str": str(self.representative),
            "dim_orbit": self.dim_orbit,
            "dim_stabilizer": self.dim_stabilizer,
            "mu": self.mu,
            "proper": self.proper,
            "generically_finite": self.generically_finite,
            "critical_set": {"complex": self.critical_set_complex, "real": self.critical_set_real},
            "discriminant": {"complex": self.discriminant_complex, "real": self.discriminant_real},
            "topological_class": self.topological_class,
        }


# label: (representative, dim, mu, proper, critical C/R, discriminant C/R, topological class)
_TABLE = {
    "f1": ("x^2+y, y^2+x", 12, 4, True, "hyperbola", "hyperbola",
           "three_cusped_quartic 256u^2v^2-256u^3-256v^3+288uv-27",
           "quartic_with_one_real_cusp", 1),
    "f1'": ("x^2-y^2+x, 2*x*y-y", 12, 4, True, "hyperbola", "ellipse",
            "three_cusped_quartic", "quartic_with_three_real_cusps", 14),
    "f2": ("x^2+y, x*y", 11, 3, True, "parabola", "parabola",
           "cusp_curve 4u^3=27v^2", "cusp_curve 4u^3=27v^2", 2),
    "f3": ("x^2+y, y^2", 11, 4, True, "two_intersecting_lines", "two_intersecting_lines",
           "line_plus_tangent_parabola v(v-u^2)=0", "line_plus_tangent_parabola v(v-u^2)=0", 3),
    "f4": ("x^2, y^2", 10, 4, True, "two_intersecting_lines", "two_intersecting_lines",
           "two_intersecting_lines uv=0", "two_intersecting_lines uv=0", 4),
    "f4'": ("x^2-y^2, x*y", 10, 4, True, "two_intersecting_lines", "point",
            "two_intersecting_lines", "point", 15),
    "f5": ("x^2-x, x*y", 10, 2, False, "two_parallel_lines", "two_parallel_lines",
           "two_parallel_lines u=0, u=-1/4", "line_and_point u=-1/4, (0,0)", 5),
    "f6": ("x^2, x*y", 9, 2, False, "double_line", "double_line",
           "line u=0", "point (0,0)", 6),
    "f7": ("x*y, x+y", 10, 2, True, "single_line", "single_line",
           "parabola 4u=v^2", "parabola 4u=v^2", 7),
    "f8": ("x, x*y", 9, 1, False, "single_line", "single_line",
           "line u=0", "point (0,0)", 8),
    "f9": ("x^2, y", 9, 2, True, "single_line", "single_line",
           "line u=0", "line u=0", 7),
    "f10": ("x^2+y, x", 8, 1, True, "empty", "empty", "empty", "empty", 9),
    "f11": ("x^2, x", 7, None, None, "whole_plane", "whole_plane", "n/a", "n/a", 10),
    "f12": ("x, y", 6, 1, True, "empty", "empty", "empty", "empty", 9),
    "f13": ("x*y, 0", 8, None, None, "whole_plane", "whole_plane", "n/a", "n/a", 11),
    "f14": ("x^2+y, 0", 7, None, None, "whole_plane", "whole_plane", "n/a", "n/a", 10),
    "f15": ("x^2, 0", 6, None, None, "whole_plane", "whole_plane", "n/a", "n/a", 12),
    "f16": ("x, 0", 5, None, None, "whole_plane", "whole_plane", "n/a", "n/a", 10),
    "f17": ("0, 0", 2, None, None, "whole_plane", "whole_plane", "n/a", "n/a", 13),
}


def _build(key):
    rep, dim, mu, proper, cc, cr, dc, dr, top = _TABLE[key]
    return OrbitInfo(
        label=OrbitLabel(key),
        representative=parse_map(rep),
        dim_orbit=dim,
        mu=mu,
        proper=proper,
        generically_finite=mu is not None,
        critical_set_complex=cc,
        critical_set_real=cr,
        discriminant_complex=dc,
        discriminant_real=dr,
        topological_class=top,
    )


_INFO = {OrbitLabel(k): _build(k) for k in _TABLE}


def orbit_metadata(label):
    return _INFO[OrbitLabel.parse(label)]


def representative(label):
    return orbit_metadata(label).representative


def representatives(field="C"):
    labels = COMPLEX_LABELS if field == "C" else REAL_LABELS
    return {l: _INFO[l].representative for l in labels}


def topological_classes(field="C"):
    """Group labels by topological class id."""
    labels = COMPLEX_LABELS if field == "C" else REAL_LABELS
    groups = {}
    for l in labels:
        groups.setdefault(_INFO[l].topological_class, []).append(l)
    return groups


def _classify(report, f):
    L = OrbitLabel
    if report.rank_phi1 >= 1:
        d1, d2 = report.det_phi1, report.det_phi2
        if d1 and d2:
            return L.F1
        if d2:
            return L.F2
        if d1:
            return L.F4 if report.rank_psi1 <= 2 else L.F3
        return L.F5 if report.rank_phi2 == 2 else L.F6
    if report.rank_phi4 == 0:
        return L.F17
    _, _, parts = reduce_to_pencil_chart(f)
    g2_nonzero = any(parts.g2)
    if report.rank_phi4 == 2:
        if not g2_nonzero:
            return L.F12
        tests = form_tests(parts)
        if not tests.g2_is_square:
            return L.F8 if tests.h1_divides_g2 else L.F7
        if not tests.h1_divides_g2:
            return L.F9
        return L.F11 if tests.h1_divides_g1 else L.F10
    if not g2_nonzero:
        return L.F16
    tests = form_tests(parts)
    if not tests.g2_is_square:
        return L.F13
    if any(parts.g1) and not tests.g1_parallel_sqrt_g2:
        return L.F14
    return L.F15


def classify_complex(f):
    return _classify(invariant_report(f), f)


def classify_real(f):
    """Real orbit label and a list of diagnostic warning codes."""
    report = invariant_report(f)
    label = _classify(report, f)
    warnings = []
    d1 = report.det_phi1
    if label is OrbitLabel.F1 and d1 > 0:
        label = OrbitLabel.F1P
    elif label is OrbitLabel.F4 and d1 > 0:
        label = OrbitLabel.F4P
    elif label is OrbitLabel.F3 and not d1 < 0:
        warnings.append("internal_consistency: det_phi1 of an f3-type map is not negative")
    if report.rank_phi1 == 0 and report.rank_phi4 >= 1:
        _, reduced, _ = reduce_to_pencil_chart(f)
        if inertia(form_matrix(reduced.g[:3])) in ((2, 0), (0, 2)):
            warnings.append("definite_quadratic_part")
    return label, warnings


def classify(f, field="C"):
    if field == "C":
        return classify_complex(f)
    return classify_real(f)[0]


__all__ = [
    "COMPLEX_LABELS",
    "OrbitInfo",
    "OrbitLabel",
    "REAL_LABELS",
    "classify",
    "classify_complex",
    "classify_real",
    "orbit_metadata",
    "representative",
    "representatives",
    "topological_classes",
]
