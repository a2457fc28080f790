"""Affine classification of quadratic maps of the plane, in exact arithmetic."""

from .classifier import (
    COMPLEX_LABELS,
    REAL_LABELS,
    OrbitInfo,
    OrbitLabel,
    classify,
    classify_complex,
    classify_real,
    orbit_metadata,
    representative,
    representatives,
    topological_classes,
)
from .errors import *  # noqa: F401,F403
from .geometry import (
    DiscriminantCurve,
    classify_conic,
    critical_set,
    discriminant_complex,
    nonproperness_set,
    topological_degree,
    verify_singular_point,
)
from .invariants import InvariantReport, invariant_report, jacobian_conic, reduce_to_pencil_chart
from .maps import AffineMap, AffinePair, QuadraticMap, act, parse_map, random_affine_pair, random_map
from .normalizer import Witness, normalize, verify_witness
from .orbits import (
    ClosurePoset,
    DegenerationFamily,
    bundled_families,
    check_degeneration,
    closure_poset,
    orbit_dimension,
    sample_census,
)

__version__ = "0.1.0"
