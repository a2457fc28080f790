"""Shared sampling helpers for the test suite."""

import random

from quadmaps.maps import random_affine_pair


def pairs(tag, n, bound=3, max_den=1):
    """``n`` seeded random affine pairs; ``tag`` keeps streams independent."""
    rng = random.Random(f"tests:{tag}")
    return [random_affine_pair(rng, bound, max_den) for _ in range(n)]
