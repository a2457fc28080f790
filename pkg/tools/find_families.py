"""Regenerate src/quadmaps/data/degenerations.json.

Each poset edge gets a family ``lower + t * D``: a hand-written one when known,
otherwise the first direction ``D`` with one or two +-1 entries that passes
``check_degeneration``. Usage: ``python tools/find_families.py > out.json``.
"""

import itertools
import json
import sys

from quadmaps.classifier import representative
from quadmaps.maps import QuadraticMap, parse_map
from quadmaps.orbits import POSET_EDGES, DegenerationFamily, check_degeneration

KNOWN = {
    ("f1", "f2"): ["x^2+y, x*y", "0, y^2"],
    ("f1", "f3"): ["x^2+y, y^2", "0, x"],
    ("f2", "f5"): ["x^2-x, x*y", "y, 0"],
    ("f2", "f7"): ["x*y, x+y", "0, x^2"],
    ("f3", "f4"): ["x^2, y^2", "y, 0"],
    ("f3", "f5"): ["x^2-x, x*y", "0, y^2"],
    ("f9", "f10"): ["x^2+y, x", "0, y"],
    ("f10", "f11"): ["x^2, x", "y, 0"],
    ("f10", "f12"): ["y, x", "x^2, 0"],
}


def directions():
    for i in range(12):
        for s in (1, -1):
            v = [0] * 12
            v[i] = s
            yield v
    for i, j in itertools.combinations(range(12), 2):
        for s, r in itertools.product((1, -1), repeat=2):
            v = [0] * 12
            v[i], v[j] = s, r
            yield v


def search(upper, lower):
    base = representative(lower)
    for v in directions():
        fam = DegenerationFamily.from_maps(base, QuadraticMap(v[:6], v[6:]))
        # cheap screen first, then the full check
        if check_degeneration(fam, (upper, lower), samples=4) and check_degeneration(fam, (upper, lower)):
            return fam
    return None


def main():
    out = []
    for upper, lower in POSET_EDGES:
        if (upper, lower) in KNOWN:
            fam = DegenerationFamily.from_maps(*(parse_map(s) for s in KNOWN[(upper, lower)]))
        else:
            fam = search(upper, lower)
        ok = fam is not None and check_degeneration(fam, (upper, lower))
        print(upper, lower, ok, fam.at(1) if fam else None, file=sys.stderr)
        if ok:
            out.append({"upper": upper, "lower": lower, "family": fam.to_json()})
    json.dump(out, sys.stdout, indent=1)


if __name__ == "__main__":
    main()
