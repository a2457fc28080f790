"""Command-line interface: ``quadmaps <command> ...``.

Every command prints JSON (or a plain table with ``--pretty``). Exit codes:
0 ok, 2 malformed input, 3 domain error, 4 warnings under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classifier import COMPLEX_LABELS, REAL_LABELS, classify_complex, classify_real, orbit_metadata
from .errors import MalformedFamily, MalformedInput, QuadmapError
from .geometry import critical_set, discriminant_complex, nonproperness_set, topological_degree
from .invariants import invariant_report
from .maps import QuadraticMap, parse_map
from .normalizer import normalize
from .orbits import (
    POSET_EDGES,
    bundled_families,
    check_degeneration,
    closure_poset,
    orbit_dimension,
    sample_census,
)

EXIT_OK, EXIT_MALFORMED, EXIT_DOMAIN, EXIT_STRICT = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_MALFORMED)


def load_map(source, rationalize=None):
    """A map from a file path, inline JSON, or an inline ``"g, h"`` string."""
    where = "argument"
    text = source
    if os.path.isfile(source):
        where = source
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        if text.lstrip().startswith("{"):
            return QuadraticMap.from_json(text, rationalize=rationalize)
        return parse_map(text, rationalize=rationalize)
    except MalformedInput as exc:
        raise MalformedInput(f"{where}: {exc}") from None


def resolve_seed(flag):
    if flag is not None:
        return flag
    env = os.environ.get("QUADMAP_SEED")
    if env is None or not env.strip():
        return 0
    try:
        return int(env)
    except ValueError:
        raise MalformedInput(f"QUADMAP_SEED: expected an integer, got {env!r}") from None


def _labels(f):
    real, warnings = classify_real(f)
    return classify_complex(f), real, warnings


def cmd_classify(args):
    f = load_map(args.map, args.rationalize)
    complex_label, real_label, warnings = _labels(f)
    out = {}
    if args.field in (None, "C"):
        out["label_complex"] = str(complex_label)
    if args.field in (None, "R"):
        out["label_real"] = str(real_label)
        out["warnings"] = warnings
    return out, warnings


def build_report(f, seed=0, witness=False):
    complex_label, real_label, warnings = _labels(f)
    info = orbit_metadata(complex_label)
    out = {
        "input": f.to_json(),
        "input_str": str(f),
        "label_complex": str(complex_label),
        "label_real": str(real_label),
        "warnings": warnings,
        "invariants": invariant_report(f).to_json(),
        "critical_set": {
            "complex": critical_set(f, "C").to_json(),
            "real": critical_set(f, "R").to_json(),
        },
        "orbit_dimension": orbit_dimension(f),
        "seed": seed,
    }
    if info.generically_finite:
        out["mu"] = topological_degree(f, seed=seed)
        out["discriminant"] = {
            "complex": discriminant_complex(f, seed=seed).to_json(),
            "real": orbit_metadata(real_label).discriminant_real,
        }
        out["proper"] = nonproperness_set(f, seed=seed).is_empty
    else:
        out["mu"] = "n/a"
        out["discriminant"] = {"complex": "n/a", "real": "n/a"}
        out["proper"] = "n/a"
    if witness:
        try:
            out["witness"] = normalize(f).to_json()
        except QuadmapError as exc:
            out["witness"] = {"unsupported": str(exc)}
    return out


def cmd_report(args):
    f = load_map(args.map, args.rationalize)
    out = build_report(f, seed=resolve_seed(args.seed), witness=args.witness)
    return out, out["warnings"]


def cmd_discriminant(args):
    f = load_map(args.map, args.rationalize)
    curve = discriminant_complex(f, seed=resolve_seed(args.seed))
    return {"discriminant": str(curve), **curve.to_json()}, []


def cmd_degree(args):
    f = load_map(args.map, args.rationalize)
    return {"mu": topological_degree(f, seed=resolve_seed(args.seed))}, []


def cmd_normalize(args):
    f = load_map(args.map, args.rationalize)
    return normalize(f).to_json(), []


def cmd_poset(args):
    poset = closure_poset()
    seed = resolve_seed(args.seed)
    out = {"nodes": poset.to_json()["nodes"], "edges": []}
    ok = True
    if args.check:
        families = bundled_families()
        for upper, lower in POSET_EDGES:
            family = families.get((upper, lower))
            passed = family is not None and check_degeneration(family, (upper, lower), seed=seed)
            ok &= passed
            out["edges"].append({
                "upper": upper,
                "lower": lower,
                "dims": [poset.dims[orbit_metadata(upper).label], poset.dims[orbit_metadata(lower).label]],
                "pass": passed,
            })
        out["all_pass"] = ok
    else:
        out["edges"] = [{"upper": a, "lower": b} for a, b in POSET_EDGES]
    return out, [] if ok else ["degeneration check failed"]


def cmd_census(args):
    seed = resolve_seed(args.seed)
    hist = sample_census(args.n, seed=seed, bound=args.bound, workers=args.workers)
    return {
        "n": args.n,
        "bound": args.bound,
        "seed": seed,
        "histogram": hist,
        "f1_fraction": hist.get("f1", 0) / args.n,
    }, []


def cmd_representatives(args):
    extra = [l for l in REAL_LABELS if l.is_real_only]
    return {
        "complex": {str(l): orbit_metadata(l).to_json() for l in COMPLEX_LABELS},
        "real_extra": {str(l): orbit_metadata(l).to_json() for l in extra},
    }, []


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and obj:
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def render_table(obj):
    rows = [(k, v if isinstance(v, str) else json.dumps(v)) for k, v in _flatten(obj)]
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rationalize", type=int, metavar="K", default=argparse.SUPPRESS,
                        help="accept decimal literals, rounded to denominator 10^K")
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="print a plain table instead of JSON")
    common.add_argument("--strict", action="store_true", default=argparse.SUPPRESS,
                        help="exit 4 when the result carries warnings")

    parser = _Parser(prog="quadmaps", description="Affine classification of quadratic plane maps.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, map_arg=True, seed=False):
        p = sub.add_parser(name, help=help_text, parents=[common])
        if map_arg:
            p.add_argument("map", help='file path, inline JSON, or "g, h" such as "x^2+y, y^2+x"')
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help="random seed (default: $QUADMAP_SEED or 0)")
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "orbit labels over C and R")
    p.add_argument("--field", choices=("C", "R"), default=None)
    p = add("report", cmd_report, "full invariant and geometry report", seed=True)
    p.add_argument("--witness", action="store_true", help="include a normal-form witness")
    add("discriminant", cmd_discriminant, "complex discriminant curve", seed=True)
    add("degree", cmd_degree, "topological degree", seed=True)
    add("normalize", cmd_normalize, "witness (L, R) taking the map to its representative")
    p = add("poset", cmd_poset, "orbit closure poset", map_arg=False, seed=True)
    p.add_argument("--check", action="store_true", help="verify every edge with its family")
    p = add("census", cmd_census, "label histogram of random integer maps", map_arg=False, seed=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--workers", type=int, default=None)
    add("representatives", cmd_representatives, "all orbit representatives", map_arg=False)
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_MALFORMED
    # global flags may sit before or after the command; the shared actions
    # default to SUPPRESS so a later parser never clobbers an earlier value
    for name, default in (("rationalize", None), ("pretty", False), ("strict", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        out, warnings = args.func(args)
    except (MalformedInput, MalformedFamily) as exc:
        print(f"quadmaps: malformed input: {exc}", file=stderr)
        return EXIT_MALFORMED
    except OSError as exc:
        print(f"quadmaps: {exc}", file=stderr)
        return EXIT_MALFORMED
    except QuadmapError as exc:
        print(f"quadmaps: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_DOMAIN
    print(render_table(out) if args.pretty else json.dumps(out), file=stdout)
    if warnings and args.strict:
        return EXIT_STRICT
    if args.command == "poset" and args.check and not out.get("all_pass", True):
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
