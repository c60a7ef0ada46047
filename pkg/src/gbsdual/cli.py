"""Command-line interface: ``gbsdual {poly,distinguish,distribution,counts}``.

Exit codes: 0 success (or "equal" for ``distinguish``), 1 "different",
2 usage/parse/validation errors, 3 a ``--check`` mismatch between the two
computation paths.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import (
    enumerate_orbits,
    max_orbit_knapsack,
    meta_orbit_count,
    restricted_partition_count,
    verify_count_identity,
)
from .errors import GbsDualError
from .formats import FORMATS, load_graph
from .gbs import (
    dgbs_by_definition,
    dgbs_by_duality,
    gbs_by_definition,
    gbs_by_prism,
    mdgbs_by_definition,
    mdgbs_by_duality,
)
from .graphs import split_blocks, spectral_norm
from .matching import matching_signless, matching_signless_oracle
from .stats import (
    build_encoding,
    complete_loops_distribution,
    distinguish,
    meta_orbit_distribution,
    orbit_distribution,
    total_photon_distribution,
    uniform_displacement,
)

EXIT_OK, EXIT_DIFFERENT, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _uni_json(p, order, var):
    return {
        "order": order,
        "var": var,
        "coeffs": {str(d): str(c) for d, c in reversed(list(enumerate(p.coeffs))) if c},
    }


def _emit(text, args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- poly -----------------------------------------------------------------------

def _compute_poly(args, via):
    g = load_graph(args.graph, args.graph_format)
    which = args.which
    if which in ("matching", "matching-signless"):
        mp = matching_signless_oracle(g) if via == "definition" else matching_signless(g)
        p = mp.signed if which == "matching" else mp.signless
        return p, g.order, "x" if which == "matching" else "z"
    if which in ("gbs", "gbs-signless"):
        gp = gbs_by_definition(g) if via == "definition" else gbs_by_prism(g)
        return (gp.signed if which == "gbs" else gp.signless), g.order, "x"
    if which == "dgbs":
        dp = dgbs_by_definition(g) if via == "definition" else dgbs_by_duality(g)
        return dp.poly, g.order, None
    if which == "mdgbs":
        if args.second:
            a, b = g, load_graph(args.second, args.graph_format)
        else:
            a, b = split_blocks(g)
        dp = mdgbs_by_definition(a, b) if via == "definition" else mdgbs_by_duality(a, b)
        return dp.poly, a.order, None
    raise ValueError(which)


def _render_poly(p, order, var, fmt):
    if fmt == "json":
        payload = p.to_json(order) if var is None else _uni_json(p, order, var)
        return json.dumps(payload, sort_keys=True) + "\n"
    return (p.render(("x", "z")) if var is None else p.render(var)) + "\n"


def cmd_poly(args):
    via = args.via or ("duality" if args.which in ("dgbs", "mdgbs") else "definition")
    if args.check:
        p1, order, var = _compute_poly(args, "definition")
        p2, _, _ = _compute_poly(args, "duality")
        if p1 != p2:
            sys.stderr.write("mismatch between definition and duality paths\n")
            sys.stderr.write(f"definition: {_render_poly(p1, order, var, 'text')}")
            sys.stderr.write(f"duality:    {_render_poly(p2, order, var, 'text')}")
            return EXIT_MISMATCH
        _emit(_render_poly(p1, order, var, args.format), args)
        return EXIT_OK
    p, order, var = _compute_poly(args, via)
    _emit(_render_poly(p, order, var, args.format), args)
    return EXIT_OK


# -- distinguish ----------------------------------------------------------------

def cmd_distinguish(args):
    ga = load_graph(args.graph_a, args.graph_format)
    gb = load_graph(args.graph_b, args.graph_format)
    strategy = args.strategy.replace("-", "_")
    v = distinguish(ga, gb, strategy, n=args.n, max_r=args.max_r, total=args.total, n_max=args.n_max, c=args.c)
    if args.format == "json":
        text = json.dumps({"equal": v.equal, "strategy": v.strategy, "witness": v.witness}) + "\n"
    else:
        text = str(v) + "\n"
    _emit(text, args)
    return EXIT_OK if v.equal else EXIT_DIFFERENT


# -- distribution ---------------------------------------------------------------

def _render_distribution(dist, args):
    if args.format == "json":
        return dist.to_json() + "\n"
    return dist.to_csv(drop_zeros=not args.keep_zeros)


def cmd_distribution(args):
    if args.closed_form_kbar is not None:
        if args.kind != "orbit":
            raise ValueError("--closed-form-kbar produces orbit distributions only")
        if args.total is None:
            raise ValueError("--total is required")
        m = args.closed_form_kbar
        if not 0 < args.c < 1 / m:
            print(f"error: c must lie in (0, 1/{m}) = (0, {1 / m:.6g}) for the complete graph with loops",
                  file=sys.stderr)
            return EXIT_ERROR
        dist = complete_loops_distribution(m, args.c, args.d or 0.0, args.total, args.max_count)
        _emit(_render_distribution(dist, args), args)
        return EXIT_OK

    if args.graph is None:
        raise ValueError("a graph file is required unless --closed-form-kbar is given")
    g = load_graph(args.graph, args.graph_format)
    b = load_graph(args.b, args.graph_format) if args.b else None
    kind = "lossy" if b is not None else "pure"
    norm = spectral_norm(g)
    if args.c is None or args.c <= 0 or (kind == "pure" and args.c * norm >= 1):
        bound = math.inf if norm == 0 else 1 / norm
        print(f"error: c must satisfy 0 < c < 1/||A||_2 = {bound:.6g}", file=sys.stderr)
        return EXIT_ERROR
    if args.z is not None:
        d = uniform_displacement(g, args.z, c=args.c, b=b)
    else:
        d = args.d or 0.0
    enc = build_encoding(kind, g, b=b, c=args.c, d=d)

    if args.kind == "total":
        max_total = args.total if args.total is not None else 20
        dist = total_photon_distribution(enc, max_total)
    elif args.kind == "meta":
        if args.total is None:
            raise ValueError("--total is required")
        dist = meta_orbit_distribution(enc, args.total, args.n_max)
    else:
        if args.total is None:
            raise ValueError("--total is required")
        dist = orbit_distribution(enc, args.total, args.max_count)
    _emit(_render_distribution(dist, args), args)
    return EXIT_OK


# -- counts ---------------------------------------------------------------------

def cmd_counts(args):
    lines = []
    m = args.M
    if args.knapsack:
        if args.total is None or args.m is None:
            raise ValueError("--knapsack needs --total and --m")
        res = max_orbit_knapsack(m, args.total, args.m)
        lines.append(f"knapsack M={m} total={args.total} m={args.m}")
        lines.append(f"k = {res.k}")
        lines.append(f"cost = prod k_i! = {res.cost}")
        lines.append(f"log cost = {res.log_cost:.12g}")
        lines.append(f"orbit size = {res.orbit_size}")
    elif args.r is not None:
        if args.n is None:
            raise ValueError("--r needs --n")
        ident = verify_count_identity(m, args.n, args.r)
        lines.append(f"orbits of M={m}, |n|={2 * args.r}, counts <= {args.n}:")
        for o in enumerate_orbits(m, 2 * args.r, args.n):
            lines.append(f"  {o.label()}  size={o.size}")
        lines.append(f"identity: {ident.lhs} = {ident.rhs}" if ident.holds else f"identity FAILS: {ident.lhs} != {ident.rhs}")
    elif args.total is not None:
        cap = args.max_count if args.max_count is not None else max(args.total, 1)
        orbits = enumerate_orbits(m, args.total, cap)
        lines.append(f"{len(orbits)} orbit{'s' if len(orbits) != 1 else ''} of M={m}, |n|={args.total}, counts <= {cap}")
        for o in orbits:
            lines.append(f"  {o.label()}  size={o.size}")
        lines.append(f"restricted partitions: {restricted_partition_count(m, cap, args.total)}")
        if args.total:
            per = [meta_orbit_count(m, n, args.total) for n in range(1, cap + 1)]
            lines.append("Delta class sizes: " + " ".join(f"{n}:{c}" for n, c in enumerate(per, start=1)))
    else:
        raise ValueError("give --r with --n, --total, or --knapsack")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def _fraction_or_float(text):
    return float(Fraction(text))


def build_parser():
    p = _Parser(prog="gbsdual", description="GBS, displaced GBS and matching polynomials; GBS statistics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats):
        sp.add_argument("--graph-format", choices=FORMATS, default=None, help="override format detection")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("poly", help="print a polynomial invariant")
    sp.add_argument("graph")
    sp.add_argument("second", nargs="?", help="B block for --which mdgbs (else the graph is split as [[A,B],[Bᵀ,A]])")
    sp.add_argument("--which", required=True,
                    choices=["matching", "matching-signless", "gbs", "gbs-signless", "dgbs", "mdgbs"])
    sp.add_argument("--via", choices=["definition", "duality"])
    sp.add_argument("--check", action="store_true", help="compute both ways; exit 3 on mismatch")
    common(sp, ["text", "json"])
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("distinguish", help="compare an invariant of two graphs")
    sp.add_argument("graph_a")
    sp.add_argument("graph_b")
    sp.add_argument("--strategy", default="gbs", choices=["matching", "gbs", "gbs-collision", "dgbs", "meta"])
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--max-r", type=int)
    sp.add_argument("--total", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--c", type=_fraction_or_float)
    common(sp, ["text", "json"])
    sp.set_defaults(func=cmd_distinguish)

    sp = sub.add_parser("distribution", help="emit photon-count probabilities as CSV/JSON")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--kind", choices=["orbit", "meta", "total"], default="orbit")
    sp.add_argument("--b", help="B block graph (lossy encoding)")
    sp.add_argument("--c", type=_fraction_or_float)
    disp = sp.add_mutually_exclusive_group()
    disp.add_argument("--d", type=_fraction_or_float, help="uniform displacement per mode")
    disp.add_argument("--z", type=_fraction_or_float, help="target uniform z (d is solved for)")
    sp.add_argument("--total", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--max-count", type=int)
    sp.add_argument("--closed-form-kbar", type=int, metavar="M")
    sp.add_argument("--keep-zeros", action="store_true", help="keep zero-probability rows")
    common(sp, ["csv", "json"])
    sp.set_defaults(func=cmd_distribution)

    sp = sub.add_parser("counts", help="orbit enumeration, counting identities, knapsack")
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--total", type=int)
    sp.add_argument("--max-count", type=int)
    sp.add_argument("--knapsack", action="store_true")
    sp.add_argument("--m", type=int)
    common(sp, ["text"])
    sp.set_defaults(func=cmd_counts)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GbsDualError, ValueError, FileNotFoundError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
