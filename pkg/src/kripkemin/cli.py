"""Command-line interface.

Subcommands:

* ``gen`` -- build a chain, tree, random, or fixed example model
* ``contract`` -- apply one of the four contractions to a model file
* ``check`` -- decide (depth-bounded) equivalence of two model files
* ``eval`` -- evaluate a formula at a world of a model
* ``bench succinctness`` -- size/time comparison of the two depth-k
  contractions on the binary-tree family, emitted as CSV
* ``export-dot`` -- Graphviz rendering of a model

``check`` exits 0 when the models are equivalent, 1 when they are not, and
2 or higher on any fault; the other commands use 0/2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bisim import bisimilar, k_bisimilar
from .contraction import (rooted_k_contraction, rooted_k_contraction_edge_min,
                          standard_contraction, standard_k_contraction)
from .errors import KripkeError
from .generators import gen_chain, gen_figure, gen_random, gen_succinctness_tree
from .logic import evaluate, modal_depth
from .model import PointedModel, compute_depth_bound
from .modelio import (export_dot, parse_formula, parse_model, serialize_model,
                      write_text_atomic)


def _read_model(path: str) -> PointedModel:
    return parse_model(Path(path).read_text())


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        write_text_atomic(path, text)


def _cmd_gen(args) -> int:
    if args.kind == "chain":
        m = gen_chain(args.k)
    elif args.kind == "tree":
        m = gen_succinctness_tree(args.k)
    elif args.kind == "random":
        m = gen_random(args.worlds, args.indices, args.atoms, args.density, args.seed)
    else:
        m = gen_figure(args.name)
    _write_output(args.output, serialize_model(m))
    return 0


_MODES = {
    "standard": lambda m, k, order: standard_contraction(m),
    "standard-k": lambda m, k, order: standard_k_contraction(m, k),
    "rooted": lambda m, k, order: rooted_k_contraction(m, k, order),
    "rooted-edge-min": lambda m, k, order: rooted_k_contraction_edge_min(m, k, order),
}


def _cmd_contract(args) -> int:
    m = _read_model(args.input)
    if args.mode != "standard" and args.k is None:
        raise KripkeError(f"mode {args.mode!r} requires -k")
    order = args.order.split(",") if args.order else None
    result = _MODES[args.mode](m, args.k, order)
    _write_output(args.output, serialize_model(result.model))
    if args.witness:
        _write_output(args.witness, json.dumps(dict(sorted(result.witness.items())),
                                               indent=2) + "\n")
    return 0


def _cmd_check(args) -> int:
    a = _read_model(args.a)
    b = _read_model(args.b)
    if args.k is None:
        verdict = bisimilar(a, b)
        what = "bisimilar"
    else:
        verdict = k_bisimilar(a, b, args.k)
        what = f"{args.k}-bisimilar"
    print(f"{what}: {'yes' if verdict else 'no'}")
    return 0 if verdict else 1


def _cmd_eval(args) -> int:
    m = _read_model(args.input)
    phi = parse_formula(args.formula)
    value = evaluate(m, args.world, phi)
    print("true" if value else "false")
    print(f"modal depth: {modal_depth(phi)}")
    return 0


def _cmd_bench(args) -> int:
    if args.what != "succinctness":
        raise KripkeError(f"unknown benchmark {args.what!r}")
    if args.k_min < 0 or args.k_max < args.k_min:
        raise KripkeError("need 0 <= k-min <= k-max")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["k", "worlds_standard", "edges_standard",
                     "worlds_rooted", "edges_rooted", "ms_standard", "ms_rooted"])
    for k in range(args.k_min, args.k_max + 1):
        m = gen_succinctness_tree(k)
        t0 = time.perf_counter()
        std = standard_k_contraction(m, k).model
        t1 = time.perf_counter()
        rooted = rooted_k_contraction(m, k).model
        t2 = time.perf_counter()
        writer.writerow([k, std.world_count, std.edge_count,
                         rooted.world_count, rooted.edge_count,
                         f"{(t1 - t0) * 1000:.3f}", f"{(t2 - t1) * 1000:.3f}"])
    _write_output(args.csv, buf.getvalue())
    return 0


def _cmd_export_dot(args) -> int:
    m = _read_model(args.input)
    annotate = compute_depth_bound(m, args.k) if args.k is not None else None
    _write_output(args.output, export_dot(m, annotate=annotate, dashed=args.dashed))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kripkemin",
        description="Depth-bounded minimization of pointed Kripke models.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a model file")
    gensub = p.add_subparsers(dest="kind", required=True)
    p_chain = gensub.add_parser("chain", help="path of k+1 worlds, all satisfying p")
    p_chain.add_argument("--k", type=int, required=True)
    p_tree = gensub.add_parser("tree", help="binary tree family of height k")
    p_tree.add_argument("--k", type=int, required=True)
    p_rand = gensub.add_parser("random", help="seeded random model")
    p_rand.add_argument("--worlds", type=int, required=True)
    p_rand.add_argument("--indices", type=int, default=1)
    p_rand.add_argument("--atoms", type=int, default=1)
    p_rand.add_argument("--density", type=float, default=0.3)
    p_rand.add_argument("--seed", type=int, default=0)
    p_fig = gensub.add_parser("figure", help="one of the fixed example models")
    p_fig.add_argument("--name", required=True, choices=["fig2", "n1", "n2"])
    for sp in (p_chain, p_tree, p_rand, p_fig):
        sp.add_argument("-o", "--output", required=True)
        sp.set_defaults(func=_cmd_gen)

    p = sub.add_parser("contract", help="contract a model")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--mode", required=True, choices=sorted(_MODES))
    p.add_argument("--order", default=None,
                   help="comma-separated world order overriding the document order")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--witness", default=None,
                   help="also write the world-to-class witness map (JSON)")
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("check", help="decide (k-)bisimilarity of two models")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("-k", type=int, default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("eval", help="evaluate a formula at a world")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-w", "--world", required=True)
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", help="benchmarks")
    p.add_argument("what", choices=["succinctness"])
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("export-dot", help="render a model as Graphviz DOT")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-k", type=int, default=None,
                   help="annotate nodes with depth and bound for this k")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--dashed", action="append", default=[],
                   help="draw this index's edges dashed (repeatable)")
    p.set_defaults(func=_cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KripkeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
