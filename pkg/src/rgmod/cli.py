"""Command line entry point: ``rgmod <subcommand> [options]``.

Global options (``--seed``, ``--out``, ``--config``) go before the
subcommand. A config file is INI style: ``[global]`` supplies defaults for
the global options and a section named after a subcommand supplies defaults
for that subcommand's options (dashes become underscores). Anything given on
the command line wins. The exit status is 0 exactly when every invariant the
command checks holds.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys

import numpy as np

from . import bounds as B
from .generators import (PAParams, RegularParams, SPAParams, gen_pa, gen_pairing, gen_spa,
                         spa_from_files, undirect, write_positions)
from .graph import GraphError, Partition, read_edgelist, read_partition, write_edgelist, write_partition
from .harness import ExperimentConfig, _coerce, load_config, run_experiment, run_verification
from .modularity import EXACT_MODULARITY_MAX_N, exact_modularity, modularity
from .partition import (avg_degree_threshold, decompose_connected, local_search_refine,
                        majority_color_pa, partition_avg_degree, partition_forest,
                        strip_partition)

log = logging.getLogger("rgmod")

METHODS = ("tree", "forest", "avgdeg", "majority", "strips", "refine")


def _int_range(text: str) -> list[int]:
    """``"3..10"`` or ``"7,8,100"``."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _key_value(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    k, v = text.split("=", 1)
    return k.strip().lower(), v.strip()


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(prog="rgmod", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    parser.add_argument("--out", help="output path or prefix")
    parser.add_argument("--config", help="INI config file")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("gen", help="sample a random graph")
    p.add_argument("model", nargs="?", choices=("regular", "pa", "spa"))
    p.add_argument("--model", dest="model_flag", choices=("regular", "pa", "spa"))
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--d", type=int, default=3, help="degree (regular)")
    p.add_argument("--simple", action="store_true", help="reject until simple (regular)")
    p.add_argument("--m", type=int, default=1, help="edges per vertex (pa)")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--p", type=float, default=0.7)
    p.add_argument("--a1", type=float, default=1.0)
    p.add_argument("--a2", type=float, default=1.0)
    p.add_argument("--norm", choices=("linf", "l2"), default="linf")
    subs["gen"] = p

    p = sub.add_parser("bounds", help="tabulate the theoretical bounds")
    p.add_argument("--d-range", type=_int_range, default=list(range(3, 11)))
    p.add_argument("--m-range", type=_int_range, default=[7, 8, 9, 10, 100, 1000])
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--csv", help="CSV path (columns param,name,value); defaults to --out")
    subs["bounds"] = p

    p = sub.add_parser("partition", help="partition a graph from an edge-list file")
    p.add_argument("graph", nargs="?", help="edge-list file")
    p.add_argument("--in", dest="graph_flag", help="edge-list file (same as the positional)")
    p.add_argument("--partition-out", help="partition output path (defaults to --out)")
    p.add_argument("--method", choices=METHODS, default="avgdeg")
    p.add_argument("--h", type=float, help="volume cap for the tree method")
    p.add_argument("--eps", type=float, default=0.05, help="seed fraction (majority)")
    p.add_argument("--omega", type=int, help="strip count (strips)")
    p.add_argument("--pos", help="position file for strips (default <graph>.pos)")
    p.add_argument("--init", help="starting partition file (refine)")
    p.add_argument("--max-passes", type=int, default=20)
    subs["partition"] = p

    p = sub.add_parser("modularity", help="modularity of a partition")
    p.add_argument("graph")
    p.add_argument("partition", nargs="?", help="partition file (trivial partition if omitted)")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--exact", action="store_true",
                   help=f"also compute the exact optimum (n <= {EXACT_MODULARITY_MAX_N})")
    subs["modularity"] = p

    p = sub.add_parser("experiment", help="Monte Carlo experiment")
    p.add_argument("--model", choices=("regular", "pa", "spa"))
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--trials", type=int)
    p.add_argument("--param", type=_key_value, action="append", default=[],
                   help="model parameter key=value (repeatable)")
    p.add_argument("--method-param", type=_key_value, action="append", default=[],
                   help="partition parameter key=value (repeatable)")
    subs["experiment"] = p

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--full", action="store_true", help="full-size Monte Carlo runs")
    subs["verify"] = p
    return parser, subs


def _apply_config(parser, subs, path):
    """Turn config sections into parser defaults, converting with each option's type."""
    cp = configparser.ConfigParser()
    with open(path) as fh:
        cp.read_file(fh)

    def defaults(p, section):
        actions = {a.dest: a for a in p._actions}
        out = {}
        for key, raw in cp[section].items():
            dest = key.replace("-", "_")
            act = actions.get(dest)
            if act is None:
                continue
            if isinstance(act, (argparse._StoreTrueAction,)):
                out[dest] = cp.getboolean(section, key)
            elif act.type is not None:
                out[dest] = act.type(raw)
            else:
                out[dest] = raw
        p.set_defaults(**out)

    if cp.has_section("global"):
        defaults(parser, "global")
    for name, p in subs.items():
        if cp.has_section(name):
            defaults(p, name)


# ----------------------------------------------------------------- commands


def cmd_gen(args) -> bool:
    args.model = args.model or args.model_flag
    if args.model is None:
        raise ValueError("choose a model: regular, pa or spa")
    if args.model == "regular":
        g = gen_pairing(RegularParams(n=args.n, d=args.d, require_simple=args.simple,
                                      seed=args.seed))
        ok = g.is_regular() == args.d and (g.is_simple() or not args.simple)
        log.info("regular n=%d d=%d simple=%s", g.n, args.d, g.is_simple())
        sg = None
    elif args.model == "pa":
        g = gen_pa(PAParams(n=args.n, m=args.m, seed=args.seed))
        ok = g.n_edges == args.m * args.n
        sg = None
    else:
        sg = gen_spa(SPAParams(n=args.n, dim=args.dim, p=args.p, A1=args.a1, A2=args.a2,
                               norm=args.norm, seed=args.seed))
        g = undirect(sg)
        ok = bool(np.all(sg.edges[:, 0] > sg.edges[:, 1])) and g.is_simple()
    if args.out:
        write_edgelist(g, args.out)
        if sg is not None:
            write_positions(sg, f"{args.out}.pos")
    else:
        sys.stdout.write(f"n {g.n}\n")
        sys.stdout.writelines(f"{u} {v}\n" for u, v in g.edges.tolist())
    print(f"n={g.n} edges={g.n_edges} components={g.n_components()}", file=sys.stderr)
    return ok


def cmd_bounds(args) -> bool:
    tables = B.bound_table(args.d_range, args.m_range, args.tol)
    print(B.format_tables(tables))
    path = args.csv or args.out
    if path:
        B.write_bounds_csv(tables, path)
    ok = all(0.0 <= v <= 1.0 for t in tables for k, v in t.values.items()
             if k != "mihail_rho")
    for t in tables:
        if t.kind == "d" and t.parameter >= 3:
            v = t.values
            ok &= v["U3"] < v["U2"] < v["U1"]
    return ok


def _load_graph(args, oriented=False):
    g = read_edgelist(args.graph)
    if oriented:
        g.oriented = True
    return g


def cmd_partition(args) -> bool:
    args.graph = args.graph or args.graph_flag
    if args.graph is None:
        raise ValueError("no input graph given")
    g = _load_graph(args, oriented=args.method == "majority")
    checks = {}
    if args.method == "tree":
        h = args.h if args.h is not None else avg_degree_threshold(g)
        p = decompose_connected(g, h)
        checks["volume_cap"] = bool(np.all(p.volumes(g) <= h + 1e-9))
    elif args.method == "forest":
        p = partition_forest(g)
    elif args.method == "avgdeg":
        p = partition_avg_degree(g)
    elif args.method == "majority":
        p = majority_color_pa(g, args.eps, seed=args.seed)
    elif args.method == "strips":
        sg = spa_from_files(g, args.pos or f"{args.graph}.pos")
        p = strip_partition(sg, args.omega)
    else:
        start = read_partition(args.init, g.n) if args.init else None
        if start is None:
            start = partition_avg_degree(g) if g.is_connected() else None
        if start is None:
            start = Partition(g.components())
        before = modularity(g, start).q
        p = local_search_refine(g, start, args.max_passes, seed=args.seed)
        checks["no_decrease"] = modularity(g, p).q >= before - 1e-12
    q = modularity(g, p).q
    delta, dbar = g.max_degree(), 2.0 * g.n_edges / g.n
    if args.method == "forest":
        checks["forest_lower"] = q >= B.forest_lower(int(np.count_nonzero(g.degrees())), delta)
    if args.method == "avgdeg":
        checks["avg_degree_lower"] = q >= B.avg_degree_lower(g.n, delta, dbar)
    out = args.partition_out or args.out
    if out:
        write_partition(p, out)
    print(f"parts={p.k} q={q:.6f}")
    for name, passed in checks.items():
        print(f"{name}: {'pass' if passed else 'FAIL'}")
    return all(checks.values())


def cmd_modularity(args) -> bool:
    g = _load_graph(args)
    p = read_partition(args.partition, g.n) if args.partition else Partition.trivial(g.n)
    br = modularity(g, p, args.gamma)
    doc = {"edge_contribution": br.edge_contribution, "degree_tax": br.degree_tax,
           "gamma": br.gamma, "q": br.q, "parts": p.k}
    ok = br.q <= 1.0
    if args.exact:
        qstar, best = exact_modularity(g, args.gamma)
        doc["q_star"] = qstar
        ok &= br.q <= qstar + 1e-12
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return ok


def cmd_experiment(args) -> bool:
    overrides = {"model": args.model, "method": args.method, "trials": args.trials,
                 "base_seed": args.seed}
    if args.config:
        cfg = load_config(args.config, overrides)
    else:
        cfg = ExperimentConfig(**{k: v for k, v in overrides.items() if v is not None})
    if args.param:
        base = {} if args.model and args.model != cfg.model else dict(cfg.model_params)
        cfg.model_params = {**base, **{k: _coerce(k, v) for k, v in args.param}}
    if args.method_param:
        cfg.method_params = {**cfg.method_params,
                             **{k: _coerce(k, v) for k, v in args.method_param}}
    if args.out:
        cfg.out_csv = f"{args.out}.csv"
        cfg.out_json = f"{args.out}.json"
    res = run_experiment(cfg)
    s = res.summary
    print(f"model={cfg.model} method={cfg.method} trials={cfg.trials} "
          f"q_mean={s['q_mean']:.6f} q_std={s['q_std']:.6f} "
          f"asserted={'pass' if res.passed else 'FAIL'}")
    return res.passed


def cmd_verify(args) -> bool:
    results = run_verification(full=args.full)
    for r in results:
        print(r.line())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([{"name": r.name, "passed": r.passed, "detail": r.detail}
                       for r in results], fh, indent=2, sort_keys=True, default=float)
            fh.write("\n")
    return all(r.passed for r in results)


COMMANDS = {"gen": cmd_gen, "bounds": cmd_bounds, "partition": cmd_partition,
            "modularity": cmd_modularity, "experiment": cmd_experiment, "verify": cmd_verify}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    parser, subs = build_parser()
    if known.config:
        _apply_config(parser, subs, known.config)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        ok = COMMANDS[args.command](args)
    except (GraphError, OSError, ValueError) as exc:
        print(f"rgmod {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
