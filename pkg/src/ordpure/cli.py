"""Command-line entry point ``ordpure``.

Exit status: 0 when a witness or result is produced, 2 when none exists or
none was found within the caps, 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import blockade as bl
from . import embed as em
from . import gen
from . import io
from .core import (
    AnalysisError, CapabilityError, InputError, OrderedGraph, PreconditionError, bits,
)
from .leafcover import full_leaf_cover, verify_leaf_covered
from .patterns import (
    PATTERN_NAMES, contains_ordered, find_rainbow_copy, is_ordered_forest, is_valid_embedding,
    pattern,
)
from .purepair import best_anticomplete_pair, best_pure_pair, verify_pure_pair

OK, ERROR, NONE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _pattern_arg(name: str, k: Optional[int]) -> OrderedGraph:
    if name in PATTERN_NAMES:
        return pattern(name, k)
    if os.path.exists(name):
        return io.read_ogr(name)
    raise InputError(f"pattern {name!r} is neither a known name ({', '.join(PATTERN_NAMES)}) nor a file")


def _blockade_arg(args, G: OrderedGraph) -> bl.Blockade:
    if args.blockade:
        return io.read_blockade(args.blockade, G)
    if args.equal:
        return bl.equal_blockade(G, args.equal)
    raise UsageError("give --blockade FILE or --equal K")


def _need_seed(args) -> int:
    if args.seed is None:
        raise UsageError("this command is randomized: --seed is required")
    return args.seed


def _sampling_seed(args, block_sizes, check: str = "auto") -> int:
    """Seed for sampled checks; required whenever a block is too big for exact checking."""
    big = max(block_sizes, default=0) > bl.EXACT_BLOCK_CAP
    if check != "exact" and big and args.seed is None:
        raise UsageError("sampled checking is randomized: --seed is required")
    return args.seed or 0


def _equal_block_sizes(n: int, T: OrderedGraph) -> list[int]:
    if not is_ordered_forest(T) or not n:
        return []           # no rainbow search, hence no sampling
    K = em.practical_length(em.augment_to_tree(T).n) if T.n else 1
    K = max(1, min(K, n))
    return [-(-n // K)]


def _emit(lines, out) -> None:
    for ln in lines:
        out.write(ln + "\n")


# -- commands --------------------------------------------------------------

def cmd_gen(args, out) -> int:
    seed = _need_seed(args)
    if args.kind == "random":
        if args.p is None:
            raise UsageError("gen random needs --p")
        G = gen.random_ordered(args.n, args.p, seed, args.threads)
        comments = [f"random n={args.n} p={args.p} seed={seed}"]
    else:
        G, rep = gen.girth_construction(args.n, args.g, seed, args.threads)
        comments = [f"girth n={args.n} g={args.g} seed={seed} p={rep.p:.6g}",
                    f"kept={rep.kept} deletions={rep.deletions} half_kept={rep.half_kept}"]
    text = io.format_ogr(G, comments)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return OK


def cmd_contains(args, out) -> int:
    G = io.read_ogr(args.host)
    H = _pattern_arg(args.pattern, args.k)
    e = contains_ordered(G, H, args.threads)
    if e is None:
        out.write("absent\n")
        return NONE
    assert is_valid_embedding(G, H, e)
    out.write(f"copy {e}\n")
    return OK


def cmd_rainbow(args, out) -> int:
    G = io.read_ogr(args.host)
    B = _blockade_arg(args, G)
    H = _pattern_arg(args.pattern, args.k)
    e = find_rainbow_copy(G, B, H)
    if e is None:
        out.write("absent\n")
        return NONE
    assert is_valid_embedding(G, H, e, B.blocks)
    out.write(f"copy {e}\n")
    return OK


def cmd_purepair(args, out) -> int:
    G = io.read_ogr(args.host)
    if args.polarity == "anticomplete":
        w = best_anticomplete_pair(G, args.mode, node_limit=args.node_limit)
    else:
        w = best_pure_pair(G, args.mode, node_limit=args.node_limit).witness
    if w is None:
        out.write("none\n")
        return NONE
    if not verify_pure_pair(G, w):
        raise AnalysisError("witness failed verification")
    out.write(f"size {w.size}\n")
    out.write(f"pair {w}\n")
    return OK


def _trace_json(trace):
    return json.dumps(trace, sort_keys=True)


def cmd_blockade(args, out) -> int:
    G = io.read_ogr(args.host)
    B = _blockade_arg(args, G)
    if args.action == "measures":
        m = bl.measures(G, B)
        out.write(f"width {m.width}\nshrinkage {m.shrinkage:.12g}\nlinkage {m.linkage:.12g}\n")
        out.write(f"log2_maxdeg_product {m.log_maxdeg_product:.12g}\n")
        for (i, j), d in sorted(m.maxdeg.items()):
            if i != j:
                out.write(f"maxdeg {i} {j} {d}\n")
        return OK
    seed = _sampling_seed(args, B.sizes(), args.check)
    if args.action == "resistant":
        r = bl.is_shrink_resistant(G, B, args.phi, args.mu, args.check, args.trials, seed)
        if r.ok:
            out.write(f"resistant ({r.mode})\n")
            return OK
        cx = r.counterexample
        out.write(f"counterexample h={cx.h} j={cx.j} maxdeg={cx.maxdeg} "
                  f"X={list(bits(cx.X))} Y={list(bits(cx.Y))}\n")
        return NONE
    if args.action == "shrink":
        r = bl.shrink_resist(G, B, args.phi, args.mu, args.check, args.trials, seed)
        out.write(f"outcome {r.outcome}\niterations {r.iterations} (bound {r.iteration_bound})\n")
        out.write(f"log2_beta {r.log_beta:.12g}\ncheck {r.check_mode}\n")
        if r.pair:
            out.write(f"pair {r.pair[0]} {r.pair[1]}\n")
        out.write(io.format_blockade(r.blockade))
        out.write(f"trace {_trace_json(r.trace)}\n")
        return OK
    if args.action in ("band", "homog"):
        if args.action == "band":
            sub, cert = bl.find_band(G, B, args.phi, args.mu, args.k, args.mode, args.check,
                                     args.trials, seed)
        else:
            res = bl.homog(G, B, args.k, args.phi, args.mu, args.mode, args.check, args.trials, seed)
            if res.anticomplete:
                h, j = res.pair
                out.write(f"anticomplete {h} {j}\n")
                out.write(io.format_blockade(res.blockade.sub((h, j))))
                return OK
            sub, cert = res.blockade, res.certificate
        out.write(f"selection {' '.join(map(str, cert.selection))}\n")
        out.write(f"tau {cert.tau:.12g}\nlog2_tau {cert.log_tau:.12g}\nphi {cert.phi:.12g}\nmu {cert.mu:.12g}\n")
        out.write(f"type {cert.pair_type}\ncheck {cert.check_mode}\nvalidated {cert.validated}\n")
        out.write(io.format_blockade(sub))
        return OK if cert.validated else NONE
    raise UsageError(f"unknown action {args.action}")


def cmd_leafcover(args, out) -> int:
    G = io.read_ogr(args.host)
    B = _blockade_arg(args, G)
    seed = _sampling_seed(args, B.sizes(), args.check)
    f = full_leaf_cover(G, B, args.k, args.c, args.sigma, args.sigma_prime, args.lambda_prime,
                        args.mode, args.phi, args.mu, args.Lambda, args.check, seed)
    if f.outcome != "selection":
        h, j = f.homog.pair
        out.write(f"anticomplete {h} {j}\n")
        return OK
    out.write(f"selection {' '.join(map(str, f.selection))}\n")
    H = f.selection[::2] if args.H is None else tuple(f.selection[i] for i in args.H)
    run = f.partition(H)
    L = run.structure
    v = verify_leaf_covered(G, L, args.check, seed=seed)
    out.write(f"H {' '.join(map(str, L.H))}\nJ {' '.join(map(str, L.J))}\n")
    for p in run.trace:
        out.write("params " + " ".join(f"{x:.12g}" for x in p.astuple()) + "\n")
    for (h, j), X in sorted(L.covers.items()):
        out.write(f"cover {h} {j} {' '.join(map(str, bits(X)))}\n")
    out.write(io.format_blockade(L.blockade))
    out.write(f"verified {v.ok}{'' if v.ok else ' bullet ' + str(v.bullet) + ': ' + v.message}\n")
    for w in run.warnings:
        out.write(f"warning {w}\n")
    return OK if v.ok else NONE


def cmd_embed(args, out) -> int:
    G = io.read_ogr(args.host)
    B = _blockade_arg(args, G)
    T = _pattern_arg(args.pattern, args.k)
    seed = _sampling_seed(args, B.sizes())
    r = em.embed_rainbow_tree(G, B, T, args.c, args.sigma, args.mode, seed=seed)
    for ln in r.trace:
        out.write(f"# {ln}\n")
    if r.embedding is None:
        out.write("absent\n")
        return NONE
    out.write(f"stage {r.stage}\ncopy {r.embedding}\n")
    return OK


def cmd_trichotomy(args, out) -> int:
    G = io.read_ogr(args.host)
    T = _pattern_arg(args.pattern, args.k)
    seed = _sampling_seed(args, _equal_block_sizes(G.n, T))
    r = em.verysparse_witness(G, T, args.c, args.eps, args.mode, node_limit=args.node_limit,
                              seed=seed)
    for key in sorted(r.params):
        out.write(f"# {key}={r.params[key]}\n")
    out.write(f"stage {r.stage}\n{io.format_outcome(r.outcome)}\n")
    return NONE if r.exhausted else OK


def cmd_mainpair(args, out) -> int:
    G = io.read_ogr(args.host)
    T = _pattern_arg(args.pattern, args.k)
    seed = _sampling_seed(args, _equal_block_sizes(G.n, T))
    r = em.main_pure_pair(G, T, args.c, args.eps, not args.no_theorem, node_limit=args.node_limit,
                          seed=seed)
    if r.diagnostic:
        tag, e = r.diagnostic
        out.write(f"# contains {tag}: {e}\n")
    if r.extraction:
        ex = r.extraction
        out.write(f"# extraction side={ex.side} size={len(ex.X)} delta={ex.delta:.6g}\n")
    out.write(f"# target n^(1-c)={r.target:.6g}\n")
    if r.witness is None:
        out.write("none\n")
        return NONE
    out.write(f"size {r.witness.size}\npair {r.witness}\n")
    return OK


def cmd_params(args, out) -> int:
    rep = bl.theoretical_params(args.phi, args.mu, args.k, args.blocks, args.sigma, args.Sigma,
                                args.Lambda, args.c, args.sigma_prime, args.lambda_prime,
                                args.tree_size)
    _emit(rep.lines(), out)
    return OK


def cmd_experiment(args, out) -> int:
    if not args.seeds:
        raise UsageError("experiment is randomized: --seeds is required")
    res = gen.scaling_experiment(args.n, args.construction, args.seeds, args.g, args.p,
                                 args.c_grid, args.node_limit, args.timing, args.threads)
    lines = res.csv_lines()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _emit(lines, fh)
    else:
        _emit(lines, out)
    return OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordpure", description="Pure pairs, blockades and ordered patterns at desk scale.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def host(sp):
        sp.add_argument("--host", required=True, help="graph file in OGR v1 format")

    def blk(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--blockade", help="blockade file, one JSON vertex list per line")
        g.add_argument("--equal", type=int, help="use K equal consecutive blocks")

    def pat(sp, required=True):
        sp.add_argument("--pattern", required=required, help="pattern name or OGR file")
        sp.add_argument("--k", type=int, default=None, help="length for monotone_path")

    def seed(sp):
        sp.add_argument("--seed", type=int, default=None)

    s = sub.add_parser("gen", help="generate a random or high-girth graph")
    s.add_argument("kind", choices=("random", "girth"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float)
    s.add_argument("--g", type=int, default=3)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("-o", "--output")
    seed(s)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("contains", help="ordered induced containment")
    host(s); pat(s)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_contains)

    s = sub.add_parser("rainbow", help="rainbow copy in a blockade")
    host(s); blk(s); pat(s)
    s.set_defaults(func=cmd_rainbow)

    s = sub.add_parser("purepair", help="largest pure pair")
    host(s)
    s.add_argument("--mode", choices=("exact", "branch_bound", "greedy"), default="exact")
    s.add_argument("--polarity", choices=("any", "anticomplete"), default="any")
    s.add_argument("--node-limit", type=int, default=200_000)
    s.set_defaults(func=cmd_purepair)

    s = sub.add_parser("blockade", help="measures, shrink-resistance and bands")
    s.add_argument("action", choices=("measures", "resistant", "shrink", "band", "homog"))
    host(s); blk(s); seed(s)
    s.add_argument("--phi", type=float, default=0.5)
    s.add_argument("--mu", type=float, default=0.5)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--check", choices=("auto", "exact", "sampled"), default="auto")
    s.add_argument("--mode", choices=("theoretical", "practical"), default="practical")
    s.add_argument("--trials", type=int, default=bl.DEFAULT_TRIALS)
    s.set_defaults(func=cmd_blockade)

    s = sub.add_parser("leafcover", help="band selection plus leaf covers for one partition")
    host(s); blk(s); seed(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--c", type=float, default=0.5)
    s.add_argument("--sigma", type=float, default=0.1)
    s.add_argument("--sigma-prime", type=float, default=0.3)
    s.add_argument("--lambda-prime", type=float, default=1.0)
    s.add_argument("--phi", type=float)
    s.add_argument("--mu", type=float)
    s.add_argument("--Lambda", type=float)
    s.add_argument("--H", type=int, nargs="*", help="positions (0-based) within the selection")
    s.add_argument("--mode", choices=("theoretical", "practical"), default="practical")
    s.add_argument("--check", choices=("auto", "exact", "sampled"), default="auto")
    s.set_defaults(func=cmd_leafcover)

    s = sub.add_parser("embed", help="rainbow tree embedding with fallback")
    host(s); blk(s); pat(s); seed(s)
    s.add_argument("--c", type=float, default=0.5)
    s.add_argument("--sigma", type=float, default=0.25)
    s.add_argument("--mode", choices=em.STAGES, default="practical")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("trichotomy", help="degree, copy or anticomplete pair")
    host(s); pat(s); seed(s)
    s.add_argument("--c", type=float, default=0.5)
    s.add_argument("--eps", type=float, default=0.5)
    s.add_argument("--mode", choices=em.STAGES, default="practical")
    s.add_argument("--node-limit", type=int, default=200_000)
    s.set_defaults(func=cmd_trichotomy)

    s = sub.add_parser("mainpair", help="pure pair in a graph excluding T and its complement")
    host(s); pat(s); seed(s)
    s.add_argument("--c", type=float, default=0.5)
    s.add_argument("--eps", type=float, default=0.5)
    s.add_argument("--no-theorem", action="store_true", help="allow a pattern that is not a forest")
    s.add_argument("--node-limit", type=int, default=200_000)
    s.set_defaults(func=cmd_mainpair)

    s = sub.add_parser("params", help="report the theoretical constants (base-2 logs)")
    s.add_argument("--phi", type=float, required=True)
    s.add_argument("--mu", type=float, default=0.5)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--blocks", type=int)
    s.add_argument("--sigma", type=float)
    s.add_argument("--Sigma", type=float)
    s.add_argument("--Lambda", type=float, default=1.0)
    s.add_argument("--c", type=float)
    s.add_argument("--sigma-prime", type=float)
    s.add_argument("--lambda-prime", type=float)
    s.add_argument("--tree-size", type=int)
    s.set_defaults(func=cmd_params)

    s = sub.add_parser("experiment", help="pure-pair scaling experiment (CSV)")
    s.add_argument("--construction", choices=gen.CONSTRUCTIONS, default="girth")
    s.add_argument("--n", type=int, nargs="+", required=True)
    s.add_argument("--seeds", type=int, nargs="+")
    s.add_argument("--g", type=int, default=3)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--c-grid", type=float, nargs="*", default=[])
    s.add_argument("--node-limit", type=int, default=20_000)
    s.add_argument("--timing", action="store_true", help="fill the seconds column (not reproducible)")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"ordpure: usage error: {exc}", file=sys.stderr)
        return ERROR
    except PreconditionError as exc:
        for f in exc.failures:
            print(f"ordpure: precondition failed: {f}", file=sys.stderr)
        return ERROR
    except (InputError, CapabilityError, AnalysisError, OSError) as exc:
        print(f"ordpure: error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
