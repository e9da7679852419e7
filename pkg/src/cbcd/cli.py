"""Command-line entry point: ``cbcd <subcommand> ...``.

Exit codes: 0 success, 1 runtime or IO error, 2 usage error.
Data goes to stdout or files; run reports go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from typing import List, Optional

from .detect import DetectConfig, detect_full
from .evaluation import CoverageError, nmi
from .graph import GraphFormatError, Partition, load_edge_list, load_ground_truth, write_partition
from .metrics import (DegenerateTableError, community_cos, community_F, community_Phi, confidence_scores,
                      contingency, modularity_Q, partition_gamma, phi_or_zero, ps)
from .nullmodel import ErParams, sample_ps_distribution
from .triangles import count_triangles

DETECT_HELP = """\
Output formats:
  community-per-line  one community per line, space-separated original node ids
  node-tab            one 'node<TAB>community' pair per line
A run report 'key=value ...' is written to stderr.
"""

METRICS_HELP = """\
Prints three TSV blocks to stdout, each with a header:
  node ps phi nb com        (one row per node; nb/com are empty when undefined)
  community size F Phi Cos  (community ids are 0-based in file order)
  gamma Q                   (whole-partition summary)
The partition file is line-per-community with original node ids.
"""

TRIANGLES_HELP = "Prints 'node<TAB>count' rows, then 'total_triangles=<k>'."

ER_HELP = """\
Writes <out> with columns 'replication,value' and <out>.hist.csv with
columns 'bin_lo,bin_hi,count' (61 equal-width bins over the sample range).
The community is nodes 0..size-1; node level samples node 0.
"""


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.6f}"


def _load_graph(path: str, one_indexed: bool = False):
    # dropped self-loops and duplicates are reported through logging
    with open(path) as f:
        return load_edge_list(f, one_indexed=one_indexed)


def _load_partition(g, path: str) -> Partition:
    with open(path) as f:
        truth = load_ground_truth(f, fmt="line_per_community", g=g)
    return Partition.from_blocks(g, truth.blocks())


def cmd_detect(args) -> int:
    cfg = DetectConfig(th=args.th, max_it=args.max_it, merge_metric=args.merge_metric,
                       beta=args.beta, node_order=args.node_order,
                       allow_isolation=args.allow_isolation)
    g = _load_graph(args.input, args.one_indexed)
    t0 = time.perf_counter()
    res = detect_full(g, cfg)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    p = res.partition
    if args.output:
        with open(args.output, "w") as f:
            write_partition(p, f, fmt=args.format)
    else:
        write_partition(p, sys.stdout, fmt=args.format)
    fields = [
        ("input", args.input), ("th", res.threshold), ("max_it", cfg.max_it),
        ("merge_metric", cfg.merge_metric), ("node_order", cfg.node_order),
        ("allow_isolation", int(cfg.allow_isolation)),
        ("n", g.n), ("m", g.m), ("communities", len(p.communities)),
        ("gamma", f"{partition_gamma(g, p):.6f}"),
        ("Q", f"{modularity_Q(g, p):.6f}" if g.m else "nan"),
        ("wall_ms", f"{wall_ms:.1f}"),
    ]
    print(" ".join(f"{k}={v}" for k, v in fields), file=sys.stderr)
    return 0


def cmd_metrics(args) -> int:
    g = _load_graph(args.input, args.one_indexed)
    p = _load_partition(g, args.partition)
    out = sys.stdout
    out.write("node\tps\tphi\tnb\tcom\n")
    for u in range(g.n):
        ct = contingency(g, p, u)
        try:
            nb, com = confidence_scores(ct)
        except DegenerateTableError:
            nb = com = None
        out.write(f"{g.labels[u]}\t{_fmt(ps(ct))}\t{_fmt(phi_or_zero(*ct))}\t{_fmt(nb)}\t{_fmt(com)}\n")
    out.write("community\tsize\tF\tPhi\tCos\n")
    for k, block in enumerate(p.blocks()):
        cid = p.assignment[block[0]]
        out.write(f"{k}\t{len(block)}\t{_fmt(community_F(g, p, cid))}\t"
                  f"{_fmt(community_Phi(g, p, cid))}\t{_fmt(community_cos(g, p, cid))}\n")
    q = modularity_Q(g, p) if g.m else None
    out.write("gamma\tQ\n")
    out.write(f"{_fmt(partition_gamma(g, p))}\t{'nan' if q is None else _fmt(q)}\n")
    return 0


def _read_blocks(path: str) -> dict:
    labels = {}
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            for tok in line.split():
                if tok in labels:
                    raise CoverageError(f"{path}:{lineno}: node {tok} listed twice")
                labels[tok] = lineno
    return labels


def cmd_nmi(args) -> int:
    print(f"{nmi(_read_blocks(args.file_a), _read_blocks(args.file_b)):.6f}")
    return 0


def cmd_triangles(args) -> int:
    g = _load_graph(args.input, args.one_indexed)
    tc = count_triangles(g, args.beta)
    out = sys.stdout
    for u in range(g.n):
        out.write(f"{g.labels[u]}\t{tc.tc[u]}\n")
    out.write(f"total_triangles={tc.total}\n")
    return 0


def cmd_er_sim(args) -> int:
    params = ErParams.from_lambda(args.n, args.lam, args.seed)
    t0 = time.perf_counter()
    sample = sample_ps_distribution(params, args.community_size, args.reps, level=args.level)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    with open(args.out, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["replication", "value"])
        for r, v in enumerate(sample.values):
            w.writerow([r, repr(float(v))])
    with open(args.out + ".hist.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["bin_lo", "bin_hi", "count"])
        for lo, hi, c in zip(sample.bin_edges[:-1], sample.bin_edges[1:], sample.counts):
            w.writerow([repr(float(lo)), repr(float(hi)), int(c)])
    meta = " ".join(f"{k}={v}" for k, v in sample.meta.items() if k != "rng")
    print(f"{meta} mean={sample.mean:.6g} wall_ms={wall_ms:.1f} rng=\"{sample.meta['rng']}\"",
          file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cbcd", description="Correlation-based community detection toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("detect", help="detect communities", epilog=DETECT_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    d.add_argument("--input", required=True, help="edge list")
    d.add_argument("--th", type=float, default=None,
                   help="merge threshold (default -2.8 below 4000 nodes, else -0.43)")
    d.add_argument("--max-it", type=int, default=20)
    d.add_argument("--merge-metric", choices=("phi", "cos"), default="phi")
    d.add_argument("--node-order", choices=("seed", "id"), default="seed",
                   help="visit order during local optimisation")
    d.add_argument("--allow-isolation", action="store_true",
                   help="let refinement move a node into a new singleton community")
    d.add_argument("--beta", type=float, default=None, help="triangle-counting degree split")
    d.add_argument("--output", help="partition file (default stdout)")
    d.add_argument("--format", choices=("community-per-line", "node-tab"), default="community-per-line")
    d.add_argument("--one-indexed", action="store_true")
    d.set_defaults(func=cmd_detect)

    m = sub.add_parser("metrics", help="per-node and per-community scores", epilog=METRICS_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    m.add_argument("--input", required=True)
    m.add_argument("--partition", required=True)
    m.add_argument("--one-indexed", action="store_true")
    m.set_defaults(func=cmd_metrics)

    n = sub.add_parser("nmi", help="NMI of two line-per-community files")
    n.add_argument("file_a")
    n.add_argument("file_b")
    n.set_defaults(func=cmd_nmi)

    t = sub.add_parser("triangles", help="per-node triangle counts", epilog=TRIANGLES_HELP)
    t.add_argument("--input", required=True)
    t.add_argument("--beta", type=float, default=None)
    t.add_argument("--one-indexed", action="store_true")
    t.set_defaults(func=cmd_triangles)

    e = sub.add_parser("er-sim", help="Monte-Carlo PS samples on E-R graphs", epilog=ER_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--lambda", dest="lam", type=float, required=True, help="expected degree")
    e.add_argument("--community-size", type=int, required=True)
    e.add_argument("--reps", type=int, required=True)
    e.add_argument("--level", choices=("node", "community"), default="node")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_er_sim)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # bad numeric parameters caught by the library count as usage errors
        if isinstance(exc, (GraphFormatError, CoverageError, DegenerateTableError)):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
