"""NMI and community count on the college-football network across merge thresholds.

    python scripts/football_sweep.py [--gml PATH]   (or set $CBCD_FOOTBALL)
"""

import argparse
import sys
import time

import numpy as np

from cbcd.datasets import football_path, load_football
from cbcd.detect import DetectConfig, detect_full
from cbcd.evaluation import nmi


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gml", help="football.gml with a 'value' node attribute")
    ap.add_argument("--lo", type=float, default=-2.8)
    ap.add_argument("--hi", type=float, default=-2.0)
    ap.add_argument("--step", type=float, default=0.2)
    ap.add_argument("--node-order", choices=("seed", "id"), default="seed")
    args = ap.parse_args()
    if football_path(args.gml) is None:
        sys.exit("football.gml not found: pass --gml or set $CBCD_FOOTBALL")
    g, truth = load_football(args.gml)
    print(f"n={g.n} m={g.m} true_communities={len(set(truth.values()))}")
    print("th\tcommunities\tnmi\tms")
    for th in np.arange(args.lo, args.hi + 1e-9, args.step):
        t0 = time.perf_counter()
        res = detect_full(g, DetectConfig(th=float(th), node_order=args.node_order))
        ms = (time.perf_counter() - t0) * 1000
        print(f"{th:.1f}\t{len(res.partition.communities)}\t{nmi(res.partition, truth):.4f}\t{ms:.0f}")


if __name__ == "__main__":
    main()
