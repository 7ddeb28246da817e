"""Exact maximum code size of every graph on n vertices, checked against the alpha / clique-cover sandwich.

    python3 scripts/sandwich_n7.py --n 7 --s 2
"""

import argparse
import collections
import time

from guessgraph.graphs import encode_graph6, enumerate_graphs
from guessgraph.guessing import GuessingInstance, max_code
from guessgraph.invariants import gn_bounds


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--slowest", type=int, default=5, help="report this many slowest graphs")
    args = p.parse_args()

    sizes = collections.Counter()
    strict = 0
    timings = []
    start = time.perf_counter()
    for g in enumerate_graphs(args.n):
        b = gn_bounds(g)
        t0 = time.perf_counter()
        t = max_code(GuessingInstance(g, args.s)).size
        timings.append((time.perf_counter() - t0, encode_graph6(g), t))
        lo, hi = args.s**b.gn_lower, args.s**b.gn_upper
        if not lo <= t <= hi:
            raise SystemExit(f"sandwich violated on {encode_graph6(g)}: {lo} <= {t} <= {hi} fails")
        strict += lo < t < hi
        sizes[t] += 1
    total = time.perf_counter() - start

    print(f"{sum(sizes.values())} graphs on {args.n} vertices, s = {args.s}: sandwich holds")
    print(f"strictly inside both bounds: {strict}")
    print("code size histogram:", dict(sorted(sizes.items())))
    print(f"total {total:.1f} s; slowest:")
    for dt, g6, t in sorted(timings, reverse=True)[: args.slowest]:
        print(f"  {g6:<12} t*={t:<4} {dt:.2f} s")


if __name__ == "__main__":
    main()
