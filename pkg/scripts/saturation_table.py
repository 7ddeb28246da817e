"""Tabulate sat(n, gn_s >= a) and ex(n, gn_s >= a) for small n by exhaustive search.

    python3 scripts/saturation_table.py --nmax 7 --s 2 --cache gncache.jsonl
"""

import argparse
import logging
import time
from math import comb

from guessgraph.cache import ResultCache
from guessgraph.extremal import SearchConfig, ex_search, sat_search


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--cache", help="optional JSON-lines result cache")
    p.add_argument("-v", "--verbose", action="store_true")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    config = SearchConfig(cache=ResultCache(args.cache) if args.cache else None, progress=args.verbose)

    start = time.perf_counter()
    print(f"{'n':>2} {'a':>2} {'ex':>4} {'formula':>7} {'sat':>4}  sat family (graph6)")
    for n in range(3, args.nmax + 1):
        for a in range(2, n):
            ex = ex_search(n, args.s, a, config)
            sat = sat_search(n, args.s, a, config)
            k = a - 1
            print(f"{n:>2} {a:>2} {ex.value:>4} {comb(n, 2) - comb(n - k, 2):>7} {sat.value:>4}  {' '.join(sat.family)}")
    print(f"# {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
