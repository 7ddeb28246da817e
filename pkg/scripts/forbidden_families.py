"""Minimal forbidden subgraphs for gn_s >= a up to an order cap, and the containment check between thresholds."""

import argparse

from guessgraph.extremal import check_monFgn, forbidden_order_bound, minimal_forbidden_family


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--amax", type=int, default=3)
    p.add_argument("--ncap", type=int, default=6)
    args = p.parse_args()

    for a in range(1, args.amax + 1):
        fam = minimal_forbidden_family(args.s, a, args.ncap)
        sizes = [(g.n, g.m) for g in fam.graphs()]
        bound = forbidden_order_bound(args.s, a)
        digits = len(str(bound))
        print(f"a={a}: {len(fam.members)} minimal graphs on <= {args.ncap} vertices, (n, m) = {sizes}")
        print(f"      members: {' '.join(fam.members)}")
        print(f"      order bound has {digits} digits" + (f" ({bound})" if digits < 12 else ""))
        if a > 1:
            v = check_monFgn(args.s, a - 1, a, args.ncap)
            print(f"      every member contains a member for a={a - 1}: {v.holds}")


if __name__ == "__main__":
    main()
