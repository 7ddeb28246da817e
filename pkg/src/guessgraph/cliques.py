"""Bitset branch-and-bound maximum clique (greedy colouring bound)."""

from __future__ import annotations


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def max_clique(
    adj: list[int],
    *,
    initial: list[int] | None = None,
    stop_at: int | None = None,
    at_least: int = 0,
) -> list[int]:
    """Largest clique of the graph with neighbour bitmasks ``adj``.

    ``initial`` is a known clique used as the incumbent.  The search returns
    as soon as the incumbent reaches ``stop_at`` (a proven upper bound or the
    size the caller cares about).  Branches that cannot reach ``at_least`` are
    pruned even when they could beat the incumbent, so with ``at_least`` set
    the result is only guaranteed maximum if it has at least that size.
    """
    n = len(adj)
    best = list(initial or [])
    if n == 0 or (stop_at is not None and len(best) >= stop_at):
        return best

    # relabel by non-increasing degree so colour classes fill greedily
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    pos = {v: i for i, v in enumerate(order)}
    radj = [0] * n
    for i, v in enumerate(order):
        row = adj[v]
        r = 0
        while row:
            u = _low(row)
            row &= row - 1
            r |= 1 << pos[u]
        radj[i] = r

    state = {"best": [pos[v] for v in best], "done": False}
    floor = max(len(best), at_least - 1)

    def colour_sort(cand: int) -> tuple[list[int], list[int]]:
        verts, bounds = [], []
        k = 0
        while cand:
            k += 1
            q = cand
            while q:
                v = _low(q)
                q &= ~radj[v] & ~(1 << v)
                cand &= ~(1 << v)
                verts.append(v)
                bounds.append(k)
        return verts, bounds

    def expand(clique: list[int], cand: int) -> None:
        nonlocal floor
        verts, bounds = colour_sort(cand)
        for idx in range(len(verts) - 1, -1, -1):
            if len(clique) + bounds[idx] <= floor:
                return
            v = verts[idx]
            clique.append(v)
            sub = cand & radj[v]
            if sub:
                expand(clique, sub)
            if not state["done"] and len(clique) > len(state["best"]):
                state["best"] = list(clique)
                floor = max(floor, len(clique))
                if stop_at is not None and len(clique) >= stop_at:
                    state["done"] = True
            clique.pop()
            if state["done"]:
                return
            cand &= ~(1 << v)

    expand([], (1 << n) - 1)
    return sorted(order[v] for v in state["best"])
