"""Exact classical invariants with certificates.

Every search breaks ties towards the lexicographically smallest witness, so
results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, complement


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def max_independent_set(graph: Graph) -> list[int]:
    """Include-first DFS in vertex order; the first maximum found is lex-smallest."""
    n = graph.n
    best: list[int] = []

    def grow(chosen: list[int], cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        while cand:
            if len(chosen) + cand.bit_count() <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            chosen.append(v)
            grow(chosen, cand & ~graph.adj[v])
            chosen.pop()

    grow([], (1 << n) - 1)
    return best


def independence_number(graph: Graph) -> tuple[int, list[int]]:
    witness = max_independent_set(graph)
    return len(witness), witness


def max_matching(graph: Graph) -> tuple[int, list[tuple[int, int]]]:
    """Maximum matching by exhaustive search with a vertex-count bound."""
    best: list[tuple[int, int]] = []

    def grow(matched: list[tuple[int, int]], free: int) -> None:
        nonlocal best
        if len(matched) > len(best):
            best = list(matched)
        # vertices that still have a free neighbour
        live = 0
        for v in _bits(free):
            if graph.adj[v] & free:
                live |= 1 << v
        if not live or len(matched) + live.bit_count() // 2 <= len(best):
            return
        u = (live & -live).bit_length() - 1
        for w in _bits(graph.adj[u] & free):
            matched.append((u, w))
            grow(matched, free & ~(1 << u) & ~(1 << w))
            matched.pop()
        grow(matched, free & ~(1 << u))

    grow([], (1 << graph.n) - 1)
    return len(best), best


def chromatic_number(graph: Graph) -> tuple[int, list[int]]:
    """Exact vertex colouring by backtracking, seeded with a greedy colouring.

    Colours are assigned in vertex order with the smallest colours first and
    a new colour only one above the current maximum, which removes colour
    permutation symmetry.
    """
    n = graph.n
    if n == 0:
        return 0, []
    greedy = []
    for v in range(n):
        used = {greedy[u] for u in _bits(graph.adj[v]) if u < v}
        greedy.append(min(c for c in range(n) if c not in used))
    best = [max(greedy) + 1, greedy]
    colors = [-1] * n

    def assign(v: int, k: int) -> None:
        if k >= best[0]:
            return
        if v == n:
            best[0], best[1] = k, list(colors)
            return
        used = {colors[u] for u in _bits(graph.adj[v]) if u < v}
        for c in range(min(k + 1, best[0] - 1)):
            if c not in used:
                colors[v] = c
                assign(v + 1, max(k, c + 1))
        colors[v] = -1

    assign(0, 0)
    return best[0], best[1]


def clique_cover(graph: Graph) -> tuple[int, list[list[int]]]:
    """Minimum partition into cliques, read off a colouring of the complement."""
    k, colors = chromatic_number(complement(graph))
    classes = [[v for v in range(graph.n) if colors[v] == c] for c in range(k)]
    return k, classes


def is_clique_cover(graph: Graph, classes: list[list[int]]) -> bool:
    flat = sorted(v for cls in classes for v in cls)
    if flat != list(range(graph.n)):
        return False
    return all(graph.has_edge(u, v) for cls in classes for i, u in enumerate(cls) for v in cls[i + 1:])


def is_independent_set(graph: Graph, vertices) -> bool:
    vs = list(vertices)
    return len(set(vs)) == len(vs) and all(
        0 <= v < graph.n for v in vs
    ) and not any(graph.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])


def dominating_vertices(graph: Graph) -> set[int]:
    full = graph.vertex_mask
    return {v for v in range(graph.n) if graph.adj[v] == full & ~(1 << v)}


@dataclass(frozen=True)
class Bounds:
    n: int
    alpha: int
    alpha_prime: int
    cp: int
    chi: int
    independent_set: list[int] = field(compare=False)
    matching: list[tuple[int, int]] = field(compare=False)
    clique_cover: list[list[int]] = field(compare=False)

    @property
    def gn_lower(self) -> int:
        return self.n - self.cp

    @property
    def gn_upper(self) -> int:
        return self.n - self.alpha

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "alpha_prime": self.alpha_prime,
            "cp": self.cp,
            "chi": self.chi,
            "gn_lower": self.gn_lower,
            "gn_upper": self.gn_upper,
            "independent_set": self.independent_set,
            "matching": [list(e) for e in self.matching],
            "clique_cover": self.clique_cover,
        }


def gn_bounds(graph: Graph) -> Bounds:
    """n - cp(G) <= gn(G, s) <= n - alpha(G), with all certificates."""
    alpha, ind = independence_number(graph)
    ap, matching = max_matching(graph)
    cp, cover = clique_cover(graph)
    chi, _ = chromatic_number(graph)
    return Bounds(graph.n, alpha, ap, cp, chi, ind, matching, cover)
