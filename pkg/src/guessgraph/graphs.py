"""Simple undirected graphs on vertices 0..n-1.

Neighbourhoods are stored as integer bitmasks, so ``adj[v] >> u & 1`` tests
adjacency.  Graphs are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

MAX_ENUMERATION_N = 8


class GraphError(ValueError):
    """Invalid graph construction or malformed graph input."""


class ResourceCapError(RuntimeError):
    """The instance is larger than the configured search caps."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length must equal n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GraphError(f"invalid edge ({u}, {v}) for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(_bits(self.adj[v]))

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for u, v in self.edges():
            adj[perm[u]] |= 1 << perm[v]
            adj[perm[v]] |= 1 << perm[u]
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep),
            [(index[u], index[v]) for u, v in self.edges() if u in index and v in index],
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# constructors

def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    if n < 0:
        raise GraphError("n must be non-negative")
    return Graph(n, (0,) * n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise GraphError("complete bipartite graph needs p, q >= 1")
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def star(t: int) -> Graph:
    """K_{1,t} with the centre at vertex 0."""
    if t < 0:
        raise GraphError("star needs t >= 0")
    return Graph.from_edges(t + 1, [(0, j) for j in range(1, t + 1)])


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint copies of g (vertices 0..n_g-1) and h (shifted), plus all cross edges."""
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    edges += [(u, g.n + v) for u in range(g.n) for v in range(h.n)]
    return Graph.from_edges(g.n + h.n, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    return Graph.from_edges(g.n + h.n, edges)


def k_star(a: int) -> Graph:
    """K_{a,a} with the edge x_1 y_1 subdivided.

    Labels: x_1..x_a are 0..a-1, y_1..y_a are a..2a-1, the subdivision
    vertex v_0 is 2a.
    """
    if a < 2:
        raise GraphError("K*_{a,a} needs a >= 2")
    edges = [(i, a + j) for i in range(a) for j in range(a) if (i, j) != (0, 0)]
    edges += [(0, 2 * a), (a, 2 * a)]
    return Graph.from_edges(2 * a + 1, edges)


# ---------------------------------------------------------------------------
# edits

def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def add_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = e
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v or g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not a non-edge")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def remove_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = e
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def subdivide_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Replace edge uv by u-w-v where w is the new vertex n."""
    u, v = e
    h = remove_edge(g, e)
    return Graph.from_edges(g.n + 1, h.edges() + [(u, g.n), (v, g.n)])


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove v; vertices above v shift down by one."""
    _check_vertex(g, v)
    return g.induced(u for u in range(g.n) if u != v)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def non_edges(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)]


def add_dominating_vertex(g: Graph) -> Graph:
    """Append vertex n adjacent to every existing vertex."""
    return join(g, empty(1))


def components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


# ---------------------------------------------------------------------------
# graph6

def encode_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        header = chr(63 + n)
    elif n < 258048:
        header = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    else:
        raise GraphError("graph6 encoding supports n < 258048")
    bits = [g.adj[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return header + body


def decode_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text or any(not 63 <= ord(ch) <= 126 for ch in text):
        raise GraphError(f"malformed graph6 string {text!r}")
    data = [ord(ch) - 63 for ch in text]
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise GraphError("unsupported or truncated graph6 header")
        n = data[1] << 12 | data[2] << 6 | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    nbits = n * (n - 1) // 2
    if len(data) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body length {len(data)} does not match n={n}")
    bits = [d >> (5 - k) & 1 for d in data for k in range(6)]
    if any(bits[nbits:]):
        raise GraphError("graph6 padding bits must be zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` followed by ``u v`` pairs, one per line or ';'-separated."""
    chunks = [c.strip() for c in text.replace(";", "\n").splitlines()]
    chunks = [c for c in chunks if c and not c.startswith("#")]
    if not chunks:
        raise GraphError("empty edge list")
    try:
        n = int(chunks[0])
        edges = []
        for line in chunks[1:]:
            u, v = line.replace(",", " ").split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


# ---------------------------------------------------------------------------
# canonical labelling

def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbour counts into every cell."""
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            out.extend(groups[k] for k in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def _leaf_code(adj: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``order`` such that vertex ``order[i]`` gets canonical label i.

    Individualisation-refinement over equitable partitions.  Branches on
    vertices that are twins of an already tried vertex in the same cell are
    skipped, since swapping twins is an automorphism fixing the partition.
    """
    adj = g.adj
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(adj, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any((adj[v] & ~(1 << u)) == (adj[u] & ~(1 << v)) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if g.n == 0:
        return []
    search([list(range(g.n))])
    return best[1]


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for label, v in enumerate(order):
        perm[v] = label
    return g.relabel(perm)


def canonical_form(g: Graph) -> str:
    """graph6 string of the canonical representative of g's isomorphism class."""
    return encode_graph6(canonical_graph(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


def is_subgraph(h: Graph, g: Graph) -> bool:
    """True iff h embeds into g as a (not necessarily induced) subgraph."""
    if h.n > g.n or h.m > g.m:
        return False
    order = sorted(range(h.n), key=lambda v: -h.degree(v))
    image = [-1] * h.n
    used = 0

    def place(k: int) -> bool:
        nonlocal used
        if k == h.n:
            return True
        v = order[k]
        need = [image[u] for u in _bits(h.adj[v]) if image[u] >= 0]
        for x in range(g.n):
            if used >> x & 1 or g.degree(x) < h.degree(v):
                continue
            if all(g.adj[x] >> y & 1 for y in need):
                image[v] = x
                used |= 1 << x
                if place(k + 1):
                    return True
                used &= ~(1 << x)
                image[v] = -1
        return False

    return place(0)


# ---------------------------------------------------------------------------
# enumeration

def enumerate_graphs(n: int, cap: int = MAX_ENUMERATION_N) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class on n vertices.

    Built by vertex augmentation from the classes on n-1 vertices and ordered
    by (edge count, canonical graph6).
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    if n > cap:
        raise ResourceCapError(f"enumeration of n={n} exceeds the cap of {cap} vertices")
    return _enumerate(n)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Graph, ...]:
    if n <= 1:
        return (empty(n),)
    seen: dict[str, Graph] = {}
    for base in _enumerate(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = list(base.adj) + [nbrs]
            for u in _bits(nbrs):
                adj[u] |= 1 << (n - 1)
            key = canonical_form(Graph(n, tuple(adj)))
            if key not in seen:
                seen[key] = decode_graph6(key)
    return tuple(seen[k] for k in sorted(seen, key=lambda k: (seen[k].m, k)))
