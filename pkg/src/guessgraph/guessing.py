"""Guessing games: fixed-point codes, protocols and exact guessing numbers.

A coloring of an n-vertex graph with s colors is stored as the base-s integer
``sum(c[v] * s**v)``.  Two colorings conflict when some vertex sees the same
colors on its neighbourhood in both but has different colors itself; a code
is a conflict-free set of colorings, and codes are exactly the fixed-point
sets of protocols.

Whether two colorings conflict depends only on the set of vertices where they
differ: they conflict iff some vertex of that set has no neighbour inside it.
The conflict graph is therefore a Cayley graph on Z_s^n, and a maximum code
can be assumed to contain the all-zero coloring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cliques import max_clique
from .graphs import Graph, ResourceCapError, canonical_form, components, delete_vertex
from .invariants import clique_cover, independence_number

MAX_COLORINGS = 2**20


class InvalidCodeError(ValueError):
    pass


@dataclass(frozen=True)
class GuessingInstance:
    graph: Graph
    s: int
    cap: int = MAX_COLORINGS

    def __post_init__(self):
        if self.s < 2:
            raise ValueError("alphabet size s must be at least 2")
        if self.s ** self.graph.n > self.cap:
            raise ResourceCapError(
                f"s^n = {self.s}^{self.graph.n} exceeds the cap of {self.cap} colorings"
            )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_colorings(self) -> int:
        return self.s ** self.graph.n


def encode_coloring(colors: Sequence[int], s: int) -> int:
    return sum(c * s**v for v, c in enumerate(colors))


def decode_coloring(x: int, n: int, s: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        x, r = divmod(x, s)
        out.append(r)
    return tuple(out)


def _digit_table(n: int, s: int) -> np.ndarray:
    """Row x holds the colors of coloring x."""
    idx = np.arange(s**n, dtype=np.int64)
    return np.stack([(idx // s**v) % s for v in range(n)], axis=1) if n else idx[:, None][:, :0]


def conflicts(c1: Sequence[int], c2: Sequence[int], graph: Graph) -> bool:
    """True iff some vertex sees equal neighbour colors but has differing colors."""
    if len(c1) != len(c2) or len(c1) != graph.n:
        raise ValueError("colorings must both have one entry per vertex")
    for v in range(graph.n):
        if c1[v] != c2[v] and all(c1[u] == c2[u] for u in graph.neighbors(v)):
            return True
    return False


def good_supports(graph: Graph) -> np.ndarray:
    """Boolean table over vertex subsets: True iff no vertex of T is isolated in G[T].

    Two distinct colorings are compatible iff the set where they differ is good.
    """
    n = graph.n
    table = np.zeros(1 << n, dtype=bool)
    for t in range(1, 1 << n):
        row = t
        ok = True
        while row:
            v = (row & -row).bit_length() - 1
            row &= row - 1
            if not graph.adj[v] & t:
                ok = False
                break
        table[t] = ok
    return table


@dataclass(frozen=True)
class Code:
    s: int
    words: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.words)

    def is_valid(self, graph: Graph) -> bool:
        if any(len(w) != graph.n or any(not 0 <= c < self.s for c in w) for w in self.words):
            return False
        if len(set(self.words)) != len(self.words):
            return False
        return not any(
            conflicts(a, b, graph)
            for i, a in enumerate(self.words)
            for b in self.words[i + 1:]
        )

    @classmethod
    def from_ints(cls, xs, n: int, s: int) -> "Code":
        return cls(s, tuple(sorted(decode_coloring(int(x), n, s) for x in xs)))


def clique_cover_code(graph: Graph, s: int) -> Code:
    """Colorings summing to 0 mod s on every class of a minimum clique cover.

    Each clique runs the complete-graph strategy, giving s^(n - cp) words.
    """
    _, cover = clique_cover(graph)
    n = graph.n
    words = []
    for x in range(s**n):
        c = decode_coloring(x, n, s)
        if all(sum(c[v] for v in cls) % s == 0 for cls in cover):
            words.append(c)
    return Code(s, tuple(sorted(words)))


def max_code(inst: GuessingInstance, *, at_least: int | None = None) -> Code:
    """Maximum code by branch and bound on the compatibility graph.

    The search is warm-started with the clique-cover code (size s^(n-cp)) and
    stops once it reaches s^(n-alpha), which no code can exceed.  With
    ``at_least`` set, branches that cannot reach that size are pruned, so the
    result is exact only if it is at least ``at_least`` long.
    """
    g, s, n = inst.graph, inst.s, inst.n
    upper = s ** (n - independence_number(g)[0])
    seed = clique_cover_code(g, s)
    if seed.size >= upper or (at_least is not None and seed.size >= at_least):
        return seed

    good = good_supports(g)
    digits = _digit_table(n, s)
    weights = 1 << np.arange(n, dtype=np.int64)
    nonzero = np.arange(1, s**n)
    support = (digits[1:] != 0) @ weights
    cand = nonzero[good[support]]
    index = {int(x): i for i, x in enumerate(cand)}

    cdig = digits[cand]
    adj = []
    for i in range(len(cand)):
        diff = (cdig != cdig[i]) @ weights
        row = good[diff]
        row[i] = False
        adj.append(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little"))

    initial = [index[encode_coloring(w, s)] for w in seed.words if any(w)]
    stop = None if at_least is None else at_least - 1
    stop = upper - 1 if stop is None else min(stop, upper - 1)
    found = max_clique(
        adj,
        initial=initial,
        stop_at=stop,
        at_least=0 if at_least is None else at_least - 1,
    )
    return Code.from_ints([0] + [cand[i] for i in found], n, s)


@dataclass(frozen=True)
class GuessingNumber:
    """gn(G, s) = log_s(t) kept as the exact pair (t, s)."""

    t: int
    s: int

    @property
    def value(self) -> float:
        return math.log(self.t) / math.log(self.s)

    def at_least(self, a) -> bool:
        return self.t >= code_size_threshold(self.s, a)

    def as_dict(self) -> dict:
        return {"t": self.t, "s": self.s, "float": self.value}


def code_size_threshold(s: int, a) -> int:
    """Smallest t with log_s(t) >= a, i.e. t^q >= s^p for a = p/q."""
    a = Fraction(a)
    if a <= 0:
        return 1
    target = s**a.numerator
    lo, hi = 1, 1 << (target.bit_length() // a.denominator + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**a.denominator >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def gn_exact(inst: GuessingInstance) -> GuessingNumber:
    return GuessingNumber(max_code(inst).size, inst.s)


# ---------------------------------------------------------------------------
# protocols

@dataclass(frozen=True)
class Protocol:
    """One lookup table per vertex.

    ``tables[v][k]`` is v's guess when its neighbours, in increasing vertex
    order u_0 < u_1 < ..., carry colors whose base-s encoding
    ``sum(c[u_j] * s**j)`` equals k.
    """

    graph: Graph
    s: int
    tables: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.tables) != self.graph.n:
            raise ValueError("need exactly one table per vertex")
        for v, table in enumerate(self.tables):
            if len(table) != self.s ** self.graph.degree(v):
                raise ValueError(f"table of vertex {v} must have s^deg(v) entries")
            if any(not 0 <= x < self.s for x in table):
                raise ValueError(f"table of vertex {v} has an out-of-range color")

    def guess(self, colors: Sequence[int]) -> tuple[int, ...]:
        out = []
        for v in range(self.graph.n):
            key = sum(colors[u] * self.s**j for j, u in enumerate(sorted(self.graph.neighbors(v))))
            out.append(self.tables[v][key])
        return tuple(out)

    def to_json(self) -> dict:
        return {"s": self.s, "tables": [list(t) for t in self.tables]}


def constant_protocol(graph: Graph, s: int, color: int = 0) -> Protocol:
    return Protocol(graph, s, tuple((color,) * s ** graph.degree(v) for v in range(graph.n)))


def random_protocol(graph: Graph, s: int, rng: np.random.Generator) -> Protocol:
    return Protocol(
        graph,
        s,
        tuple(tuple(int(x) for x in rng.integers(0, s, s ** graph.degree(v))) for v in range(graph.n)),
    )


def neighbourhood_key(colors: Sequence[int], nbrs: Sequence[int], s: int) -> int:
    return sum(colors[u] * s**j for j, u in enumerate(nbrs))


def protocol_from_code(code: Code, graph: Graph) -> Protocol:
    """Protocol that fixes every word of the code; free table entries guess 0."""
    if not code.is_valid(graph):
        raise InvalidCodeError("words are not a code on this graph")
    s = code.s
    tables = []
    for v in range(graph.n):
        nbrs = sorted(graph.neighbors(v))
        table = [0] * s ** len(nbrs)
        for w in code.words:
            table[neighbourhood_key(w, nbrs, s)] = w[v]
        tables.append(tuple(table))
    return Protocol(graph, s, tuple(tables))


def count_fixed_points(protocol: Protocol, cap: int = MAX_COLORINGS) -> int:
    g, s = protocol.graph, protocol.s
    if s**g.n > cap:
        raise ResourceCapError(f"s^n = {s}^{g.n} exceeds the cap of {cap} colorings")
    digits = _digit_table(g.n, s)
    fixed = np.ones(len(digits), dtype=bool)
    for v in range(g.n):
        nbrs = sorted(g.neighbors(v))
        key = digits[:, nbrs] @ (s ** np.arange(len(nbrs), dtype=np.int64)) if nbrs else np.zeros(len(digits), dtype=np.int64)
        fixed &= np.asarray(protocol.tables[v])[key] == digits[:, v]
    return int(fixed.sum())


def fixed_points(protocol: Protocol) -> Code:
    g, s = protocol.graph, protocol.s
    words = []
    for x in range(s**g.n):
        c = decode_coloring(x, g.n, s)
        if protocol.guess(c) == c:
            words.append(c)
    return Code(s, tuple(words))


def merge_strategy_extension(graph: Graph, v: int, w: int, inner: Protocol) -> Protocol:
    """Extend a protocol on G - v to G, multiplying the fixed points by s.

    Needs w adjacent to v and every other neighbour of w adjacent to v.  The
    new protocol treats v and w as one vertex of color c(w) + c(v) mod s:
    vertices other than v, w run the old strategy on that virtual color, w
    guesses the old w-guess minus c(v), and v guesses it minus c(w).
    """
    if v == w or not graph.has_edge(v, w):
        raise ValueError("w must be a neighbour of v")
    if graph.neighbors(w) - {v} - graph.neighbors(v):
        raise ValueError("every neighbour of w other than v must be adjacent to v")
    if inner.graph.n != graph.n - 1:
        raise ValueError("inner protocol must live on G - v")
    s = inner.s
    old = lambda u: u if u < v else u - 1  # noqa: E731  (labels in G - v)
    inner_nbrs = [sorted(inner.graph.neighbors(u)) for u in range(inner.graph.n)]
    ow = old(w)

    tables = []
    for i in range(graph.n):
        nbrs = sorted(graph.neighbors(i))
        table = []
        for key in range(s ** len(nbrs)):
            colors = dict(zip(nbrs, decode_coloring(key, len(nbrs), s)))
            if i == v:
                virtual = {old(u): c for u, c in colors.items()}
                guess = inner.tables[ow][neighbourhood_key(virtual, inner_nbrs[ow], s)]
                table.append((guess - colors[w]) % s)
                continue
            virtual = {old(u): c for u, c in colors.items() if u != v}
            if i == w:
                guess = inner.tables[ow][neighbourhood_key(virtual, inner_nbrs[ow], s)]
                table.append((guess - colors[v]) % s)
                continue
            if w in colors:
                virtual[ow] = (colors[w] + colors[v]) % s
            table.append(inner.tables[old(i)][neighbourhood_key(virtual, inner_nbrs[old(i)], s)])
        tables.append(tuple(table))
    return Protocol(graph, s, tuple(tables))


# ---------------------------------------------------------------------------
# code sizes with structural reductions

_SIZE_MEMO: dict[tuple[str, int], int] = {}


def find_dominated_pair(graph: Graph) -> tuple[int, int] | None:
    """A pair (v, w) with w ~ v and N(w) - {v} inside N(v), if any."""
    for v in range(graph.n):
        for w in graph.neighbors(v):
            if not (graph.adj[w] & ~(1 << v)) & ~graph.adj[v]:
                return v, w
    return None


def max_code_size(graph: Graph, s: int, *, cap: int = MAX_COLORINGS) -> int:
    """Size of a maximum code, using exact reductions before searching.

    Isolated vertices contribute a factor 1, components multiply, and a
    dominated pair (v, w) gives |code(G)| = s |code(G - v)|.  Irreducible
    graphs are searched directly and memoised by canonical form.
    """
    if s < 2:
        raise ValueError("alphabet size s must be at least 2")
    if graph.n == 0:
        return 1
    comps = components(graph)
    if len(comps) > 1:
        return math.prod(max_code_size(graph.induced(c), s, cap=cap) for c in comps if len(c) > 1)
    if graph.n == 1:
        return 1
    pair = find_dominated_pair(graph)
    if pair is not None:
        return s * max_code_size(delete_vertex(graph, pair[0]), s, cap=cap)
    key = (canonical_form(graph), s)
    if key not in _SIZE_MEMO:
        _SIZE_MEMO[key] = max_code(GuessingInstance(graph, s, cap)).size
    return _SIZE_MEMO[key]
