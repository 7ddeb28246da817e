"""Extremal and saturation numbers for the property gn_s(G) >= a.

Thresholds ``a`` are rationals; ``gn_s(G) >= a`` is decided on integers as
``t >= code_size_threshold(s, a)`` where t is the maximum code size.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .cache import ResultCache
from .entropy import build_lp, dual_certifies, solve_lp
from .graphs import (
    MAX_ENUMERATION_N,
    Graph,
    add_dominating_vertex,
    add_edge,
    canonical_form,
    complete,
    decode_graph6,
    delete_vertex,
    disjoint_union,
    empty,
    enumerate_graphs,
    is_subgraph,
    join,
    k_star,
    non_edges,
    remove_edge,
)
from .guessing import (
    MAX_COLORINGS,
    Code,
    GuessingInstance,
    ResourceCapError,
    code_size_threshold,
    max_code,
    max_code_size,
)
from .invariants import clique_cover, independence_number, is_clique_cover, is_independent_set

log = logging.getLogger(__name__)


class InconsistencyError(RuntimeError):
    """A certificate or a proven identity failed re-validation."""


@dataclass
class SearchConfig:
    enumeration_cap: int = MAX_ENUMERATION_N
    coloring_cap: int = MAX_COLORINGS
    cache: ResultCache | None = None
    progress: bool = False


def _threshold(a) -> Fraction:
    a = Fraction(a)
    if a <= 0:
        raise ValueError("threshold a must be positive")
    return a


# ---------------------------------------------------------------------------
# exact code-size tables

def code_size(graph: Graph, s: int, config: SearchConfig | None = None) -> int:
    """Exact maximum code size, consulting and filling the result cache."""
    config = config or SearchConfig()
    if s ** graph.n > config.coloring_cap:
        raise ResourceCapError(f"s^n = {s}^{graph.n} exceeds the cap of {config.coloring_cap}")
    key = canonical_form(graph)
    if config.cache is not None:
        rec = config.cache.get(key, s)
        if rec is not None:
            return int(rec["t"])
    t = max_code_size(graph, s, cap=config.coloring_cap)
    if config.cache is not None:
        config.cache.put({
            "graph6": key,
            "s": s,
            "t": t,
            "gn_lower": graph.n - clique_cover(graph)[0],
            "gn_upper": graph.n - independence_number(graph)[0],
        })
    return t


def code_size_table(n: int, s: int, config: SearchConfig | None = None) -> dict[str, int]:
    """Maximum code size of every isomorphism class on n vertices, by canonical graph6."""
    config = config or SearchConfig()
    graphs = enumerate_graphs(n, cap=config.enumeration_cap)
    table = {}
    for k, g in enumerate(graphs):
        table[canonical_form(g)] = code_size(g, s, config)
        if config.progress and (k + 1) % 200 == 0:
            log.info("n=%d s=%d: %d/%d classes", n, s, k + 1, len(graphs))
    return table


# ---------------------------------------------------------------------------
# saturation verdicts

@dataclass
class EdgeCertificate:
    """Why gn_s(G + e) >= a holds (or why it fails)."""

    edge: tuple[int, int]
    kind: str  # "clique_cover", "code" or "none"
    clique_cover: list[list[int]] | None = None
    code: Code | None = None
    t: int | None = None

    def validate(self, graph: Graph, s: int, a: Fraction) -> bool:
        h = add_edge(graph, self.edge)
        if self.kind == "clique_cover":
            return (
                self.clique_cover is not None
                and is_clique_cover(h, self.clique_cover)
                and h.n - len(self.clique_cover) >= a
            )
        if self.kind == "code":
            return (
                self.code is not None
                and self.code.size >= code_size_threshold(s, a)
                and self.code.is_valid(h)
            )
        return True

    def as_dict(self) -> dict:
        out: dict = {"edge": list(self.edge), "kind": self.kind}
        if self.clique_cover is not None:
            out["clique_cover"] = self.clique_cover
        if self.code is not None:
            out["code"] = [list(w) for w in self.code.words]
        if self.t is not None:
            out["t"] = self.t
        return out


@dataclass
class SaturationReport:
    graph: Graph
    s: int
    a: Fraction
    gn_value: dict
    below: bool | None
    saturated: bool | None
    per_nonedge: list[EdgeCertificate] = field(default_factory=list)
    below_certificate: dict | None = None

    def validate(self) -> bool:
        """Re-check every certificate independently of the search that produced it."""
        g, a = self.graph, self.a
        cert = self.below_certificate or {}
        if cert.get("kind") == "independent_set":
            ind = cert["vertices"]
            if not is_independent_set(g, ind) or g.n - len(ind) >= a:
                return False
        elif cert.get("kind") == "entropy_lp":
            model = build_lp(g)
            dual = [Fraction(x) for x in cert["dual"]]
            bound = Fraction(cert["bound"])
            if bound >= a or not dual_certifies(model, dual, bound):
                return False
        edges = {c.edge for c in self.per_nonedge}
        if self.saturated and edges != set(non_edges(g)):
            return False
        return all(c.validate(g, self.s, a) for c in self.per_nonedge)

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "a": _fraction_json(self.a),
            "gn": self.gn_value,
            "below_threshold": self.below,
            "saturated": self.saturated,
            "below_certificate": self.below_certificate,
            "per_nonedge": [c.as_dict() for c in self.per_nonedge],
        }


def _fraction_json(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


def is_gn_saturated(
    graph: Graph,
    s: int,
    a,
    *,
    exact: bool = True,
    config: SearchConfig | None = None,
) -> SaturationReport:
    """Decide whether G is (gn_s >= a)-saturated, with certificates.

    Cheap certificates come first: an independent set showing n - alpha < a
    (or, failing that, the entropy LP with a dual certificate) for G itself,
    and a clique cover with n - cp >= a for each G + e.  In exact mode the
    maximum code search settles whatever the bounds leave open; in bound
    mode those cases are reported as unknown (None).
    """
    config = config or SearchConfig()
    a = _threshold(a)
    need = code_size_threshold(s, a)
    n = graph.n

    alpha, ind = independence_number(graph)
    gn_value: dict = {"lower": n - clique_cover(graph)[0], "upper": n - alpha}
    below: bool | None = None
    below_cert = None
    if n - alpha < a:
        below, below_cert = True, {"kind": "independent_set", "vertices": ind}
    elif n - clique_cover(graph)[0] >= a:
        below = False
    if exact and s**n <= config.coloring_cap:
        t = code_size(graph, s, config)
        gn_value = {"t": t, "s": s, "float": math.log(t, s)}
        below = t < need
    elif exact:
        raise ResourceCapError(f"s^n = {s}^{n} exceeds the cap of {config.coloring_cap}")
    elif below is None and n <= 8:
        sol = solve_lp(build_lp(graph))
        if sol.optimum < a:
            below = True
            below_cert = {
                "kind": "entropy_lp",
                "bound": str(sol.optimum),
                "dual": [str(y) for y in sol.dual],
            }

    report = SaturationReport(graph, s, a, gn_value, below, None, [], below_cert)
    if below is False:
        report.saturated = False
        return report

    verdict: bool | None = True
    for e in non_edges(graph):
        h = add_edge(graph, e)
        cp, cover = clique_cover(h)
        if n - cp >= a:
            report.per_nonedge.append(EdgeCertificate(e, "clique_cover", clique_cover=cover))
            continue
        if not exact:
            report.per_nonedge.append(EdgeCertificate(e, "none"))
            verdict = None
            continue
        code = max_code(GuessingInstance(h, s, config.coloring_cap), at_least=need)
        if code.size >= need:
            report.per_nonedge.append(EdgeCertificate(e, "code", code=code))
        else:
            report.per_nonedge.append(EdgeCertificate(e, "none", t=code_size(h, s, config)))
            verdict = False
            break
    if below is None:
        verdict = None if verdict is not False else False
    report.saturated = verdict
    return report


# ---------------------------------------------------------------------------
# searches

@dataclass
class SearchResult:
    n: int
    s: int
    a: Fraction
    value: int
    family: list[str]
    classes_checked: int

    def graphs(self) -> list[Graph]:
        return [decode_graph6(x) for x in self.family]


def ex_search(n: int, s: int, a, config: SearchConfig | None = None) -> SearchResult:
    """Maximum edge count over n-vertex graphs with gn_s < a, and the maximisers."""
    a = _threshold(a)
    if a > n - 1:
        raise ValueError(f"ex(n, gn >= a) is undefined for a > n - 1 (a={a}, n={n})")
    config = config or SearchConfig()
    table = code_size_table(n, s, config)
    need = code_size_threshold(s, a)
    below = [g for g in enumerate_graphs(n, cap=config.enumeration_cap) if table[canonical_form(g)] < need]
    best = max(g.m for g in below)
    family = sorted(canonical_form(g) for g in below if g.m == best)
    return SearchResult(n, s, a, best, family, len(table))


def saturated_classes(n: int, s: int, a, config: SearchConfig | None = None) -> list[Graph]:
    a = _threshold(a)
    config = config or SearchConfig()
    table = code_size_table(n, s, config)
    need = code_size_threshold(s, a)
    out = []
    for g in enumerate_graphs(n, cap=config.enumeration_cap):
        if table[canonical_form(g)] >= need:
            continue
        if all(table[canonical_form(add_edge(g, e))] >= need for e in non_edges(g)):
            out.append(g)
    return out


def sat_search(n: int, s: int, a, config: SearchConfig | None = None) -> SearchResult:
    """Minimum edge count over (gn_s >= a)-saturated graphs on n vertices."""
    a = _threshold(a)
    config = config or SearchConfig()
    sat = saturated_classes(n, s, a, config)
    best = min(g.m for g in sat)
    family = sorted(canonical_form(g) for g in sat if g.m == best)
    return SearchResult(n, s, a, best, family, len(enumerate_graphs(n, cap=config.enumeration_cap)))


# ---------------------------------------------------------------------------
# constructions

def extremal_construction(n: int, a) -> Graph:
    """K_k joined with E_{n-k}, k = ceil(a) - 1: the unique extremal graph."""
    a = _threshold(a)
    ca = math.ceil(a)
    if n <= ca:
        raise ValueError(f"extremal construction needs n > ceil(a) (n={n}, a={a})")
    k = ca - 1
    return join(complete(k), empty(n - k)) if k else empty(n)


def saturation_construction(n: int, a: int) -> Graph:
    """K*_{a,a} plus isolated vertices: (gn_s >= a+1)-saturated with a^2 + 1 edges."""
    if a < 2:
        raise ValueError("saturation construction needs a >= 2")
    if n < 2 * a + 1:
        raise ValueError(f"saturation construction needs n >= 2a + 1 (n={n}, a={a})")
    return disjoint_union(k_star(a), empty(n - 2 * a - 1))


def spectrum_construction(n: int, a: int, b: int) -> Graph:
    """b dominating vertices over K*_{a-b,a-b} plus isolated vertices.

    Saturated for gn >= a + 1 with C(b,2) + b(n-b) + (a-b)^2 + 1 edges when
    b < a; b = a gives K_a joined with E_{n-a}.
    """
    if not 0 <= b <= a:
        raise ValueError("need 0 <= b <= a")
    if n < 2 * a + 1:
        raise ValueError("need n >= 2a + 1")
    if b == a:
        base = empty(n - a)
    elif a - b >= 2:
        base = saturation_construction(n - b, a - b)
    else:
        raise ValueError("a - b must be at least 2 unless b = a")
    g = base
    for _ in range(b):
        g = add_dominating_vertex(g)
    return g


def spectrum_edge_count(n: int, a: int, b: int) -> int:
    core = (a - b) ** 2 + 1 if b < a else 0
    return comb(b, 2) + b * (n - b) + core


def lift_saturated(graph: Graph, s: int, a, config: SearchConfig | None = None) -> SaturationReport:
    """Saturation report for G plus a dominating vertex at threshold a + 1.

    Raises InconsistencyError unless G is saturated for a exactly when the
    lifted graph is saturated for a + 1.
    """
    a = _threshold(a)
    base = is_gn_saturated(graph, s, a, config=config)
    lifted = is_gn_saturated(add_dominating_vertex(graph), s, a + 1, config=config)
    if base.saturated != lifted.saturated:
        raise InconsistencyError(
            f"G saturated={base.saturated} at a={a} but lifted saturated={lifted.saturated}"
        )
    return lifted


# ---------------------------------------------------------------------------
# forbidden subgraphs

@dataclass
class ForbiddenFamily:
    s: int
    a: Fraction
    members: list[str]
    n_cap: int
    complete: bool

    def graphs(self) -> list[Graph]:
        return [decode_graph6(x) for x in self.members]


def forbidden_order_bound(s: int, a: int) -> int:
    """s^(s^(2(a+1))) + 2(a+1): no minimal forbidden graph has more vertices."""
    if s < 2 or a < 1 or int(a) != a:
        raise ValueError("need s >= 2 and integer a >= 1")
    a = int(a)
    return s ** (s ** (2 * (a + 1))) + 2 * (a + 1)


def minimal_forbidden_family(s: int, a, n_cap: int, config: SearchConfig | None = None) -> ForbiddenFamily:
    """All minimal graphs with gn_s >= a on at most n_cap vertices.

    A graph is minimal when deleting any single vertex or any single edge
    drops gn_s below a; since gn_s is monotone under subgraphs, that covers
    every proper subgraph.
    """
    a = _threshold(a)
    config = config or SearchConfig()
    need = code_size_threshold(s, a)
    tables = {n: code_size_table(n, s, config) for n in range(0, n_cap + 1)}
    members = []
    for n in range(1, n_cap + 1):
        for g in enumerate_graphs(n, cap=config.enumeration_cap):
            if tables[n][canonical_form(g)] < need:
                continue
            if any(tables[n - 1][canonical_form(delete_vertex(g, v))] >= need for v in range(n)):
                continue
            if any(tables[n][canonical_form(remove_edge(g, e))] >= need for e in g.edges()):
                continue
            members.append(canonical_form(g))
    bound = forbidden_order_bound(s, math.ceil(a))
    return ForbiddenFamily(s, a, sorted(members), n_cap, n_cap >= bound)


@dataclass
class MonotonicityVerdict:
    holds: bool
    witnesses: dict[str, str]
    missing: list[str]


def check_monFgn(s: int, a, b, n_cap: int, config: SearchConfig | None = None) -> MonotonicityVerdict:
    """Every computed minimal graph for b contains a computed minimal graph for a."""
    a, b = _threshold(a), _threshold(b)
    if a > b:
        raise ValueError("need a <= b")
    fam_a = minimal_forbidden_family(s, a, n_cap, config).graphs()
    fam_b = minimal_forbidden_family(s, b, n_cap, config)
    witnesses, missing = {}, []
    for key, fb in zip(fam_b.members, fam_b.graphs()):
        hit = next((fa for fa in fam_a if is_subgraph(fa, fb)), None)
        if hit is None:
            missing.append(key)
        else:
            witnesses[key] = canonical_form(hit)
    return MonotonicityVerdict(not missing, witnesses, missing)
