from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from guessgraph.graphs import (
    Graph,
    ResourceCapError,
    add_dominating_vertex,
    add_edge,
    complete,
    complete_bipartite,
    cycle,
    delete_vertex,
    disjoint_union,
    empty,
    enumerate_graphs,
    k_star,
    non_edges,
)
from guessgraph.guessing import (
    Code,
    GuessingInstance,
    GuessingNumber,
    InvalidCodeError,
    Protocol,
    clique_cover_code,
    code_size_threshold,
    conflicts,
    constant_protocol,
    count_fixed_points,
    decode_coloring,
    encode_coloring,
    find_dominated_pair,
    fixed_points,
    gn_exact,
    max_code,
    max_code_size,
    merge_strategy_extension,
    protocol_from_code,
    random_protocol,
)
from guessgraph.invariants import gn_bounds
from oracles import (
    brute_fixed_points,
    conflict_pair,
    exhaustive_max_code,
    graphs,
    milp_max_code,
    oracle_max_code,
    translated_clique_max_code,
)


def all_graphs(max_n, min_n=1):
    for n in range(min_n, max_n + 1):
        yield from enumerate_graphs(n)


def code_len(g, s):
    return max_code(GuessingInstance(g, s)).size


class TestBasics:
    def test_instance_validation(self):
        with pytest.raises(ValueError):
            GuessingInstance(complete(2), 1)
        with pytest.raises(ResourceCapError):
            GuessingInstance(empty(21), 2)
        with pytest.raises(ResourceCapError):
            GuessingInstance(complete(5), 3, cap=100)

    @given(st.integers(1, 6), st.integers(2, 4), st.data())
    def test_coloring_round_trip(self, n, s, data):
        c = tuple(data.draw(st.lists(st.integers(0, s - 1), min_size=n, max_size=n)))
        assert decode_coloring(encode_coloring(c, s), n, s) == c

    def test_conflicts_examples(self):
        k2 = complete(2)
        assert conflicts((0, 0), (0, 1), k2)
        assert not conflicts((0, 1), (0, 1), k2)
        assert conflicts((0, 1), (1, 0), empty(2))
        assert not conflicts((0, 1), (1, 0), k2)
        with pytest.raises(ValueError):
            conflicts((0,), (0, 1), k2)

    @given(graphs(max_n=5), st.data())
    def test_conflicts_matches_definition(self, g, data):
        word = st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n).map(tuple)
        c1, c2 = data.draw(word), data.draw(word)
        assert conflicts(c1, c2, g) == conflict_pair(c1, c2, g)


class TestMaxCode:
    def test_examples(self):
        code = max_code(GuessingInstance(complete(3), 2))
        assert code.size == 4 and code.is_valid(complete(3))
        for s in (2, 3):
            for n in (1, 3, 4):
                assert code_len(empty(n), s) == 1
        t = code_len(cycle(5), 2)
        assert 4 <= t <= 5
        assert t == 5  # frozen from the networkx oracle below

    def test_gn_exact_examples(self):
        assert gn_exact(GuessingInstance(complete(5), 2)) == GuessingNumber(16, 2)
        assert gn_exact(GuessingInstance(complete(5), 2)).value == pytest.approx(4)
        assert gn_exact(GuessingInstance(complete_bipartite(3, 3), 2)).t == 8
        assert gn_exact(GuessingInstance(disjoint_union(complete(2), complete(2)), 2)).t == 4

    def test_frozen_values(self):
        # DERIVED with the networkx clique oracle, frozen here
        assert code_len(cycle(5), 3) == 12
        assert code_len(k_star(3), 2) == 10
        assert max_code_size(complete(5), 3) == 81

    def test_c5_oracles(self):
        assert oracle_max_code(cycle(5), 2) == 5
        assert milp_max_code(cycle(5), 2) == 5

    @pytest.mark.slow
    def test_c5_s3_oracle(self):
        assert translated_clique_max_code(cycle(5), 3) == 12

    def test_translation_oracle_small(self):
        for g in enumerate_graphs(4):
            assert translated_clique_max_code(g, 2) == oracle_max_code(g, 2)

    @pytest.mark.slow
    def test_k_star_3_oracle(self):
        assert milp_max_code(k_star(3), 2) == 10

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_against_subset_enumeration(self, n):
        for g in enumerate_graphs(n):
            assert code_len(g, 2) == exhaustive_max_code(g, 2)

    @pytest.mark.parametrize("n,s", [(4, 2), (2, 3), (3, 3)])
    def test_against_networkx(self, n, s):
        for g in enumerate_graphs(n):
            code = max_code(GuessingInstance(g, s))
            assert code.is_valid(g)
            assert code.size == oracle_max_code(g, s)

    @pytest.mark.parametrize("n,s", [(5, 2), (3, 3), (4, 3), pytest.param(6, 2, marks=pytest.mark.slow)])
    def test_against_milp(self, n, s):
        for g in enumerate_graphs(n):
            assert max_code(GuessingInstance(g, s)).size == milp_max_code(g, s)

    @pytest.mark.parametrize("n,s", [(6, 2), (4, 3)])
    def test_reduced_matches_direct(self, n, s):
        for g in enumerate_graphs(n):
            assert max_code_size(g, s) == code_len(g, s)

    def test_reduced_on_labelled_graphs(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            n = int(rng.integers(2, 7))
            g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
            assert max_code_size(g, 2) == code_len(g, 2)

    @pytest.mark.parametrize("s", [0, 1])
    def test_reduced_rejects_small_alphabet(self, s):
        with pytest.raises(ValueError):
            max_code_size(empty(1), s)

    def test_at_least_is_exact_when_reached(self):
        inst = GuessingInstance(cycle(5), 2)
        code = max_code(inst, at_least=5)
        assert code.size >= 5 and code.is_valid(cycle(5))
        assert max_code(inst, at_least=6).size < 6

    def test_clique_cover_code(self):
        for g in all_graphs(5):
            for s in (2, 3):
                code = clique_cover_code(g, s)
                assert code.size == s ** gn_bounds(g).gn_lower
                assert code.is_valid(g)

    def test_invalid_code_detected(self):
        assert not Code(2, ((0, 0), (0, 1))).is_valid(complete(2))
        assert not Code(2, ((0, 2),)).is_valid(complete(2))
        assert not Code(2, ((0, 0), (0, 0))).is_valid(complete(2))


class TestThreshold:
    @pytest.mark.parametrize("s", [2, 3, 5])
    def test_matches_definition(self, s):
        for num in range(1, 25):
            for den in (1, 2, 3, 4, 7):
                a = Fraction(num, den)
                t = code_size_threshold(s, a)
                # t is minimal with t^den >= s^num
                assert t**den >= s**num and (t - 1) ** den < s**num

    def test_integer_threshold(self):
        assert code_size_threshold(2, 3) == 8
        assert code_size_threshold(2, Fraction(5, 2)) == 6
        assert GuessingNumber(5, 2).at_least(2) and not GuessingNumber(5, 2).at_least(Fraction(5, 2))


class TestProtocols:
    def test_constant(self):
        for g in [cycle(5), complete(3), empty(4), k_star(2)]:
            for s in (2, 3):
                assert count_fixed_points(constant_protocol(g, s)) == 1

    def test_parity_k3(self):
        parity = Code(2, tuple(w for w in product(range(2), repeat=3) if sum(w) % 2 == 0))
        p = protocol_from_code(parity, complete(3))
        assert count_fixed_points(p) == 4
        # each vertex guesses the parity of what it sees
        for v in range(3):
            assert list(p.tables[v]) == [0, 1, 1, 0]

    def test_singleton_empty(self):
        p = protocol_from_code(Code(2, ((0, 0, 0),)), empty(3))
        assert p == constant_protocol(empty(3), 2)
        assert count_fixed_points(p) == 1

    def test_rejects_invalid_code(self):
        with pytest.raises(InvalidCodeError):
            protocol_from_code(Code(2, ((0, 0), (0, 1))), complete(2))

    def test_table_sizes(self):
        g = k_star(2)
        p = random_protocol(g, 3, np.random.default_rng(0))
        assert [len(t) for t in p.tables] == [3 ** g.degree(v) for v in range(g.n)]
        with pytest.raises(ValueError):
            Protocol(g, 3, p.tables[:-1])
        js = p.to_json()
        assert js["s"] == 3 and len(js["tables"]) == g.n

    def test_count_matches_enumeration(self):
        rng = np.random.default_rng(1)
        for g in all_graphs(4):
            for s in (2, 3):
                p = random_protocol(g, s, rng)
                assert count_fixed_points(p) == brute_fixed_points(p) == fixed_points(p).size

    def test_count_cap(self):
        with pytest.raises(ResourceCapError):
            count_fixed_points(constant_protocol(empty(5), 2), cap=16)

    def test_fixed_points_form_a_code(self):
        rng = np.random.default_rng(2)
        for g in all_graphs(4):
            assert fixed_points(random_protocol(g, 2, rng)).is_valid(g)

    def test_protocol_from_max_code(self):
        for g in all_graphs(5):
            code = max_code(GuessingInstance(g, 2))
            assert count_fixed_points(protocol_from_code(code, g)) >= code.size

    def test_complete_graph_bound(self):
        rng = np.random.default_rng(4)
        for n in range(2, 5):
            for s in (2, 3):
                for _ in range(20):
                    assert count_fixed_points(random_protocol(complete(n), s, rng)) <= s ** (n - 1)

    def test_code_protocol_equivalence(self):
        rng = np.random.default_rng(5)
        for g in all_graphs(4):
            t = code_len(g, 2)
            best_random = max(count_fixed_points(random_protocol(g, 2, rng)) for _ in range(1000))
            assert best_random <= t
            assert count_fixed_points(protocol_from_code(max_code(GuessingInstance(g, 2)), g)) == t


class TestStrategyExtension:
    def test_k2_s3(self):
        inner = constant_protocol(empty(1), 3)
        ext = merge_strategy_extension(complete(2), 1, 0, inner)
        assert count_fixed_points(ext) == 3

    def test_k4_from_parity(self):
        parity = Code(2, tuple(w for w in product(range(2), repeat=3) if sum(w) % 2 == 0))
        inner = protocol_from_code(parity, complete(3))
        ext = merge_strategy_extension(complete(4), 3, 0, inner)
        assert count_fixed_points(ext) == 8

    def test_precondition(self):
        inner = constant_protocol(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 2)
        with pytest.raises(ValueError):
            merge_strategy_extension(cycle(5), 0, 1, inner)
        with pytest.raises(ValueError):
            merge_strategy_extension(cycle(5), 0, 2, inner)

    def test_random_graphs_with_max_code(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            n = int(rng.integers(1, 5))
            base = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
            g = add_dominating_vertex(base)
            inner = protocol_from_code(max_code(GuessingInstance(base, 2)), base)
            ext = merge_strategy_extension(g, n, 0, inner)
            assert count_fixed_points(ext) == 2 * count_fixed_points(inner)
            assert count_fixed_points(ext) == code_len(g, 2)

    def test_dominated_pair(self):
        assert find_dominated_pair(cycle(5)) is None
        v, w = find_dominated_pair(add_dominating_vertex(cycle(5)))
        g = add_dominating_vertex(cycle(5))
        assert g.has_edge(v, w) and not (g.neighbors(w) - {v}) - g.neighbors(v)


class TestProperties:
    def test_sandwich_s2(self):
        for g in all_graphs(6):
            b = gn_bounds(g)
            t = code_len(g, 2)
            assert 2**b.gn_lower <= t <= 2**b.gn_upper

    def test_sandwich_s3(self):
        for g in all_graphs(4):
            b = gn_bounds(g)
            assert 3**b.gn_lower <= code_len(g, 3) <= 3**b.gn_upper

    def test_superadditivity_equality(self):
        for n1 in range(1, 6):
            for n2 in range(1, 7 - n1):
                if n2 < n1:
                    continue
                for g1 in enumerate_graphs(n1):
                    for g2 in enumerate_graphs(n2):
                        union = disjoint_union(g1, g2)
                        assert code_len(union, 2) == code_len(g1, 2) * code_len(g2, 2)

    def test_vertex_deletion_sandwich(self):
        for g in all_graphs(5, min_n=2):
            t = code_len(g, 2)
            for v in range(g.n):
                t_minus = code_len(delete_vertex(g, v), 2)
                assert t_minus <= t <= 2 * t_minus

    def test_edge_monotonicity(self):
        # a protocol on G lifts to G + e by ignoring the new edge
        for g in all_graphs(5):
            t = code_len(g, 2)
            inner = protocol_from_code(max_code(GuessingInstance(g, 2)), g)
            for e in non_edges(g):
                h = add_edge(g, e)
                assert code_len(h, 2) >= t
                lifted = _ignore_edge(inner, h, e)
                assert count_fixed_points(lifted) == count_fixed_points(inner)

    def test_dominating_vertex_adds_one(self):
        for g in all_graphs(4):
            for s in (2, 3):
                assert code_len(add_dominating_vertex(g), s) == s * code_len(g, s)


def _ignore_edge(p: Protocol, h: Graph, e) -> Protocol:
    """Protocol on h = G + e whose functions read only the neighbours they had in G."""
    s, g = p.s, p.graph
    tables = []
    for v in range(h.n):
        old = sorted(g.neighbors(v))
        new = sorted(h.neighbors(v))
        table = []
        for key in range(s ** len(new)):
            seen = dict(zip(new, decode_coloring(key, len(new), s)))
            old_key = sum(seen[u] * s**j for j, u in enumerate(old))
            table.append(p.tables[v][old_key])
        tables.append(tuple(table))
    return Protocol(h, s, tuple(tables))
