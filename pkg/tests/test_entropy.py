from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from guessgraph.entropy import (
    MAX_LP_N,
    ResourceCapError,
    build_lp,
    dual_certifies,
    elemental_submodularity,
    entropy_bound,
    shannon_decomposition,
    solve_lp,
    subadditivity_chain,
    to_lp_format,
    verify_gnKaaupp_chain,
    _check_step,
)
from guessgraph.graphs import (
    add_dominating_vertex,
    complete,
    cycle,
    disjoint_union,
    empty,
    enumerate_graphs,
    k_star,
)
from guessgraph.guessing import GuessingInstance, max_code
from guessgraph.invariants import gn_bounds
from guessgraph.simplex import LPError, maximize
from oracles import float_entropy_lp

F = Fraction


@pytest.fixture(scope="module")
def lp_values():
    return {
        (n, k): entropy_bound(g)
        for n in range(1, 6)
        for k, g in enumerate(enumerate_graphs(n))
    }


def small_graphs(max_n=5):
    for n in range(1, max_n + 1):
        for k, g in enumerate(enumerate_graphs(n)):
            yield (n, k), g


class TestSimplex:
    def test_textbook(self):
        # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        sol = maximize([F(3), F(5)], [{0: 1}, {1: 2}, {0: 3, 1: 2}], [F(4), F(12), F(18)])
        assert sol.optimum == 36 and sol.x == [2, 6]
        assert sol.dual == [0, F(3, 2), 1]

    def test_beale_cycling_example(self):
        # degenerate LP on which the textbook largest-coefficient rule cycles
        c = [F(3, 4), F(-150), F(1, 50), F(-6)]
        rows = [
            {0: F(1, 4), 1: F(-60), 2: F(-1, 25), 3: F(9)},
            {0: F(1, 2), 1: F(-90), 2: F(-1, 50), 3: F(3)},
            {2: F(1)},
        ]
        sol = maximize(c, rows, [F(0), F(0), F(1)])
        assert sol.optimum == F(1, 20)

    def test_unbounded(self):
        with pytest.raises(LPError):
            maximize([F(1), F(0)], [{1: 1}], [F(1)])

    def test_negative_rhs_rejected(self):
        with pytest.raises(LPError):
            maximize([F(1)], [{0: 1}], [F(-1)])

    def test_random_against_highs(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            nv, m = int(rng.integers(1, 6)), int(rng.integers(1, 7))
            a = rng.integers(-3, 6, size=(m, nv))
            a[0] = np.abs(a[0]) + 1  # keeps the problem bounded
            b = rng.integers(0, 10, size=m)
            c = rng.integers(-2, 6, size=nv)
            sol = maximize([F(int(x)) for x in c], [{j: F(int(v)) for j, v in enumerate(r) if v} for r in a], [F(int(x)) for x in b])
            ref = linprog(-c, A_ub=a, b_ub=b, bounds=[(0, None)] * nv, method="highs")
            assert ref.success
            assert float(sol.optimum) == pytest.approx(-ref.fun, abs=1e-9)
            # strong duality in exact arithmetic
            assert sum(y * int(bi) for y, bi in zip(sol.dual, b)) == sol.optimum


class TestModel:
    def test_family_counts_n5(self):
        m = build_lp(cycle(5))
        assert m.num_raw_variables == 31
        assert m.family_counts["monotonicity"] == 5
        assert m.family_counts["submodularity"] == 80
        assert m.family_counts["cap"] == 5
        assert len(m.constraints) == 90

    def test_determination_count(self):
        # v with N(v) inside S and v outside S: 2^(n - 1 - deg v) choices of S
        m = build_lp(cycle(5))
        assert m.family_counts["determination"] == 5 * 2**2

    def test_k_star_3_size(self):
        assert build_lp(k_star(3)).num_raw_variables == 127

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            build_lp(empty(MAX_LP_N + 1))

    def test_submodularity_normalised(self):
        assert elemental_submodularity(3, 1, 0b100) == elemental_submodularity(1, 3, 0b100)

    def test_lp_dump(self):
        m = build_lp(cycle(5))
        text = to_lp_format(m)
        assert text.splitlines()[1] == "Maximize"
        assert text.count(" <= ") == len(m.rows)
        assert text.rstrip().endswith("End")


class TestOptima:
    def test_examples(self):
        assert entropy_bound(empty(1)) == 0
        assert entropy_bound(complete(2)) == 1
        assert entropy_bound(cycle(5)) == F(5, 2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_complete(self, n):
        assert entropy_bound(complete(n)) == n - 1

    def test_c7(self):
        assert entropy_bound(cycle(7)) <= F(7, 2)

    @pytest.mark.slow
    def test_k_star_3(self):
        sol = solve_lp(build_lp(k_star(3)))
        assert sol.optimum <= F(11, 3)
        assert sol.optimum == F(7, 2)  # DERIVED: exact solver, cross-checked in floating point
        assert float_entropy_lp(k_star(3)) == pytest.approx(3.5, abs=1e-7)

    def test_against_float_oracle(self, lp_values):
        for key, g in small_graphs(5):
            assert float(lp_values[key]) == pytest.approx(float_entropy_lp(g), abs=1e-7)

    def test_certificate_and_dual(self):
        for g in [cycle(5), complete(4), k_star(2), disjoint_union(cycle(5), empty(1))]:
            model = build_lp(g)
            sol = solve_lp(model)
            assert sol.certificate.violations(g, model.constraints) == []
            assert sol.certificate[model.objective_mask] == sol.optimum
            assert dual_certifies(model, sol.dual, sol.optimum)
            assert not dual_certifies(model, sol.dual, sol.optimum - F(1, 7))
            assert not dual_certifies(model, [-y for y in sol.dual], -sol.optimum)

    def test_certificate_violation_detected(self):
        model = build_lp(cycle(5))
        vec = solve_lp(model).certificate
        vec.h[1] = F(2)
        assert vec.violations(cycle(5), model.constraints)


class TestProperties:
    def test_soundness_s2(self, lp_values):
        for key, g in small_graphs(5):
            bound = lp_values[key]
            t = max_code(GuessingInstance(g, 2)).size
            assert t**bound.denominator <= 2**bound.numerator

    def test_soundness_s3(self, lp_values):
        for key, g in small_graphs(5):
            bound = lp_values[key]
            t = max_code(GuessingInstance(g, 3)).size
            assert t**bound.denominator <= 3**bound.numerator

    def test_isolated_vertex_collapse(self, lp_values):
        for key, g in small_graphs(4):
            assert entropy_bound(disjoint_union(g, empty(1))) == lp_values[key]

    def test_dominating_vertex_adds_one(self, lp_values):
        for key, g in small_graphs(4):
            assert entropy_bound(add_dominating_vertex(g)) == lp_values[key] + 1

    def test_between_bounds(self, lp_values):
        for key, g in small_graphs(5):
            b = gn_bounds(g)
            assert b.gn_lower <= lp_values[key] <= b.gn_upper


class TestChain:
    @pytest.mark.parametrize("a,bound", [(3, F(11, 3)), (4, F(14, 3))])
    def test_valid(self, a, bound):
        trace = verify_gnKaaupp_chain(a)
        assert trace.valid and trace.failing_steps() == []
        assert len(trace.steps) == 6
        assert trace.bound == bound
        assert [s.relation for s in trace.steps] == ["=", "<=", "<=", "<=", "=", "<="]

    def test_degenerate(self):
        with pytest.raises(ValueError):
            verify_gnKaaupp_chain(2)

    def test_tampered_step_fails(self):
        trace = verify_gnKaaupp_chain(3)
        model = build_lp(k_star(3))
        bad = replace(trace.steps[5], after_const=3 * 3 + 1, verified=False, reason="")
        _check_step(model, bad)
        assert not bad.verified and "residual" in bad.reason
        bad = replace(trace.steps[1], used=[], verified=False, reason="")
        _check_step(model, bad)
        assert not bad.verified
        bad = replace(trace.steps[0], used=shannon_decomposition(1, 2), verified=False, reason="")
        _check_step(model, bad)
        assert not bad.verified

    def test_decompositions_are_telescoping(self):
        # sum of the elemental terms equals h(A) + h(B) - h(A|B) - h(A&B)
        for a, b in [(0b0011, 0b1100), (0b0111, 0b1110), (0b1, 0b110)]:
            total = {}
            for con in shannon_decomposition(a, b):
                for m, c in con.terms:
                    total[m] = total.get(m, 0) + c
            expected = {a: 1, b: 1, a | b: -1, a & b: -1}
            for m in set(total) | set(expected):
                assert total.get(m, 0) == expected.get(m, 0)
        total, const = {}, 0
        for con in subadditivity_chain(0b1011):
            const += con.const
            for m, c in con.terms:
                total[m] = total.get(m, 0) + c
        # h(empty) terms vanish
        assert const == 3 and {m: c for m, c in total.items() if c and m} == {0b1011: -1}
