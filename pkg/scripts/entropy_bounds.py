"""Entropy LP optima for the odd cycles and K*_{a,a}, next to the closed-form bounds and the chain replay."""

import time
from fractions import Fraction

from guessgraph.entropy import build_lp, dual_certifies, solve_lp, verify_gnKaaupp_chain
from guessgraph.graphs import cycle, k_star
from guessgraph.guessing import max_code_size


def row(name, g, closed_form):
    t0 = time.perf_counter()
    model = build_lp(g)
    sol = solve_lp(model)
    assert dual_certifies(model, sol.dual, sol.optimum)
    t2 = max_code_size(g, 2)
    print(
        f"{name:<10} LP = {str(sol.optimum):<5} closed form = {str(closed_form):<5} "
        f"vars {len(model.variables):>3}/{model.num_raw_variables:<3} rows {len(model.rows):>4} "
        f"t*(s=2) = {t2:<3} {time.perf_counter() - t0:.1f} s"
    )


def main() -> None:
    for k in (2, 3):
        row(f"C_{2 * k + 1}", cycle(2 * k + 1), Fraction(2 * k + 1, 2))
    row("K*_{3,3}", k_star(3), Fraction(11, 3))
    for a in (3, 4):  # K*_{5,5} has 11 vertices, past the LP cap
        trace = verify_gnKaaupp_chain(a)
        status = "valid" if trace.valid else f"fails at steps {trace.failing_steps()}"
        print(f"chain a={a}: bound {trace.bound}, {len(trace.steps)} steps, {status}")
        for k, step in enumerate(trace.steps, 1):
            print(f"   ({k}) {step.relation:<2} {step.justification} [{len(step.used)} elemental terms]")


if __name__ == "__main__":
    main()
