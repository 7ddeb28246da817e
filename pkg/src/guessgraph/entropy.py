"""Entropy upper bounds on the guessing number.

Picking a fixed point of a protocol uniformly at random gives random
variables X_1..X_n whose joint entropy (in base-s units) is the guessing
number.  Their entropy vector h(S) = H(X_S) satisfies the elemental Shannon
inequalities, h({i}) <= 1, and h(S + v) = h(S) whenever N(v) is inside S.
Maximising h(V) over that polytope bounds gn(G, s) for every s at once.

Subsets of V are bitmasks throughout.  Determination equalities are applied
by merging subsets into classes instead of being kept as rows; the class of
the empty set is the constant 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .graphs import Graph, ResourceCapError
from .simplex import maximize

MAX_LP_N = 10


class EntropyLPError(RuntimeError):
    pass


def _members(mask: int) -> list[int]:
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


def subset_name(mask: int) -> str:
    return "h_" + "_".join(map(str, _members(mask))) if mask else "h_empty"


def _determination_classes(graph: Graph) -> list[int]:
    """Map every subset to the smallest subset with provably equal entropy."""
    n = graph.n
    parent = list(range(1 << n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in range(1 << n):
        for v in _members(t):
            rest = t & ~(1 << v)
            if graph.adj[v] & ~rest == 0:
                a, b = find(t), find(rest)
                if a != b:
                    # keep the smaller subset as representative
                    lo, hi = (a, b) if (a.bit_count(), a) < (b.bit_count(), b) else (b, a)
                    parent[hi] = lo
    return [find(t) for t in range(1 << n)]


@dataclass(frozen=True)
class Constraint:
    """``sum(coef * h(S)) + const >= 0`` over subsets S (bitmasks)."""

    family: str
    key: tuple
    terms: tuple[tuple[int, int], ...]
    const: int = 0


def elemental_submodularity(i: int, j: int, rest: int) -> Constraint:
    i, j = min(i, j), max(i, j)
    a, b = 1 << i, 1 << j
    terms = ((rest | a, 1), (rest | b, 1), (rest | a | b, -1), (rest, -1))
    return Constraint("submodularity", (i, j, rest), terms)


def elemental_monotonicity(n: int, i: int) -> Constraint:
    full = (1 << n) - 1
    return Constraint("monotonicity", (i,), ((full, 1), (full & ~(1 << i), -1)))


def singleton_cap(i: int) -> Constraint:
    return Constraint("cap", (i,), ((1 << i, -1),), 1)


@dataclass
class EntropyLPModel:
    graph: Graph
    rep: list[int]
    variables: list[int]
    constraints: list[Constraint]
    family_counts: dict[str, int]
    rows: list[dict[int, Fraction]] = field(repr=False)
    rhs: list[Fraction] = field(repr=False)
    row_constraints: list[list[Constraint]] = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_raw_variables(self) -> int:
        return (1 << self.n) - 1

    @property
    def objective_mask(self) -> int:
        return (1 << self.n) - 1

    def reduce(self, terms) -> dict[int, Fraction]:
        """Rewrite a combination of h(S) over determination classes (0-class dropped)."""
        out: dict[int, Fraction] = {}
        for mask, coef in terms:
            r = self.rep[mask]
            if r:
                out[r] = out.get(r, 0) + Fraction(coef)
        return {r: c for r, c in out.items() if c}

    def has_constraint(self, con: Constraint) -> bool:
        return con in self._index

    def __post_init__(self):
        self._index = set(self.constraints)


def build_lp(graph: Graph) -> EntropyLPModel:
    n = graph.n
    if n > MAX_LP_N:
        raise ResourceCapError(f"entropy LP supports n <= {MAX_LP_N}, got {n}")
    rep = _determination_classes(graph)
    variables = sorted({r for r in rep if r}, key=lambda r: (r.bit_count(), r))
    full = (1 << n) - 1

    constraints = [elemental_monotonicity(n, i) for i in range(n)]
    for i, j in combinations(range(n), 2):
        others = full & ~(1 << i) & ~(1 << j)
        sub = others
        while True:
            constraints.append(elemental_submodularity(i, j, sub))
            if sub == 0:
                break
            sub = (sub - 1) & others
    constraints += [singleton_cap(i) for i in range(n)]
    counts = {
        "monotonicity": n,
        "submodularity": len(constraints) - 2 * n,
        "cap": n,
        "determination": sum(1 << (n - 1 - graph.degree(v)) for v in range(n)),
    }

    model = EntropyLPModel(graph, rep, variables, constraints, counts, [], [], [])
    col = {r: k for k, r in enumerate(variables)}
    seen: dict[tuple, int] = {}
    for con in constraints:
        red = model.reduce(con.terms)
        if not red:
            continue
        # store as  -sum(coef x) <= const
        row = {col[r]: -c for r, c in red.items()}
        key = (tuple(sorted(row.items())), con.const)
        if key in seen:
            model.row_constraints[seen[key]].append(con)
            continue
        seen[key] = len(model.rows)
        model.rows.append(row)
        model.rhs.append(Fraction(con.const))
        model.row_constraints.append([con])
    return model


@dataclass
class EntropyVector:
    """h(S) for every subset S; h[0] is the empty set."""

    n: int
    h: list[Fraction]

    def __getitem__(self, mask: int) -> Fraction:
        return self.h[mask]

    def value(self, constraint: Constraint) -> Fraction:
        return sum((self.h[m] * c for m, c in constraint.terms), Fraction(constraint.const))

    def violations(self, graph: Graph, constraints: list[Constraint]) -> list[str]:
        out = [f"{c.family}{c.key}" for c in constraints if self.value(c) < 0]
        if self.h[0] != 0:
            out.append("h(empty) != 0")
        for t in range(1 << self.n):
            for v in range(self.n):
                if not t >> v & 1 and graph.adj[v] & ~t == 0 and self.h[t | 1 << v] != self.h[t]:
                    out.append(f"determination v={v} S={_members(t)}")
        return out

    def as_dict(self) -> dict[str, str]:
        return {subset_name(m): str(v) for m, v in enumerate(self.h) if m}


@dataclass
class EntropyLPSolution:
    optimum: Fraction
    certificate: EntropyVector
    dual: list[Fraction]
    pivots: int


def solve_lp(model: EntropyLPModel) -> EntropyLPSolution:
    """Maximise h(V) exactly and re-check the optimal vector against every constraint."""
    target = model.rep[model.objective_mask]
    col = {r: k for k, r in enumerate(model.variables)}
    c = [Fraction(0)] * len(model.variables)
    if target:
        c[col[target]] = Fraction(1)
    sol = maximize(c, model.rows, model.rhs)
    h = [Fraction(0)] * (1 << model.n)
    for mask in range(1, 1 << model.n):
        r = model.rep[mask]
        if r:
            h[mask] = sol.x[col[r]]
    vec = EntropyVector(model.n, h)
    bad = vec.violations(model.graph, model.constraints)
    if bad or vec[model.objective_mask] != sol.optimum:
        raise EntropyLPError(f"optimal vector fails re-validation: {bad[:5]}")
    return EntropyLPSolution(sol.optimum, vec, sol.dual, sol.pivots)


def dual_certifies(model: EntropyLPModel, dual: list[Fraction], bound: Fraction) -> bool:
    """Check that ``dual`` proves h(V) <= bound for every feasible vector.

    Needs y >= 0, y^T A >= e_V column-wise and y^T b == bound.
    """
    if len(dual) != len(model.rows) or any(y < 0 for y in dual):
        return False
    target = model.rep[model.objective_mask]
    col = {r: k for k, r in enumerate(model.variables)}
    lhs = [Fraction(0)] * len(model.variables)
    for y, row in zip(dual, model.rows):
        if y:
            for k, v in row.items():
                lhs[k] += y * v
    for r, k in col.items():
        if lhs[k] < (1 if r == target else 0):
            return False
    return sum(y * b for y, b in zip(dual, model.rhs)) == bound


def entropy_bound(graph: Graph) -> Fraction:
    return solve_lp(build_lp(graph)).optimum


def to_lp_format(model: EntropyLPModel) -> str:
    """CPLEX LP text of the reduced model, for cross-checking with other solvers."""
    names = [subset_name(r) for r in model.variables]

    def expr(row: dict[int, Fraction]) -> str:
        parts = []
        for k, v in sorted(row.items()):
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            coef = "" if mag == 1 else f"{float(mag):.17g} "
            parts.append(f"{sign} {coef}{names[k]}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out

    target = model.rep[model.objective_mask]
    lines = ["\\ entropy bound", "Maximize", f" obj: {subset_name(target) if target else '0'}", "Subject To"]
    for k, (row, b) in enumerate(zip(model.rows, model.rhs)):
        lines.append(f" c{k}: {expr(row)} <= {b}")
    lines.append("Bounds")
    lines += [f" {name} >= 0" for name in names]
    lines.append("End")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# replay of the K*_{a,a} inequality chain

def shannon_decomposition(a: int, b: int) -> list[Constraint]:
    """Elemental inequalities summing to h(A) + h(B) - h(A|B) - h(A&B) >= 0."""
    common = a & b
    xs, ys = _members(a & ~common), _members(b & ~common)
    out = []
    for p, x in enumerate(xs):
        for q, y in enumerate(ys):
            cond = common | sum(1 << u for u in xs[:p]) | sum(1 << u for u in ys[:q])
            out.append(elemental_submodularity(x, y, cond))
    return out


def subadditivity_chain(mask: int) -> list[Constraint]:
    """Elemental inequalities plus caps giving |S| - h(S) >= 0."""
    out = []
    members = _members(mask)
    acc = 0
    for v in members:
        if acc:
            out += shannon_decomposition(acc, 1 << v)
        acc |= 1 << v
    out += [singleton_cap(v) for v in members]
    return out


@dataclass
class ChainStep:
    relation: str
    before: dict[int, int]
    after: dict[int, int]
    after_const: int
    used: list[Constraint]
    justification: str
    verified: bool = False
    reason: str = ""

    def as_dict(self) -> dict:
        show = lambda e: {subset_name(m): c for m, c in sorted(e.items())}  # noqa: E731
        return {
            "relation": self.relation,
            "before": show(self.before),
            "after": show(self.after),
            "after_const": self.after_const,
            "justification": self.justification,
            "constraints_used": len(self.used),
            "verified": self.verified,
            "reason": self.reason,
        }


@dataclass
class ChainTrace:
    a: int
    steps: list[ChainStep]
    bound: Fraction

    @property
    def valid(self) -> bool:
        return all(s.verified for s in self.steps)

    def failing_steps(self) -> list[int]:
        return [k + 1 for k, s in enumerate(self.steps) if not s.verified]


def _check_step(model: EntropyLPModel, step: ChainStep) -> None:
    """after - before must equal a nonnegative sum of model rows, modulo determination."""
    for con in step.used:
        if not model.has_constraint(con):
            step.reason = f"{con.family}{con.key} is not a model constraint"
            return
    if step.relation == "=" and step.used:
        step.reason = "equality steps may only use determination"
        return
    total: dict[int, int] = {}
    const = step.after_const
    for m, c in step.after.items():
        total[m] = total.get(m, 0) + c
    for m, c in step.before.items():
        total[m] = total.get(m, 0) - c
    for con in step.used:
        for m, c in con.terms:
            total[m] = total.get(m, 0) - c
        const -= con.const
    residual = model.reduce(total.items())
    if residual or const:
        step.reason = f"residual {({subset_name(k): str(v) for k, v in residual.items()}, const)}"
        return
    step.verified = True


def verify_gnKaaupp_chain(a: int) -> ChainTrace:
    """Replay the six-step bound 3 gn(K*_{a,a}) <= 3a + 2 against build_lp(k_star(a)).

    Each inequality step is certified by an explicit nonnegative combination
    of elemental Shannon inequalities and singleton caps of the model; each
    equality step by determination alone.
    """
    from .graphs import k_star

    if a < 3:
        raise ValueError("the K*_{a,a} chain needs a >= 3")
    model = build_lp(k_star(a))
    xs = [1 << i for i in range(a)]
    ys = [1 << (a + i) for i in range(a)]
    v0 = 1 << (2 * a)
    X, Y = sum(xs), sum(ys)
    X1, Y1 = xs[0], ys[0]
    X2, Y2 = X & ~X1, Y & ~Y1
    Z = v0 | X | Y

    e0 = {Z: 3}
    e1 = {v0 | X | Y1: 1, v0 | X1 | Y: 1, v0 | X: 1}
    e2 = {v0 | X | Y1: 1, v0 | X1 | Y: 1, v0: 1, X: 1}
    e3 = {v0 | X | Y1: 1, v0 | X1 | Y2: 1, v0 | Y1: 1, X: 1}
    e4 = {v0 | X2 | Y1: 1, v0 | Y1 | X1: 1, v0 | X1 | Y2: 1, X: 1}
    e5 = {v0 | X2: 1, Y1 | X1: 1, v0 | Y2: 1, X: 1}
    caps = (
        subadditivity_chain(v0 | X2)
        + subadditivity_chain(Y1 | X1)
        + subadditivity_chain(v0 | Y2)
        + subadditivity_chain(X)
    )
    steps = [
        ChainStep("=", e0, e1, 0, [], "X and Y are independent sets determined by the rest"),
        ChainStep("<=", e1, e2, 0, shannon_decomposition(v0, X), "subadditivity h(V0,X) <= h(V0) + h(X)"),
        ChainStep("<=", e2, e3, 0, shannon_decomposition(v0 | X1 | Y2, v0 | Y1), "submodularity on {V0,X1,Y2} and {V0,Y1}"),
        ChainStep("<=", e3, e4, 0, shannon_decomposition(v0 | X2 | Y1, v0 | Y1 | X1), "submodularity on {V0,X2,Y1} and {V0,Y1,X1}"),
        ChainStep("=", e4, e5, 0, [], "Y1, V0 and X1 are determined by their neighbourhoods"),
        ChainStep("<=", e5, {}, 3 * a + 2, caps, "subadditivity and h(i) <= 1"),
    ]
    for step in steps:
        _check_step(model, step)
    return ChainTrace(a, steps, Fraction(3 * a + 2, 3))
