"""Reductions of graph, set, knapsack, SAT, CSP and pigeonhole problems
into Horn weighted MaxSAT, plus decoding of solver models back into domain
answers.

Every reduction follows the same shape: problem objects get dedicated
propositional variables (allocated first, in input order), constraints
become hard goal clauses or Horn counter encodings, and the objective is
expressed through unit positive soft clauses over problem variables only.
Horn-ness of the full clause set is checked when the result is assembled.

``decode`` maps an optimal model back through the variable map and
re-verifies the decoded object against the original problem; a mismatch
raises :class:`DecodeError` instead of returning a wrong answer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .cardinality import EncodingError, VarPool, encode_atmost_k, encode_pb_leq
from .formula import Clause, WcnfInstance
from .problems import (
    CnfFormula,
    CspInstance,
    Graph,
    KnapsackInstance,
    SetSystem,
    complement,
    set_cover_dual,
)
from .solver import HARD_UNSAT, OPTIMUM, SolveResult


class DecodeError(RuntimeError):
    """Decoded object failed re-verification against the source problem."""


@dataclass(frozen=True)
class EncodingResult:
    """A WCNF instance plus the mapping used to build it.

    ``var_map`` sends problem objects (described by string-keyed tuples,
    e.g. ``("vertex", 3)`` or ``("place", pigeon, hole)``) to propositional
    variables; ``aux_start`` is the first auxiliary (counter) variable.
    """

    kind: str
    instance: WcnfInstance
    var_map: dict[tuple, int]
    aux_start: int
    problem: object

    def __post_init__(self):
        if not self.instance.is_horn_instance:
            raise EncodingError(f"{self.kind} encoding produced non-Horn clauses")

    def var_of(self, *key) -> int:
        return self.var_map[key]

    def inverse_map(self) -> dict[int, tuple]:
        return {v: k for k, v in self.var_map.items()}

    def map_json(self) -> str:
        entries = [[list(k), v] for k, v in self.var_map.items()]
        return json.dumps(
            {
                "kind": self.kind,
                "num_vars": self.instance.num_vars,
                "aux_start": self.aux_start,
                "vars": entries,
            },
            indent=None,
        )


def _unit_softs(variables: Sequence[int], weights: Sequence[int] | None = None):
    if weights is None:
        return tuple((Clause([v]), 1) for v in variables)
    return tuple((Clause([v]), w) for v, w in zip(variables, weights))


# ---------------------------------------------------------------------------
# graph problems


def encode_min_vertex_cover(g: Graph) -> EncodingResult:
    """Vertex u is *excluded* from the cover iff x_u is true; each edge adds
    a goal clause forbidding both endpoints excluded.  The optimum cost is
    the minimum cover size."""
    var_map = {("vertex", u): u for u in range(1, g.n + 1)}
    hard = tuple(Clause([-u, -v]) for u, v in g.edges)
    inst = WcnfInstance.from_clauses(g.n, hard, _unit_softs(range(1, g.n + 1)))
    return EncodingResult("vc", inst, var_map, g.n + 1, g)


def encode_max_independent_set(g: Graph) -> EncodingResult:
    """Same clause set as the vertex cover reduction; the satisfied softs
    are exactly the chosen independent vertices."""
    result = encode_min_vertex_cover(g)
    return EncodingResult("is", result.instance, result.var_map, g.n + 1, g)


def encode_max_clique(g: Graph) -> EncodingResult:
    """Independent set on the complement graph."""
    result = encode_max_independent_set(complement(g))
    return EncodingResult("clique", result.instance, result.var_map, g.n + 1, g)


def encode_min_dominating_set(g: Graph) -> EncodingResult:
    """x_u true iff u is excluded; every vertex requires itself or some
    neighbor to be included, which is one all-negative clause per vertex."""
    adj = g.neighbors()
    var_map = {("vertex", u): u for u in range(1, g.n + 1)}
    hard = tuple(
        Clause([-u] + [-v for v in sorted(adj[u])]) for u in range(1, g.n + 1)
    )
    inst = WcnfInstance.from_clauses(g.n, hard, _unit_softs(range(1, g.n + 1)))
    return EncodingResult("ds", inst, var_map, g.n + 1, g)


# ---------------------------------------------------------------------------
# set problems


def encode_min_hitting_set(s: SetSystem) -> EncodingResult:
    """x_a true iff element a is excluded; every set must keep at least one
    element non-excluded."""
    n = s.universe_size
    var_map = {("element", a): a for a in range(1, n + 1)}
    hard = tuple(Clause([-a for a in sorted(subset)]) for subset in s.sets)
    inst = WcnfInstance.from_clauses(n, hard, _unit_softs(range(1, n + 1)))
    return EncodingResult("hs", inst, var_map, n + 1, s)


def encode_min_set_cover(s: SetSystem) -> EncodingResult:
    """Set cover solved as hitting set on the transposed system; variables
    correspond to the original sets."""
    dual = set_cover_dual(s)
    n = dual.universe_size
    var_map = {("set", i): i for i in range(1, n + 1)}
    hard = tuple(Clause([-a for a in sorted(subset)]) for subset in dual.sets)
    inst = WcnfInstance.from_clauses(n, hard, _unit_softs(range(1, n + 1)))
    return EncodingResult("sc", inst, var_map, n + 1, s)


def encode_max_set_packing(family: Sequence[frozenset[int]]) -> EncodingResult:
    """x_i true iff set i joins the packing; intersecting pairs conflict."""
    k = len(family)
    var_map = {("set", i): i for i in range(1, k + 1)}
    hard = []
    for i in range(k):
        for j in range(i + 1, k):
            if family[i] & family[j]:
                hard.append(Clause([-(i + 1), -(j + 1)]))
    inst = WcnfInstance.from_clauses(k, tuple(hard), _unit_softs(range(1, k + 1)))
    return EncodingResult("sp", inst, var_map, k + 1, tuple(family))


# ---------------------------------------------------------------------------
# knapsack


def encode_knapsack(kp: KnapsackInstance) -> EncodingResult:
    """Weight constraint as a Horn pseudo-Boolean counter; picking item i
    satisfies soft (x_i) of weight value_i, so the optimum cost is the
    total value left on the table."""
    n = len(kp.values)
    var_map = {("item", i): i for i in range(1, n + 1)}
    pool = VarPool(n + 1)
    hard = tuple(
        encode_pb_leq([(i + 1, kp.weights[i]) for i in range(n)], kp.capacity, pool)
    )
    softs = _unit_softs(range(1, n + 1), kp.values)
    inst = WcnfInstance.from_clauses(pool.next_free - 1, hard, softs)
    return EncodingResult("knapsack", inst, var_map, n + 1, kp)


# ---------------------------------------------------------------------------
# pigeonhole


def encode_php(m: int, atmost_method: str = "auto") -> EncodingResult:
    """Placement of m + 1 pigeons into m holes, one variable per pair.

    At most one pigeon per hole and at most one hole per pigeon; every
    placement variable is a unit soft.  The placement problem is feasible
    iff the optimum satisfies at least m + 1 softs, which the counting
    bound makes impossible for every m >= 1.
    """
    if m < 1:
        raise ValueError("need at least one hole")
    pigeons, holes = m + 1, m
    var_map = {}
    for i in range(1, pigeons + 1):
        for j in range(1, holes + 1):
            var_map[("place", i, j)] = (i - 1) * holes + j
    nvars = pigeons * holes
    pool = VarPool(nvars + 1)
    hard: list[Clause] = []
    for j in range(1, holes + 1):
        hard.extend(
            encode_atmost_k(
                [var_map[("place", i, j)] for i in range(1, pigeons + 1)],
                1,
                pool,
                atmost_method,
            )
        )
    for i in range(1, pigeons + 1):
        hard.extend(
            encode_atmost_k(
                [var_map[("place", i, j)] for j in range(1, holes + 1)],
                1,
                pool,
                atmost_method,
            )
        )
    softs = _unit_softs(range(1, nvars + 1))
    inst = WcnfInstance.from_clauses(pool.next_free - 1, tuple(hard), softs)
    return EncodingResult("php", inst, var_map, nvars + 1, m)


# ---------------------------------------------------------------------------
# SAT via the two-variables-per-literal ("dual rail") translation


def encode_sat(f: CnfFormula) -> EncodingResult:
    """p_i asserts x_i = 1, n_i asserts x_i = 0, never both; original
    clauses turn into all-negative clauses over the opposite rails.

    The formula is satisfiable iff the optimum satisfies at least
    ``f.num_vars`` of the 2 * num_vars unit softs (it can never satisfy
    more, one rail per variable at most).
    """
    n = f.num_vars
    var_map = {}
    for i in range(1, n + 1):
        var_map[("pos", i)] = i
        var_map[("neg", i)] = n + i
    hard = [Clause([-i, -(n + i)]) for i in range(1, n + 1)]
    for clause in f.clauses:
        # literal x_i maps to "not the 0-rail", literal -x_i to "not the 1-rail"
        hard.append(Clause([-(n + lit) if lit > 0 else lit for lit in clause]))
    softs = _unit_softs(range(1, 2 * n + 1))
    inst = WcnfInstance.from_clauses(2 * n, tuple(hard), softs)
    return EncodingResult("sat", inst, var_map, 2 * n + 1, f)


# ---------------------------------------------------------------------------
# CSP direct encoding


def encode_csp(c: CspInstance, atmost_method: str = "auto") -> EncodingResult:
    """One variable per (CSP variable, value) pair; disallowed combinations
    become goal clauses; each CSP variable takes at most one value.

    Satisfiable iff the optimum satisfies at least ``c.num_vars`` softs.
    """
    var_map = {}
    next_var = 1
    for i, dom in enumerate(c.domains, start=1):
        for val in dom:
            var_map[("assign", i, val)] = next_var
            next_var += 1
    nvars = next_var - 1
    pool = VarPool(nvars + 1)
    hard: list[Clause] = []
    for conflict in c.conflicts:
        hard.append(
            Clause([-var_map[("assign", var, val)] for var, val in sorted(conflict)])
        )
    for i, dom in enumerate(c.domains, start=1):
        hard.extend(
            encode_atmost_k(
                [var_map[("assign", i, val)] for val in dom], 1, pool, atmost_method
            )
        )
    softs = _unit_softs(range(1, nvars + 1))
    inst = WcnfInstance.from_clauses(pool.next_free - 1, tuple(hard), softs)
    return EncodingResult("csp", inst, var_map, nvars + 1, c)


# ---------------------------------------------------------------------------
# benchmark family generator


def generate_clique_pendant_graph(k: int, m: int) -> Graph:
    """A k-clique where every clique vertex also owns m private degree-one
    neighbors: (1 + m) * k vertices and k * (k - 1) / 2 + m * k edges.

    The maximum independent set is all m * k pendants, the minimum vertex
    cover and maximum clique are the k clique vertices.
    """
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    edges = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    nxt = k + 1
    for i in range(1, k + 1):
        for _ in range(m):
            edges.append((i, nxt))
            nxt += 1
    return Graph((1 + m) * k, tuple(edges))


# ---------------------------------------------------------------------------
# decoding


@dataclass(frozen=True)
class Decoded:
    """Domain-level reading of an optimal model.

    ``value`` is the domain optimum (cover size, packing size, total value,
    satisfied placements...); ``selection`` the decoded object; ``verdict``
    is "SAT"/"UNSAT" for the decision reductions and None otherwise.
    """

    kind: str
    value: int
    selection: tuple
    verdict: str | None = None


def decode(result: SolveResult, enc: EncodingResult) -> Decoded:
    if result.status == HARD_UNSAT:
        if enc.kind == "sat":
            return Decoded("sat", 0, (), "UNSAT")
        raise DecodeError(f"{enc.kind} encoding can never be hard-unsatisfiable")
    if result.status != OPTIMUM or result.model is None:
        raise DecodeError(f"cannot decode solver status {result.status!r}")
    model = result.model
    return _DECODERS[enc.kind](result, enc, model)


def _ones(enc: EncodingResult, model, tag: str) -> list:
    out = []
    for key, var in enc.var_map.items():
        if key[0] == tag and model[var] == 1:
            out.append(key[1] if len(key) == 2 else key[1:])
    return sorted(out)


def _decode_vc(result, enc, model):
    g: Graph = enc.problem
    cover = [u for u in range(1, g.n + 1) if model[enc.var_of("vertex", u)] == 0]
    in_cover = set(cover)
    for u, v in g.edges:
        if u not in in_cover and v not in in_cover:
            raise DecodeError(f"edge ({u}, {v}) left uncovered")
    if len(cover) != result.cost:
        raise DecodeError("cover size disagrees with optimum cost")
    return Decoded("vc", len(cover), tuple(cover))


def _decode_is(result, enc, model):
    g: Graph = enc.problem
    chosen = _ones(enc, model, "vertex")
    in_set = set(chosen)
    for u, v in g.edges:
        if u in in_set and v in in_set:
            raise DecodeError(f"edge ({u}, {v}) inside the independent set")
    if len(chosen) != g.n - result.cost:
        raise DecodeError("independent set size disagrees with optimum cost")
    return Decoded("is", len(chosen), tuple(chosen))


def _decode_clique(result, enc, model):
    g: Graph = enc.problem
    chosen = _ones(enc, model, "vertex")
    present = set(g.edges)
    for idx, u in enumerate(chosen):
        for v in chosen[idx + 1 :]:
            if (u, v) not in present:
                raise DecodeError(f"chosen vertices {u}, {v} are not adjacent")
    return Decoded("clique", len(chosen), tuple(chosen))


def _decode_ds(result, enc, model):
    g: Graph = enc.problem
    dominating = [u for u in range(1, g.n + 1) if model[enc.var_of("vertex", u)] == 0]
    adj = g.neighbors()
    chosen = set(dominating)
    for u in range(1, g.n + 1):
        if u not in chosen and not adj[u] & chosen:
            raise DecodeError(f"vertex {u} is not dominated")
    if len(dominating) != result.cost:
        raise DecodeError("dominating set size disagrees with optimum cost")
    return Decoded("ds", len(dominating), tuple(dominating))


def _decode_hs(result, enc, model):
    s: SetSystem = enc.problem
    hitting = [
        a for a in range(1, s.universe_size + 1) if model[enc.var_of("element", a)] == 0
    ]
    chosen = set(hitting)
    for subset in s.sets:
        if not subset & chosen:
            raise DecodeError(f"set {sorted(subset)} is not hit")
    if len(hitting) != result.cost:
        raise DecodeError("hitting set size disagrees with optimum cost")
    return Decoded("hs", len(hitting), tuple(hitting))


def _decode_sc(result, enc, model):
    s: SetSystem = enc.problem
    chosen = [
        i for i in range(1, len(s.sets) + 1) if model[enc.var_of("set", i)] == 0
    ]
    covered = set()
    for i in chosen:
        covered |= s.sets[i - 1]
    if covered != set(range(1, s.universe_size + 1)):
        raise DecodeError("chosen sets do not cover the universe")
    if len(chosen) != result.cost:
        raise DecodeError("cover size disagrees with optimum cost")
    return Decoded("sc", len(chosen), tuple(chosen))


def _decode_sp(result, enc, model):
    family = enc.problem
    chosen = _ones(enc, model, "set")
    for idx, i in enumerate(chosen):
        for j in chosen[idx + 1 :]:
            if family[i - 1] & family[j - 1]:
                raise DecodeError(f"packed sets {i} and {j} intersect")
    if len(chosen) != len(family) - result.cost:
        raise DecodeError("packing size disagrees with optimum cost")
    return Decoded("sp", len(chosen), tuple(chosen))


def _decode_knapsack(result, enc, model):
    kp: KnapsackInstance = enc.problem
    items = _ones(enc, model, "item")
    weight = sum(kp.weights[i - 1] for i in items)
    value = sum(kp.values[i - 1] for i in items)
    if weight > kp.capacity:
        raise DecodeError(f"selection weight {weight} exceeds capacity {kp.capacity}")
    if value != sum(kp.values) - result.cost:
        raise DecodeError("selection value disagrees with optimum cost")
    return Decoded("knapsack", value, tuple(items))


def _decode_php(result, enc, model):
    m: int = enc.problem
    placements = _ones(enc, model, "place")
    per_hole: dict[int, int] = {}
    per_pigeon: dict[int, int] = {}
    for pigeon, hole in placements:
        per_hole[hole] = per_hole.get(hole, 0) + 1
        per_pigeon[pigeon] = per_pigeon.get(pigeon, 0) + 1
    if any(c > 1 for c in per_hole.values()) or any(
        c > 1 for c in per_pigeon.values()
    ):
        raise DecodeError("placement violates an at-most-one constraint")
    satisfied = (m + 1) * m - result.cost
    if satisfied != len(placements):
        raise DecodeError("placement count disagrees with optimum cost")
    verdict = "SAT" if satisfied >= m + 1 else "UNSAT"
    return Decoded("php", satisfied, tuple(placements), verdict)


def _decode_sat(result, enc, model):
    f: CnfFormula = enc.problem
    n = f.num_vars
    satisfied = 2 * n - result.cost
    if satisfied < n:
        return Decoded("sat", satisfied, (), "UNSAT")
    assignment = tuple(model[enc.var_of("pos", i)] for i in range(1, n + 1))
    for clause in f.clauses:
        if not any(
            (lit > 0 and assignment[lit - 1] == 1)
            or (lit < 0 and assignment[-lit - 1] == 0)
            for lit in clause
        ):
            raise DecodeError(f"decoded assignment falsifies clause {clause}")
    return Decoded("sat", satisfied, assignment, "SAT")


def _decode_csp(result, enc, model):
    c: CspInstance = enc.problem
    total_softs = sum(len(dom) for dom in c.domains)
    satisfied = total_softs - result.cost
    if satisfied < c.num_vars:
        return Decoded("csp", satisfied, (), "UNSAT")
    assignment: dict[int, int] = {}
    for i, dom in enumerate(c.domains, start=1):
        vals = [val for val in dom if model[enc.var_of("assign", i, val)] == 1]
        if len(vals) != 1:
            raise DecodeError(f"variable {i} takes {len(vals)} values")
        assignment[i] = vals[0]
    for conflict in c.conflicts:
        if all(assignment[var] == val for var, val in conflict):
            raise DecodeError(f"assignment matches disallowed combination {conflict}")
    return Decoded(
        "csp", satisfied, tuple(assignment[i] for i in range(1, c.num_vars + 1)), "SAT"
    )


_DECODERS = {
    "vc": _decode_vc,
    "is": _decode_is,
    "clique": _decode_clique,
    "ds": _decode_ds,
    "hs": _decode_hs,
    "sc": _decode_sc,
    "sp": _decode_sp,
    "knapsack": _decode_knapsack,
    "php": _decode_php,
    "sat": _decode_sat,
    "csp": _decode_csp,
}
