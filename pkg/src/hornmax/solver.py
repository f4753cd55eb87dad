"""Exact MaxSAT for Horn instances by the implicit hitting set scheme.

The loop maintains a collection of cores (soft-clause subsets inconsistent
with the hard clauses).  Each pass computes an exact minimum-weight hitting
set of the collection, then checks by linear-time propagation whether the
hard clauses together with the non-hit soft clauses are satisfiable.  A
satisfiable check proves the hitting set weight optimal and its propagation
model is the answer; an unsatisfiable check contributes a fresh core, which
by construction is unhit, so the collection grows strictly and the loop
terminates.

Two policies are configurable: shrinking each core to a minimal one before
blocking it (on by default), and seeding the collection with a greedy batch
of pairwise-disjoint cores before the first hitting set call (on by
default).  Soft-clause activation is done through assumption selectors on a
single compiled propagation engine, so each pass costs a hitting set solve
plus a few propagation calls.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .analysis import Core, HornAnalyzer
from .formula import WcnfInstance, evaluate
from .hitting import HsProblem, solve_min_hs
from .ltur import UNSAT

OPTIMUM = "OPTIMUM"
HARD_UNSAT = "HARD_UNSAT"


class SolverTimeout(Exception):
    """Raised when the configured time budget runs out mid-solve."""


@dataclass
class SolverOptions:
    minimize_cores: bool = True
    seed_disjoint: bool = True
    timeout_s: float | None = None


@dataclass
class SolveStats:
    iterations: int = 0
    disjoint_cores: int = 0
    ltur_calls: int = 0
    hs_nodes: int = 0
    core_sizes: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class IterationRecord:
    index: int
    hitting_set: frozenset[int]
    hs_cost: int
    core: frozenset[int] | None  # None on the final, satisfiable pass


@dataclass
class SolveResult:
    status: str
    cost: int | None
    model: dict[int, int] | None
    stats: SolveStats


def solve(inst: WcnfInstance, opts: SolverOptions | None = None) -> SolveResult:
    result, _ = solve_with_trace(inst, opts)
    return result


def solve_with_trace(
    inst: WcnfInstance, opts: SolverOptions | None = None
) -> tuple[SolveResult, list[IterationRecord]]:
    opts = opts or SolverOptions()
    deadline = time.monotonic() + opts.timeout_s if opts.timeout_s else None
    stats = SolveStats()
    trace: list[IterationRecord] = []

    analyzer = HornAnalyzer(inst)  # rejects non-Horn instances
    if analyzer.check(()).status == UNSAT:
        stats.ltur_calls = analyzer.ltur_calls
        return SolveResult(HARD_UNSAT, None, None, stats), trace

    problem = HsProblem({i: w for i, (_, w) in enumerate(inst.soft)})
    all_soft = frozenset(range(len(inst.soft)))

    def block(core: Core) -> frozenset[int]:
        ids = core.soft_ids
        if opts.minimize_cores:
            ids = analyzer.minimize_to_mus(core).soft_ids
        problem.add_set(ids)
        stats.core_sizes.append(len(ids))
        return ids

    if opts.seed_disjoint:
        # Hard clauses are satisfiable here, so extraction cannot signal
        # hard-unsat; every round either yields a core or stops.
        for core in analyzer.disjoint_cores():
            ids = block(core)
            stats.iterations += 1
            trace.append(
                IterationRecord(stats.iterations, frozenset(), 0, ids)
            )
        stats.disjoint_cores = len(trace)

    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise SolverTimeout(f"time budget of {opts.timeout_s}s exhausted")
        hs = solve_min_hs(problem)
        outcome = analyzer.extract_core(all_soft - hs.elements)
        stats.iterations += 1
        if isinstance(outcome, dict):
            model = outcome
            hard_ok, _, falsified = evaluate(inst, model)
            if not hard_ok or falsified != hs.cost:
                raise AssertionError(
                    "internal error: model check disagrees with hitting set cost"
                )
            trace.append(IterationRecord(stats.iterations, hs.elements, hs.cost, None))
            stats.ltur_calls = analyzer.ltur_calls
            stats.hs_nodes = problem.nodes_explored
            return SolveResult(OPTIMUM, hs.cost, model, stats), trace
        ids = block(outcome)
        trace.append(IterationRecord(stats.iterations, hs.elements, hs.cost, ids))
