"""Linear-time satisfiability for Horn clause sets by positive unit resolution.

The procedure repeatedly propagates forced positive units: a clause whose
negative literals have all been satisfied either forces its single positive
literal or, if it has none, closes the run with a conflict.  A satisfiable
run yields the unique minimal model (forced variables 1, everything else 0);
an unsatisfiable run yields the conflicting clause and a trail of reasons
from which an unsatisfiable antecedent subset can be read off.

``LturSolver`` compiles the clause set once and supports any number of
``solve`` calls with different assumption sets; per-call state is undone
through a journal, so the cost of a call is proportional to the work it
actually performed, not to the formula size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import Clause

SAT = "SAT"
UNSAT = "UNSAT"


@dataclass(frozen=True)
class LturOutcome:
    """Result of one propagation run.

    ``trail`` lists ``(variable, reason clause id)`` pairs in forcing order.
    Clause ids are positions in the input clause list; assumptions occupy
    virtual ids following the real clauses, in the order they were given.
    ``steps`` counts elementary propagation operations and is bounded by
    2 * (total literal occurrences) + (number of clauses), assumptions
    included as one-literal clauses.
    """

    status: str
    model: dict[int, int] | None
    conflict_clause: int | None
    trail: tuple[tuple[int, int], ...]
    steps: int
    clauses: tuple[Clause, ...]
    assumptions: tuple[int, ...]

    @property
    def num_real_clauses(self) -> int:
        return len(self.clauses)


class LturSolver:
    """Reusable propagation engine over a fixed Horn clause list."""

    def __init__(self, clauses: Sequence[Clause], num_vars: int | None = None):
        clauses = tuple(clauses)
        for idx, clause in enumerate(clauses):
            if not clause.is_horn:
                raise ValueError(f"clause {idx} is not Horn: {clause!r}")
        max_var = max((c.max_var() for c in clauses), default=0)
        if num_vars is None:
            num_vars = max_var
        elif num_vars < max_var:
            raise ValueError(f"num_vars={num_vars} below max variable {max_var}")

        self.clauses = clauses
        self.num_vars = num_vars

        nv = num_vars + 1
        # watch[v]: ids of clauses where v occurs negatively.
        watch: list[list[int]] = [[] for _ in range(nv)]
        head = [0] * len(clauses)  # positive literal per clause, 0 for goal clauses
        base_count = [0] * len(clauses)  # number of negative literals
        seeds: list[tuple[int, int]] = []  # (var, clause id) for unit positive clauses
        empty_clause = -1
        for cid, clause in enumerate(clauses):
            neg = 0
            for lit in clause.lits:
                if lit > 0:
                    head[cid] = lit
                else:
                    neg += 1
                    watch[-lit].append(cid)
            base_count[cid] = neg
            if neg == 0:
                if head[cid]:
                    seeds.append((head[cid], cid))
                elif empty_clause < 0:
                    empty_clause = cid

        self._watch = watch
        self._head = head
        self._base_count = base_count
        self._seeds = seeds
        self._empty_clause = empty_clause
        # Mutable per-run state, restored through journals after every call.
        self._count = list(base_count)
        self._assigned = bytearray(nv)

    def solve(self, assumptions: Iterable[int] = ()) -> LturOutcome:
        assumptions = tuple(assumptions)
        for lit in assumptions:
            if lit <= 0:
                raise ValueError(f"assumptions must be positive literals, got {lit}")
            if lit > self.num_vars:
                raise ValueError(f"assumption {lit} above num_vars={self.num_vars}")

        count = self._count
        assigned = self._assigned
        watch = self._watch
        head = self._head
        n_real = len(self.clauses)

        steps = 0
        trail: list[tuple[int, int]] = []
        touched: list[int] = []  # clause ids whose counter was decremented
        conflict = self._empty_clause if self._empty_clause >= 0 else None

        if conflict is None:
            for var, cid in self._seeds:
                steps += 1
                if not assigned[var]:
                    assigned[var] = 1
                    trail.append((var, cid))
            for j, lit in enumerate(assumptions):
                steps += 1
                if not assigned[lit]:
                    assigned[lit] = 1
                    trail.append((lit, n_real + j))

            qi = 0
            while qi < len(trail):
                var = trail[qi][0]
                qi += 1
                steps += 1
                for cid in watch[var]:
                    c = count[cid] - 1
                    count[cid] = c
                    touched.append(cid)
                    steps += 1
                    if c == 0:
                        h = head[cid]
                        if h == 0:
                            conflict = cid
                            break
                        if not assigned[h]:
                            assigned[h] = 1
                            trail.append((h, cid))
                if conflict is not None:
                    break

        if conflict is None:
            model = dict.fromkeys(range(1, self.num_vars + 1), 0)
            for var, _ in trail:
                model[var] = 1
            outcome = LturOutcome(
                status=SAT,
                model=model,
                conflict_clause=None,
                trail=tuple(trail),
                steps=steps,
                clauses=self.clauses,
                assumptions=assumptions,
            )
        else:
            outcome = LturOutcome(
                status=UNSAT,
                model=None,
                conflict_clause=conflict,
                trail=tuple(trail),
                steps=steps,
                clauses=self.clauses,
                assumptions=assumptions,
            )

        # Undo per-run state.
        base = self._base_count
        for cid in touched:
            count[cid] = base[cid]
        for var, _ in trail:
            assigned[var] = 0
        return outcome


def solve(
    clauses: Sequence[Clause],
    assumptions: Iterable[int] = (),
    num_vars: int | None = None,
) -> LturOutcome:
    """One-shot convenience wrapper around ``LturSolver``."""
    return LturSolver(clauses, num_vars=num_vars).solve(assumptions)


def conflict_antecedents(outcome: LturOutcome) -> set[int]:
    """Clause ids reachable backward from the conflict through forcing reasons.

    The returned set (conflict clause, its reasons, their reasons, down to
    the unit roots) is itself unsatisfiable.  Only valid for UNSAT outcomes.
    """
    if outcome.status != UNSAT:
        raise ValueError("conflict_antecedents requires an UNSAT outcome")
    reason = {var: cid for var, cid in outcome.trail}
    n_real = len(outcome.clauses)

    def neg_vars(cid: int) -> tuple[int, ...]:
        if cid >= n_real:  # virtual assumption unit, no negative literals
            return ()
        return tuple(-lit for lit in outcome.clauses[cid].lits if lit < 0)

    antecedents = {outcome.conflict_clause}
    stack = [outcome.conflict_clause]
    while stack:
        cid = stack.pop()
        for var in neg_vars(cid):
            rid = reason[var]
            if rid not in antecedents:
                antecedents.add(rid)
                stack.append(rid)
    return antecedents
