"""Core, MUS, MCS and disjoint-core extraction for Horn WCNF instances.

All operations reduce to repeated propagation runs.  ``HornAnalyzer``
attaches one selector variable to every soft clause and keeps a single
compiled :class:`~hornmax.ltur.LturSolver` for the instance, so activating
a subset of soft clauses is just an assumption set; every query here costs
one (or a few) linear-time propagation calls.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Clause, WcnfInstance
from .ltur import UNSAT, LturSolver, conflict_antecedents


class HardUnsatError(Exception):
    """The hard clauses alone are unsatisfiable; no MaxSAT solution exists."""


@dataclass(frozen=True)
class Core:
    """Soft-clause ids that are jointly inconsistent with the hard clauses."""

    soft_ids: frozenset[int]


@dataclass(frozen=True)
class Mus:
    """A subset-minimal core: dropping any member restores satisfiability."""

    soft_ids: frozenset[int]


@dataclass(frozen=True)
class Mcs:
    """A minimal correction subset: removing these softs restores
    satisfiability, and adding back any single one breaks it again."""

    soft_ids: frozenset[int]


class HornAnalyzer:
    """Shared propagation context for all soft-subset queries on one instance.

    Soft clause ``i`` is guarded by selector variable ``num_vars + 1 + i``:
    the clause is stored as ``(-selector) v original literals`` (still Horn)
    and participates in a run only when its selector is assumed.  Conflict
    antecedents mentioning either the guarded clause or its assumption map
    back to the soft id.
    """

    def __init__(self, inst: WcnfInstance):
        if not inst.is_horn_instance:
            raise ValueError("instance contains non-Horn clauses")
        self.inst = inst
        self.num_soft = len(inst.soft)
        self._sel_base = inst.num_vars + 1
        clauses = list(inst.hard)
        for i, (clause, _) in enumerate(inst.soft):
            clauses.append(Clause(clause.lits + (-(self._sel_base + i),)))
        self._num_hard = len(inst.hard)
        self._solver = LturSolver(clauses, num_vars=inst.num_vars + self.num_soft)
        self.ltur_calls = 0

    def check(self, active_soft):
        """Propagate hard clauses plus the selected soft clauses."""
        assumptions = [self._sel_base + i for i in sorted(active_soft)]
        self.ltur_calls += 1
        return self._solver.solve(assumptions)

    def _restrict_model(self, model: dict[int, int]) -> dict[int, int]:
        return {v: model[v] for v in range(1, self.inst.num_vars + 1)}

    def _soft_ids_of(self, clause_ids, assumptions) -> frozenset[int]:
        ids = set()
        n_guarded = self._num_hard + self.num_soft
        for cid in clause_ids:
            if self._num_hard <= cid < n_guarded:
                ids.add(cid - self._num_hard)
            elif cid >= n_guarded:  # virtual assumption unit
                ids.add(assumptions[cid - n_guarded] - self._sel_base)
        return frozenset(ids)

    def extract_core(self, active_soft):
        """Return the propagation model if the selection is satisfiable,
        else a core drawn from ``active_soft``.

        Raises :class:`HardUnsatError` when the conflict is derived from
        hard clauses alone, which proves the hard part unsatisfiable.
        """
        out = self.check(active_soft)
        if out.status != UNSAT:
            return self._restrict_model(out.model)
        core = self._soft_ids_of(conflict_antecedents(out), out.assumptions)
        if not core:
            raise HardUnsatError("hard clauses are unsatisfiable")
        return Core(core)

    def minimize_to_mus(self, core: Core) -> Mus:
        """Deletion-based minimization, one propagation call per member.

        Members are tried in descending soft id order; a member stays
        dropped when the remainder is still unsatisfiable with the hard
        clauses.
        """
        if self.check(core.soft_ids).status != UNSAT:
            raise ValueError("input is not a core: satisfiable with hard clauses")
        kept = set(core.soft_ids)
        for i in sorted(core.soft_ids, reverse=True):
            kept.discard(i)
            if self.check(kept).status != UNSAT:
                kept.add(i)
        return Mus(frozenset(kept))

    def compute_mcs(self) -> Mcs:
        """Linear-search minimal correction subset over all soft clauses.

        Soft clauses are re-added in id order on top of the hard clauses;
        each clause that breaks satisfiability joins the correction set.
        """
        if self.check(()).status == UNSAT:
            raise HardUnsatError("hard clauses are unsatisfiable")
        included: set[int] = set()
        mcs: list[int] = []
        for i in range(self.num_soft):
            if self.check(included | {i}).status == UNSAT:
                mcs.append(i)
            else:
                included.add(i)
        return Mcs(frozenset(mcs))

    def disjoint_cores(self) -> list[Core]:
        """Greedily extract pairwise-disjoint cores until satisfiable.

        The count is the instance's disjoint-core statistic; the sum over
        cores of the smallest member weight lower-bounds the optimum cost.
        """
        active = set(range(self.num_soft))
        cores: list[Core] = []
        while True:
            result = self.extract_core(active)
            if not isinstance(result, Core):
                return cores
            cores.append(result)
            active -= result.soft_ids

    def cost_lower_bound(self, cores) -> int:
        weights = [w for _, w in self.inst.soft]
        return sum(min(weights[i] for i in core.soft_ids) for core in cores)


def extract_core(inst: WcnfInstance, active_soft):
    return HornAnalyzer(inst).extract_core(active_soft)


def minimize_to_mus(inst: WcnfInstance, core: Core) -> Mus:
    return HornAnalyzer(inst).minimize_to_mus(core)


def compute_mcs(inst: WcnfInstance) -> Mcs:
    return HornAnalyzer(inst).compute_mcs()


def disjoint_cores(inst: WcnfInstance) -> list[Core]:
    return HornAnalyzer(inst).disjoint_cores()
