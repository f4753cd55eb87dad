"""Exact minimum-weight hitting set over collections of soft-clause id sets.

Branch and bound over element bitmasks.  Branching picks the first unhit
set in a fixed order (ascending size, then lexicographic by smallest ids)
and splits on one of its elements: include it in the hitting set, or forbid
it everywhere.  Forbidding shrinks sets; sets shrunk to a single live
element force that element, and sets shrunk to nothing close the branch.

The lower bound combines two element-disjoint arguments:

* groups of two-element sets forming a clique on ``q`` elements need at
  least the ``q`` cheapest... precisely, total weight minus the heaviest
  member (a hitting set can miss at most one clique element);
* remaining sets that are pairwise element-disjoint each need their
  cheapest live element.

The upper bound seeding is a weighted greedy cover.  All tie-breaking is
by smallest element id, so solutions are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class HittingSet:
    elements: frozenset[int]
    cost: int


class HsProblem:
    """Weighted universe plus a growing, internally deduplicated set list."""

    def __init__(self, universe: Mapping[int, int], sets: Iterable[Iterable[int]] = ()):
        self.universe: dict[int, int] = {}
        for elem, weight in universe.items():
            if weight <= 0:
                raise ValueError(f"element weight must be positive, got {weight}")
            self.universe[int(elem)] = int(weight)
        self.sets: list[frozenset[int]] = []
        self._seen: set[frozenset[int]] = set()
        self.nodes_explored = 0  # cumulative branch-and-bound nodes
        for s in sets:
            self.add_set(s)

    def add_set(self, s: Iterable[int]) -> "HsProblem":
        s = frozenset(s)
        if not s:
            raise ValueError("cannot add an empty set")
        missing = s - self.universe.keys()
        if missing:
            raise ValueError(f"set elements {sorted(missing)} not in universe")
        if s not in self._seen:
            self._seen.add(s)
            self.sets.append(s)
        return self


def add_set(p: HsProblem, s: Iterable[int]) -> HsProblem:
    return p.add_set(s)


def solve_min_hs(p: HsProblem) -> HittingSet:
    """Exact minimum-weight hitting set; empty input yields the empty set."""
    if not p.sets:
        return HittingSet(frozenset(), 0)
    solver = _Search(p)
    elements, cost = solver.run()
    p.nodes_explored += solver.nodes
    return HittingSet(elements, cost)


class _Search:
    def __init__(self, p: HsProblem):
        self.elems = sorted(p.universe)
        self.pos = {e: i for i, e in enumerate(self.elems)}
        self.w = [p.universe[e] for e in self.elems]
        n = len(self.elems)

        masks = []
        for s in p.sets:
            m = 0
            for e in s:
                m |= 1 << self.pos[e]
            masks.append(m)
        # Static branch order: small sets first, then smallest ids first.
        masks.sort(key=lambda m: (m.bit_count(), m))
        self.masks = masks
        self.nsets = len(masks)

        self.set_elems: list[list[int]] = [_bits(m) for m in masks]
        self.elem_sets: list[list[int]] = [[] for _ in range(n)]
        for sid, members in enumerate(self.set_elems):
            for e in members:
                self.elem_sets[e].append(sid)

        self.hit_count = [0] * self.nsets
        self.live_size = [len(members) for members in self.set_elems]
        self.unhit_deg = [len(sids) for sids in self.elem_sets]
        self.chosen_mask = 0
        self.forbidden_mask = 0
        self.cost = 0
        self.nodes = 0
        self.best_cost: int | None = None
        self.best_mask = 0

    # -- state transitions, all O(degree), all journaled by the caller --

    def _choose(self, e: int):
        self.chosen_mask |= 1 << e
        self.cost += self.w[e]
        for sid in self.elem_sets[e]:
            c = self.hit_count[sid]
            self.hit_count[sid] = c + 1
            if c == 0:
                for m in self.set_elems[sid]:
                    self.unhit_deg[m] -= 1

    def _unchoose(self, e: int):
        self.chosen_mask &= ~(1 << e)
        self.cost -= self.w[e]
        for sid in self.elem_sets[e]:
            c = self.hit_count[sid] - 1
            self.hit_count[sid] = c
            if c == 0:
                for m in self.set_elems[sid]:
                    self.unhit_deg[m] += 1

    def _forbid(self, e: int, forced: list[int]) -> bool:
        """Returns False on a wiped-out unhit set (dead branch)."""
        self.forbidden_mask |= 1 << e
        ok = True
        for sid in self.elem_sets[e]:
            self.live_size[sid] -= 1
            if self.hit_count[sid] == 0:
                if self.live_size[sid] == 0:
                    ok = False
                elif self.live_size[sid] == 1:
                    live = self.masks[sid] & ~self.forbidden_mask
                    forced.append(live.bit_length() - 1)
        return ok

    def _unforbid(self, e: int):
        self.forbidden_mask &= ~(1 << e)
        for sid in self.elem_sets[e]:
            self.live_size[sid] += 1

    # -- bounds --

    def _lower_bound(self, ptr: int) -> int:
        adj: dict[int, int] = {}
        bigs: list[int] = []
        forb = self.forbidden_mask
        for sid in range(ptr, self.nsets):
            if self.hit_count[sid]:
                continue
            live = self.masks[sid] & ~forb
            if live.bit_count() == 2:
                a = (live & -live).bit_length() - 1
                b = live.bit_length() - 1
                adj[a] = adj.get(a, 0) | (1 << b)
                adj[b] = adj.get(b, 0) | (1 << a)
            else:
                bigs.append(live)
        lb = 0
        used = 0
        for a in sorted(adj):
            if used >> a & 1:
                continue
            cand = adj[a] & ~used
            if not cand:
                continue
            total = self.w[a]
            heaviest = self.w[a]
            cmask = 1 << a
            while cand:
                # Grow by the candidate that keeps most of the candidate set
                # alive; bigger cliques mean a stronger bound.
                best_v = -1
                best_surv = -1
                rest = cand
                while rest:
                    v = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    surv = (adj[v] & cand).bit_count()
                    if surv > best_surv:
                        best_surv = surv
                        best_v = v
                v = best_v
                cmask |= 1 << v
                total += self.w[v]
                if self.w[v] > heaviest:
                    heaviest = self.w[v]
                cand &= adj[v]  # v itself is never in adj[v]
            used |= cmask
            lb += total - heaviest
        for live in bigs:
            if live & used:
                continue
            used |= live
            lb += min(self.w[e] for e in _bits(live))
        return lb

    def _greedy_disjoint_bound(self) -> int:
        # The plain pairwise-disjoint bound; used for the sanity sandwich.
        lb = 0
        used = 0
        for sid in range(self.nsets):
            if self.hit_count[sid]:
                continue
            live = self.masks[sid] & ~self.forbidden_mask
            if live and not live & used:
                used |= live
                lb += min(self.w[e] for e in _bits(live))
        return lb

    def _greedy_cover(self) -> tuple[int, int] | None:
        """Weighted greedy cover on top of the current partial choice."""
        deg = list(self.unhit_deg)
        hit = list(self.hit_count)
        unhit_left = sum(1 for sid in range(self.nsets) if not hit[sid])
        mask = self.chosen_mask
        cost = self.cost
        forb = self.forbidden_mask
        while unhit_left:
            best_e = -1
            bd = 0
            bw = 1
            for e in range(len(self.elems)):
                if forb >> e & 1 or mask >> e & 1:
                    continue
                d = deg[e]
                # maximize d/w exactly: d * bw > bd * w
                if d > 0 and d * bw > bd * self.w[e]:
                    bd = d
                    bw = self.w[e]
                    best_e = e
            if best_e < 0:
                return None  # some unhit set has no live elements
            mask |= 1 << best_e
            cost += self.w[best_e]
            for sid in self.elem_sets[best_e]:
                if hit[sid] == 0:
                    unhit_left -= 1
                    for m in self.set_elems[sid]:
                        deg[m] -= 1
                hit[sid] += 1
        return mask, cost

    # -- search --

    def run(self) -> tuple[frozenset[int], int]:
        forced: list[int] = []
        for sid in range(self.nsets):
            if self.live_size[sid] == 1:
                forced.append(self.set_elems[sid][0])
        applied: list[int] = []
        dead = not self._apply_forced(forced, applied)
        if dead:
            raise ValueError("unhittable set collection")  # cannot happen: no forbids yet

        root_lb = self._lower_bound(0)
        plain_lb = self._greedy_disjoint_bound()
        greedy = self._greedy_cover()
        assert greedy is not None
        self.best_mask, self.best_cost = greedy

        self._node(0, root_lb)

        result = frozenset(self.elems[e] for e in _bits(self.best_mask))
        # Sanity sandwich: both bounds must bracket the optimum found.
        assert plain_lb <= self.best_cost <= greedy[1]
        assert root_lb <= self.best_cost
        return result, self.best_cost

    def _apply_forced(self, forced: list[int], applied: list[int]) -> bool:
        while forced:
            e = forced.pop()
            if self.chosen_mask >> e & 1:
                continue
            if self.forbidden_mask >> e & 1:
                return False
            self._choose(e)
            applied.append(e)
        return True

    def _node(self, ptr: int, lb_hint: int):
        """``lb_hint`` is a certified underestimate of this node's true lower
        bound (choosing or dropping an element can lower the bound by at
        most that element's weight), so pruning on it is sound and saves a
        recomputation on most dive steps."""
        self.nodes += 1
        if self.cost + lb_hint >= self.best_cost:
            return
        lb = self._lower_bound(ptr)
        if self.cost + lb >= self.best_cost:
            return
        while ptr < self.nsets and self.hit_count[ptr]:
            ptr += 1
        if ptr == self.nsets:
            if self.cost < self.best_cost:
                self.best_cost = self.cost
                self.best_mask = self.chosen_mask
            return

        live = self.masks[ptr] & ~self.forbidden_mask
        # Branch element: hits the most currently-unhit sets, smallest id ties.
        best_e = -1
        bd = -1
        for e in _bits(live):
            if self.unhit_deg[e] > bd:
                bd = self.unhit_deg[e]
                best_e = e
        e = best_e

        # Exclude-and-forbid first: optima leave out few elements, so guessing
        # the left-out ones reaches (and certifies) solutions at small depth,
        # with the forced cascade doing most of the work.
        forced: list[int] = []
        applied: list[int] = []
        if self._forbid(e, forced) and self._apply_forced(forced, applied):
            cascade = sum(self.w[a] for a in applied)
            self._node(ptr, lb - self.w[e] - cascade)
        for a in reversed(applied):
            self._unchoose(a)
        self._unforbid(e)

        self._choose(e)
        self._node(ptr, lb - self.w[e])
        self._unchoose(e)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
