"""Propositional data model: clauses, weighted CNF instances, WCNF file I/O.

Literals follow the DIMACS convention: a literal is a non-zero integer,
``v`` for the positive literal of variable ``v`` and ``-v`` for its
negation.  Variables are numbered from 1.

A clause is *Horn* if it contains at most one positive literal; it is a
*goal* clause with zero positive literals and a *definite* clause with
exactly one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class WcnfParseError(ValueError):
    """Malformed WCNF/CNF input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def var_of(lit: int) -> int:
    """Variable index of a literal."""
    return lit if lit > 0 else -lit


def negate(lit: int) -> int:
    """Complement of a literal; an involution."""
    return -lit


class Clause:
    """An immutable, duplicate-free disjunction of literals.

    Literals are stored sorted by variable index, which makes equality and
    hashing structural.  Duplicate literals are dropped with a warning;
    a clause containing both ``l`` and ``-l`` is rejected outright.
    """

    __slots__ = ("lits",)

    def __init__(self, lits: Iterable[int]):
        seen: dict[int, int] = {}
        dups = False
        for lit in lits:
            if not isinstance(lit, int) or lit == 0:
                raise ValueError(f"invalid literal {lit!r}")
            v = var_of(lit)
            prev = seen.get(v)
            if prev is None:
                seen[v] = lit
            elif prev == lit:
                dups = True
            else:
                raise ValueError(f"tautological clause: contains {prev} and {lit}")
        if dups:
            warnings.warn("duplicate literal dropped from clause", stacklevel=2)
        object.__setattr__(self, "lits", tuple(seen[v] for v in sorted(seen)))

    def __setattr__(self, name, value):
        raise AttributeError("Clause is immutable")

    def __iter__(self) -> Iterator[int]:
        return iter(self.lits)

    def __len__(self) -> int:
        return len(self.lits)

    def __eq__(self, other) -> bool:
        return isinstance(other, Clause) and self.lits == other.lits

    def __hash__(self) -> int:
        return hash(self.lits)

    def __repr__(self) -> str:
        return f"Clause({list(self.lits)})"

    @property
    def positive_count(self) -> int:
        return sum(1 for lit in self.lits if lit > 0)

    @property
    def is_goal(self) -> bool:
        return self.positive_count == 0

    @property
    def is_definite(self) -> bool:
        return self.positive_count == 1

    @property
    def is_horn(self) -> bool:
        return self.positive_count <= 1

    def max_var(self) -> int:
        return max((var_of(lit) for lit in self.lits), default=0)


def is_horn(clause: Clause) -> bool:
    """True iff the clause has at most one positive literal."""
    return clause.is_horn


@dataclass(frozen=True)
class WcnfInstance:
    """A weighted partial CNF instance: hard clauses plus weighted softs.

    ``top`` is the hard-clause weight sentinel and must exceed the sum of
    all soft weights.  Instances are immutable after construction and safe
    to share between threads or processes.
    """

    num_vars: int
    hard: tuple[Clause, ...]
    soft: tuple[tuple[Clause, int], ...]
    top: int

    def __post_init__(self):
        object.__setattr__(self, "hard", tuple(self.hard))
        object.__setattr__(self, "soft", tuple(self.soft))
        total = 0
        for clause, weight in self.soft:
            if weight <= 0:
                raise ValueError(f"soft clause weight must be positive, got {weight}")
            total += weight
        if self.top <= total:
            raise ValueError(
                f"top weight {self.top} must exceed total soft weight {total}"
            )
        for clause in self.hard:
            if clause.max_var() > self.num_vars:
                raise ValueError(
                    f"clause {clause!r} uses a variable above num_vars={self.num_vars}"
                )
        for clause, _ in self.soft:
            if clause.max_var() > self.num_vars:
                raise ValueError(
                    f"clause {clause!r} uses a variable above num_vars={self.num_vars}"
                )

    @classmethod
    def from_clauses(
        cls,
        num_vars: int,
        hard: Iterable[Clause],
        soft: Iterable[tuple[Clause, int]] = (),
    ) -> "WcnfInstance":
        """Build an instance, choosing ``top`` = total soft weight + 1."""
        soft = tuple(soft)
        top = sum(w for _, w in soft) + 1
        return cls(num_vars=num_vars, hard=tuple(hard), soft=soft, top=top)

    @property
    def soft_weight_total(self) -> int:
        return sum(w for _, w in self.soft)

    @property
    def is_horn_instance(self) -> bool:
        return all(c.is_horn for c in self.hard) and all(
            c.is_horn for c, _ in self.soft
        )


def is_horn_instance(inst: WcnfInstance) -> bool:
    return inst.is_horn_instance


# Assignments are plain dicts: variable index -> 0/1, total over 1..num_vars.
Assignment = dict


def evaluate(inst: WcnfInstance, assignment: dict[int, int]) -> tuple[bool, int, int]:
    """Evaluate an instance under a total assignment.

    Returns ``(hard_ok, satisfied_soft_weight, falsified_soft_weight)``.
    Raises ``ValueError`` if the assignment does not cover every variable.
    """
    for v in range(1, inst.num_vars + 1):
        if assignment.get(v) not in (0, 1):
            raise ValueError(f"assignment is not total: variable {v} unassigned")

    def sat(clause: Clause) -> bool:
        for lit in clause.lits:
            if lit > 0:
                if assignment[lit] == 1:
                    return True
            elif assignment[-lit] == 0:
                return True
        return False

    hard_ok = all(sat(c) for c in inst.hard)
    satisfied = 0
    falsified = 0
    for clause, weight in inst.soft:
        if sat(clause):
            satisfied += weight
        else:
            falsified += weight
    return hard_ok, satisfied, falsified


def _parse_clause_lits(
    tokens: Sequence[str], num_vars: int | None, lineno: int
) -> Clause:
    if not tokens or tokens[-1] != "0":
        raise WcnfParseError("clause line missing terminating 0", lineno)
    lits = []
    for tok in tokens[:-1]:
        try:
            lit = int(tok)
        except ValueError:
            raise WcnfParseError(f"bad literal {tok!r}", lineno) from None
        if lit == 0:
            raise WcnfParseError("unexpected 0 inside clause", lineno)
        if num_vars is not None and var_of(lit) > num_vars:
            raise WcnfParseError(
                f"literal {lit} out of declared range 1..{num_vars}", lineno
            )
        lits.append(lit)
    try:
        return Clause(lits)
    except ValueError as exc:
        raise WcnfParseError(str(exc), lineno) from None


def parse_wcnf(text: str | bytes) -> WcnfInstance:
    """Parse a WCNF instance.

    Two dialects are accepted:

    * classic: ``p wcnf <nvars> <nclauses> <top>`` header, then one clause
      per line as ``<weight> <lit>... 0``; weight equal to ``top`` marks a
      hard clause;
    * header-less (2022 style): lines are ``h <lit>... 0`` for hard clauses
      and ``<weight> <lit>... 0`` for soft ones.

    The dialect is auto-detected by the presence of the ``p`` line.
    Comment lines start with ``c``.
    """
    if isinstance(text, bytes):
        text = text.decode()

    header: tuple[int, int, int] | None = None
    header_line = 0
    body: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise WcnfParseError("duplicate header line", lineno)
            if body:
                raise WcnfParseError("header must precede all clauses", lineno)
            fields = line.split()
            if len(fields) != 5 or fields[1] != "wcnf":
                raise WcnfParseError(f"malformed header {line!r}", lineno)
            try:
                nvars, nclauses, top = int(fields[2]), int(fields[3]), int(fields[4])
            except ValueError:
                raise WcnfParseError(f"malformed header {line!r}", lineno) from None
            if nvars < 0 or nclauses < 0 or top <= 0:
                raise WcnfParseError(f"malformed header {line!r}", lineno)
            header = (nvars, nclauses, top)
            header_line = lineno
            continue
        body.append((lineno, line.split()))

    hard: list[Clause] = []
    soft: list[tuple[Clause, int]] = []

    if header is not None:
        num_vars, nclauses, top = header
        for lineno, tokens in body:
            try:
                weight = int(tokens[0])
            except ValueError:
                raise WcnfParseError(f"bad clause weight {tokens[0]!r}", lineno) from None
            clause = _parse_clause_lits(tokens[1:], num_vars, lineno)
            if weight > top:
                raise WcnfParseError(f"weight {weight} exceeds top {top}", lineno)
            if weight == top:
                hard.append(clause)
            elif weight > 0:
                soft.append((clause, weight))
            else:
                raise WcnfParseError(f"non-positive soft weight {weight}", lineno)
        if len(body) != nclauses:
            warnings.warn(
                f"header declares {nclauses} clauses but {len(body)} were read",
                stacklevel=2,
            )
        try:
            return WcnfInstance(num_vars=num_vars, hard=tuple(hard), soft=tuple(soft), top=top)
        except ValueError as exc:
            raise WcnfParseError(str(exc), header_line) from None

    # Header-less dialect: infer num_vars, compute a fresh top.
    max_var = 0
    for lineno, tokens in body:
        if tokens[0] == "h":
            clause = _parse_clause_lits(tokens[1:], None, lineno)
            hard.append(clause)
        else:
            try:
                weight = int(tokens[0])
            except ValueError:
                raise WcnfParseError(f"bad clause weight {tokens[0]!r}", lineno) from None
            if weight <= 0:
                raise WcnfParseError(f"non-positive soft weight {weight}", lineno)
            clause = _parse_clause_lits(tokens[1:], None, lineno)
            soft.append((clause, weight))
        max_var = max(max_var, clause.max_var())
    top = sum(w for _, w in soft) + 1
    return WcnfInstance(num_vars=max_var, hard=tuple(hard), soft=tuple(soft), top=top)


def emit_wcnf(inst: WcnfInstance, dialect: str = "wcnf-classic") -> str:
    """Serialize an instance deterministically, hard clauses first.

    ``dialect`` is ``"wcnf-classic"`` (default, with the ``p wcnf`` header)
    or ``"wcnf-2022"`` (header-less, ``h``-prefixed hard clauses).
    """
    def row(prefix: str, clause: Clause) -> str:
        return " ".join([prefix, *map(str, clause.lits), "0"])

    lines: list[str] = []
    if dialect == "wcnf-classic":
        nclauses = len(inst.hard) + len(inst.soft)
        lines.append(f"p wcnf {inst.num_vars} {nclauses} {inst.top}")
        lines.extend(row(str(inst.top), c) for c in inst.hard)
        lines.extend(row(str(w), c) for c, w in inst.soft)
    elif dialect == "wcnf-2022":
        lines.extend(row("h", c) for c in inst.hard)
        lines.extend(row(str(w), c) for c, w in inst.soft)
    else:
        raise ValueError(f"unknown dialect {dialect!r}")
    return "\n".join(lines) + "\n"
