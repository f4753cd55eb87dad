"""Input problem types for the reductions, with line-oriented text formats.

Formats (``#`` and ``c`` lines are comments everywhere):

* graphs: DIMACS edge format, ``p edge <n> <m>`` then ``e <u> <v>`` lines;
* set systems: one set per line as space-separated element ids (1-based);
  the universe is 1..max id unless a ``u <n>`` line declares it;
* knapsack: header ``<n> <capacity>``, then ``<value> <weight>`` per item;
* CSP: ``d <var> <value>...`` domain lines, then ``t <var>=<value> ...``
  lines each listing one disallowed combination;
* plain CNF: DIMACS, ``p cnf <n> <m>`` then 0-terminated clauses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import WcnfParseError


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices 1..n; edges stored as (u, v) with u < v."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in set(self.edges)


def complement(g: Graph) -> Graph:
    present = set(g.edges)
    edges = tuple(
        (u, v)
        for u in range(1, g.n + 1)
        for v in range(u + 1, g.n + 1)
        if (u, v) not in present
    )
    return Graph(g.n, edges)


def parse_graph(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        fields = line.split()
        if fields[0] == "p":
            if len(fields) != 4 or fields[1] != "edge":
                raise WcnfParseError(f"malformed graph header {line!r}", lineno)
            n = int(fields[2])
        elif fields[0] == "e":
            if n is None:
                raise WcnfParseError("edge before 'p edge' header", lineno)
            if len(fields) != 3:
                raise WcnfParseError(f"malformed edge line {line!r}", lineno)
            u, v = int(fields[1]), int(fields[2])
            if u > v:
                u, v = v, u
            if u == v or not 1 <= u <= n or v > n:
                raise WcnfParseError(f"bad edge ({u}, {v})", lineno)
            if (u, v) not in seen:
                seen.add((u, v))
                edges.append((u, v))
        else:
            raise WcnfParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise WcnfParseError("missing 'p edge' header")
    return Graph(n, tuple(edges))


def emit_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SetSystem:
    """A collection of non-empty subsets of {1..universe_size}."""

    universe_size: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        for s in self.sets:
            if not s:
                raise ValueError("empty set in set system")
            for e in s:
                if not 1 <= e <= self.universe_size:
                    raise ValueError(f"element {e} outside 1..{self.universe_size}")


def set_cover_dual(s: SetSystem) -> SetSystem:
    """Transpose a set cover instance into the equivalent hitting set one.

    Covering every element of the universe by chosen sets is hitting, for
    each element, the collection of sets that contain it.
    """
    member_of: dict[int, set[int]] = {e: set() for e in range(1, s.universe_size + 1)}
    for idx, subset in enumerate(s.sets, start=1):
        for e in subset:
            member_of[e].add(idx)
    for e, owners in member_of.items():
        if not owners:
            raise ValueError(f"element {e} is not coverable by any set")
    return SetSystem(
        universe_size=len(s.sets),
        sets=tuple(frozenset(member_of[e]) for e in sorted(member_of)),
    )


def parse_set_system(text: str) -> SetSystem:
    declared = None
    sets: list[frozenset[int]] = []
    max_elem = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        fields = line.split()
        if fields[0] == "u":
            declared = int(fields[1])
            continue
        try:
            elems = [int(tok) for tok in fields]
        except ValueError:
            raise WcnfParseError(f"bad set line {line!r}", lineno) from None
        if any(e < 1 for e in elems):
            raise WcnfParseError("set elements must be positive", lineno)
        max_elem = max(max_elem, *elems)
        sets.append(frozenset(elems))
    if not sets:
        raise WcnfParseError("no sets in input")
    return SetSystem(universe_size=declared or max_elem, sets=tuple(sets))


@dataclass(frozen=True)
class KnapsackInstance:
    values: tuple[int, ...]
    weights: tuple[int, ...]
    capacity: int

    def __post_init__(self):
        if len(self.values) != len(self.weights):
            raise ValueError("values and weights differ in length")
        if any(v <= 0 for v in self.values) or any(w <= 0 for w in self.weights):
            raise ValueError("item values and weights must be positive")
        if self.capacity < 0:
            raise ValueError("capacity must be non-negative")


def parse_knapsack(text: str) -> KnapsackInstance:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        try:
            rows.append(([int(tok) for tok in line.split()], lineno))
        except ValueError:
            raise WcnfParseError(f"bad knapsack line {line!r}", lineno) from None
    if not rows:
        raise WcnfParseError("empty knapsack input")
    header, header_line = rows[0]
    if len(header) != 2:
        raise WcnfParseError("knapsack header must be '<n> <capacity>'", header_line)
    n, capacity = header
    if len(rows) - 1 != n:
        raise WcnfParseError(f"expected {n} item lines, got {len(rows) - 1}")
    values, weights = [], []
    for row, lineno in rows[1:]:
        if len(row) != 2:
            raise WcnfParseError("item line must be '<value> <weight>'", lineno)
        values.append(row[0])
        weights.append(row[1])
    return KnapsackInstance(tuple(values), tuple(weights), capacity)


@dataclass(frozen=True)
class CspInstance:
    """Finite-domain variables plus explicitly disallowed value combinations.

    ``domains[i]`` lists the values of variable i+1; each conflict is a set
    of (variable, value) pairs that must not hold simultaneously.
    """

    domains: tuple[tuple[int, ...], ...]
    conflicts: tuple[frozenset[tuple[int, int]], ...]

    def __post_init__(self):
        for i, dom in enumerate(self.domains):
            if not dom:
                raise ValueError(f"variable {i + 1} has an empty domain")
            if len(set(dom)) != len(dom):
                raise ValueError(f"variable {i + 1} has duplicate domain values")
        for conflict in self.conflicts:
            if not conflict:
                raise ValueError("empty conflict")
            for var, val in conflict:
                if not 1 <= var <= len(self.domains):
                    raise ValueError(f"conflict mentions unknown variable {var}")
                if val not in self.domains[var - 1]:
                    raise ValueError(
                        f"conflict value {val} outside domain of variable {var}"
                    )

    @property
    def num_vars(self) -> int:
        return len(self.domains)


def parse_csp(text: str) -> CspInstance:
    domains: dict[int, tuple[int, ...]] = {}
    conflict_rows: list[tuple[list[tuple[int, int]], int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        fields = line.split()
        if fields[0] == "d":
            if len(fields) < 3:
                raise WcnfParseError("domain line needs a variable and values", lineno)
            var = int(fields[1])
            if var in domains:
                raise WcnfParseError(f"duplicate domain for variable {var}", lineno)
            domains[var] = tuple(int(tok) for tok in fields[2:])
        elif fields[0] == "t":
            pairs = []
            for tok in fields[1:]:
                if "=" not in tok:
                    raise WcnfParseError(f"conflict token {tok!r} is not var=val", lineno)
                var_s, val_s = tok.split("=", 1)
                pairs.append((int(var_s), int(val_s)))
            if not pairs:
                raise WcnfParseError("empty conflict line", lineno)
            conflict_rows.append((pairs, lineno))
        else:
            raise WcnfParseError(f"unrecognized line {line!r}", lineno)
    if not domains:
        raise WcnfParseError("no domain lines in CSP input")
    nvars = max(domains)
    if set(domains) != set(range(1, nvars + 1)):
        raise WcnfParseError(f"domains must cover variables 1..{nvars}")
    try:
        return CspInstance(
            domains=tuple(domains[i] for i in range(1, nvars + 1)),
            conflicts=tuple(frozenset(pairs) for pairs, _ in conflict_rows),
        )
    except ValueError as exc:
        raise WcnfParseError(str(exc)) from None


@dataclass(frozen=True)
class CnfFormula:
    """A plain CNF formula; clauses are tuples of DIMACS literals."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")


def parse_cnf(text: str) -> CnfFormula:
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        fields = line.split()
        if fields[0] == "p":
            if len(fields) != 4 or fields[1] != "cnf":
                raise WcnfParseError(f"malformed CNF header {line!r}", lineno)
            num_vars = int(fields[2])
            continue
        if num_vars is None:
            raise WcnfParseError("clause before 'p cnf' header", lineno)
        if fields[-1] != "0":
            raise WcnfParseError("clause line missing terminating 0", lineno)
        try:
            lits = tuple(int(tok) for tok in fields[:-1])
        except ValueError:
            raise WcnfParseError(f"bad clause line {line!r}", lineno) from None
        if any(lit == 0 or abs(lit) > num_vars for lit in lits):
            raise WcnfParseError("literal out of declared range", lineno)
        clauses.append(lits)
    if num_vars is None:
        raise WcnfParseError("missing 'p cnf' header")
    return CnfFormula(num_vars, tuple(clauses))
