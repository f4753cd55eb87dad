"""Cardinality and pseudo-Boolean constraint clauses that stay Horn.

Only the upper-bound direction is emitted: an assignment to the input
variables extends to the auxiliary counter variables exactly when the
constrained sum is within its bound.  Every clause produced here has at
most one positive literal; this is checked at emission and a violation
raises :class:`EncodingError` rather than silently producing a mixed
formula.

At-most-k methods:

* ``pairwise`` -- conflict clause per variable pair, k = 1 only;
* ``sequential`` -- unary running counter, ``n * k`` auxiliaries;
* ``totalizer`` -- balanced merge tree of unary counts, capped at k + 1.

``encode_pb_leq`` is a weighted unary counter over partial-sum thresholds.
"""

from __future__ import annotations

from typing import Sequence

from .formula import Clause


class EncodingError(ValueError):
    """An encoder produced (or was asked to produce) an invalid clause set."""


class VarPool:
    """Monotone allocator of fresh variable indices."""

    def __init__(self, first_free: int):
        if first_free < 1:
            raise ValueError("first_free must be at least 1")
        self._next = first_free

    def new(self) -> int:
        v = self._next
        self._next += 1
        return v

    @property
    def next_free(self) -> int:
        return self._next


def _horn(*lits: int) -> Clause:
    clause = Clause(lits)
    if not clause.is_horn:
        raise EncodingError(f"emitted a non-Horn clause: {clause!r}")
    return clause


def encode_atmost_k(
    variables: Sequence[int],
    k: int,
    pool: VarPool,
    method: str = "auto",
) -> list[Clause]:
    """Clauses forcing at most ``k`` of ``variables`` to be true.

    ``method`` is ``pairwise`` (k = 1 only), ``sequential``, ``totalizer``,
    or ``auto``: pairwise for k = 1 on up to 30 variables, else sequential.
    """
    variables = list(variables)
    n = len(variables)
    if any(v <= 0 for v in variables):
        raise ValueError("variables must be positive indices")
    if len(set(variables)) != n:
        raise ValueError("duplicate variable in at-most-k input")
    if not 0 <= k <= n:
        raise ValueError(f"bound k={k} outside 0..{n}")

    if method == "auto":
        method = "pairwise" if k == 1 and n <= 30 else "sequential"
    if method == "pairwise" and k != 1:
        raise EncodingError("pairwise encoding only supports k = 1")

    if k == n:
        return []
    if k == 0:
        return [_horn(-v) for v in variables]

    if method == "pairwise":
        return [
            _horn(-variables[i], -variables[j])
            for i in range(n)
            for j in range(i + 1, n)
        ]
    if method == "sequential":
        return _sequential_atmost(variables, k, pool)
    if method == "totalizer":
        clauses: list[Clause] = []
        _totalizer_tree(variables, k, pool, clauses)
        return clauses
    raise ValueError(f"unknown at-most-k method {method!r}")


def _sequential_atmost(xs: list[int], k: int, pool: VarPool) -> list[Clause]:
    # s[i][j] (i in 0..n-2, j in 0..k-1): at least j+1 of x_0..x_i are true.
    n = len(xs)
    clauses: list[Clause] = []
    s = [[pool.new() for _ in range(k)] for _ in range(n - 1)]

    clauses.append(_horn(-xs[0], s[0][0]))
    for j in range(1, k):
        clauses.append(_horn(-s[0][j]))
    for i in range(1, n - 1):
        clauses.append(_horn(-xs[i], s[i][0]))
        clauses.append(_horn(-s[i - 1][0], s[i][0]))
        for j in range(1, k):
            clauses.append(_horn(-xs[i], -s[i - 1][j - 1], s[i][j]))
            clauses.append(_horn(-s[i - 1][j], s[i][j]))
        clauses.append(_horn(-xs[i], -s[i - 1][k - 1]))
    clauses.append(_horn(-xs[n - 1], -s[n - 2][k - 1]))
    return clauses


def _totalizer_tree(
    xs: Sequence[int], k: int, pool: VarPool, clauses: list[Clause]
) -> list[int]:
    """Returns unary counters out[c-1] = "at least c true", c up to min(n, k).

    Merging two children forbids any split summing to k + 1 outright, so no
    separate root bound clause is needed.
    """
    if len(xs) == 1:
        return [xs[0]]
    half = len(xs) // 2
    left = _totalizer_tree(xs[:half], k, pool, clauses)
    right = _totalizer_tree(xs[half:], k, pool, clauses)
    r = min(len(xs), k)
    out = [pool.new() for _ in range(r)]
    for i, lv in enumerate(left[:r]):
        clauses.append(_horn(-lv, out[i]))
    for j, rv in enumerate(right[:r]):
        clauses.append(_horn(-rv, out[j]))
    for i, lv in enumerate(left):
        for j, rv in enumerate(right):
            count = i + j + 2
            if count <= r:
                clauses.append(_horn(-lv, -rv, out[count - 1]))
            elif count == k + 1:
                clauses.append(_horn(-lv, -rv))
    return out


def encode_pb_leq(
    terms: Sequence[tuple[int, int]],
    bound: int,
    pool: VarPool,
) -> list[Clause]:
    """Clauses forcing ``sum(coeff * var) <= bound``, coefficients >= 0.

    Auxiliary ``s[i][j]`` reads "the sum over the first i terms is at least
    j"; each term propagates thresholds forward and trips a conflict clause
    when it would push the sum past the bound.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    cleaned: list[tuple[int, int]] = []
    seen = set()
    for var, coeff in terms:
        if var <= 0:
            raise ValueError("variables must be positive indices")
        if coeff < 0:
            raise ValueError("coefficients must be non-negative")
        if var in seen:
            raise ValueError(f"duplicate variable {var} in PB terms")
        seen.add(var)
        if coeff > 0:
            cleaned.append((var, coeff))

    clauses: list[Clause] = []
    prev: dict[int, int] = {}  # threshold j -> aux var for the prefix so far
    total = 0
    for idx, (var, coeff) in enumerate(cleaned):
        if coeff > bound:
            clauses.append(_horn(-var))
            continue
        total += coeff
        top = min(total, bound)
        cur: dict[int, int] = {}
        for j in range(1, top + 1):
            cur[j] = pool.new()
        for j in range(1, min(coeff, top) + 1):
            clauses.append(_horn(-var, cur[j]))
        for j, pv in prev.items():
            if j in cur:
                clauses.append(_horn(-pv, cur[j]))
            if j + coeff <= top:
                clauses.append(_horn(-var, -pv, cur[j + coeff]))
        overflow = bound + 1 - coeff
        if overflow in prev:
            clauses.append(_horn(-var, -prev[overflow]))
        prev = cur
    return clauses
