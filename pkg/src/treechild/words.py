"""Word encoding of maximally reticulated tree-child networks.

A word class over letters 1..n, each letter occurring exactly d+1 times,
subject to a prefix dominance rule: once a letter has appeared more than
d-2 times, it must (in every prefix from then on) have appeared at least
as often as every larger letter.  The number of tree-child networks with
n leaves and the maximal n-1 reticulations equals n! times the number of
such words on n-1 letters.

Words are plain tuples of ints.  The b-table recurrences refine the count
by the shape of the forced suffix and are computed here both as an
integer-only dynamic program and as an exact-rational two-term recurrence
(whose integrality is a correctness oracle for the transcription).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

import numpy as np

from .exact import binomial, factorial


class MalformedWordError(ValueError):
    """Letter multiset does not match the (d, n) contract."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search ran past its configured step budget."""


Word = tuple[int, ...]

DEFAULT_WORD_BUDGET = 50_000_000


def word_to_str(w: Word, n: int) -> str:
    """Digits glued together when n <= 9, comma-separated otherwise."""
    if n <= 9:
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def _check_multiset(w: Word, d: int) -> int:
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    length = len(w)
    if length == 0 or length % (d + 1) != 0:
        raise MalformedWordError(
            f"word length {length} is not a positive multiple of d+1={d + 1}"
        )
    n = length // (d + 1)
    counts = [0] * (n + 1)
    for x in w:
        if not 1 <= x <= n:
            raise MalformedWordError(f"letter {x} outside 1..{n}")
        counts[x] += 1
    bad = [i for i in range(1, n + 1) if counts[i] != d + 1]
    if bad:
        raise MalformedWordError(
            f"letters {bad} do not occur exactly {d + 1} times"
        )
    return n


def first_violation(w: Word, d: int) -> tuple[int, int, int] | None:
    """First prefix failing the dominance rule, as (prefix_len, i, j).

    The witness reads: after prefix_len letters, letter i has occurred
    more than d-2 times yet strictly fewer times than the larger letter j.
    Returns None for members.  Raises MalformedWordError on a bad multiset.
    """
    n = _check_multiset(w, d)
    occ = [0] * (n + 2)
    for pos, x in enumerate(w, start=1):
        occ[x] += 1
        # only letters whose count just changed can newly violate
        if occ[x] >= d - 1:
            for j in range(x + 1, n + 1):
                if occ[j] > occ[x]:
                    return pos, x, j
        for i in range(1, x):
            if occ[i] >= d - 1 and occ[i] < occ[x]:
                return pos, i, x
    return None


def is_member(w: Word, d: int) -> bool:
    """Whether w satisfies the prefix dominance rule for multiplicity d."""
    return first_violation(w, d) is None


def enumerate_words(
    d: int, n: int, budget: int = DEFAULT_WORD_BUDGET
) -> Iterator[Word]:
    """All members on n letters in lexicographic order.

    Prefix-pruned backtracking: a branch is abandoned as soon as its
    prefix violates the dominance rule, so the search touches exactly the
    valid prefixes.  budget caps the number of letter placements tried.
    """
    if d < 2 or n < 1:
        raise ValueError(f"need d >= 2 and n >= 1, got d={d}, n={n}")
    length = n * (d + 1)
    occ = [0] * (n + 2)
    prefix: list[int] = []
    steps = 0

    def extend_ok(x: int) -> bool:
        # occ[x] has already been incremented for the tentative letter
        if occ[x] >= d - 1:
            for j in range(x + 1, n + 1):
                if occ[j] > occ[x]:
                    return False
        for i in range(1, x):
            if occ[i] >= d - 1 and occ[i] < occ[x]:
                return False
        return True

    def walk() -> Iterator[Word]:
        nonlocal steps
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for x in range(1, n + 1):
            if occ[x] == d + 1:
                continue
            steps += 1
            if steps > budget:
                raise BudgetExceeded(
                    f"enumerate_words(d={d}, n={n}) exceeded {budget} steps"
                )
            occ[x] += 1
            prefix.append(x)
            if extend_ok(x):
                yield from walk()
            prefix.pop()
            occ[x] -= 1

    return walk()


def suffix_index(w: Word, d: int) -> int:
    """The unique m such that w ends with the pattern n, m, m+1, ..., n-1, n.

    Scanned from m = n downward so that the degenerate empty middle run
    (pattern n, n) resolves to the largest matching m; this convention
    makes the suffix partition reproduce the b-table.
    """
    n = _check_multiset(w, d)
    if not is_member(w, d):
        raise ValueError("suffix_index is only defined on members")
    for m in range(n, 0, -1):
        pattern = (n,) + tuple(range(m, n)) + (n,)
        if w[-len(pattern):] == pattern:
            return m
    raise AssertionError(f"member without suffix pattern: {w}")


@dataclass
class BTable:
    """Triangular table b(n, m), 1 <= m <= n <= n_max, for fixed d."""

    d: int
    n_max: int
    rows: list[list[int]]  # rows[n][m], row n has length n+1, index 0 unused

    def b(self, n: int, m: int) -> int:
        if n < 1 or m < 1 or m > n or n > self.n_max:
            return 0
        return self.rows[n][m]

    def c(self, n: int) -> int:
        """c_n = sum of b(n, m) over m."""
        if n < 1 or n > self.n_max:
            raise ValueError(f"n={n} outside table range 1..{self.n_max}")
        return sum(self.rows[n][1:])

    def to_csv(self) -> str:
        lines = ["n,k,count"]
        for n in range(1, self.n_max + 1):
            for m in range(1, n + 1):
                lines.append(f"{n},{m},{self.rows[n][m]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "d": self.d,
            "entries": [
                {"n": n, "k": m, "count": str(self.rows[n][m])}
                for n in range(1, self.n_max + 1)
                for m in range(1, n + 1)
            ],
        }
        return json.dumps(payload)


def b_table_int(d: int, n_max: int) -> BTable:
    """Integer-only dynamic program: b(n,m) = C(dn+m-2, d-1) * sum_{j<=m} b(n-1,j)."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    rows: list[list[int]] = [[], [0, 1]]  # b(1,1) = 1
    for n in range(2, n_max + 1):
        prev = rows[n - 1]
        row = [0] * (n + 1)
        acc = 0
        for m in range(1, n + 1):
            if m < len(prev):
                acc += prev[m]
            row[m] = binomial(d * n + m - 2, d - 1) * acc
        rows.append(row)
    return BTable(d=d, n_max=n_max, rows=rows)


def b_table_rational(d: int, n_max: int) -> BTable:
    """Same table via the two-term rational recurrence, exactly.

    b(n,m) = (dn+m-2)/(dn+m-d-1) * b(n,m-1) + C(dn+m-2, d-1) * b(n-1,m).
    Every entry must come out integral; a fractional entry signals a
    transcription bug and raises ArithmeticError.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    rows: list[list[Fraction]] = [[], [Fraction(0), Fraction(1)]]
    for n in range(2, n_max + 1):
        prev = rows[n - 1]
        row = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            above = prev[m] if m < len(prev) else Fraction(0)
            row[m] = (
                Fraction(d * n + m - 2, d * n + m - d - 1) * row[m - 1]
                + binomial(d * n + m - 2, d - 1) * above
            )
        rows.append(row)
    int_rows: list[list[int]] = [[]]
    for n in range(1, n_max + 1):
        out = [0] * (n + 1)
        for m in range(1, n + 1):
            v = rows[n][m]
            if v.denominator != 1:
                raise ArithmeticError(
                    f"non-integral b({n},{m}) = {v} for d={d}"
                )
            out[m] = v.numerator
        int_rows.append(out)
    return BTable(d=d, n_max=n_max, rows=int_rows)


def c_count(d: int, n: int) -> int:
    """Number of words on n letters (row sum of the b-table)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return b_table_int(d, n).c(n)


def tc_max_count(d: int, n: int) -> int:
    """Tree-child networks with n leaves and the maximal n-1 reticulations."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return factorial(n) * c_count(d, n - 1)


def bnn_identity_check(d: int, n: int) -> bool:
    """Check b(n,n) = C((d+1)n - 2, d-1) * c_{n-1}."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    table = b_table_int(d, n)
    return table.b(n, n) == binomial((d + 1) * n - 2, d - 1) * table.c(n - 1)


def c_log_sequence(d: int, n_max: int) -> np.ndarray:
    """ln c_n for n = 1..n_max, exact integer rows with O(row) memory.

    Row n only needs row n-1 (prefix sums), so the full triangular table
    is never held; entry [0] of the result is NaN padding.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    out = np.full(n_max + 1, np.nan)
    prev = [0, 1]
    out[1] = 0.0
    for n in range(2, n_max + 1):
        row = [0] * (n + 1)
        acc = 0
        for m in range(1, n + 1):
            if m < len(prev):
                acc += prev[m]
            row[m] = binomial(d * n + m - 2, d - 1) * acc
        out[n] = math.log(sum(row[1:]))
        prev = row
    return out


def tc_max_count_log(d: int, n: int, log_c: np.ndarray | None = None) -> float:
    """ln tc_max_count(d, n); pass a c_log_sequence to amortize the DP."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if log_c is None:
        log_c = c_log_sequence(d, n - 1)
    return math.lgamma(n + 1) + float(log_c[n - 1])


def cnk_words_count(
    n: int,
    k: int,
    budget: int = DEFAULT_WORD_BUDGET,
    tripled: str = "first",
) -> int:
    """Exploratory d=2 word count with k letters tripled, n-k doubled.

    The prefix rule is the d=2 dominance rule; only the multiplicities
    change.  Which k letters carry three occurrences is a free choice in
    the class description; "first" triples letters 1..k, which is the only
    reading that admits any words at all (a doubled letter smaller than a
    tripled one violates dominance at the full word), so "any" gives the
    same count by summation.  Report-only; nothing asserts on this.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if tripled == "first":
        subsets = [tuple(range(1, k + 1))]
    elif tripled == "last":
        subsets = [tuple(range(n - k + 1, n + 1))]
    elif tripled == "any":
        subsets = list(combinations(range(1, n + 1), k))
    else:
        raise ValueError(f"tripled must be 'first', 'any' or 'last', got {tripled!r}")

    steps = 0
    total = 0
    for subset in subsets:
        mult = [0] + [2] * n
        for x in subset:
            mult[x] = 3
        length = sum(mult)
        occ = [0] * (n + 2)
        prefix_len = 0

        def ok(x: int) -> bool:
            if occ[x] >= 1:  # d-2 = 0 for d = 2
                for j in range(x + 1, n + 1):
                    if occ[j] > occ[x]:
                        return False
            for i in range(1, x):
                if occ[i] >= 1 and occ[i] < occ[x]:
                    return False
            return True

        def walk() -> int:
            nonlocal steps, prefix_len
            if prefix_len == length:
                return 1
            found = 0
            for x in range(1, n + 1):
                if occ[x] == mult[x]:
                    continue
                steps += 1
                if steps > budget:
                    raise BudgetExceeded(
                        f"cnk_words_count(n={n}, k={k}) exceeded {budget} steps"
                    )
                occ[x] += 1
                prefix_len += 1
                if ok(x):
                    found += walk()
                prefix_len -= 1
                occ[x] -= 1
            return found

        total += walk()
    return total
