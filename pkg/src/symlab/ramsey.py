"""Small Ramsey numbers, monochromatic-subset search, the F recursion, and Schur triples.

Every search here is complete and returns the lexicographically least
witness, so results are reproducible across runs and worker counts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Optional, Sequence

from .errors import BudgetExceeded, InvalidInput
from .finset import Colouring, FinSet, fs_key


class Exactness(str, enum.Enum):
    """Provenance of a numeric answer, ordered from strongest to weakest."""

    EXACT = "exact"               # certified by complete enumeration at desk scale
    TABLE = "exact-from-table"    # known exact value, too large to re-enumerate here
    BOUND = "upper-bound"

    @property
    def rank(self) -> int:
        return {"exact": 0, "exact-from-table": 1, "upper-bound": 2}[self.value]


def weakest(*flags: Exactness) -> Exactness:
    return max(flags, key=lambda f: f.rank)


# R(1)..R(4); entries at or below ``ENUMERABLE_M`` are re-verified by
# complete enumeration in the test suite.
_RAMSEY_TABLE = {1: 1, 2: 2, 3: 6, 4: 18}
ENUMERABLE_M = 3


@dataclass(frozen=True)
class RamseyProvider:
    """Answers R(m) queries from a table, falling back to the binomial bound.

    ``max_table_m`` truncates the table, which lets callers observe how
    exactness flags degrade when only small exact values are trusted.
    """

    max_table_m: int = 4

    def ramsey_number(self, m: int) -> tuple:
        if m < 1:
            raise InvalidInput("Ramsey numbers are defined for m >= 1")
        if m in _RAMSEY_TABLE and m <= self.max_table_m:
            flag = Exactness.EXACT if m <= ENUMERABLE_M else Exactness.TABLE
            return _RAMSEY_TABLE[m], flag
        if m > 200_000:
            raise InvalidInput(
                f"the binomial bound at m = {m} is infeasible to materialize; "
                "use the threshold comparison instead"
            )
        return comb(2 * m - 2, m - 1), Exactness.BOUND


DEFAULT_PROVIDER = RamseyProvider()


def ramsey_number(m: int, provider: RamseyProvider = DEFAULT_PROVIDER) -> tuple:
    return provider.ramsey_number(m)


def pair_colouring_has_mono(num_vertices: int, edge_bits: int, m: int) -> bool:
    """Does the 2-colouring of K_n encoded in ``edge_bits`` contain a
    monochromatic K_m?  Edge order: ``itertools.combinations`` over vertices."""
    edge_index = {e: i for i, e in enumerate(combinations(range(num_vertices), 2))}
    for subset in combinations(range(num_vertices), m):
        colours = {(edge_bits >> edge_index[e]) & 1 for e in combinations(subset, 2)}
        if len(colours) == 1:
            return True
    return False


def verify_ramsey_exact(m: int, value: int) -> bool:
    """Certify R(m) = value by complete enumeration of both directions.

    Some colouring of K_{value-1} has no monochromatic K_m, and every
    colouring of K_value has one.  Only feasible for small m.
    """
    below = value - 1
    below_edges = comb(below, 2)
    witness_found = any(
        not pair_colouring_has_mono(below, bits, m) for bits in range(1 << below_edges)
    )
    if not witness_found:
        return False
    at_edges = comb(value, 2)
    return all(pair_colouring_has_mono(value, bits, m) for bits in range(1 << at_edges))


def find_mono_subset(
    c: Colouring,
    m: int,
    budget: Optional[int] = None,
    workers: int = 1,
    colour: Optional[int] = None,
) -> Optional[tuple]:
    """Complete backtracking search for an m-subset whose n-subsets share one colour.

    Returns ``(subset_tuple, colour)`` for the lexicographically least such
    subset, or None when none exists.  ``colour`` restricts the search to
    one target colour.  ``budget`` bounds the number of visited nodes; when
    exceeded the search aborts with BudgetExceeded and the result so far is
    inconclusive.  ``workers`` partitions the search by first element; every
    partition is searched completely and the least witness wins, so the
    answer does not depend on the worker count.
    """
    n = c.arity
    if n is None:
        raise InvalidInput("mono-subset search needs a colouring of fixed arity")
    if not 1 <= n <= m <= c.ground:
        raise InvalidInput(f"need arity <= target size <= ground size, got n={n}, m={m}, N={c.ground}")
    verts = list(range(c.ground))
    counter = [0]

    def step(chosen: list, locked: Optional[int], start: int) -> Optional[tuple]:
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise BudgetExceeded("mono-subset search budget exhausted", partial=tuple(chosen), nodes=counter[0])
        if len(chosen) == m:
            return tuple(chosen), locked
        # enough vertices must remain to finish the subset
        for idx in range(start, len(verts) - (m - len(chosen)) + 1):
            v = verts[idx]
            new_locked = locked
            ok = True
            if len(chosen) >= n - 1:
                for base in combinations(chosen, n - 1):
                    cv = c(frozenset(base) | {v})
                    if new_locked is None:
                        new_locked = cv
                    elif cv != new_locked:
                        ok = False
                        break
            if ok:
                found = step(chosen + [v], new_locked, idx + 1)
                if found is not None:
                    return found
        return None

    if workers <= 1:
        return step([], colour, 0)
    candidates = []
    for w in range(max(1, workers)):
        for idx in range(w, len(verts) - m + 1, workers):
            found = step([verts[idx]], colour, idx + 1)
            if found is not None:
                candidates.append(found)
                break  # later first elements in this chunk are lexicographically larger
    if not candidates:
        return None
    return min(candidates, key=lambda fc: fc[0])


def naive_mono_subset(c: Colouring, m: int) -> Optional[tuple]:
    """Reference oracle: try every m-subset in lexicographic order."""
    n = c.arity
    for subset in combinations(range(c.ground), m):
        colours = {c(frozenset(e)) for e in combinations(subset, n)}
        if len(colours) == 1:
            return subset, colours.pop()
    return None


@lru_cache(maxsize=None)
def f_bound(n: int, k: int, provider: RamseyProvider = DEFAULT_PROVIDER) -> tuple:
    """The recursion F(n,0) = 4, F(n,k+1) = 2^n (R(F(n,k)) - 1) + 2.

    Values are exact integers of arbitrary size; the flag degrades to
    upper-bound as soon as any non-exact Ramsey answer enters.
    """
    if n < 1 or k < 0:
        raise InvalidInput("F is defined for n >= 1, k >= 0")
    if k == 0:
        return 4, Exactness.EXACT
    prev, prev_flag = f_bound(n, k - 1, provider)
    r, r_flag = provider.ramsey_number(prev)
    return (1 << n) * (r - 1) + 2, weakest(prev_flag, r_flag)


def f_bound_exceeds(
    n: int, k: int, threshold: int, provider: RamseyProvider = DEFAULT_PROVIDER
) -> tuple:
    """Decide F(n,k) > threshold without materializing astronomically large values.

    Every provider answer satisfies R(m) >= m, so the recursion is strictly
    increasing in k and the comparison is settled as soon as an intermediate
    value clears the threshold.  Returns (decision, exactness at decision).
    """
    if n < 1 or k < 0:
        raise InvalidInput("F is defined for n >= 1, k >= 0")
    value, flag = 4, Exactness.EXACT
    for _ in range(k):
        if value > threshold:
            return True, flag
        r, r_flag = provider.ramsey_number(value)
        value = (1 << n) * (r - 1) + 2
        flag = weakest(flag, r_flag)
    return value > threshold, flag


def schur_triple(d: Callable[[int], int], bound: int) -> Optional[tuple]:
    """Least monochromatic triple (m, m', m+m') of even numbers up to ``bound``.

    ``m < m'`` is required so the three values are distinct; the scan is
    lexicographic in (m, m').  Returns None when no triple fits.
    """
    if bound < 2:
        raise InvalidInput("bound must admit at least one even number")
    evens = range(2, bound + 1, 2)
    values = {}
    for j in evens:
        v = d(j)
        if v not in (0, 1):
            raise InvalidInput(f"colouring must be 0/1 on even numbers, got d({j}) = {v!r}")
        values[j] = v
    for m in evens:
        for mp in evens:
            if mp <= m or m + mp > bound:
                continue
            if values[m] == values[mp] == values[m + mp]:
                return m, mp, m + mp
    return None


def schur_decompose(triple: Sequence[int]) -> tuple:
    """Rewrite a triple (m, m', m+m') as (n, k) with {n+k, 2k, n+3k} = the triple.

    Requires m > m'/2 so that n = m - m'/2 is positive.
    """
    m, mp, s = triple
    if m % 2 or mp % 2:
        raise InvalidInput("triple members must be even")
    if s != m + mp:
        raise InvalidInput(f"expected (m, m', m+m'), got {triple}")
    k = mp // 2
    n = m - k
    if n < 1:
        raise InvalidInput(f"m = {m} must exceed m'/2 = {k} for a usable decomposition")
    return n, k


def fu_family_search(
    c: Colouring,
    s: int,
    budget: Optional[int] = None,
    workers: int = 1,
) -> Optional[tuple]:
    """Complete search for ``s`` pairwise-disjoint nonempty sets whose
    finite unions are monochromatic under ``c``.

    Members are chosen in canonical order, so the first family found is the
    lexicographically least; monochromaticity of partial unions prunes the
    tree without losing completeness (unions of a subfamily are unions of
    the family).
    """
    if s < 1:
        raise InvalidInput("family size must be positive")
    if c.ground < s:
        raise InvalidInput(f"ground set of size {c.ground} cannot host {s} disjoint nonempty sets")
    subsets = []
    for r in range(1, c.ground + 1):
        subsets.extend(frozenset(t) for t in combinations(range(c.ground), r))
    subsets.sort(key=fs_key)
    counter = [0]

    def step(start: int, chosen: list, used: FinSet, sums: list, locked: Optional[int]) -> Optional[tuple]:
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise BudgetExceeded("finite-unions search budget exhausted", partial=tuple(chosen), nodes=counter[0])
        if len(chosen) == s:
            return tuple(chosen)
        for idx in range(start, len(subsets)):
            y = subsets[idx]
            if y & used:
                continue
            new_sums = [y] + [y | f for f in sums]
            new_locked = locked
            ok = True
            for u in new_sums:
                cv = c(u)
                if new_locked is None:
                    new_locked = cv
                elif cv != new_locked:
                    ok = False
                    break
            if ok:
                found = step(idx + 1, chosen + [y], used | y, sums + new_sums, new_locked)
                if found is not None:
                    return found
        return None

    if workers <= 1:
        return step(0, [], frozenset(), [], None)
    candidates = []
    for w in range(max(1, workers)):
        for idx in range(w, len(subsets), workers):
            y = subsets[idx]
            found = step(idx + 1, [y], y, [y], c(y))
            if found is not None:
                candidates.append(found)
                break
    if not candidates:
        return None
    return min(candidates, key=lambda fam: tuple(fs_key(y) for y in fam))
