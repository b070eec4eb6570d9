"""Oracles for the finite-sums equivalences: cardinality injectivity, the
four-summand monochromaticity checks and counting bound, one induction step
of the intersection-growing argument, pushforward colourings, star families,
and the grid pipeline from Schur triples to three-summand families."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Sequence

from .colourings import log2_colour_value
from .errors import InvalidInput, NotFound
from .finset import (
    Colouring,
    FinSet,
    SetFamily,
    fs_key,
    fs_up_to,
    is_injective_family,
    is_monochromatic,
    is_pairwise_disjoint,
)
from .ramsey import RamseyProvider, DEFAULT_PROVIDER, f_bound_exceeds, find_mono_subset, schur_decompose, schur_triple


@dataclass(frozen=True)
class ViolationReport:
    """A concrete refutation: the witnesses re-verify it when re-evaluated."""

    kind: str
    witnesses: tuple
    details: dict = field(compare=False, default_factory=dict)


def reverify_violation(v: ViolationReport) -> bool:
    """Recompute the violation from its witnesses alone."""
    if v.kind == "disjoint-equal-cardinality-pair":
        x, y = v.witnesses
        return not (x & y) and len(x) == len(y) and log2_colour_value(len(x | y)) != log2_colour_value(len(x))
    if v.kind == "colour-mismatch":
        x, y = v.witnesses
        return log2_colour_value(len(x)) != log2_colour_value(len(y))
    if v.kind == "bound-breach":
        exceeds, _ = f_bound_exceeds(v.details["n"], v.details["n"], v.details["count"])
        return not exceeds
    raise InvalidInput(f"unknown violation kind {v.kind!r}")


def cardinality_injectivity_check(ys: SetFamily) -> Optional[ViolationReport]:
    """First pair of distinct members with equal cardinality, if any.

    For a pairwise-disjoint family such a pair forces a colour flip on its
    union under the log2 colouring, so two-summand monochromaticity fails.
    """
    members = tuple(frozenset(y) for y in ys)
    if not is_injective_family(members):
        raise InvalidInput("family must be injective")
    if not is_pairwise_disjoint(members):
        raise InvalidInput("family must be pairwise disjoint")
    ordered = sorted(members, key=fs_key)
    for x, y in combinations(ordered, 2):
        if len(x) == len(y):
            return ViolationReport(
                "disjoint-equal-cardinality-pair",
                (x, y),
                details={
                    "cardinality": len(x),
                    "colour_members": log2_colour_value(len(x)),
                    "colour_union": log2_colour_value(len(x | y)),
                },
            )
    return None


def fs4_mono_check(ys: SetFamily) -> Optional[ViolationReport]:
    """Is the four-summand sum set monochromatic under the log2 colouring?

    The empty set can arise as a sum of three or more distinct members
    (e.g. {1,2} ^ {2,3} ^ {1,3}); it carries no log2 colour and is skipped.
    Members themselves must be nonempty.
    """
    members = tuple(frozenset(y) for y in ys)
    if not is_injective_family(members):
        raise InvalidInput("family must be injective")
    if any(not y for y in members):
        raise InvalidInput("members must be nonempty (the log2 colour is undefined on the empty set)")
    sums = [s for s in fs_up_to(members, 4) if s]
    base = sums[0]
    base_colour = log2_colour_value(len(base))
    for s in sums[1:]:
        if log2_colour_value(len(s)) != base_colour:
            return ViolationReport(
                "colour-mismatch",
                (base, s),
                details={"colour_base": base_colour, "colour_other": 1 - base_colour},
            )
    return None


def fs4_count_bound(ys: SetFamily, n: int, provider: RamseyProvider = DEFAULT_PROVIDER) -> Optional[ViolationReport]:
    """Assertable form of the counting lemma: fewer than F(n,n) members of size n.

    Callable only on families that pass ``fs4_mono_check``.  The comparison
    runs against the recursion without materializing its value (already at
    n = 3 that value is too large to write down); at desk scale the bound
    is astronomically generous, so a breach signals corrupted input rather
    than an interesting family.
    """
    if fs4_mono_check(ys) is not None:
        raise InvalidInput("count bound applies only to four-summand-monochromatic families")
    count = sum(1 for y in ys if len(y) == n)
    exceeds, flag = f_bound_exceeds(n, n, count, provider)
    if exceeds:
        return None
    return ViolationReport(
        "bound-breach",
        tuple(sorted((y for y in ys if len(y) == n), key=fs_key)),
        details={"count": count, "exactness": flag.value, "n": n},
    )


def fs4_induction_step(
    ys: SetFamily,
    n: int,
    k: int,
    provider: RamseyProvider = DEFAULT_PROVIDER,
) -> Optional[SetFamily]:
    """One intersection-growing step on a family of n-sets meeting pairwise in >= k points.

    Picks the least member y0, buckets the rest by their trace on y0, and
    searches the largest bucket for a subfamily whose differences outside
    the shared trace r pairwise meet (then intersections properly contain r)
    or pairwise miss while |r| > k (then intersections equal r).  Returns
    None when the family is too small to run the step.

    The caller promises monochromatic sums of up to four members; what the
    step validates is that promise's checkable two-summand consequence,
    namely that no two members are disjoint (disjoint equal-size members
    force a colour flip on their sum).  A pairwise-missing subfamily of
    four or more members with |r| = k re-derives exactly such a flip, so
    it raises.
    """
    members = tuple(frozenset(y) for y in ys)
    if not is_injective_family(members):
        raise InvalidInput("family must be injective")
    if any(len(y) != n for y in members):
        raise InvalidInput(f"all members must have cardinality {n}")
    for x, y in combinations(members, 2):
        if len(x & y) < max(k, 1):
            if not x & y:
                raise InvalidInput(
                    f"members {fs_key(x)} and {fs_key(y)} are disjoint, so sums of two "
                    "members cannot be monochromatic"
                )
            raise InvalidInput(f"members {fs_key(x)} and {fs_key(y)} meet in fewer than {k} points")
    if len(members) < 3:
        return None
    ordered = sorted(members, key=fs_key)
    y0 = ordered[0]
    buckets: dict = {}
    for y in ordered[1:]:
        buckets.setdefault(y & y0, []).append(y)
    # largest bucket wins; ties go to the least trace
    best_size = max(len(v) for v in buckets.values())
    r = min((rv for rv in buckets if len(buckets[rv]) == best_size), key=fs_key)
    bucket = sorted(buckets[r], key=fs_key)
    if len(bucket) < 2:
        return None
    edge = {
        frozenset((i, j)): 1 if (bucket[i] - r) & (bucket[j] - r) else 0
        for i, j in combinations(range(len(bucket)), 2)
    }
    d = Colouring(len(bucket), 2, lambda e: edge[e], name="shared-trace-overlap")
    for m in range(len(bucket), 1, -1):
        found = find_mono_subset(d, m, colour=1)
        if found is not None:
            idxs, _ = found
            return tuple(bucket[i] for i in idxs)
        found = find_mono_subset(d, m, colour=0)
        if found is not None:
            idxs, _ = found
            if len(r) > k:
                return tuple(bucket[i] for i in idxs)
            if m >= 4:
                # four n-sets meeting pairwise exactly in r give two disjoint
                # equal-size sums, which the mono precondition forbids
                raise InvalidInput("pairwise-missing quadruple found despite monochromatic sums")
    return None


def pushforward_colouring(c: Colouring, ys: Sequence[FinSet]) -> Colouring:
    """Colour an index set by ``c`` of the union of the indexed blocks."""
    blocks = tuple(frozenset(y) for y in ys)
    if not blocks:
        raise InvalidInput("need at least one block")
    if any(not y for y in blocks):
        raise InvalidInput("blocks must be nonempty")
    if not is_pairwise_disjoint(blocks):
        raise InvalidInput("blocks must be pairwise disjoint")

    def fn(idx: FinSet) -> int:
        u: FinSet = frozenset()
        for i in idx:
            u = u | blocks[i]
        return c(u)

    return Colouring(len(blocks), None, fn, name=f"pushforward({c.name})")


def push_family(ys: Sequence[FinSet], index_family: Sequence[FinSet]) -> SetFamily:
    """Lift an index family to the blocks it names: each member becomes the
    union of its indexed blocks."""
    blocks = tuple(frozenset(y) for y in ys)
    out = []
    for idx in index_family:
        u: FinSet = frozenset()
        for i in idx:
            u = u | blocks[i]
        out.append(u)
    return tuple(out)


def star_family(z_set: FinSet, z: int) -> SetFamily:
    """All doubletons through ``z`` inside ``z_set``.

    Sums of at most two members stay inside the 2-subsets of ``z_set``:
    two distinct doubletons through z differ symmetrically in a doubleton
    avoiding z.
    """
    z_set = frozenset(z_set)
    if z not in z_set:
        raise InvalidInput(f"{z} is not a member of the base set")
    if len(z_set) < 2:
        raise InvalidInput("base set needs at least two elements")
    return tuple(sorted((frozenset((z, y)) for y in z_set - {z}), key=fs_key))


def grid_cell(i: int, j: int, cols: int) -> int:
    return i * cols + j


def schur_to_fs3(
    g: Callable[[int], int],
    bound: int,
    rows: int,
    cols: int,
    size: int,
) -> tuple:
    """From a cardinality colouring to a verified three-summand-monochromatic family.

    Finds the least monochromatic even triple (a, b, a+b) under ``g``, sets
    k = a/2 and n = b - k (the larger member plays the row role so n >= 1),
    and builds ``size`` grid sets sharing an n-cell prefix of row 0 plus a
    k-cell segment of a private row.  Distinct members x, y, z then satisfy
    |x| = n+k, |x^y| = 2k and |x^y^z| = n+3k, so sums of up to three members
    all land on the monochromatic triple.  The family and its colour are
    returned after re-checking monochromaticity directly.
    """
    if size < 3:
        raise InvalidInput("family size must be at least 3 for three-summand sums")
    triple = schur_triple(g, bound)
    if triple is None:
        raise NotFound(f"no monochromatic even triple up to {bound}")
    a, b, _ = triple
    n, k = schur_decompose((b, a, a + b))
    if rows < size + 1:
        raise InvalidInput(f"grid needs {size + 1} rows, has {rows}")
    if cols < n + k:
        raise InvalidInput(f"grid needs {n + k} columns, has {cols}")
    prefix = frozenset(grid_cell(0, j, cols) for j in range(n))
    members = []
    for i in range(1, size + 1):
        segment = frozenset(grid_cell(i, j, cols) for j in range(n, n + k))
        members.append(prefix | segment)
    family = tuple(members)
    for x, y, z in combinations(family, 3):
        if not (len(x) == n + k and len(x ^ y) == 2 * k and len(x ^ y ^ z) == n + 3 * k):
            raise InvalidInput("grid family lost its cardinality profile; check grid dimensions")
    card_colouring = Colouring(rows * cols, None, lambda s: g(len(s)), name="by-cardinality")
    colour = is_monochromatic(card_colouring, fs_up_to(family, 3))
    if colour is None:
        raise InvalidInput("constructed family failed the direct monochromaticity re-check")
    return family, colour, {"triple": triple, "n": n, "k": k}


def brute_force_even_triple(g: Callable[[int], int], bound: int) -> Optional[tuple]:
    """Independent oracle for monochromatic even triples: full scan of all
    unordered pairs, ordered by sum then first member."""
    hits = []
    for a in range(2, bound + 1, 2):
        for b in range(a + 2, bound + 1, 2):
            if a + b <= bound and g(a) == g(b) == g(a + b):
                hits.append((a + b, a, b))
    if not hits:
        return None
    s, a, b = min(hits)
    return a, b, s


def exhaustive_fs4_disjoint_base(ground: int, max_card: int, max_members: int) -> list:
    """Scan every family of equal-cardinality sets for a monochromatic
    counterexample containing two disjoint members.

    Families of up to ``max_members`` subsets of ``{0..ground-1}`` with a
    common cardinality up to ``max_card`` are enumerated as bitmasks; a
    family counts as a counterexample when all its sums of up to four
    members (the empty sum excluded) share a log2 colour and yet two
    members are disjoint.  The expected result is an empty list.
    """
    violations = []
    for card in range(1, max_card + 1):
        masks = [sum(1 << a for a in t) for t in combinations(range(ground), card)]
        for r in range(1, max_members + 1):
            for combo in combinations(masks, r):
                sums = []
                for take in range(1, min(4, r) + 1):
                    for sub in combinations(combo, take):
                        acc = 0
                        for mm in sub:
                            acc ^= mm
                        if acc:
                            sums.append(acc)
                colour = (sums[0].bit_count().bit_length() - 1) & 1
                if any((s.bit_count().bit_length() - 1) & 1 != colour for s in sums[1:]):
                    continue
                if any(x & y == 0 for x, y in combinations(combo, 2)):
                    violations.append(tuple(combo))
    return violations
