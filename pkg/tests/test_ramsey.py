"""Ramsey numbers, mono-subset search, the F recursion, Schur triples, and
the finite-unions family search, each against an independent oracle."""

import random
from itertools import combinations

import pytest

from symlab.errors import BudgetExceeded, InvalidInput
from symlab.finset import Colouring, fset, fs_up_to, is_monochromatic, is_pairwise_disjoint
from symlab.ramsey import (
    Exactness,
    RamseyProvider,
    f_bound,
    find_mono_subset,
    fu_family_search,
    naive_mono_subset,
    pair_colouring_has_mono,
    ramsey_number,
    schur_decompose,
    schur_triple,
    verify_ramsey_exact,
)

PROVIDER = RamseyProvider()


def test_ramsey_table_values():
    assert ramsey_number(2) == (2, Exactness.EXACT)
    assert ramsey_number(3) == (6, Exactness.EXACT)
    assert ramsey_number(4) == (18, Exactness.TABLE)
    value, flag = ramsey_number(5)
    assert value == 70 and flag == Exactness.BOUND


def test_ramsey_monotone():
    values = [ramsey_number(m)[0] for m in range(1, 9)]
    assert values == sorted(values)


def test_restricted_provider_degrades():
    small = RamseyProvider(max_table_m=3)
    assert small.ramsey_number(3) == (6, Exactness.EXACT)
    assert small.ramsey_number(4) == (20, Exactness.BOUND)


def test_verify_ramsey_exact_r2():
    assert verify_ramsey_exact(2, 2)


def test_paley_17_has_no_mono_quadruple():
    # quadratic residues mod 17 give a 17-vertex colouring with no
    # one-coloured 4-set in either colour, matching the tabled value 18
    residues = {pow(x, 2, 17) for x in range(1, 17)}
    edges = list(combinations(range(17), 2))
    index = {e: i for i, e in enumerate(edges)}
    bits = 0
    for e in edges:
        if (e[1] - e[0]) % 17 in residues:
            bits |= 1 << index[e]
    assert not pair_colouring_has_mono(17, bits, 4)


def test_find_mono_subset_examples():
    const = Colouring(6, 2, lambda s: 1)
    assert find_mono_subset(const, 4) == ((0, 1, 2, 3), 1)

    parity_sum = Colouring(6, 2, lambda s: sum(s) % 2)
    assert find_mono_subset(parity_sum, 3) == ((0, 2, 4), 0)

    pentagon = {fset(i, (i + 1) % 5) for i in range(5)}
    cycle = Colouring(5, 2, lambda s: 1 if s in pentagon else 0)
    assert find_mono_subset(cycle, 3) is None


def test_find_mono_subset_matches_oracle():
    rng = random.Random(17)
    for _ in range(40):
        ground = rng.randint(3, 7)
        n = rng.randint(1, min(3, ground))
        table = {frozenset(t): rng.randint(0, 1) for t in combinations(range(ground), n)}
        c = Colouring(ground, n, lambda s, t=table: t[s])
        m = rng.randint(n, ground)
        assert find_mono_subset(c, m) == naive_mono_subset(c, m)


def test_find_mono_subset_budget():
    parity_sum = Colouring(7, 2, lambda s: sum(s) % 2)
    with pytest.raises(BudgetExceeded):
        find_mono_subset(parity_sum, 4, budget=2)


def test_find_mono_subset_worker_counts_agree():
    rng = random.Random(23)
    for _ in range(10):
        table = {frozenset(t): rng.randint(0, 1) for t in combinations(range(7), 2)}
        c = Colouring(7, 2, lambda s, t=table: t[s])
        results = {w: find_mono_subset(c, 3, workers=w) for w in (1, 2, 3)}
        assert results[1] == results[2] == results[3]


def test_f_bound_base_and_first_steps():
    for n in range(1, 11):
        assert f_bound(n, 0, PROVIDER) == (4, Exactness.EXACT)
    assert f_bound(1, 1, PROVIDER) == (36, Exactness.TABLE)
    assert f_bound(2, 1, PROVIDER) == (70, Exactness.TABLE)


def test_f_bound_degrades_with_provider():
    small = RamseyProvider(max_table_m=3)
    value, flag = f_bound(1, 1, small)
    assert value == 2 * (20 - 1) + 2 == 40
    assert flag == Exactness.BOUND


def test_f_bound_always_at_least_four():
    for n in range(1, 4):
        for k in range(0, 3):
            value, _ = f_bound(n, k, PROVIDER)
            assert value >= 4


def test_schur_triple_examples():
    assert schur_triple(lambda j: 0, 12) == (2, 4, 6)
    assert schur_triple(lambda j: (j // 2) & 1, 20) == (4, 8, 12)


def brute_schur(d, bound):
    for m in range(2, bound + 1, 2):
        for mp in range(m + 2, bound + 1, 2):
            if m + mp <= bound and d(m) == d(mp) == d(m + mp):
                return (m, mp, m + mp)
    return None


def test_schur_triple_exhaustive_small_bound():
    evens = [2, 4, 6, 8]
    absent = 0
    for bits in range(1 << 4):
        d = lambda j, b=bits: (b >> (j // 2 - 1)) & 1
        got = schur_triple(d, 8)
        assert got == brute_schur(d, 8)
        if got is None:
            absent += 1
        else:
            m, mp, s = got
            assert m < mp and s == m + mp and all(v in evens for v in got)
    assert absent > 0


def test_schur_decompose():
    assert schur_decompose((6, 4, 10)) == (4, 2)
    assert schur_decompose((4, 2, 6)) == (3, 1)
    with pytest.raises(InvalidInput):
        schur_decompose((2, 4, 6))
    with pytest.raises(InvalidInput):
        schur_decompose((3, 4, 7))


def test_schur_pipeline_invariants():
    rng = random.Random(31)
    for _ in range(30):
        table = {j: rng.randint(0, 1) for j in range(2, 41, 2)}
        d = lambda j, t=table: t[j]
        triple = schur_triple(d, 40)
        if triple is None:
            continue
        m, mp, s = triple
        n, k = schur_decompose((mp, m, s))
        assert n >= 1 and k >= 1
        rebuilt = {n + k, 2 * k, n + 3 * k}
        assert rebuilt == {m, mp, s}
        assert all(v % 2 == 0 for v in rebuilt)
        assert len({d(v) for v in rebuilt}) == 1


def all_subsets(ground):
    out = []
    for r in range(1, ground + 1):
        out.extend(frozenset(t) for t in combinations(range(ground), r))
    return out


def brute_fu_family(c, s):
    """Oracle: scan every s-subset of the subset lattice in canonical order."""
    subsets = sorted(all_subsets(c.ground), key=lambda x: tuple(sorted(x)))
    for fam in combinations(subsets, s):
        if not is_pairwise_disjoint(fam):
            continue
        if is_monochromatic(c, fs_up_to(fam, len(fam))) is not None:
            return fam
    return None


def test_fu_family_search_examples():
    zero = Colouring(2, None, lambda s: 0)
    assert fu_family_search(zero, 2) == (fset(0), fset(1))

    table = {fset(0): 0, fset(1): 1, fset(0, 1): 0}
    c = Colouring(2, None, lambda s, t=table: t[s])
    assert fu_family_search(c, 2) is None


def test_fu_family_search_matches_oracle_exhaustively():
    for ground in (2, 3):
        subsets = all_subsets(ground)
        for bits in range(1 << len(subsets)):
            table = {s: (bits >> i) & 1 for i, s in enumerate(subsets)}
            c = Colouring(ground, None, lambda s, t=table: t[s])
            assert fu_family_search(c, 2) == brute_fu_family(c, 2)


def test_fu_family_search_result_properties():
    rng = random.Random(41)
    for _ in range(20):
        ground = rng.randint(3, 5)
        table = {s: rng.randint(0, 1) for s in all_subsets(ground)}
        c = Colouring(ground, None, lambda s, t=table: t[s])
        fam = fu_family_search(c, 2)
        if fam is None:
            continue
        assert is_pairwise_disjoint(fam)
        assert is_monochromatic(c, fs_up_to(fam, len(fam))) is not None


def test_fu_family_search_worker_counts_agree():
    rng = random.Random(43)
    for _ in range(8):
        table = {s: rng.randint(0, 1) for s in all_subsets(4)}
        c = Colouring(4, None, lambda s, t=table: t[s])
        results = {w: fu_family_search(c, 2, workers=w) for w in (1, 2, 3)}
        assert results[1] == results[2] == results[3]


def test_bad_colourings_exist_up_to_ground_four():
    # colour by cardinality with f(1)=0, f(2)=1, f(3)=1, f(4)=0: every
    # disjoint pair sees mixed colours, so two-member families fail
    f = {1: 0, 2: 1, 3: 1, 4: 0}
    c = Colouring(4, None, lambda s: f[len(s)])
    assert fu_family_search(c, 2) is None
