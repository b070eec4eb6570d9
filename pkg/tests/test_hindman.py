"""Finite-sums oracles: injectivity of cardinalities, four-summand checks,
the induction step, pushforwards, star families, and the grid pipeline."""

import random
from itertools import combinations

import pytest

from symlab.colourings import log2_colouring
from symlab.errors import InvalidInput, NotFound
from symlab.finset import Colouring, family, fs_up_to, fset, is_monochromatic, is_pairwise_disjoint
from symlab.hindman import (
    brute_force_even_triple,
    cardinality_injectivity_check,
    exhaustive_fs4_disjoint_base,
    fs4_count_bound,
    fs4_induction_step,
    fs4_mono_check,
    pushforward_colouring,
    push_family,
    reverify_violation,
    schur_to_fs3,
    star_family,
)


def test_cardinality_injectivity_check():
    hit = cardinality_injectivity_check(family(fset(1, 2), fset(3, 4)))
    assert hit is not None and hit.kind == "disjoint-equal-cardinality-pair"
    assert reverify_violation(hit)
    assert hit.details["colour_members"] != hit.details["colour_union"]

    assert cardinality_injectivity_check(family(fset(1), fset(2, 3), fset(4, 5, 6, 7))) is None
    assert cardinality_injectivity_check(family(fset(1, 2))) is None
    with pytest.raises(InvalidInput):
        cardinality_injectivity_check(family(fset(1, 2), fset(2, 3)))


def test_fs4_mono_check():
    hit = fs4_mono_check(family(fset(1, 2), fset(3, 4)))
    assert hit is not None and reverify_violation(hit)

    hit = fs4_mono_check(family(fset(1), fset(1, 2)))
    assert hit is not None
    assert set(hit.witnesses) == {fset(1), fset(1, 2)}

    assert fs4_mono_check(family(fset(1, 2, 3))) is None
    with pytest.raises(InvalidInput):
        fs4_mono_check(family(fset(), fset(1)))


def test_fs4_mono_check_skips_cancelling_sums():
    # three pairwise-overlapping doubletons whose triple sum is empty: the
    # empty sum carries no colour and the family still counts as constant
    fam = family(fset(1, 2), fset(2, 3), fset(1, 3))
    assert fs4_mono_check(fam) is None


def test_fs4_count_bound():
    fam = family(fset(1, 2), fset(2, 3), fset(1, 3))
    for n in (1, 2, 3):
        assert fs4_count_bound(fam, n) is None
    with pytest.raises(InvalidInput):
        fs4_count_bound(family(fset(1, 2), fset(3, 4)), 2)


def test_fs4_count_bound_randomized_never_breaches():
    rng = random.Random(7)
    tried = 0
    for _ in range(200):
        size = rng.randint(1, 3)
        card = rng.randint(1, 3)
        members = set()
        while len(members) < size:
            members.add(frozenset(rng.sample(range(10), card)))
        fam = tuple(members)
        if fs4_mono_check(fam) is not None:
            continue
        tried += 1
        for n in range(1, 4):
            assert fs4_count_bound(fam, n) is None
    assert tried > 10


def test_fs4_induction_step_shared_point():
    fam = family(fset(1, 2), fset(1, 3), fset(1, 4))
    out = fs4_induction_step(fam, 2, 0)
    assert out is not None and len(out) >= 2
    for x, y in combinations(out, 2):
        assert len(x & y) >= 1


def test_fs4_induction_step_rejects_disjoint_family():
    fam = family(fset(1, 2), fset(3, 4), fset(5, 6), fset(7, 8))
    with pytest.raises(InvalidInput):
        fs4_induction_step(fam, 2, 1)
    with pytest.raises(InvalidInput):
        fs4_induction_step(fam, 2, 0)


def test_symmetric_difference_cardinality_identity():
    # |y1 ^ y2| = 2(n - |r|) whenever |y1| = |y2| = n and y1 & y2 = r
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(2, 6)
        overlap = rng.randint(0, n - 1)
        shared = set(range(overlap))
        y1 = frozenset(shared | set(range(10, 10 + n - overlap)))
        y2 = frozenset(shared | set(range(30, 30 + n - overlap)))
        assert y1 & y2 == frozenset(shared)
        assert len(y1 ^ y2) == 2 * (n - overlap)


def test_pushforward_colouring():
    c = log2_colouring(10)
    d = pushforward_colouring(c, (fset(1), fset(2)))
    assert d(fset(0)) == 0
    assert d(fset(0, 1)) == 1
    const = Colouring(10, None, lambda s: 1)
    d2 = pushforward_colouring(const, (fset(1), fset(2), fset(3)))
    assert all(d2(frozenset(t)) == 1 for r in (1, 2, 3) for t in combinations(range(3), r))
    with pytest.raises(InvalidInput):
        pushforward_colouring(c, (fset(1), fset(1, 2)))


def test_pushforward_witness_transfer_exhaustive():
    blocks = (fset(0, 1), fset(2), fset(3, 4, 5), fset(6))
    c = log2_colouring(8)
    d = pushforward_colouring(c, blocks)
    index_sets = [frozenset(t) for r in (1, 2, 3, 4) for t in combinations(range(4), r)]
    for size in (1, 2, 3):
        for fam in combinations(index_sets, size):
            if not is_pairwise_disjoint(fam):
                continue
            colour = is_monochromatic(d, fs_up_to(fam, len(fam)))
            if colour is None:
                continue
            lifted = push_family(blocks, fam)
            assert is_monochromatic(c, fs_up_to(lifted, len(lifted))) == colour


def test_star_family():
    fam = star_family(fset(1, 2, 3), 1)
    assert fam == (fset(1, 2), fset(1, 3))
    assert set(fs_up_to(fam, 2)) == {fset(1, 2), fset(1, 3), fset(2, 3)}
    assert star_family(fset(4, 9), 9) == (fset(4, 9),)
    with pytest.raises(InvalidInput):
        star_family(fset(1, 2), 5)


def test_star_family_containment_sample():
    base = fset(0, 2, 4, 6)
    for z in base:
        sums = fs_up_to(star_family(base, z), 2)
        assert all(len(s) == 2 and s <= base for s in sums)


def test_schur_to_fs3_constant():
    fam, colour, trace = schur_to_fs3(lambda j: 0, 12, 6, 30, 4)
    assert colour == 0 and len(fam) == 4
    assert trace["triple"] == (2, 4, 6)
    assert trace["n"] + trace["k"] == 4  # larger member of the pair
    card = Colouring(180, None, lambda s: 0)
    assert is_monochromatic(card, fs_up_to(fam, 3)) == 0


def test_schur_to_fs3_parity_log2():
    g = lambda j: (j.bit_length() - 1) & 1
    fam, colour, trace = schur_to_fs3(g, 64, 6, 64, 4)
    card = Colouring(6 * 64, None, lambda s: g(len(s)))
    assert is_monochromatic(card, fs_up_to(fam, 3)) == colour


def test_schur_to_fs3_not_found_matches_oracle():
    # a colouring of {2,...,8} with no monochromatic triple
    table = {2: 0, 4: 1, 6: 1, 8: 0}
    g = lambda j: table[j]
    assert brute_force_even_triple(g, 8) is None
    with pytest.raises(NotFound):
        schur_to_fs3(g, 8, 6, 30, 4)


def test_schur_to_fs3_grid_too_small():
    with pytest.raises(InvalidInput):
        schur_to_fs3(lambda j: 0, 12, 3, 30, 4)


def test_exhaustive_fs4_disjoint_base_small():
    assert exhaustive_fs4_disjoint_base(6, 2, 3) == []
