"""Boolean-group core: symmetric difference, sums/unions, disjointification."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symlab.errors import InvalidInput, NotFound
from symlab.finset import (
    Colouring,
    disjointify,
    disjointify_trace,
    family,
    fs_up_to,
    fset,
    fu,
    is_monochromatic,
    is_pairwise_disjoint,
    sym_diff,
    sym_diff_all,
)

finsets = st.frozensets(st.integers(min_value=0, max_value=9), max_size=6)


def brute_fs_up_to(members, k):
    """Independent oracle: xor over every subfamily of size <= k."""
    out = set()
    for r in range(1, min(k, len(members)) + 1):
        for combo in combinations(members, r):
            acc = frozenset()
            for s in combo:
                acc = acc ^ s
            out.add(acc)
    return out


def test_sym_diff_examples():
    assert sym_diff(fset(1, 2), fset(2, 3)) == fset(1, 3)
    assert sym_diff(fset(1, 2), fset(1, 2)) == fset()
    assert sym_diff(fset(1, 2), fset()) == fset(1, 2)


def test_boolean_group_axioms_exhaustive_small():
    universe = [frozenset(s) for r in range(4) for s in combinations(range(3), r)]
    for a in universe:
        assert a ^ a == frozenset()
        assert a ^ frozenset() == a
        for b in universe:
            assert a ^ b == b ^ a
            for c in universe:
                assert (a ^ b) ^ c == a ^ (b ^ c)


@given(finsets, finsets, finsets)
def test_boolean_group_axioms_random(a, b, c):
    assert sym_diff(a, b) == sym_diff(b, a)
    assert sym_diff(sym_diff(a, b), c) == sym_diff(a, sym_diff(b, c))
    assert sym_diff(a, a) == frozenset()


def test_fs_up_to_examples():
    singles = family(fset(1), fset(2), fset(3))
    assert set(fs_up_to(singles, 2)) == {
        fset(1), fset(2), fset(3), fset(1, 2), fset(1, 3), fset(2, 3)
    }
    assert set(fs_up_to(family(fset(1, 2), fset(2, 3)), 2)) == {
        fset(1, 2), fset(2, 3), fset(1, 3)
    }


def test_fs_up_to_disjoint_doubletons():
    doubletons = family(fset(0, 1), fset(2, 3), fset(4, 5), fset(6, 7))
    sums = fs_up_to(doubletons, 4)
    assert len(sums) == 15
    assert set(sums) == brute_fs_up_to(doubletons, 4)


def test_fs_up_to_monotone_in_k():
    ys = family(fset(0, 1), fset(1, 2), fset(3), fset(2, 4))
    chains = [set(fs_up_to(ys, k)) for k in range(1, len(ys) + 1)]
    for small, large in zip(chains, chains[1:]):
        assert small <= large


def test_fs_up_to_rejects_bad_input():
    with pytest.raises(InvalidInput):
        fs_up_to(family(), 1)
    with pytest.raises(InvalidInput):
        fs_up_to(family(fset(1)), 0)
    with pytest.raises(InvalidInput):
        fs_up_to(family(fset(1), fset(1)), 1)


def test_fu_examples():
    assert set(fu(family(fset(1), fset(2, 3)))) == {fset(1), fset(2, 3), fset(1, 2, 3)}
    assert set(fu(family(fset(1, 2), fset(2)))) == {fset(1, 2), fset(2)}
    with pytest.raises(InvalidInput):
        fu(family())


def test_fu_counts_for_disjoint_families():
    # 2^|Y| - 1 distinct unions once members are pairwise disjoint
    pool = [fset(0, 1), fset(2), fset(3, 4, 5), fset(6), fset(7, 8)]
    for size in range(1, 6):
        ys = family(*pool[:size])
        assert len(fu(ys)) == 2 ** size - 1


def test_fu_equals_fs_for_disjoint_families():
    ys = family(fset(0), fset(1, 2), fset(3, 4, 5))
    assert set(fu(ys)) == set(fs_up_to(ys, len(ys)))


def test_is_pairwise_disjoint():
    assert is_pairwise_disjoint(family(fset(1), fset(2)))
    assert not is_pairwise_disjoint(family(fset(1, 2), fset(2, 3)))
    assert is_pairwise_disjoint(family())


def test_disjointify_hand_traces():
    assert disjointify(family(fset(1, 2), fset(2, 3), fset(1, 2, 3), fset(4))) == (
        fset(1, 2), fset(3), fset(4)
    )
    assert disjointify(family(fset(), fset(5))) == (fset(5),)
    with pytest.raises(NotFound):
        disjointify(family(fset()))


def test_disjointify_trace_indices_increase():
    trace = disjointify_trace(family(fset(1, 2), fset(2, 3), fset(1, 2, 3), fset(4)))
    indices = [k for k, _ in trace]
    assert indices == sorted(indices) and len(set(indices)) == len(indices)


@settings(max_examples=200)
@given(st.lists(finsets, max_size=8, unique=True))
def test_disjointify_properties(xs):
    xs = tuple(xs)
    if all(not x for x in xs):
        with pytest.raises((NotFound, InvalidInput)):
            disjointify(xs)
        return
    out = disjointify(xs)
    assert all(out)
    assert is_pairwise_disjoint(out)
    for y in out:
        assert any(y <= x for x in xs)
    acc = frozenset()
    for x in xs:
        acc = acc | x
    assert sym_diff_all(out) <= acc


def test_is_monochromatic():
    const = Colouring(10, None, lambda s: 0, name="zero")
    assert is_monochromatic(const, [fset(1), fset(2, 3)]) == 0
    assert is_monochromatic(const, []) is None
    log2ish = Colouring(10, None, lambda s: (len(s).bit_length() - 1) & 1)
    assert is_monochromatic(log2ish, [fset(1), fset(2, 3)]) is None
