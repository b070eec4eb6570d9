"""Support and orbit semantics across the permutation models."""

import random

import pytest

from symlab.errors import BudgetExceeded
from symlab.finset import fset
from symlab.fm import SupportQuery, apply_aut, is_support, orbit
from symlab.hset import encode_family, ordinal
from symlab.models import (
    fraenkel1,
    fraenkel2,
    grid_model,
    mostowski,
    omega_fraenkel,
    rado_model,
)


def test_fraenkel2_support_examples():
    f2 = fraenkel2(12)
    assert is_support(f2, frozenset(), frozenset((6, 7)))      # a whole pair
    assert not is_support(f2, frozenset(), fset(6))            # half a pair
    assert is_support(f2, fset(7), fset(6))                    # mate pinned


def test_orbit_fraenkel1():
    f1 = fraenkel1(6)
    orb = orbit(f1, fset(0), fset(0, 1))
    assert len(orb) == 5
    assert orb == frozenset(fset(0, b) for b in range(1, 6))
    assert orbit(f1, frozenset(), ordinal(2)) == frozenset((ordinal(2),))


def test_grid_orbit_cell():
    g = grid_model(3, 3)
    assert len(orbit(g, frozenset(), fset(g.grid_id(1, 1)))) == 9


def test_support_monotone_random():
    rng = random.Random(2)
    specs = [fraenkel1(8), fraenkel2(12), omega_fraenkel(3, 4), grid_model(3, 4), mostowski(8)]
    for _ in range(150):
        spec = rng.choice(specs)
        small = frozenset(rng.sample(range(spec.atoms), rng.randint(0, 3)))
        extra = frozenset(rng.sample(range(spec.atoms), rng.randint(0, 3)))
        big = small | extra
        atoms = rng.sample(range(spec.atoms), rng.randint(1, 4))
        if rng.random() < 0.5:
            x = frozenset(atoms)
        else:
            half = len(atoms) // 2 or 1
            x = frozenset((frozenset(atoms[:half]), frozenset(atoms[half:]) or frozenset(atoms)))
        if is_support(spec, small, x):
            assert is_support(spec, big, x)


def test_support_implies_singleton_orbit():
    rng = random.Random(6)
    specs = [fraenkel1(8), fraenkel2(12), omega_fraenkel(3, 4), mostowski(8)]
    for _ in range(80):
        spec = rng.choice(specs)
        support = frozenset(rng.sample(range(spec.atoms), rng.randint(0, 4)))
        x = frozenset(rng.sample(range(spec.atoms), rng.randint(1, 3)))
        if is_support(spec, support, x):
            assert orbit(spec, support, x) == frozenset((x,))


def test_apply_aut_preserves_membership():
    swap = {0: 1, 1: 0}
    inner = frozenset((0, 2))
    outer = frozenset((inner, frozenset((1,))))
    image = apply_aut(swap, outer)
    assert apply_aut(swap, inner) in image


def test_orbit_budget():
    f1 = fraenkel1(8)
    with pytest.raises(BudgetExceeded):
        orbit(f1, frozenset(), fset(0, 1), budget=3)


def test_mostowski_supports():
    mo = mostowski(10)
    assert not is_support(mo, frozenset(), fset(2))
    assert is_support(mo, fset(2), fset(2))
    # a complete gap between pinned atoms is stable as a set
    assert is_support(mo, fset(1, 5), frozenset((2, 3, 4)))
    assert not is_support(mo, fset(1, 5), frozenset((2, 3)))
    assert is_support(mo, frozenset(), frozenset(range(10)))
    assert len(orbit(mo, frozenset(), fset(0, 1))) == 45


def test_mostowski_family_support():
    mo = mostowski(8)
    pairs = encode_family(orbit(mo, frozenset(), fset(0, 1)))
    assert is_support(mo, frozenset(), pairs)


def test_rado_flat_support_class_union():
    spec = rado_model(2, 32)
    from symlab.fm import _rado_profile

    support = fset(1)
    cls = frozenset(
        v for v in range(32)
        if v not in support and _rado_profile(spec, support, v) == _rado_profile(spec, support, 2)
    )
    assert is_support(spec, support, cls)
    assert not is_support(spec, support, cls - {min(cls)})


def test_rado_edge_family_support():
    spec = rado_model(2, 16, demand_size=0)
    from symlab.rado import adjacent, structure_for
    from itertools import combinations

    structure = structure_for(spec)
    edges = frozenset(
        frozenset((u, v)) for u, v in combinations(range(16), 2) if adjacent(structure, u, v)
    )
    assert is_support(spec, frozenset(), edges)


def test_support_query_wrapper():
    q = SupportQuery(fraenkel2(8), frozenset(), frozenset((0, 1)))
    assert q.check()
