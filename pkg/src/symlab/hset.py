"""Hereditarily finite sets over atoms.

An HSet is either an atom (a plain int) or a ``frozenset`` of HSets, so
extensional equality, hashing, and recursion come from Python itself.
Pure sets (no atoms in the transitive closure) are fixed by every atom
map.  Colours and indices entering encoded objects are represented as
von Neumann ordinals, which are pure and therefore invariant.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Union

from .errors import IncompleteMap, InvalidInput
from .finset import Colouring, FinSet

HSet = Union[int, frozenset]

EMPTY: frozenset = frozenset()


def is_atom(x: HSet) -> bool:
    return isinstance(x, int)


def atoms_of(x: HSet) -> FinSet:
    """Atoms in the transitive closure of ``x``."""
    if is_atom(x):
        return frozenset((x,))
    out: set = set()
    stack = [x]
    while stack:
        node = stack.pop()
        for child in node:
            if is_atom(child):
                out.add(child)
            else:
                stack.append(child)
    return frozenset(out)


def is_pure(x: HSet) -> bool:
    return not atoms_of(x)


def apply_atom_map(mapping: dict, x: HSet, total_identity: bool = False) -> HSet:
    """Image of ``x`` under an atom map, applied recursively at set nodes.

    With ``total_identity`` unset, every atom of the transitive closure
    must be in the map's domain; atoms a map says nothing about have no
    determined image.
    """
    if is_atom(x):
        if x in mapping:
            return mapping[x]
        if total_identity:
            return x
        raise IncompleteMap(f"atom {x} is outside the map's domain; complete the map first")
    return frozenset(apply_atom_map(mapping, child, total_identity) for child in x)


@lru_cache(maxsize=None)
def ordinal(n: int) -> frozenset:
    """The von Neumann ordinal n as a pure HSet."""
    if n < 0:
        raise InvalidInput("ordinals are non-negative")
    if n == 0:
        return EMPTY
    prev = ordinal(n - 1)
    return prev | frozenset((prev,))


def kuratowski(a: HSet, b: HSet) -> frozenset:
    """The ordered pair (a, b) as {{a}, {a, b}}."""
    return frozenset((frozenset((a,)), frozenset((a, b))))


def encode_finset(s: Iterable[int]) -> frozenset:
    return frozenset(s)


def encode_family(ys: Iterable[FinSet]) -> frozenset:
    return frozenset(frozenset(y) for y in ys)


def encode_colour(i: int) -> frozenset:
    return ordinal(i)


def encode_colouring(c: Colouring) -> frozenset:
    """Graph of the colouring as a set of Kuratowski pairs (set, colour).

    Only colourings of fixed arity have a finite graph to encode.
    """
    from itertools import combinations

    if c.arity is None:
        raise InvalidInput("only fixed-arity colourings are encoded as graphs")
    pairs = []
    universe = sorted(c.carrier) if c.carrier is not None else range(c.ground)
    for t in combinations(universe, c.arity):
        s = frozenset(t)
        pairs.append(kuratowski(s, encode_colour(c(s))))
    return frozenset(pairs)


def encode_indexed_sequence(items: Iterable[HSet]) -> frozenset:
    """The sequence <x_0, x_1, ...> as its graph {(ordinal(i), x_i)}."""
    return frozenset(kuratowski(ordinal(i), x) for i, x in enumerate(items))


def hset_key(x: HSet):
    """Deterministic total order on HSets: atoms first by id, then sets by
    sorted child keys.  Used for canonical serialization."""
    if is_atom(x):
        return (0, x)
    return (1, tuple(sorted(hset_key(child) for child in x)))


def to_jsonable(x: HSet):
    """Atoms become ints, sets become sorted lists; unambiguous round trip."""
    if is_atom(x):
        return x
    return [to_jsonable(child) for child in sorted(x, key=hset_key)]


def from_jsonable(obj) -> HSet:
    if isinstance(obj, int):
        return obj
    if isinstance(obj, list):
        return frozenset(from_jsonable(child) for child in obj)
    raise InvalidInput(f"cannot decode {type(obj).__name__} as a hereditarily finite set")
