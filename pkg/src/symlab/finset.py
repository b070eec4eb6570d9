"""Boolean group of finite atom sets, set families, and the finite sums/unions calculus.

Atoms are non-negative integers drawn from a ground set ``{0..N-1}``.  A
finite set of atoms is represented as a plain ``frozenset`` of ints, so the
group operation is ``^`` and equality is extensional for free.  Everything
here is pure and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from .errors import DomainError, InvalidInput, NotFound

FinSet = frozenset
SetFamily = tuple


def fset(*elements: int) -> FinSet:
    return frozenset(elements)


def fs_key(s: Iterable[int]) -> tuple:
    """Canonical sort key for a set of atoms: its ascending element tuple."""
    return tuple(sorted(s))


def family(*sets) -> SetFamily:
    """A sequence of finite sets, order preserved, duplicates allowed."""
    return tuple(frozenset(s) for s in sets)


def family_key(ys: Iterable[FinSet]) -> tuple:
    return tuple(fs_key(y) for y in ys)


def is_injective_family(ys: Sequence[FinSet]) -> bool:
    return len(set(ys)) == len(ys)


def canon_collection(sets: Iterable[FinSet]) -> tuple:
    """Deduplicate and sort into the canonical (lexicographic) order."""
    return tuple(sorted({frozenset(s) for s in sets}, key=fs_key))


def sym_diff(a: FinSet, b: FinSet) -> FinSet:
    return frozenset(a) ^ frozenset(b)


def sym_diff_all(sets: Iterable[FinSet]) -> FinSet:
    out = frozenset()
    for s in sets:
        out = out ^ s
    return out


@dataclass(frozen=True)
class Colouring:
    """Total 2-valued map on a declared domain of atom sets.

    ``arity=n`` restricts the domain to n-subsets of ``{0..ground-1}``;
    ``arity=None`` admits every finite subset.  The empty set is in the
    domain only when ``allow_empty`` is set.  ``carrier`` optionally
    restricts the domain further to subsets of a fixed atom set.
    """

    ground: int
    arity: Optional[int]
    fn: Callable[[FinSet], int] = field(compare=False)
    name: str = "custom"
    allow_empty: bool = False
    carrier: Optional[FinSet] = None

    def domain_check(self, s: FinSet) -> None:
        if not s and not self.allow_empty:
            raise InvalidInput(f"colouring {self.name!r} is undefined on the empty set")
        if any(a < 0 or a >= self.ground for a in s):
            raise DomainError(f"{fs_key(s)} is not a subset of the ground set 0..{self.ground - 1}")
        if self.carrier is not None and not s <= self.carrier:
            raise DomainError(f"{fs_key(s)} escapes the carrier {fs_key(self.carrier)}")
        if self.arity is not None and len(s) != self.arity:
            raise DomainError(f"colouring {self.name!r} expects {self.arity}-subsets, got size {len(s)}")

    def __call__(self, s: Iterable[int]) -> int:
        s = frozenset(s)
        self.domain_check(s)
        value = self.fn(s)
        if value not in (0, 1):
            raise InvalidInput(f"colouring {self.name!r} returned non-binary value {value!r}")
        return value


def fs_up_to(ys: Sequence[FinSet], k: int) -> tuple:
    """All sums (symmetric differences) of up to ``k`` distinct members of ``ys``.

    The result is deduplicated and canonically ordered.  ``k`` larger than
    the family is harmless: only subfamilies that exist are summed.
    """
    members = tuple(frozenset(y) for y in ys)
    if k < 1:
        raise InvalidInput("number of summands k must be at least 1")
    if not members:
        raise InvalidInput("cannot form sums over an empty family")
    if not is_injective_family(members):
        raise InvalidInput("family must be injective (no repeated members)")
    out = set()
    for r in range(1, min(k, len(members)) + 1):
        for combo in combinations(members, r):
            out.add(sym_diff_all(combo))
    return canon_collection(out)


def fu(ys: Sequence[FinSet]) -> tuple:
    """All unions over nonempty subfamilies of ``ys``, deduplicated."""
    members = tuple({frozenset(y) for y in ys})
    if not members:
        raise InvalidInput("cannot form unions over an empty family")
    out = set()
    for r in range(1, len(members) + 1):
        for combo in combinations(members, r):
            u = frozenset()
            for s in combo:
                u = u | s
            out.add(u)
    return canon_collection(out)


def is_pairwise_disjoint(ys: Sequence[FinSet]) -> bool:
    seen: set = set()
    for y in ys:
        for a in y:
            if a in seen:
                return False
        seen.update(y)
    return True


def disjointify_trace(xs: Sequence[FinSet]) -> tuple:
    """Run the disjointification recursion, keeping the source index of each output.

    ``y_0`` is the first nonempty member; after that, the next output is
    ``x_k`` minus the union built so far, for the least ``k`` whose member
    escapes that union.  Returns ``((k_0, y_0), (k_1, y_1), ...)``.
    """
    seq = tuple(frozenset(x) for x in xs)
    if not is_injective_family(seq):
        raise InvalidInput("input sequence must be injective")
    out = []
    acc: FinSet = frozenset()
    for k, x in enumerate(seq):
        if not x <= acc:
            y = x - acc
            out.append((k, y))
            acc = acc | y
    if not out:
        raise NotFound("every member of the sequence is empty")
    return tuple(out)


def disjointify(xs: Sequence[FinSet]) -> SetFamily:
    return tuple(y for _, y in disjointify_trace(xs))


def is_monochromatic(c: Colouring, sets: Iterable[FinSet]) -> Optional[int]:
    """The common colour of ``sets`` under ``c``, or None if absent/mixed.

    An empty collection yields None: there is no common colour to report.
    """
    colour: Optional[int] = None
    for s in sets:
        v = c(s)
        if colour is None:
            colour = v
        elif v != colour:
            return None
    return colour
