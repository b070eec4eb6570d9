"""Support and orbit machinery over permutation models.

For enumerable models, a declared support is checked against the finite
generator basis of the pointwise stabilizer, and orbits are generator
closures; both are complete at desk scale.  For theory models (dense
chain, random-graph blocks), the stabilizer is realized as the family of
theory-respecting partial injections on exactly the atoms of the queried
object, each certified extendable over the virtual infinite structure.
Support checks first try cheap structural certificates (sets that are
unions of whole atom classes, families closed under member moves) and
fall back to enumerating the injection family.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional

from .errors import BudgetExceeded, IncompleteMap, InvalidInput
from .finset import FinSet
from .hset import HSet, apply_atom_map, atoms_of, is_atom
from .models import (
    ENUMERABLE_KINDS,
    ModelSpec,
    PartialAut,
    stabilizer_generators,
)


def apply_aut(aut, x: HSet) -> HSet:
    """Image of an hereditarily finite set under an atom map.

    Raw dicts are group elements written sparsely (identity off their
    domain).  A PartialAut without ``total_identity`` determines nothing
    off its domain, so every atom of the object must be covered; complete
    the map first if it is not.
    """
    if isinstance(aut, PartialAut):
        if not aut.total_identity:
            missing = atoms_of(x) - set(aut.mapping)
            if missing:
                raise IncompleteMap(f"map leaves atoms {sorted(missing)} undetermined; run the completion first")
        return apply_atom_map(aut.mapping, x, total_identity=aut.total_identity)
    return apply_atom_map(aut, x, total_identity=True)


@dataclass(frozen=True)
class SupportQuery:
    """Does fixing ``support`` pointwise force every model map to fix ``x``?"""

    model: ModelSpec
    support: FinSet
    x: HSet

    def check(self) -> bool:
        return is_support(self.model, self.support, self.x)


# -- theory-model injection families -----------------------------------


def _mostowski_gap_atoms(spec: ModelSpec, fixed_sorted: list) -> dict:
    gaps: dict = {}
    bounds = [-1] + fixed_sorted + [spec.atoms]
    for gid in range(len(bounds) - 1):
        gaps[gid] = [v for v in range(bounds[gid] + 1, bounds[gid + 1])]
    return gaps


def _mostowski_maps(spec: ModelSpec, fixed: FinSet, dom: Iterable[int]):
    """Order-preserving injections of ``dom`` into the chain fixing ``fixed``
    pointwise and staying inside its gaps (restrictions of stabilizer
    elements of the virtual dense chain that keep atoms on atoms)."""
    fixed_sorted = sorted(fixed)
    dom = sorted(dom)
    base = {a: a for a in dom if a in fixed}
    movable = [a for a in dom if a not in fixed]
    by_gap: dict = {}
    for a in movable:
        by_gap.setdefault(bisect.bisect_left(fixed_sorted, a), []).append(a)
    gap_atoms = _mostowski_gap_atoms(spec, fixed_sorted)
    gids = sorted(by_gap)
    choice_lists = [list(combinations(gap_atoms[g], len(by_gap[g]))) for g in gids]
    for choice in product(*choice_lists):
        mapping = dict(base)
        for gid, images in zip(gids, choice):
            for a, img in zip(sorted(by_gap[gid]), images):
                mapping[a] = img
        yield mapping


def _rado_consistent(structure, fixed: FinSet, assigned: dict, a: int, v: int) -> bool:
    from .rado import has_edge, vertex_position

    block = structure.block_index(a)
    anchors = [(b, img) for b, img in assigned.items() if structure.block_index(b) == block]
    anchors.extend((e, e) for e in fixed if structure.block_index(e) == block and e not in assigned)
    if structure.ordered:
        pa = vertex_position(structure, a)
        pv = vertex_position(structure, v)
        for b, img in anchors:
            if (pa < vertex_position(structure, b)) != (pv < vertex_position(structure, img)):
                return False
    for sub in combinations(anchors, structure.arity - 1):
        srcs = frozenset(b for b, _ in sub) | {a}
        if len(srcs) != structure.arity:
            continue
        imgs = frozenset(img for _, img in sub) | {v}
        if has_edge(structure, srcs) != has_edge(structure, imgs):
            return False
    return True


def _rado_maps(spec: ModelSpec, fixed: FinSet, dom: Iterable[int]):
    """Block-preserving partial isomorphisms on ``dom`` fixing ``fixed``
    pointwise (together with the identity on ``fixed`` they preserve the
    hyperedge relation and, when ordered, the order)."""
    from .rado import structure_for

    structure = structure_for(spec)
    dom = sorted(dom)
    fixed = frozenset(fixed)

    def backtrack(i: int, assigned: dict, used: set):
        if i == len(dom):
            yield dict(assigned)
            return
        a = dom[i]
        if a in fixed:
            assigned[a] = a
            yield from backtrack(i + 1, assigned, used)
            del assigned[a]
            return
        for v in structure.block_range(structure.block_index(a)):
            if v in fixed or v in used:
                continue
            if _rado_consistent(structure, fixed, assigned, a, v):
                assigned[a] = v
                used.add(v)
                yield from backtrack(i + 1, assigned, used)
                used.discard(v)
                del assigned[a]

    yield from backtrack(0, {}, set())


def _theory_maps(spec: ModelSpec, fixed: FinSet, dom: Iterable[int]):
    if spec.kind == "mostowski":
        return _mostowski_maps(spec, fixed, dom)
    if spec.kind in ("rado", "ordered-rado"):
        return _rado_maps(spec, fixed, dom)
    raise InvalidInput(f"{spec.kind!r} is not a theory model")


def _member_images(spec: ModelSpec, fixed: FinSet, member: FinSet) -> frozenset:
    return frozenset(
        frozenset(m.get(a, a) for a in member) for m in _theory_maps(spec, fixed, member)
    )


def _is_flat(x: HSet) -> bool:
    return isinstance(x, frozenset) and all(is_atom(c) for c in x)


def _is_flat_family(x: HSet) -> bool:
    return isinstance(x, frozenset) and all(_is_flat(c) for c in x) and bool(x)


def _mostowski_flat_support(spec: ModelSpec, fixed: FinSet, x: FinSet) -> bool:
    movable = set(x) - set(fixed)
    if not movable:
        return True
    for atoms in _mostowski_gap_atoms(spec, sorted(fixed)).values():
        inside = movable & set(atoms)
        if inside and inside != set(atoms):
            return False
    return True


def _rado_profile(spec: ModelSpec, fixed: FinSet, v: int):
    from .rado import has_edge, structure_for, vertex_position

    structure = structure_for(spec)
    block = structure.block_index(v)
    anchors = sorted(e for e in fixed if structure.block_index(e) == block and e != v)
    profile = tuple(
        has_edge(structure, frozenset(t) | {v})
        for t in combinations(anchors, structure.arity - 1)
        if v not in t
    )
    order_slot = None
    if structure.ordered:
        pv = vertex_position(structure, v)
        order_slot = sum(1 for e in anchors if vertex_position(structure, e) < pv)
    return block, profile, order_slot


def _edge_definable_family(spec: ModelSpec, fam: frozenset) -> bool:
    """Is the family exactly the set of all hyperedges of the blocks it
    touches?  Such families are fixed by every block-preserving partial
    isomorphism outright."""
    from .rado import has_edge, structure_for

    structure = structure_for(spec)
    touched = set()
    for member in fam:
        if len(member) != structure.arity:
            return False
        blocks = {structure.block_index(v) for v in member}
        if len(blocks) > 1 or not has_edge(structure, member):
            return False
        touched |= blocks
    full = sum(
        1
        for m in touched
        for t in combinations(structure.block_range(m), structure.arity)
        if has_edge(structure, frozenset(t))
    )
    return full == len(fam)


def _rado_flat_support(spec: ModelSpec, fixed: FinSet, x: FinSet) -> bool:
    from .rado import structure_for

    structure = structure_for(spec)
    movable = set(x) - set(fixed)
    if not movable:
        return True
    classes: dict = {}
    for v in range(structure.vertices):
        if v in fixed:
            continue
        classes.setdefault(_rado_profile(spec, fixed, v), set()).add(v)
    return all(classes[_rado_profile(spec, fixed, v)] <= set(x) for v in movable)


def is_support(spec: ModelSpec, support: FinSet, x: HSet, budget: Optional[int] = None) -> bool:
    """Is every model map fixing ``support`` pointwise guaranteed to fix ``x``?

    Complete for enumerable models.  For theory models the check first
    tries structural certificates: a flat set qualifies when, off the
    support, it is a union of whole atom classes (chain gaps, adjacency
    profiles); a family of flat sets qualifies when it is closed under
    every single-member move.  Failing those, the injection family on the
    object's atoms is enumerated outright.
    """
    support = frozenset(support)
    _check_atoms(spec, support)
    touched = atoms_of(x)
    _check_atoms(spec, touched)
    if not touched:
        return True
    if spec.kind in ENUMERABLE_KINDS:
        return all(apply_aut(g, x) == x for g in stabilizer_generators(spec, support))
    if _is_flat(x):
        if spec.kind == "mostowski":
            return _mostowski_flat_support(spec, support, x)
        return _rado_flat_support(spec, support, x)
    if _is_flat_family(x):
        if spec.kind != "mostowski" and _edge_definable_family(spec, x):
            return True
        if all(img in x for member in x for img in _member_images(spec, support, member)):
            return True
    count = 0
    for mapping in _theory_maps(spec, support, touched):
        count += 1
        if budget is not None and count > budget:
            raise BudgetExceeded("support check budget exhausted", nodes=count)
        if apply_atom_map(mapping, x) != x:
            return False
    return True


def orbit(spec: ModelSpec, support: FinSet, x: HSet, budget: Optional[int] = None) -> frozenset:
    """All images of ``x`` under the stabilizer of ``support``.

    Generator closure for enumerable models; for theory models, the image
    family of the constrained injections on the object's atoms (one pass
    suffices: those injections are closed under composition).
    """
    support = frozenset(support)
    _check_atoms(spec, support)
    _check_atoms(spec, atoms_of(x))
    if spec.kind in ENUMERABLE_KINDS:
        gens = stabilizer_generators(spec, support)
        seen = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = apply_aut(g, y)
                    if z not in seen:
                        if budget is not None and len(seen) >= budget:
                            raise BudgetExceeded("orbit budget exhausted", partial=frozenset(seen), nodes=len(seen))
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
        return frozenset(seen)
    out = set()
    count = 0
    for mapping in _theory_maps(spec, support, atoms_of(x)):
        count += 1
        if budget is not None and count > budget:
            raise BudgetExceeded("orbit budget exhausted", partial=frozenset(out), nodes=count)
        out.add(apply_atom_map(mapping, x))
    return frozenset(out)


def _check_atoms(spec: ModelSpec, atoms: Iterable[int]) -> None:
    bad = [a for a in atoms if a < 0 or a >= spec.atoms]
    if bad:
        raise InvalidInput(f"atoms {bad} are outside the model's pool of {spec.atoms}")
