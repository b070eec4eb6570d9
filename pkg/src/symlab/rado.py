"""Deterministic and seeded random-graph structures with the extension property.

The graph case rides the BIT predicate (lower vertex's bit inside the
higher one), which realizes every finite adjacency demand inside a large
enough vertex range with no randomness at all.  Hypergraphs of arity three
and up have no comparably simple arithmetic rule, so they are generated
from a seed and then repaired: every adjacency demand up to a declared
size receives a dedicated witness vertex, and the final structure is
certified by re-enumerating all those demands.  Ordered variants place
vertices on a dense dyadic order (bit-reversal positions) so witnesses can
be requested inside any prescribed interval.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, NoExtension
from .finset import fs_key
from .models import ModelSpec


def bit_edge(i: int, j: int) -> bool:
    """Adjacency of the deterministic graph: with i < j, bit i of j."""
    if i == j:
        raise InvalidInput("the graph is irreflexive")
    lo, hi = (i, j) if i < j else (j, i)
    if lo < 0:
        raise InvalidInput("vertices are non-negative")
    return (hi >> lo) & 1 == 1


# Weyl step (odd, near 2^32 over the golden ratio): consecutive ids land far
# apart and no adjacency bit pins a position bit
_WEYL = 2654435761
_WEYL_DEN = 1 << 32


@dataclass(frozen=True)
class RadoStructure:
    """A (possibly blocked, possibly ordered) arity-n structure on ``vertices``.

    ``hyperedges`` is None exactly for arity 2, where the BIT rule decides
    adjacency from vertex ids local to each block.  ``certified_demand`` is
    the largest demand size the build verified exhaustively over the base
    pool (0 means certification was skipped).
    """

    arity: int
    vertices: int
    seed: int
    block_size: Optional[int]
    ordered: bool
    hyperedges: Optional[frozenset]
    certified_demand: int
    base_pool: int
    certified_positional: int = 0

    def block_index(self, v: int) -> int:
        bs = self.block_size or self.vertices
        return v // bs

    def block_range(self, m: int) -> range:
        bs = self.block_size or self.vertices
        return range(m * bs, (m + 1) * bs)

    def num_blocks(self) -> int:
        bs = self.block_size or self.vertices
        return self.vertices // bs


def vertex_position(structure: RadoStructure, v: int) -> Fraction:
    """Dyadic position of a vertex on the virtual dense order: the Weyl
    point of its block-local id.  Distinct per block, deterministic, and
    uncorrelated with any single adjacency bit."""
    bs = structure.block_size or structure.vertices
    local = v % bs
    return Fraction(((local + 1) * _WEYL) % _WEYL_DEN, _WEYL_DEN)


def has_edge(structure: RadoStructure, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    if len(s) != structure.arity:
        raise InvalidInput(f"hyperedges have exactly {structure.arity} vertices")
    if any(v < 0 or v >= structure.vertices for v in s):
        raise InvalidInput(f"{fs_key(s)} leaves the vertex range")
    if len({structure.block_index(v) for v in s}) > 1:
        return False
    if structure.arity == 2:
        bs = structure.block_size or structure.vertices
        u, v = sorted(s)
        return bit_edge(u % bs, v % bs)
    return s in structure.hyperedges


def adjacent(structure: RadoStructure, u: int, v: int) -> bool:
    return has_edge(structure, (u, v))


def _normalize_demands(structure: RadoStructure, demands) -> tuple:
    out = []
    for d in demands:
        if isinstance(d, int):
            d = (d,)
        s = frozenset(d)
        if len(s) != structure.arity - 1:
            raise InvalidInput(f"demands must be {structure.arity - 1}-subsets, got {fs_key(s)}")
        out.append(s)
    return tuple(out)


def extension_witness(
    structure: RadoStructure,
    adjacent_to=(),
    nonadjacent_to=(),
    position: Optional[tuple] = None,
    block: Optional[int] = None,
    exclude: Iterable[int] = (),
) -> Optional[int]:
    """Least vertex completing every positive demand, no negative demand,
    and (when given) lying strictly inside the prescribed order interval.

    Returns None when the finite structure has no such vertex: absence is
    an answer, not an error.
    """
    pos_demands = _normalize_demands(structure, adjacent_to)
    neg_demands = _normalize_demands(structure, nonadjacent_to)
    overlap = set(pos_demands) & set(neg_demands)
    if overlap:
        raise InvalidInput("a demand cannot be both positive and negative")
    touched: set = set()
    for d in pos_demands + neg_demands:
        touched |= d
    blocks = {structure.block_index(v) for v in touched}
    if len(blocks) > 1:
        raise InvalidInput("demands must live inside one block")
    if block is None:
        block = blocks.pop() if blocks else 0
    lo = hi = None
    if position is not None:
        after, before = position
        lo = vertex_position(structure, after) if after is not None else None
        hi = vertex_position(structure, before) if before is not None else None
    excluded = set(exclude) | touched
    for v in structure.block_range(block):
        if v in excluded:
            continue
        if position is not None:
            p = vertex_position(structure, v)
            if lo is not None and not p > lo:
                continue
            if hi is not None and not p < hi:
                continue
        if all(has_edge(structure, d | {v}) for d in pos_demands) and not any(
            has_edge(structure, d | {v}) for d in neg_demands
        ):
            return v
    return None


def is_partial_iso(structure: RadoStructure, mapping: dict) -> bool:
    """Does the map preserve blocks, the edge relation both ways, and (for
    ordered structures) the order?"""
    items = sorted(mapping.items())
    values = [b for _, b in items]
    if len(set(values)) != len(values):
        return False
    for a, b in items:
        if not (0 <= a < structure.vertices and 0 <= b < structure.vertices):
            return False
        if structure.block_index(a) != structure.block_index(b):
            return False
    if structure.ordered:
        for (a, fa), (b, fb) in combinations(items, 2):
            if (vertex_position(structure, a) < vertex_position(structure, b)) != (
                vertex_position(structure, fa) < vertex_position(structure, fb)
            ):
                return False
    for sub in combinations(mapping, structure.arity):
        if len({structure.block_index(v) for v in sub}) > 1:
            continue
        image = frozenset(mapping[v] for v in sub)
        if has_edge(structure, frozenset(sub)) != has_edge(structure, image):
            return False
    return True


def extend_partial_iso(structure: RadoStructure, mapping: dict, target: int) -> dict:
    """One extension step: give ``target`` an image realizing exactly the
    demands its edges to the current domain impose, in the matching order
    slot for ordered structures.  Raises NoExtension on saturation."""
    if not is_partial_iso(structure, mapping):
        raise InvalidInput("map must be a partial isomorphism before extension")
    if target in mapping:
        return dict(mapping)
    if not 0 <= target < structure.vertices:
        raise InvalidInput(f"target {target} leaves the vertex range")
    block = structure.block_index(target)
    dom_here = [a for a in mapping if structure.block_index(a) == block]
    pos_demands = []
    neg_demands = []
    for sub in combinations(dom_here, structure.arity - 1):
        image = frozenset(mapping[v] for v in sub)
        if has_edge(structure, frozenset(sub) | {target}):
            pos_demands.append(image)
        else:
            neg_demands.append(image)
    position = None
    if structure.ordered:
        tpos = vertex_position(structure, target)
        below = [a for a in dom_here if vertex_position(structure, a) < tpos]
        above = [a for a in dom_here if vertex_position(structure, a) > tpos]
        after = max(below, key=lambda a: vertex_position(structure, mapping[a]), default=None)
        before = min(above, key=lambda a: vertex_position(structure, mapping[a]), default=None)
        position = (
            mapping[after] if after is not None else None,
            mapping[before] if before is not None else None,
        )
    image = extension_witness(
        structure,
        adjacent_to=pos_demands,
        nonadjacent_to=neg_demands,
        position=position,
        block=block,
        exclude=set(mapping.values()),
    )
    if image is None:
        raise NoExtension(f"no image for {target} realizes its demands in block {block}")
    out = dict(mapping)
    out[target] = image
    return out


def _demand_space(structure: RadoStructure, pool: Sequence[int], demand_size: int):
    """All (positive, negative) demand splits over the pool, up to the size."""
    tuples = [frozenset(t) for t in combinations(pool, structure.arity - 1)]
    for total in range(1, demand_size + 1):
        for chosen in combinations(tuples, total):
            for mask in range(1 << total):
                pos = tuple(chosen[i] for i in range(total) if (mask >> i) & 1)
                neg = tuple(chosen[i] for i in range(total) if not (mask >> i) & 1)
                yield pos, neg


def _demand_gaps(structure: RadoStructure, pos, neg):
    """The order slots a witness can be prescribed for one demand: below,
    between consecutive, or above the demand's own vertices."""
    yield None
    atoms: set = set()
    for d in pos + neg:
        atoms |= d
    ordered = sorted(atoms, key=lambda v: vertex_position(structure, v))
    if not ordered:
        return
    yield (None, ordered[0])
    for a, b in zip(ordered, ordered[1:]):
        yield (a, b)
    yield (ordered[-1], None)


def _certification_space(structure: RadoStructure, pool, size: int, positional: int):
    """Demands to certify: every split up to ``size`` without a position,
    and every split up to ``positional`` combined with each order gap its
    own vertices cut out."""
    for pos, neg in _demand_space(structure, pool, size):
        yield pos, neg, None
    if structure.ordered and positional > 0:
        for pos, neg in _demand_space(structure, pool, positional):
            for gap in _demand_gaps(structure, pos, neg):
                if gap is not None:
                    yield pos, neg, gap


def certify_demands(
    structure: RadoStructure,
    demand_size: Optional[int] = None,
    positional: Optional[int] = None,
) -> bool:
    """Exhaustively re-check that every declared demand has a witness over
    the base pool of every block."""
    size = structure.certified_demand if demand_size is None else demand_size
    pos_size = structure.certified_positional if positional is None else positional
    if size <= 0:
        return True
    for m in range(structure.num_blocks()):
        pool = list(structure.block_range(m))[: structure.base_pool]
        for pos, neg, interval in _certification_space(structure, pool, size, pos_size):
            if extension_witness(structure, pos, neg, position=interval, block=m) is None:
                return False
    return True


def build_structure(
    arity: int,
    vertices: int,
    seed: int = 0,
    demand_size: int = 2,
    block_size: Optional[int] = None,
    ordered: bool = False,
    base_pool: Optional[int] = None,
    positional_demand: Optional[int] = None,
) -> RadoStructure:
    """Build a structure and certify its extension property.

    Arity 2 is the deterministic BIT graph; no repair is possible there, so
    an unsatisfiable demand means the vertex range is too small.  Higher
    arities start from seeded random hyperedges; each unmet demand is then
    repaired on a dedicated reserve vertex taken from the top of its block,
    touching only tuples through that fresh vertex so earlier witnesses
    survive.  ``demand_size = 0`` skips certification.  Positional demands
    (a demand inside one of its own order gaps) load the finite order much
    harder, so ordered structures certify them at their own, by default
    smaller, level.
    """
    if arity < 2:
        raise InvalidInput("arity must be at least 2")
    bs = block_size or vertices
    if vertices % bs:
        raise InvalidInput("vertices must split into equal blocks")
    if positional_demand is None:
        positional_demand = min(demand_size, 1) if ordered else 0
    if base_pool is None:
        base_pool = _default_pool(arity, bs, demand_size, ordered, positional_demand)
    hyperedges: Optional[frozenset] = None
    if arity >= 3:
        rng = random.Random(seed)
        edges = set()
        for m in range(vertices // bs):
            block = list(range(m * bs, (m + 1) * bs))
            for t in combinations(block, arity):
                if rng.random() < 0.5:
                    edges.add(frozenset(t))
        hyperedges = frozenset(edges)
    structure = RadoStructure(arity, vertices, seed, block_size, ordered, hyperedges, 0, base_pool, 0)
    if demand_size <= 0:
        return structure
    if arity >= 3:
        structure = _repair(structure, demand_size, positional_demand)
    certified = RadoStructure(
        arity, vertices, seed, block_size, ordered, structure.hyperedges,
        demand_size, base_pool, positional_demand,
    )
    if not certify_demands(certified):
        raise InvalidInput(
            f"structure on {vertices} vertices cannot satisfy all demands of size {demand_size}"
            f" (positional {positional_demand})"
        )
    return certified


def _default_pool(arity: int, block_vertices: int, demand_size: int, ordered: bool, positional: int) -> int:
    """Largest certifiable base pool, capped for enumeration cost.

    The BIT rule is fixed, so for arity 2 the only free knob is the pool:
    probe candidate sizes downward and keep the largest whose demands all
    have witnesses inside one block.  Higher arities are repairable and
    keep the cap.
    """
    cap = min(6 if ordered else 8, block_vertices)
    if arity != 2:
        return cap
    for p in range(cap, 1, -1):
        probe = RadoStructure(2, block_vertices, 0, None, ordered, None, demand_size, p, positional)
        if certify_demands(probe):
            return p
    return 1


def _repair(structure: RadoStructure, demand_size: int, positional: int) -> RadoStructure:
    edges = set(structure.hyperedges)
    for m in range(structure.num_blocks()):
        block = list(structure.block_range(m))
        pool = block[: structure.base_pool]
        reserves = [v for v in reversed(block) if v not in pool]
        for pos, neg, interval in _certification_space(structure, pool, demand_size, positional):
            probe = RadoStructure(
                structure.arity, structure.vertices, structure.seed, structure.block_size,
                structure.ordered, frozenset(edges), 0, structure.base_pool,
            )
            if extension_witness(probe, pos, neg, position=interval, block=m) is not None:
                continue
            x = None
            for idx, cand in enumerate(reserves):
                if interval is not None:
                    p = vertex_position(probe, cand)
                    after, before = interval
                    lo = vertex_position(probe, after) if after is not None else None
                    hi = vertex_position(probe, before) if before is not None else None
                    if not ((lo is None or p > lo) and (hi is None or p < hi)):
                        continue
                x = reserves.pop(idx)
                break
            if x is None:
                raise InvalidInput(
                    f"block {m} ran out of reserve vertices repairing demands of size {demand_size}"
                )
            for d in pos:
                edges.add(d | {x})
            for d in neg:
                edges.discard(d | {x})
    return RadoStructure(
        structure.arity, structure.vertices, structure.seed, structure.block_size,
        structure.ordered, frozenset(edges), 0, structure.base_pool,
    )


@lru_cache(maxsize=None)
def structure_for(spec: ModelSpec) -> RadoStructure:
    """The structure backing a random-graph model spec (deterministic given
    the spec, so repeated queries share one build)."""
    if spec.kind not in ("rado", "ordered-rado"):
        raise InvalidInput(f"model kind {spec.kind!r} carries no hypergraph structure")
    return build_structure(
        spec.arity,
        spec.atoms,
        seed=spec.seed,
        demand_size=spec.demand_size,
        block_size=spec.block_size,
        ordered=spec.kind == "ordered-rado",
    )


def save_structure(structure: RadoStructure, path: str) -> None:
    payload = {
        "schema_version": "1",
        "arity": structure.arity,
        "vertices": structure.vertices,
        "seed": structure.seed,
        "block_size": structure.block_size,
        "ordered": structure.ordered,
        "hyperedges": None
        if structure.hyperedges is None
        else sorted((sorted(e) for e in structure.hyperedges)),
        "certified_demand": structure.certified_demand,
        "certified_positional": structure.certified_positional,
        "base_pool": structure.base_pool,
    }
    try:
        with open(path, "w", encoding="ascii") as fh:
            json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
    except OSError as exc:
        raise InvalidInput(f"cannot write structure file {path}: {exc}") from exc


def load_structure(path: str) -> RadoStructure:
    try:
        with open(path, encoding="ascii") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read structure file {path}: {exc}") from exc
    hyperedges = payload["hyperedges"]
    return RadoStructure(
        arity=payload["arity"],
        vertices=payload["vertices"],
        seed=payload["seed"],
        block_size=payload["block_size"],
        ordered=payload["ordered"],
        hyperedges=None if hyperedges is None else frozenset(frozenset(e) for e in hyperedges),
        certified_demand=payload["certified_demand"],
        base_pool=payload["base_pool"],
        certified_positional=payload.get("certified_positional", 0),
    )
