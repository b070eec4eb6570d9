"""Named colourings, pair-graph machinery, and derived-colouring constructions.

Contains the cardinality colourings (floor-log2 parity, mod-4 bands), the
partition colouring with selector extraction, the dense / locally-finite
analysis of pair colourings, connected-component extraction, the boundary
and value colourings derived from an n-ary colouring, and the row-plus-
column weight of grid-indexed sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import DomainError, InvalidInput, NotConstant, Unclassifiable
from .finset import Colouring, FinSet, fs_key


def log2_colour_value(size: int) -> int:
    # floor(log2 n) == n.bit_length() - 1, exactly, for n >= 1
    if size < 1:
        raise InvalidInput("log2 colour is undefined on the empty set")
    return (size.bit_length() - 1) & 1


def mod4_colour_value(size: int) -> int:
    return 0 if size % 4 in (0, 1) else 1


def log2_colouring(ground: int) -> Colouring:
    """Parity of floor(log2 |x|); rejects the empty set."""
    return Colouring(ground, None, lambda s: log2_colour_value(len(s)), name="log2")


def mod4_colouring(ground: int) -> Colouring:
    """0 when |x| is 0 or 1 mod 4, else 1.  Flips whenever |x| grows by 2."""
    return Colouring(ground, None, lambda s: mod4_colour_value(len(s)), name="mod4", allow_empty=True)


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint blocks covering their union (the carrier)."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=fs_key))
        seen: set = set()
        for b in blocks:
            if not b:
                raise InvalidInput("partition blocks must be nonempty")
            if seen & b:
                raise InvalidInput("partition blocks must be pairwise disjoint")
            seen.update(b)
        object.__setattr__(self, "blocks", blocks)

    @property
    def carrier(self) -> FinSet:
        out: FinSet = frozenset()
        for b in self.blocks:
            out = out | b
        return out

    def block_of(self, atom: int) -> FinSet:
        for b in self.blocks:
            if atom in b:
                return b
        raise DomainError(f"atom {atom} is not covered by the partition")


def partition_colouring(p: Partition, ground: Optional[int] = None) -> Colouring:
    """1 on sets meeting some block in at least two points, else 0."""
    carrier = p.carrier
    n = ground if ground is not None else (max(carrier) + 1 if carrier else 0)

    def fn(x: FinSet) -> int:
        return 1 if any(len(x & b) >= 2 for b in p.blocks) else 0

    return Colouring(n, None, fn, name="partition", allow_empty=True, carrier=carrier)


def selector_extract(p: Partition, y: FinSet) -> Optional[FinSet]:
    """``y`` itself when it meets every touched block exactly once, else None."""
    y = frozenset(y)
    if not y <= p.carrier:
        raise DomainError("candidate selector must live inside the partition carrier")
    for b in p.blocks:
        if len(y & b) >= 2:
            return None
    return y


def min_drop_colouring(c: Colouring, order: Sequence[int]) -> Colouring:
    """Colour an (n+1)-set by ``c`` of the set minus its order-minimum."""
    if c.arity is None:
        raise InvalidInput("min-drop needs a colouring of fixed arity")
    rank = {atom: i for i, atom in enumerate(order)}
    if len(rank) != len(order):
        raise InvalidInput("order must not repeat atoms")

    def fn(x: FinSet) -> int:
        try:
            least = min(x, key=lambda a: rank[a])
        except KeyError as exc:
            raise DomainError(f"atom {exc} is not ranked by the supplied order") from exc
        return c(x - {least})

    return Colouring(c.ground, c.arity + 1, fn, name=f"min-drop({c.name})")


def is_dense(c: Colouring, witness: FinSet) -> bool:
    """Check density of ``c`` on the explicit witness set.

    Every (n-1)-subset of the witness must extend, inside the full ground
    set, to sets of both colours.
    """
    if c.arity is None or c.arity < 1:
        raise InvalidInput("density is defined for colourings of fixed arity >= 1")
    n = c.arity
    witness = frozenset(witness)
    if len(witness) < n - 1:
        raise InvalidInput(f"witness set must have at least {n - 1} elements")
    for base in combinations(sorted(witness), n - 1):
        base_set = frozenset(base)
        seen = set()
        for v in range(c.ground):
            if v in base_set:
                continue
            seen.add(c(base_set | {v}))
            if len(seen) == 2:
                break
        if len(seen) < 2:
            return False
    return True


def locally_finite_split(c: Colouring, t: int):
    """Classify each point by which colour it sees at most ``t`` times.

    For each ``x`` let ``F_i(x)`` be the other points joined to ``x`` in
    colour ``i``.  Since the two degree counts sum to ``|X|-1 > 2t``, at
    most one of them is ``<= t``; a point with neither small is
    unclassifiable.  Returns ``(i, Y)`` where ``i`` is the colour whose
    class covers more than ``|X|-t`` points and ``Y`` is that class; the
    colour-``i`` graph has max degree ``<= t`` on ``Y``.

    The threshold stands in for a finite/cofinite dichotomy that no finite
    instance can exhibit; callers choose ``t`` and own that reading.
    """
    if c.arity != 2:
        raise InvalidInput("the split applies to pair colourings")
    if t < 0:
        raise InvalidInput("threshold must be non-negative")
    n = c.ground
    if n <= 2 * t + 1:
        raise InvalidInput(f"need more than {2 * t + 1} points for threshold {t}")
    classed: dict = {}
    for x in range(n):
        deg1 = sum(1 for y in range(n) if y != x and c({x, y}) == 1)
        deg0 = (n - 1) - deg1
        if deg0 <= t:
            classed[x] = 0
        elif deg1 <= t:
            classed[x] = 1
        else:
            raise Unclassifiable(f"point {x} has {deg0} and {deg1} neighbours, both above threshold {t}")
    counts = {0: 0, 1: 0}
    for i in classed.values():
        counts[i] += 1
    dominant = [i for i in (0, 1) if counts[i] > n - t]
    if not dominant:
        raise Unclassifiable(f"no colour dominates: class sizes {counts[0]} and {counts[1]} with {n} points")
    i = dominant[0]
    return i, frozenset(x for x, ci in classed.items() if ci == i)


@dataclass(frozen=True)
class PairGraph:
    """Undirected graph given by its vertex tuple and 2-subset edges."""

    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or not e <= vs:
                raise InvalidInput(f"{fs_key(e)} is not an edge over the vertex set")

    def neighbours(self, v: int) -> FinSet:
        return frozenset(next(iter(e - {v})) for e in self.edges if v in e)


def colour_graph(c: Colouring, i: int) -> PairGraph:
    """The graph whose edges are the pairs coloured ``i``."""
    if c.arity != 2:
        raise InvalidInput("colour graphs come from pair colourings")
    vertices = tuple(range(c.ground))
    edges = frozenset(frozenset(e) for e in combinations(vertices, 2) if c(frozenset(e)) == i)
    return PairGraph(vertices, edges)


def bfs_levels(g: PairGraph, x: int) -> tuple:
    """Distance layers from ``x``: level 0 is ``{x}``, level n+1 the fresh
    neighbours of level n.  Their union is the component of ``x``."""
    if x not in g.vertices:
        raise InvalidInput(f"vertex {x} is not in the graph")
    levels = [frozenset([x])]
    seen = {x}
    while True:
        frontier = set()
        for v in levels[-1]:
            for w in g.neighbours(v):
                if w not in seen:
                    frontier.add(w)
        if not frontier:
            return tuple(levels)
        seen.update(frontier)
        levels.append(frozenset(frontier))


def components(g: PairGraph) -> Partition:
    blocks = []
    remaining = set(g.vertices)
    while remaining:
        start = min(remaining)
        comp: set = set()
        for level in bfs_levels(g, start):
            comp.update(level)
        blocks.append(frozenset(comp))
        remaining -= comp
    return Partition(tuple(blocks))


def singleton_extract(c: Colouring, i: int) -> FinSet:
    """Union of the singleton components of the colour-``i`` graph.

    Any two distinct members are joined in colour ``1-i``, so all pairs of
    the result are monochromatic in the opposite colour.
    """
    part = components(colour_graph(c, i))
    out: FinSet = frozenset()
    for b in part.blocks:
        if len(b) == 1:
            out = out | b
    return out


def boundary_colouring(c: Colouring) -> Colouring:
    """Colour an (n-1)-set 0 when all its one-point extensions agree under ``c``."""
    if c.arity is None or c.arity < 2:
        raise InvalidInput("boundary colouring needs arity at least 2")
    n = c.arity

    def fn(s: FinSet) -> int:
        seen = set()
        for v in range(c.ground):
            if v in s:
                continue
            seen.add(c(s | {v}))
            if len(seen) == 2:
                return 1
        return 0

    return Colouring(c.ground, n - 1, fn, name=f"boundary({c.name})")


def value_colouring(c: Colouring, y_prime: FinSet) -> Colouring:
    """On (n-1)-subsets of ``y_prime``: the single colour all extensions take.

    Raises NotConstant eagerly if any (n-1)-subset of ``y_prime`` has mixed
    extensions, i.e. the boundary colouring is not identically 0 there.
    """
    if c.arity is None or c.arity < 2:
        raise InvalidInput("value colouring needs arity at least 2")
    n = c.arity
    y_prime = frozenset(y_prime)
    table = {}
    for base in combinations(sorted(y_prime), n - 1):
        s = frozenset(base)
        seen = {c(s | {v}) for v in range(c.ground) if v not in s}
        if len(seen) != 1:
            raise NotConstant(f"extensions of {fs_key(s)} take colours {sorted(seen)}")
        table[s] = seen.pop()

    def fn(s: FinSet) -> int:
        if s not in table:
            raise DomainError(f"{fs_key(s)} is not an {n - 1}-subset of the declared carrier")
        return table[s]

    return Colouring(c.ground, n - 1, fn, name=f"value({c.name})", carrier=y_prime)


def grid_weight(x: FinSet, rows: int, cols: int) -> int:
    """Number of rows plus number of columns met by a set of grid cells.

    Atoms are row-major cell ids: cell (i, j) is ``i * cols + j``.
    """
    x = frozenset(x)
    if any(a < 0 or a >= rows * cols for a in x):
        raise DomainError(f"{fs_key(x)} contains atoms outside the {rows}x{cols} grid")
    rs = {a // cols for a in x}
    cs = {a % cols for a in x}
    return len(rs) + len(cs)


def grid_colouring(rows: int, cols: int) -> Colouring:
    """0 when the grid weight is 0 or 1 mod 4, else 1."""
    return Colouring(
        rows * cols,
        None,
        lambda s: mod4_colour_value(grid_weight(s, rows, cols)),
        name="grid",
        allow_empty=True,
    )


def table_colouring(ground: int, arity: Optional[int], entries, name: str = "table") -> Colouring:
    """Explicit colouring from a (set, colour) table; total on its listed domain."""
    table = {}
    for s, v in entries:
        if v not in (0, 1):
            raise InvalidInput(f"table colour for {fs_key(s)} must be 0 or 1, got {v!r}")
        table[frozenset(s)] = v

    def fn(s: FinSet) -> int:
        if s not in table:
            raise DomainError(f"{fs_key(s)} is missing from the colour table")
        return table[s]

    return Colouring(ground, arity, fn, name=name, allow_empty=frozenset() in table)
