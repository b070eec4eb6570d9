"""Permutation-model presets: atom indexing schemes, theory-constrained
partial automorphisms, completion rules, and stabilizer generator bases.

Models fall into two camps.  The enumerable camp (plain, paired, blocked,
grid) has finite generator bases for every pointwise stabilizer, so
support and orbit questions are settled by closing under generators.  The
theory camp (dense chain, random-graph blocks and their ordered variants)
has no useful finite automorphism group; its maps are finite partial
injections constrained by the theory, certified extendable over the
virtual infinite structure, and support/orbit questions are answered by
enumerating constrained injections on just the atoms in play.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .errors import ConstraintViolation, InvalidInput, NoExtension
from .finset import FinSet

ENUMERABLE_KINDS = ("fraenkel1", "fraenkel2", "omega-fraenkel", "grid")
THEORY_KINDS = ("mostowski", "rado", "ordered-rado")


@dataclass(frozen=True)
class ModelSpec:
    """One permutation-model preset over atoms ``{0..atoms-1}``."""

    kind: str
    atoms: int
    block_size: Optional[int] = None   # omega-fraenkel and rado kinds
    rows: Optional[int] = None         # grid kind
    cols: Optional[int] = None
    arity: Optional[int] = None        # rado kinds
    seed: int = 0
    demand_size: int = 2               # certification level for rado structures

    def __post_init__(self):
        if self.atoms < 1:
            raise InvalidInput("a model needs at least one atom")
        if self.kind == "fraenkel2" and self.atoms % 2:
            raise InvalidInput("paired atoms come in twos")
        if self.kind == "omega-fraenkel":
            if not self.block_size or self.atoms % self.block_size:
                raise InvalidInput("atoms must split into equal blocks")
        if self.kind == "grid":
            if not self.rows or not self.cols or self.rows * self.cols != self.atoms:
                raise InvalidInput("grid dimensions must cover the atoms exactly")
        if self.kind in ("rado", "ordered-rado"):
            if self.arity is None or self.arity < 2:
                raise InvalidInput("random-graph models need arity >= 2")
            bs = self.block_size or self.atoms
            if self.atoms % bs:
                raise InvalidInput("atoms must split into equal blocks")
        if self.kind not in ENUMERABLE_KINDS + THEORY_KINDS:
            raise InvalidInput(f"unknown model kind {self.kind!r}")

    # -- indexing helpers ----------------------------------------------

    def pair_index(self, a: int) -> int:
        return a // 2

    def pair_atoms(self, m: int) -> FinSet:
        if 2 * m + 1 >= self.atoms:
            raise InvalidInput(f"pair {m} exceeds the atom pool")
        return frozenset((2 * m, 2 * m + 1))

    def mate(self, a: int) -> int:
        return a ^ 1

    def num_pairs(self) -> int:
        return self.atoms // 2

    def block_index(self, a: int) -> int:
        bs = self.block_size or self.atoms
        return a // bs

    def block_atoms(self, m: int) -> FinSet:
        bs = self.block_size or self.atoms
        if (m + 1) * bs > self.atoms:
            raise InvalidInput(f"block {m} exceeds the atom pool")
        return frozenset(range(m * bs, (m + 1) * bs))

    def num_blocks(self) -> int:
        bs = self.block_size or self.atoms
        return self.atoms // bs

    def grid_pos(self, a: int) -> tuple:
        return divmod(a, self.cols)

    def grid_id(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise InvalidInput(f"cell ({i}, {j}) is off the grid")
        return i * self.cols + j


def fraenkel1(atoms: int) -> ModelSpec:
    return ModelSpec("fraenkel1", atoms)


def fraenkel2(atoms: int) -> ModelSpec:
    return ModelSpec("fraenkel2", atoms)


def omega_fraenkel(blocks: int, block_size: int) -> ModelSpec:
    return ModelSpec("omega-fraenkel", blocks * block_size, block_size=block_size)


def grid_model(rows: int, cols: int) -> ModelSpec:
    return ModelSpec("grid", rows * cols, rows=rows, cols=cols)


def mostowski(atoms: int) -> ModelSpec:
    """Atoms sit on a dense chain; ids give the order, the chain continues
    between and beyond them virtually."""
    return ModelSpec("mostowski", atoms)


def rado_model(arity: int, atoms: int, block_size: Optional[int] = None, seed: int = 0, demand_size: int = 2) -> ModelSpec:
    return ModelSpec("rado", atoms, block_size=block_size, arity=arity, seed=seed, demand_size=demand_size)


def ordered_rado_model(arity: int, atoms: int, block_size: Optional[int] = None, seed: int = 0, demand_size: int = 2) -> ModelSpec:
    return ModelSpec("ordered-rado", atoms, block_size=block_size, arity=arity, seed=seed, demand_size=demand_size)


# -- stabilizer generator bases ---------------------------------------


def _transposition(a: int, b: int) -> dict:
    return {a: b, b: a}


def stabilizer_generators(spec: ModelSpec, fixed: FinSet) -> list:
    """Generators of the pointwise stabilizer of ``fixed``, as atom maps
    that are the identity off their listed domain.

    These sets generate the full stabilizer inside the model's group:
    transpositions generate symmetric groups, pair flips generate the
    paired group, within-block transpositions generate each block's
    symmetric group, and transpositions of order-adjacent untouched lines
    generate the symmetric group on untouched rows and columns.
    """
    fixed = frozenset(fixed)
    gens: list = []
    if spec.kind == "fraenkel1":
        free = [a for a in range(spec.atoms) if a not in fixed]
        gens.extend(_transposition(a, b) for a, b in combinations(free, 2))
    elif spec.kind == "fraenkel2":
        for m in range(spec.num_pairs()):
            pair = spec.pair_atoms(m)
            if not pair & fixed:
                gens.append(_transposition(2 * m, 2 * m + 1))
    elif spec.kind == "omega-fraenkel":
        for m in range(spec.num_blocks()):
            free = sorted(spec.block_atoms(m) - fixed)
            gens.extend(_transposition(a, b) for a, b in combinations(free, 2))
    elif spec.kind == "grid":
        touched_rows = {spec.grid_pos(a)[0] for a in fixed}
        touched_cols = {spec.grid_pos(a)[1] for a in fixed}
        free_rows = [i for i in range(spec.rows) if i not in touched_rows]
        free_cols = [j for j in range(spec.cols) if j not in touched_cols]
        for i1, i2 in zip(free_rows, free_rows[1:]):
            g = {}
            for j in range(spec.cols):
                g[spec.grid_id(i1, j)] = spec.grid_id(i2, j)
                g[spec.grid_id(i2, j)] = spec.grid_id(i1, j)
            gens.append(g)
        for j1, j2 in zip(free_cols, free_cols[1:]):
            g = {}
            for i in range(spec.rows):
                g[spec.grid_id(i, j1)] = spec.grid_id(i, j2)
                g[spec.grid_id(i, j2)] = spec.grid_id(i, j1)
            gens.append(g)
    else:
        raise InvalidInput(f"model kind {spec.kind!r} has no finite generator basis; use its completion semantics")
    return gens


# -- partial automorphisms --------------------------------------------


@dataclass
class PartialAut:
    """Finite partial injective atom map constrained by its model's theory.

    ``total_identity`` marks maps that are the identity off their listed
    domain (group elements of enumerable models).  Theory-model maps leave
    unlisted atoms undetermined and must be completed before application.
    """

    model: ModelSpec
    mapping: dict
    total_identity: bool = False
    verified: bool = False

    def domain(self) -> FinSet:
        return frozenset(self.mapping)


def validate_theory(p: PartialAut) -> None:
    """Raise ConstraintViolation unless the map respects its model on its domain."""
    spec = p.model
    m = p.mapping
    for a, b in m.items():
        if not (0 <= a < spec.atoms and 0 <= b < spec.atoms):
            raise ConstraintViolation(f"map entry {a} -> {b} leaves the atom pool")
    images = list(m.values())
    if len(set(images)) != len(images):
        raise ConstraintViolation("map must be injective")
    if spec.kind == "fraenkel2":
        for a, b in m.items():
            if spec.pair_index(a) != spec.pair_index(b):
                raise ConstraintViolation(f"{a} -> {b} crosses pairs")
            mate = spec.mate(a)
            if mate in m and m[mate] != spec.mate(b):
                raise ConstraintViolation(f"pair {spec.pair_index(a)} is mapped inconsistently")
    elif spec.kind in ("omega-fraenkel", "rado", "ordered-rado"):
        for a, b in m.items():
            if spec.block_index(a) != spec.block_index(b):
                raise ConstraintViolation(f"{a} -> {b} crosses blocks")
    if spec.kind == "grid":
        _grid_factor(p)
    if spec.kind in ("mostowski", "ordered-rado"):
        for (a, fa), (b, fb) in combinations(m.items(), 2):
            if (a < b) != (_order_pos(spec, fa) < _order_pos(spec, fb)):
                raise ConstraintViolation(f"{a} -> {fa}, {b} -> {fb} breaks the order")
    if spec.kind in ("rado", "ordered-rado"):
        from .rado import structure_for, is_partial_iso  # local import to avoid a cycle

        if not is_partial_iso(structure_for(spec), m):
            raise ConstraintViolation("map does not preserve the hyperedge relation both ways")


def _order_pos(spec: ModelSpec, a: int):
    if spec.kind == "ordered-rado":
        from .rado import structure_for, vertex_position

        return vertex_position(structure_for(spec), a)
    return a


def _grid_factor(p: PartialAut) -> tuple:
    """Row and column maps of a grid atom map; raises if it does not factor."""
    spec = p.model
    sigma: dict = {}
    rho: dict = {}
    for a, b in p.mapping.items():
        i, j = spec.grid_pos(a)
        i2, j2 = spec.grid_pos(b)
        if sigma.setdefault(i, i2) != i2 or rho.setdefault(j, j2) != j2:
            raise ConstraintViolation("map does not factor into a row map and a column map")
    for d in (sigma, rho):
        if len(set(d.values())) != len(d):
            raise ConstraintViolation("row or column map is not injective")
    return sigma, rho


def grid_aut(spec: ModelSpec, sigma: dict, rho: dict) -> PartialAut:
    """Total grid map built from a row permutation and a column permutation,
    each given as a mapping (identity off its domain)."""
    mapping = {}
    for a in range(spec.atoms):
        i, j = spec.grid_pos(a)
        mapping[a] = spec.grid_id(sigma.get(i, i), rho.get(j, j))
    return PartialAut(spec, mapping, total_identity=True, verified=True)


def complete_aut(p: PartialAut, needed: Iterable[int]) -> PartialAut:
    """Extend a theory-respecting map to cover ``needed``.

    The completion prefers fixing an atom when consistency allows and
    otherwise takes the least legal image; for the dense chain the legal
    images are the atoms in the open interval pinned by the neighbours
    already mapped, and for random-graph blocks they come from an
    extension-witness query.  Raises NoExtension when the finite structure
    has no room, which is a saturation failure rather than a theory error.
    """
    validate_theory(p)
    spec = p.model
    mapping = dict(p.mapping)
    todo = sorted(set(needed) - set(mapping))
    for a in todo:
        if not 0 <= a < spec.atoms:
            raise InvalidInput(f"needed atom {a} is outside the pool")
    used = set(mapping.values())
    if spec.kind == "fraenkel1":
        for a in todo:
            img = a if a not in used else _least_free(range(spec.atoms), used)
            mapping[a] = img
            used.add(img)
    elif spec.kind == "fraenkel2":
        for a in todo:
            if a in mapping:
                continue
            mate = spec.mate(a)
            if mate in mapping:
                img = spec.mate(mapping[mate])
            else:
                img = a if a not in used else mate
            if img in used:
                raise ConstraintViolation(f"pair {spec.pair_index(a)} cannot absorb {a}")
            mapping[a] = img
            used.add(img)
    elif spec.kind == "omega-fraenkel":
        for a in todo:
            block = sorted(spec.block_atoms(spec.block_index(a)))
            img = a if a not in used else _least_free(block, used)
            if img is None:
                raise NoExtension(f"block {spec.block_index(a)} is saturated")
            mapping[a] = img
            used.add(img)
    elif spec.kind == "grid":
        sigma, rho = _grid_factor(PartialAut(spec, mapping))
        for a in todo:
            i, j = spec.grid_pos(a)
            if i not in sigma:
                sigma[i] = i if i not in sigma.values() else _least_free(range(spec.rows), set(sigma.values()))
            if j not in rho:
                rho[j] = j if j not in rho.values() else _least_free(range(spec.cols), set(rho.values()))
            mapping[a] = spec.grid_id(sigma[i], rho[j])
        used = set(mapping.values())
        if len(used) != len(mapping):
            raise ConstraintViolation("grid completion collided; inconsistent row/column maps")
    elif spec.kind == "mostowski":
        for a in todo:
            lo = max((img for x, img in mapping.items() if x < a), default=-1)
            hi = min((img for x, img in mapping.items() if x > a), default=spec.atoms)
            if lo < a < hi and a not in used:
                img = a
            else:
                img = _least_free(range(lo + 1, hi), used)
                if img is None:
                    raise NoExtension(f"no free chain slot between {lo} and {hi} for atom {a}")
            mapping[a] = img
            used.add(img)
    elif spec.kind in ("rado", "ordered-rado"):
        from .rado import extend_partial_iso, structure_for

        structure = structure_for(spec)
        for a in todo:
            mapping = extend_partial_iso(structure, mapping, a)
    out = PartialAut(spec, mapping, total_identity=p.total_identity)
    validate_theory(out)
    out.verified = True
    return out


def _least_free(candidates: Iterable[int], used: set) -> Optional[int]:
    for v in candidates:
        if v not in used:
            return v
    return None
