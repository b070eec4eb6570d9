"""Witness-replaying verifiers for the permutation-model constructions.

Each verifier replays one constructive argument at desk scale and returns
a Report whose witnesses re-verify from the report alone: the maps are
echoed, the moved objects are echoed, and ``reverify_report`` recomputes
every asserted fact from them in a fresh process.

INCONCLUSIVE is a first-class outcome here: a finite atom pool can
exhibit an obstruction witness but can never prove that no infinite
support exists, and a saturated pool may simply lack the fresh atoms a
replay needs.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Dict, Optional, Sequence

from .colourings import grid_weight, mod4_colour_value
from .errors import InvalidInput, NoExtension
from .finset import Colouring, FinSet, fs_key
from .fm import apply_aut, is_support, orbit
from .hset import (
    encode_colouring,
    encode_family,
    encode_indexed_sequence,
    kuratowski,
    ordinal,
)
from .models import (
    ModelSpec,
    PartialAut,
    grid_aut,
    validate_theory,
)
from .report import ERROR, FAIL, INCONCLUSIVE, PASS, Report


def spec_params(spec: ModelSpec) -> dict:
    out = {"model": spec.kind, "atoms": spec.atoms}
    for key in ("block_size", "rows", "cols", "arity"):
        value = getattr(spec, key)
        if value is not None:
            out[key] = value
    if spec.kind in ("rado", "ordered-rado"):
        out["structure_seed"] = spec.seed
        out["demand_size"] = spec.demand_size
    return out


def spec_from_params(params: dict) -> ModelSpec:
    return ModelSpec(
        kind=params["model"],
        atoms=params["atoms"],
        block_size=params.get("block_size"),
        rows=params.get("rows"),
        cols=params.get("cols"),
        arity=params.get("arity"),
        seed=params.get("structure_seed", 0),
        demand_size=params.get("demand_size", 2),
    )


def meets_support_colouring(spec: ModelSpec, support: FinSet, n: int) -> Colouring:
    """1 on n-subsets meeting the support, 0 otherwise; supported by it."""
    support = frozenset(support)
    return Colouring(spec.atoms, n, lambda x: 1 if x & support else 0, name="meets-support")


def block_adjacency_colouring(spec: ModelSpec) -> Colouring:
    """1 on sets inside a single block containing some hyperedge, else 0."""
    from .rado import has_edge, structure_for

    structure = structure_for(spec)

    def fn(x: FinSet) -> int:
        if not x:
            return 0
        if len({structure.block_index(v) for v in x}) > 1:
            return 0
        if len(x) < structure.arity:
            return 0
        return 1 if any(has_edge(structure, frozenset(t)) for t in combinations(sorted(x), structure.arity)) else 0

    return Colouring(spec.atoms, None, fn, name="block-adjacency", allow_empty=True)


def _error(command: str, claim: str, params: dict, message: str) -> Report:
    return Report(command, claim, ERROR, params=params, witnesses={"error": message})


# -- full-group model: colourings are constant off their support ---------


CLAIM_R_INFINITE = (
    "every two n-subsets avoiding the declared support get equal colours, "
    "witnessed by an explicit support-fixing permutation"
)


def verify_first_fraenkel_rn(spec: ModelSpec, c: Colouring, support: FinSet, colouring_name: Optional[str] = None) -> Report:
    params = spec_params(spec)
    params.update({"verify": "r-infinite", "support": sorted(support), "n": c.arity,
                   "colouring": colouring_name or c.name})
    if spec.kind != "fraenkel1":
        return _error("fm", CLAIM_R_INFINITE, params, "this replay runs on the full-permutation model")
    support = frozenset(support)
    if not is_support(spec, support, encode_colouring(c)):
        return _error("fm", CLAIM_R_INFINITE, params, "declared support is refuted: some stabilizer generator moves the colouring")
    rest = sorted(set(range(spec.atoms)) - support)
    n = c.arity
    subsets = [frozenset(t) for t in combinations(rest, n)]
    colours = {s: c(s) for s in subsets}
    values = set(colours.values())
    if len(values) > 1:
        by_colour: Dict[int, FinSet] = {}
        for s, v in colours.items():
            by_colour.setdefault(v, s)
        pair = [sorted(by_colour[v]) for v in sorted(by_colour)]
        return Report("fm", CLAIM_R_INFINITE, FAIL, params=params,
                      witnesses={"counterexample": pair})
    x = subsets[0]
    y = subsets[1] if len(subsets) > 1 else subsets[0]
    pi = _swap_onto(x, y)
    moved = apply_aut(pi, x)
    fixed_colouring = apply_aut(pi, encode_colouring(c)) == encode_colouring(c)
    if moved != y or not fixed_colouring:
        return Report("fm", CLAIM_R_INFINITE, FAIL, params=params,
                      witnesses={"error": "replay map failed", "map": sorted(pi.items())})
    return Report(
        "fm",
        CLAIM_R_INFINITE,
        PASS,
        params=params,
        witnesses={
            "colour": values.pop(),
            "subsets_scanned": len(subsets),
            "sample_pair": [sorted(x), sorted(y)],
            "map": sorted((a, b) for a, b in pi.items() if a != b),
        },
    )


def _swap_onto(x: FinSet, y: FinSet) -> dict:
    """An involution mapping x onto y: pair the sorted differences both
    ways, identity elsewhere.  Fixes anything disjoint from both."""
    out = {}
    for u, v in zip(sorted(x - y), sorted(y - x)):
        out[u] = v
        out[v] = u
    return out


# -- three-summand obstruction: swap one atom two ways -------------------


CLAIM_H3 = "a three-step sum from the family grows by two atoms and flips the mod-4 colour"


def verify_h3_witness(spec: ModelSpec, family: Sequence[FinSet], support: FinSet) -> Report:
    params = spec_params(spec)
    members = tuple(sorted({frozenset(y) for y in family}, key=fs_key))
    support = frozenset(support)
    params.update({"verify": "h3", "support": sorted(support), "family_size": len(members)})
    family_h = encode_family(members)
    if not is_support(spec, support, family_h):
        return _error("fm", CLAIM_H3, params, "declared support is refuted for the family")
    escaping = [y for y in members if not y <= support]
    if not escaping:
        return _error("fm", CLAIM_H3, params, "no member escapes the declared support")
    member_set = set(members)
    for y in escaping:
        for a in sorted(y - support):
            pool = _fresh_pool(spec, support, y, a)
            if len(pool) < 2:
                continue
            b, c = pool[0], pool[1]
            z = (y - {a}) | {b}
            w = (y - {a}) | {c}
            if spec.kind in ("fraenkel1", "omega-fraenkel"):
                pi = {a: b, b: a}
                sigma = {a: c, c: a}
                if apply_aut(pi, family_h) != family_h or apply_aut(sigma, family_h) != family_h:
                    return Report("fm", CLAIM_H3, FAIL, params=params,
                                  witnesses={"error": "a support-fixing swap moved the family",
                                             "swap": sorted(pi.items())})
            else:
                fixed = {t: t for t in (support | y) - {a}}
                pi_aut = PartialAut(spec, {**fixed, a: b})
                sigma_aut = PartialAut(spec, {**fixed, a: c})
                validate_theory(pi_aut)
                validate_theory(sigma_aut)
                z = apply_aut(pi_aut, y)
                w = apply_aut(sigma_aut, y)
            if z not in member_set or w not in member_set:
                return Report("fm", CLAIM_H3, FAIL, params=params,
                              witnesses={"error": "moved member left the family",
                                         "y": sorted(y), "z": sorted(z), "w": sorted(w)})
            total = y ^ z ^ w
            if len(total) != len(y) + 2 or mod4_colour_value(len(total)) == mod4_colour_value(len(y)):
                return Report("fm", CLAIM_H3, FAIL, params=params,
                              witnesses={"y": sorted(y), "z": sorted(z), "w": sorted(w),
                                         "sum": sorted(total)})
            return Report(
                "fm",
                CLAIM_H3,
                PASS,
                params=params,
                witnesses={
                    "family": [sorted(m) for m in members],
                    "y": sorted(y), "a": a, "b": b, "c": c,
                    "z": sorted(z), "w": sorted(w), "sum": sorted(total),
                    "size_before": len(y), "size_after": len(total),
                    "colour_before": mod4_colour_value(len(y)),
                    "colour_after": mod4_colour_value(len(total)),
                },
            )
    raise NoExtension("no member has two fresh atoms available in its legal swap region")


def _fresh_pool(spec: ModelSpec, support: FinSet, y: FinSet, a: int) -> list:
    if spec.kind == "fraenkel1":
        return sorted(set(range(spec.atoms)) - y - support)
    if spec.kind == "omega-fraenkel":
        return sorted(spec.block_atoms(spec.block_index(a)) - y - support)
    if spec.kind == "mostowski":
        pinned = sorted((support | y) - {a})
        lo = max((p for p in pinned if p < a), default=-1)
        hi = min((p for p in pinned if p > a), default=spec.atoms)
        return [v for v in range(lo + 1, hi) if v != a]
    raise InvalidInput(f"the three-summand replay does not run on {spec.kind!r}")


# -- paired model: no choice function has a small support ----------------


CLAIM_RUSSELL = (
    "swapping any pair untouched by a candidate support moves the choice "
    "function, so no support up to the size bound exists"
)


def russell_obstruction(spec: ModelSpec, choice: Dict[int, int], support: FinSet, sweep_bound: int = 2) -> Report:
    params = spec_params(spec)
    support = frozenset(support)
    params.update({"verify": "russell", "support": sorted(support), "sweep_bound": sweep_bound,
                   "choice": sorted(choice.items())})
    if spec.kind != "fraenkel2":
        return _error("fm", CLAIM_RUSSELL, params, "choice obstructions run on the paired model")
    for m, atom in choice.items():
        if atom not in spec.pair_atoms(m):
            raise InvalidInput(f"choice for pair {m} must pick one of its two atoms")
    if not choice:
        return Report("fm", CLAIM_RUSSELL, INCONCLUSIVE, params=params,
                      witnesses={"note": "the empty choice function is supported by the empty set; nothing to refute"})
    g_h = frozenset(kuratowski(ordinal(m), atom) for m, atom in choice.items())

    def refute(candidate: FinSet) -> Optional[dict]:
        for m in sorted(choice):
            pair = spec.pair_atoms(m)
            if pair & candidate:
                continue
            swap = {2 * m: 2 * m + 1, 2 * m + 1: 2 * m}
            if apply_aut(swap, g_h) != g_h:
                return {"pair": m, "swap": sorted(swap.items())}
        return None

    declared = refute(support)
    if declared is None:
        return Report("fm", CLAIM_RUSSELL, INCONCLUSIVE, params=params,
                      witnesses={"note": "every pair in the choice's domain is touched by the declared support"})
    stuck = []
    checked = 0
    atoms = range(spec.atoms)
    for size in range(sweep_bound + 1):
        for cand in combinations(atoms, size):
            checked += 1
            if refute(frozenset(cand)) is None:
                stuck.append(sorted(cand))
    if stuck:
        return Report("fm", CLAIM_RUSSELL, INCONCLUSIVE, params=params,
                      witnesses={"declared_refutation": declared, "candidates_checked": checked,
                                 "unrefuted": stuck[:5]})
    return Report(
        "fm",
        CLAIM_RUSSELL,
        PASS,
        params=params,
        witnesses={"declared_refutation": declared, "candidates_checked": checked,
                   "certified_bound": sweep_bound},
    )


# -- paired model: selector families surject two-to-one ------------------


CLAIM_B_FAMILY = "dropping the top pair maps each selector family two-to-one onto the previous one"


def b_family(spec: ModelSpec, n: int):
    """Selector families of the first n+1 and n+2 pairs, with the drop map."""
    if spec.kind != "fraenkel2":
        raise InvalidInput("selector families live in the paired model")
    if spec.atoms < 2 * (n + 2):
        raise InvalidInput(f"need {2 * (n + 2)} atoms for families at level {n}")

    def selectors(top: int) -> tuple:
        pools = [sorted(spec.pair_atoms(i)) for i in range(top + 1)]
        return tuple(sorted((frozenset(p) for p in product(*pools)), key=fs_key))

    level_n = selectors(n)
    level_n1 = selectors(n + 1)
    top_pair = spec.pair_atoms(n + 1)
    drop = {b: b - top_pair for b in level_n1}
    return level_n, level_n1, drop


def verify_b_family(spec: ModelSpec, n: int) -> Report:
    params = spec_params(spec)
    params.update({"verify": "b-family", "n": n})
    level_n, level_n1, drop = b_family(spec, n)
    fibers: Dict[FinSet, int] = {b: 0 for b in level_n}
    for image in drop.values():
        if image not in fibers:
            return Report("fm", CLAIM_B_FAMILY, FAIL, params=params,
                          witnesses={"error": "drop map left the target family", "image": sorted(image)})
        fibers[image] += 1
    bad = {b: k for b, k in fibers.items() if k != 2}
    if bad:
        return Report("fm", CLAIM_B_FAMILY, FAIL, params=params,
                      witnesses={"bad_fibers": [[sorted(b), k] for b, k in bad.items()]})
    return Report(
        "fm",
        CLAIM_B_FAMILY,
        PASS,
        params=params,
        witnesses={"size_n": len(level_n), "size_n_plus_1": len(level_n1),
                   "fiber_size": 2, "sample": [sorted(b) for b in level_n1[:2]]},
    )


# -- blocked model: countable sequences of finite sets are obstructed ----


CLAIM_OMEGA_H = "a within-block transposition fixing the declared support moves a member of the sequence"


def omega_fraenkel_h_obstruction(spec: ModelSpec, seq: Sequence[Sequence[FinSet]], support: FinSet) -> Report:
    params = spec_params(spec)
    support = frozenset(support)
    families = tuple(tuple(sorted({frozenset(s) for s in fam}, key=fs_key)) for fam in seq)
    params.update({"verify": "omega-h", "support": sorted(support),
                   "sequence": [[sorted(m) for m in fam] for fam in families]})
    if spec.kind != "omega-fraenkel":
        return _error("fm", CLAIM_OMEGA_H, params, "this obstruction runs on the blocked model")
    if len(set(families)) != len(families):
        raise InvalidInput("the sequence must be injective")
    seq_h = encode_indexed_sequence(encode_family(fam) for fam in families)
    for idx, fam in enumerate(families):
        union: FinSet = frozenset()
        for member in fam:
            union = union | member
        if union <= support:
            continue
        a = min(union - support)
        block = spec.block_atoms(spec.block_index(a))
        pool = sorted(block - union - support)
        if not pool:
            raise NoExtension(f"block {spec.block_index(a)} has no fresh atom left for the swap")
        b = pool[0]
        swap = {a: b, b: a}
        member_h = encode_family(fam)
        if apply_aut(swap, member_h) == member_h or apply_aut(swap, seq_h) == seq_h:
            return Report("fm", CLAIM_OMEGA_H, FAIL, params=params,
                          witnesses={"error": "the swap unexpectedly fixed the sequence",
                                     "index": idx, "swap": sorted(swap.items())})
        return Report(
            "fm",
            CLAIM_OMEGA_H,
            PASS,
            params=params,
            witnesses={"index": idx, "a": a, "b": b, "swap": sorted(swap.items()),
                       "moved_family": [sorted(m) for m in fam]},
        )
    return Report("fm", CLAIM_OMEGA_H, INCONCLUSIVE, params=params,
                  witnesses={"note": "every member's atoms lie inside the declared support"})


# -- grid model: weight invariance and the plus-two construction ---------


CLAIM_GRID = (
    "row and column permutations preserve the row-plus-column weight, and "
    "two fresh row copies raise it by exactly two, flipping the colour"
)


def grid_invariance_check(spec: ModelSpec, x: FinSet, sigma: Dict[int, int], rho: Dict[int, int]) -> Report:
    params = spec_params(spec)
    x = frozenset(x)
    params.update({"verify": "grid", "x": sorted(x),
                   "sigma": sorted(sigma.items()), "rho": sorted(rho.items())})
    if spec.kind != "grid":
        return _error("fm", CLAIM_GRID, params, "weight checks run on the grid model")
    aut = grid_aut(spec, sigma, rho)
    image = apply_aut(aut, x)
    before = grid_weight(x, spec.rows, spec.cols)
    after = grid_weight(image, spec.rows, spec.cols)
    if before != after:
        return Report("fm", CLAIM_GRID, FAIL, params=params,
                      witnesses={"weight_before": before, "weight_after": after,
                                 "image": sorted(image)})
    bump = grid_weight_bump(spec, x)
    if bump is None:
        raise NoExtension("fewer than two fresh rows available for the plus-two construction")
    total, row, fresh = bump
    w_total = grid_weight(total, spec.rows, spec.cols)
    if w_total != before + 2 or mod4_colour_value(w_total) == mod4_colour_value(before):
        return Report("fm", CLAIM_GRID, FAIL, params=params,
                      witnesses={"bump_weight": w_total, "weight": before, "sum": sorted(total)})
    return Report(
        "fm",
        CLAIM_GRID,
        PASS,
        params=params,
        witnesses={"weight": before, "image": sorted(image),
                   "bump_row": row, "fresh_rows": list(fresh),
                   "bump_sum": sorted(total), "bump_weight": w_total,
                   "colour_before": mod4_colour_value(before),
                   "colour_after": mod4_colour_value(w_total)},
    )


def grid_weight_bump(spec: ModelSpec, x: FinSet):
    """x ^ pi(x) ^ pi'(x) for two row transpositions into fresh rows; the
    result copies one row of x twice, adding exactly two rows."""
    x = frozenset(x)
    if not x:
        return None
    touched = {spec.grid_pos(a)[0] for a in x}
    fresh = sorted(set(range(spec.rows)) - touched)
    if len(fresh) < 2:
        return None
    row = min(touched)
    r1, r2 = fresh[0], fresh[1]
    y = apply_aut(grid_aut(spec, {row: r1, r1: row}, {}), x)
    z = apply_aut(grid_aut(spec, {row: r2, r2: row}, {}), x)
    return x ^ y ^ z, row, (r1, r2)


# -- random-graph blocks: two-summand colour split ------------------------


CLAIM_RADO_H2 = (
    "an adjacent and a non-adjacent witness give two-step sums of opposite "
    "colours under the within-block adjacency colouring"
)


def rado_h2_witness(spec: ModelSpec, family: Sequence[FinSet], support: FinSet) -> Report:
    from .rado import adjacent, extension_witness, is_partial_iso, structure_for

    params = spec_params(spec)
    support = frozenset(support)
    members = tuple(sorted({frozenset(y) for y in family}, key=fs_key))
    params.update({"verify": "rado-h2", "support": sorted(support), "family_size": len(members)})
    if spec.kind not in ("rado", "ordered-rado") or spec.arity != 2:
        return _error("fm", CLAIM_RADO_H2, params, "this replay needs an arity-2 random-graph model")
    structure = structure_for(spec)
    colouring = block_adjacency_colouring(spec)
    if not is_support(spec, support, encode_family(members)):
        return _error("fm", CLAIM_RADO_H2, params, "declared support is refuted for the family")
    member_set = set(members)
    escaping = [y for y in members if not y <= support]
    if not escaping:
        return _error("fm", CLAIM_RADO_H2, params, "no member escapes the declared support")
    y = escaping[0]
    a = min(y - support)
    block = structure.block_index(a)
    f_prime = frozenset(v for v in (support | y) if structure.block_index(v) == block) - {a}
    f0 = sorted(v for v in f_prime if not adjacent(structure, v, a))
    f1 = sorted(v for v in f_prime if adjacent(structure, v, a))
    position = _order_slot(spec, structure, support | y, a)
    b = extension_witness(structure, adjacent_to=f1 + [a], nonadjacent_to=f0,
                          block=block, exclude=support | y, position=position)
    c = extension_witness(structure, adjacent_to=f1, nonadjacent_to=f0 + [a],
                          block=block, exclude=support | y, position=position)
    if b is None or c is None:
        raise NoExtension("the block is unsaturated for the adjacency demands of this replay")
    fixed = {t: t for t in (support | y) - {a}}
    pi = {**fixed, a: b}
    sigma = {**fixed, a: c}
    if not is_partial_iso(structure, pi) or not is_partial_iso(structure, sigma):
        return Report("fm", CLAIM_RADO_H2, FAIL, params=params,
                      witnesses={"error": "replay maps are not partial isomorphisms",
                                 "pi": sorted(pi.items())})
    z = apply_aut(PartialAut(spec, pi), y)
    w = apply_aut(PartialAut(spec, sigma), y)
    if z not in member_set or w not in member_set:
        return Report("fm", CLAIM_RADO_H2, FAIL, params=params,
                      witnesses={"error": "moved member left the family",
                                 "z": sorted(z), "w": sorted(w)})
    first = y ^ z
    second = y ^ w
    if first != frozenset((a, b)) or second != frozenset((a, c)):
        return Report("fm", CLAIM_RADO_H2, FAIL, params=params,
                      witnesses={"first": sorted(first), "second": sorted(second)})
    col1, col2 = colouring(first), colouring(second)
    if (col1, col2) != (1, 0):
        return Report("fm", CLAIM_RADO_H2, FAIL, params=params,
                      witnesses={"first": sorted(first), "second": sorted(second),
                                 "colours": [col1, col2]})
    return Report(
        "fm",
        CLAIM_RADO_H2,
        PASS,
        params=params,
        witnesses={"y": sorted(y), "a": a, "b": b, "c": c,
                   "adjacent_demands": f1, "nonadjacent_demands": f0,
                   "first_sum": sorted(first), "second_sum": sorted(second),
                   "colours": [col1, col2]},
    )


def _order_slot(spec: ModelSpec, structure, pinned: FinSet, a: int):
    """For ordered structures: the open order interval around ``a`` cut out
    by the pinned atoms of its block, as an (after, before) pair."""
    if spec.kind != "ordered-rado":
        return None
    from .rado import vertex_position

    block = structure.block_index(a)
    here = [v for v in pinned if structure.block_index(v) == block and v != a]
    pa = vertex_position(structure, a)
    below = [v for v in here if vertex_position(structure, v) < pa]
    above = [v for v in here if vertex_position(structure, v) > pa]
    after = max(below, key=lambda v: vertex_position(structure, v), default=None)
    before = min(above, key=lambda v: vertex_position(structure, v), default=None)
    return (after, before)


# -- random-graph blocks: independent and complete k-sets -----------------


CLAIM_RADO_RK = (
    "demand-built chains yield an independent and a complete k-set inside "
    "one atom class, coloured 0 and 1"
)


def rado_rk_witness(spec: ModelSpec, k: int, x_set: FinSet, support: FinSet) -> Report:
    from .rado import extension_witness, has_edge, is_partial_iso, structure_for

    params = spec_params(spec)
    support = frozenset(support)
    x_set = frozenset(x_set)
    params.update({"verify": "rado-rk", "support": sorted(support), "k": k, "x": sorted(x_set)})
    if spec.kind not in ("rado", "ordered-rado"):
        return _error("fm", CLAIM_RADO_RK, params, "this replay needs a random-graph model")
    structure = structure_for(spec)
    n = spec.arity
    colouring = block_adjacency_colouring(spec)
    if k < n:
        # the colouring cannot see any hyperedge on fewer than n vertices:
        # a fresh block is monochromatic outright
        fresh_blocks = [m for m in range(structure.num_blocks())
                        if not any(structure.block_index(v) == m for v in support)]
        if not fresh_blocks:
            return _error("fm", CLAIM_RADO_RK, params, "no block avoids the declared support")
        m = fresh_blocks[0]
        block = list(structure.block_range(m))
        subsets = list(combinations(block, k))
        colours = {colouring(frozenset(t)) for t in subsets}
        if colours != {0}:
            return Report("fm", CLAIM_RADO_RK, FAIL, params=params,
                          witnesses={"error": "a small subset saw a hyperedge", "block": m})
        sample = dict(zip(subsets[0], subsets[1]))
        if not is_partial_iso(structure, sample):
            return Report("fm", CLAIM_RADO_RK, FAIL, params=params,
                          witnesses={"error": "sample pair map failed", "map": sorted(sample.items())})
        return Report("fm", CLAIM_RADO_RK, PASS, params=params,
                      witnesses={"block": m, "subsets_scanned": len(subsets),
                                 "colour": 0, "sample_map": sorted(sample.items())})
    if not is_support(spec, support, x_set):
        return _error("fm", CLAIM_RADO_RK, params, "declared support is refuted for the vertex set")
    if x_set <= support:
        return _error("fm", CLAIM_RADO_RK, params, "the vertex set must escape the declared support")
    a = min(x_set - support)
    block = structure.block_index(a)
    f_prime = sorted(v for v in support if structure.block_index(v) == block)
    f0, f1 = [], []
    for t in combinations(f_prime, n - 1):
        (f1 if has_edge(structure, frozenset(t) | {a}) else f0).append(frozenset(t))
    a_chain, b_chain = [a], [a]
    for _ in range(k - 1):
        neg = list(f0) + [frozenset(t) for t in combinations(a_chain, n - 1)]
        nxt = extension_witness(structure, adjacent_to=f1, nonadjacent_to=neg,
                                block=block, exclude=set(f_prime) | set(a_chain))
        if nxt is None:
            raise NoExtension("no independent-chain witness available in the block")
        a_chain.append(nxt)
        pos = list(f1) + [frozenset(t) for t in combinations(b_chain, n - 1)]
        nxt = extension_witness(structure, adjacent_to=pos, nonadjacent_to=f0,
                                block=block, exclude=set(f_prime) | set(b_chain))
        if nxt is None:
            raise NoExtension("no complete-chain witness available in the block")
        b_chain.append(nxt)
    a_set, b_set = frozenset(a_chain), frozenset(b_chain)
    independent = not any(has_edge(structure, frozenset(t)) for t in combinations(a_chain, n))
    complete = all(has_edge(structure, frozenset(t)) for t in combinations(b_chain, n))
    in_class = all(v in x_set for v in a_chain + b_chain)
    col_a, col_b = colouring(a_set), colouring(b_set)
    if not (independent and complete and in_class and (col_a, col_b) == (0, 1)):
        return Report("fm", CLAIM_RADO_RK, FAIL, params=params,
                      witnesses={"independent_chain": sorted(a_set), "complete_chain": sorted(b_set),
                                 "independent": independent, "complete": complete,
                                 "inside_class": in_class, "colours": [col_a, col_b]})
    return Report(
        "fm",
        CLAIM_RADO_RK,
        PASS,
        params=params,
        witnesses={"a": a, "independent_chain": sorted(a_set), "complete_chain": sorted(b_set),
                   "adjacent_demands": [sorted(t) for t in f1],
                   "nonadjacent_demands": [sorted(t) for t in f0],
                   "colours": [col_a, col_b]},
    )


# -- standard instances for the command line ------------------------------


def standard_h3_family(spec: ModelSpec, support: FinSet) -> tuple:
    """The orbit of the first doubleton under the support's stabilizer."""
    seed_pair = frozenset((0, 1))
    return tuple(sorted(orbit(spec, frozenset(support), seed_pair), key=fs_key))


def standard_rado_h2_family(spec: ModelSpec) -> tuple:
    """Every adjacent pair of the first block, as a family of doubletons."""
    from .rado import adjacent, structure_for

    structure = structure_for(spec)
    block = list(structure.block_range(0))
    return tuple(sorted((frozenset((u, v)) for u, v in combinations(block, 2)
                         if adjacent(structure, u, v)), key=fs_key))


def standard_rado_rk_class(spec: ModelSpec, support: FinSet) -> FinSet:
    """The full atom class (same demand profile) of the least free vertex."""
    from .fm import _rado_profile
    from .rado import structure_for

    structure = structure_for(spec)
    support = frozenset(support)
    free = [v for v in range(structure.vertices) if v not in support]
    if not free:
        raise InvalidInput("the support covers every vertex")
    target = _rado_profile(spec, support, free[0])
    return frozenset(v for v in free if _rado_profile(spec, support, v) == target)


def standard_scenario(spec: ModelSpec, verify: str, support: FinSet = frozenset(),
                      n: int = 2, k: int = 3, sweep_bound: int = 2, seed: int = 0) -> Report:
    """Build and run the stock instance of one verifier at the given sizes."""
    import random

    support = frozenset(support)
    if verify == "r-infinite":
        c = meets_support_colouring(spec, support, n)
        return verify_first_fraenkel_rn(spec, c, support)
    if verify == "h3":
        return verify_h3_witness(spec, standard_h3_family(spec, support), support)
    if verify == "russell":
        domain = min(5, spec.num_pairs())
        choice = {m: 2 * m for m in range(domain)}
        return russell_obstruction(spec, choice, support, sweep_bound=sweep_bound)
    if verify == "b-family":
        return verify_b_family(spec, n)
    if verify == "omega-h":
        seq = []
        for level in range(min(2, spec.num_blocks())):
            member = frozenset(min(spec.block_atoms(i)) for i in range(level + 1))
            seq.append((member,))
        return omega_fraenkel_h_obstruction(spec, seq, support)
    if verify == "grid":
        x = frozenset((spec.grid_id(0, 0), spec.grid_id(0, 1), spec.grid_id(1, 0)))
        rng = random.Random(seed)
        rows = list(range(spec.rows))
        cols = list(range(spec.cols))
        rng.shuffle(rows)
        rng.shuffle(cols)
        sigma = {i: rows[i] for i in range(spec.rows)}
        rho = {j: cols[j] for j in range(spec.cols)}
        return grid_invariance_check(spec, x, sigma, rho)
    if verify == "rado-h2":
        return rado_h2_witness(spec, standard_rado_h2_family(spec), support)
    if verify == "rado-rk":
        if k >= spec.arity:
            x_set = standard_rado_rk_class(spec, support)
        else:
            x_set = frozenset()
        return rado_rk_witness(spec, k, x_set, support)
    raise InvalidInput(f"unknown verification target {verify!r}")


# -- fresh-process reverification ------------------------------------------


def reverify_report(report: dict) -> bool:
    """Recompute every asserted fact of a PASS report from its own witnesses.

    Returns False the moment any echoed witness fails to reproduce its
    claim; trusts nothing but the parameters and witnesses themselves.
    """
    params = report["params"]
    wit = report["witnesses"]
    if report["verdict"] != PASS:
        raise InvalidInput("only PASS reports carry re-verifiable witnesses")
    spec = spec_from_params(params)
    support = frozenset(params.get("support", ()))
    target = params["verify"]
    if target == "r-infinite":
        c = meets_support_colouring(spec, support, params["n"])
        rest = sorted(set(range(spec.atoms)) - support)
        subsets = [frozenset(t) for t in combinations(rest, params["n"])]
        if len(subsets) != wit["subsets_scanned"]:
            return False
        if any(c(s) != wit["colour"] for s in subsets):
            return False
        pi = {a: b for a, b in wit["map"]}
        x, y = (frozenset(p) for p in wit["sample_pair"])
        if set(pi) & support or apply_aut(pi, x) != y:
            return False
        return apply_aut(pi, encode_colouring(c)) == encode_colouring(c)
    if target == "h3":
        family = frozenset(frozenset(m) for m in wit["family"])
        y, z, w = (frozenset(wit[key]) for key in ("y", "z", "w"))
        a, b, c = wit["a"], wit["b"], wit["c"]
        total = frozenset(wit["sum"])
        ok = (
            z == (y - {a}) | {b}
            and w == (y - {a}) | {c}
            and total == y ^ z ^ w
            and len(total) == len(y) + 2
            and {z, w} <= family
            and mod4_colour_value(len(y)) == wit["colour_before"]
            and mod4_colour_value(len(total)) == wit["colour_after"]
            and wit["colour_before"] != wit["colour_after"]
        )
        if not ok:
            return False
        return is_support(spec, support, encode_family(family))
    if target == "russell":
        choice = {m: atom for m, atom in params["choice"]}
        m = wit["declared_refutation"]["pair"]
        if spec.pair_atoms(m) & support or m not in choice:
            return False
        g_h = frozenset(kuratowski(ordinal(i), atom) for i, atom in choice.items())
        swap = {a: b for a, b in wit["declared_refutation"]["swap"]}
        return apply_aut(swap, g_h) != g_h
    if target == "b-family":
        level_n, level_n1, drop = b_family(spec, params["n"])
        if len(level_n) != wit["size_n"] or len(level_n1) != wit["size_n_plus_1"]:
            return False
        fibers = {b: 0 for b in level_n}
        for image in drop.values():
            fibers[image] += 1
        return set(fibers.values()) == {wit["fiber_size"]}
    if target == "omega-h":
        fam = tuple(frozenset(m) for m in wit["moved_family"])
        a, b = wit["a"], wit["b"]
        union: FinSet = frozenset()
        for member in fam:
            union = union | member
        if a not in union or b in union or {a, b} & support:
            return False
        if spec.block_index(a) != spec.block_index(b):
            return False
        swap = {a: b, b: a}
        return apply_aut(swap, encode_family(fam)) != encode_family(fam)
    if target == "grid":
        x = frozenset(params["x"])
        sigma = {i: v for i, v in params["sigma"]}
        rho = {j: v for j, v in params["rho"]}
        image = apply_aut(grid_aut(spec, sigma, rho), x)
        if sorted(image) != wit["image"]:
            return False
        before = grid_weight(x, spec.rows, spec.cols)
        total = frozenset(wit["bump_sum"])
        return (
            before == wit["weight"]
            and grid_weight(image, spec.rows, spec.cols) == before
            and grid_weight(total, spec.rows, spec.cols) == wit["bump_weight"]
            and wit["bump_weight"] == before + 2
            and wit["colour_before"] != wit["colour_after"]
        )
    if target == "rado-h2":
        from .rado import adjacent, structure_for

        structure = structure_for(spec)
        colouring = block_adjacency_colouring(spec)
        y = frozenset(wit["y"])
        a, b, c = wit["a"], wit["b"], wit["c"]
        first, second = frozenset(wit["first_sum"]), frozenset(wit["second_sum"])
        demands_ok = (
            adjacent(structure, a, b)
            and not adjacent(structure, a, c)
            and all(adjacent(structure, b, v) and adjacent(structure, c, v) for v in wit["adjacent_demands"])
            and not any(adjacent(structure, b, v) or adjacent(structure, c, v) for v in wit["nonadjacent_demands"])
        )
        return (
            demands_ok
            and first == frozenset((a, b))
            and second == frozenset((a, c))
            and first == y ^ ((y - {a}) | {b})
            and [colouring(first), colouring(second)] == wit["colours"]
            and adjacent(structure, *sorted(first))
        )
    if target == "rado-rk":
        from .rado import has_edge, structure_for

        structure = structure_for(spec)
        colouring = block_adjacency_colouring(spec)
        if "independent_chain" not in wit:
            block = list(structure.block_range(wit["block"]))
            return all(colouring(frozenset(t)) == 0 for t in combinations(block, params["k"]))
        a_set = frozenset(wit["independent_chain"])
        b_set = frozenset(wit["complete_chain"])
        x_set = frozenset(params["x"])
        n = spec.arity
        return (
            not any(has_edge(structure, frozenset(t)) for t in combinations(sorted(a_set), n))
            and all(has_edge(structure, frozenset(t)) for t in combinations(sorted(b_set), n))
            and a_set | b_set <= x_set
            and [colouring(a_set), colouring(b_set)] == wit["colours"]
        )
    raise InvalidInput(f"no reverifier for target {target!r}")
