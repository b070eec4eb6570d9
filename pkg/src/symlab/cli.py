"""Command-line front end: one subcommand per engine, canonical JSON reports.

Configuration can come from a flat key=value file (``--config``); explicit
flags always win.  Reports go to ``--out`` or stdout and are byte-stable
for a fixed command, seed, and worker count; timing is printed to stderr
only.  Exit codes: 0 for PASS or an expected absence, 1 for FAIL, 2 for
errors, 3 for inconclusive outcomes (saturation, exhausted budgets).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import hindman, ramsey, witnesses
from .colourings import (
    Partition,
    grid_colouring,
    log2_colouring,
    mod4_colouring,
    partition_colouring,
    table_colouring,
)
from .errors import (
    BudgetExceeded,
    NoExtension,
    NotFound,
    SymlabError,
    Unclassifiable,
)
from .finset import Colouring, fs_key, fs_up_to, is_monochromatic
from .models import ModelSpec
from .rado import (
    build_structure,
    extend_partial_iso,
    extension_witness,
    load_structure,
    save_structure,
)
from .report import ABSENT, ERROR, INCONCLUSIVE, PASS, Report, emit_report

INT_COLOURINGS = {
    "zero": lambda j: 0,
    "one": lambda j: 1,
    "parity-half": lambda j: (j // 2) & 1,
    "parity-log2": lambda j: (j.bit_length() - 1) & 1,
}


def parse_atom_list(text: str) -> frozenset:
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(tok) for tok in text.split(","))


def parse_blocks(text: str) -> Partition:
    return Partition(tuple(parse_atom_list(part) for part in text.split(";") if part.strip()))


def parse_family_json(text: str) -> tuple:
    data = json.loads(text)
    return tuple(frozenset(member) for member in data)


def load_int_colouring(name: str):
    if name in INT_COLOURINGS:
        return INT_COLOURINGS[name]
    if name.startswith("table:"):
        with open(name[len("table:"):], encoding="ascii") as fh:
            table = {int(k): v for k, v in json.load(fh).items()}
        return lambda j: table[j]
    raise SymlabError(f"unknown integer colouring {name!r}")


def load_set_colouring(name: str, args) -> Colouring:
    ground = args.atoms
    if name == "log2":
        return log2_colouring(ground)
    if name == "mod4":
        return mod4_colouring(ground)
    if name == "partition":
        if not args.blocks:
            raise SymlabError("the partition colouring needs --blocks")
        return partition_colouring(parse_blocks(args.blocks), ground=ground)
    if name == "grid":
        if not (args.rows and args.cols):
            raise SymlabError("the grid colouring needs --rows and --cols")
        return grid_colouring(args.rows, args.cols)
    if name.startswith("table:"):
        with open(name[len("table:"):], encoding="ascii") as fh:
            payload = json.load(fh)
        return table_colouring(
            payload.get("ground", ground),
            payload.get("arity"),
            [(frozenset(entry[0]), entry[1]) for entry in payload["entries"]],
        )
    raise SymlabError(f"unknown colouring {name!r}")


# -- handlers -----------------------------------------------------------


def run_ramsey(args) -> Report:
    provider = ramsey.RamseyProvider(max_table_m=args.max_table_m)
    value, flag = ramsey.ramsey_number(args.m, provider)
    return Report(
        "ramsey",
        "least clique size forcing a one-coloured pair clique of the requested order",
        PASS,
        params={"m": args.m, "max_table_m": args.max_table_m},
        witnesses={"value": value},
        exactness=flag.value,
        seed=args.seed,
    )


def run_f_bound(args) -> Report:
    provider = ramsey.RamseyProvider(max_table_m=args.max_table_m)
    value, flag = ramsey.f_bound(args.n, args.k, provider)
    return Report(
        "f-bound",
        "value of the counting recursion at (n, k)",
        PASS,
        params={"n": args.n, "k": args.k, "max_table_m": args.max_table_m},
        witnesses={"value": value},
        exactness=flag.value,
        seed=args.seed,
    )


def run_schur(args) -> Report:
    d = load_int_colouring(args.colouring)
    claim = "least one-coloured even triple (m, m', m+m') within the bound"
    params = {"bound": args.bound, "colouring": args.colouring}
    triple = ramsey.schur_triple(d, args.bound)
    if triple is None:
        return Report("schur", claim, ABSENT, params=params,
                      witnesses={"note": "no monochromatic even triple within the bound"}, seed=args.seed)
    m, mp, s = triple
    n, k = ramsey.schur_decompose((max(m, mp), min(m, mp), s))
    return Report("schur", claim, PASS, params=params,
                  witnesses={"triple": list(triple), "colour": d(m), "n": n, "k": k}, seed=args.seed)


def run_fu_search(args) -> Report:
    c = load_set_colouring(args.colouring, args)
    claim = "a pairwise-disjoint family of the requested size with one-coloured unions"
    params = {"atoms": args.atoms, "size": args.size, "colouring": args.colouring}
    found = ramsey.fu_family_search(c, args.size, budget=args.budget, workers=args.workers)
    if found is None:
        return Report("fu-search", claim, ABSENT, params=params,
                      witnesses={"note": "complete search found no such family"}, seed=args.seed)
    colour = is_monochromatic(c, fs_up_to(found, len(found)))
    return Report("fu-search", claim, PASS, params=params,
                  witnesses={"family": [sorted(y) for y in found], "colour": colour}, seed=args.seed)


def run_hindman(args) -> Report:
    if args.verb == "check-mono":
        family = parse_family_json(args.family)
        violation = hindman.fs4_mono_check(family)
        claim = "sums of up to four members share one log2 colour"
        params = {"verb": args.verb, "family": [sorted(y) for y in family]}
        if violation is None:
            colour = (len(min(family, key=fs_key)).bit_length() - 1) & 1
            return Report("hindman", claim, PASS, params=params,
                          witnesses={"colour": colour}, seed=args.seed)
        return Report("hindman", claim, "FAIL", params=params,
                      witnesses={"kind": violation.kind,
                                 "pair": [sorted(w) for w in violation.witnesses],
                                 "details": violation.details}, seed=args.seed)
    if args.verb == "check-bound":
        family = parse_family_json(args.family)
        violation = hindman.fs4_count_bound(family, args.n)
        claim = "fewer members of each cardinality than the counting recursion allows"
        params = {"verb": args.verb, "family": [sorted(y) for y in family], "n": args.n}
        if violation is None:
            return Report("hindman", claim, PASS, params=params, witnesses={}, seed=args.seed)
        return Report("hindman", claim, "FAIL", params=params,
                      witnesses={"details": violation.details}, seed=args.seed)
    if args.verb == "star":
        base = parse_atom_list(args.base)
        family = hindman.star_family(base, args.through)
        sums = fs_up_to(family, 2)
        contained = all(len(s) == 2 and s <= base for s in sums)
        claim = "two-summand sums of the doubletons through a point stay inside the base pairs"
        return Report("hindman", claim, PASS if contained else "FAIL",
                      params={"verb": args.verb, "base": sorted(base), "through": args.through},
                      witnesses={"family": [sorted(y) for y in family],
                                 "sum_count": len(sums)}, seed=args.seed)
    if args.verb == "schur-fs3":
        g = load_int_colouring(args.g)
        family, colour, trace = hindman.schur_to_fs3(g, args.bound, args.rows, args.cols, args.size)
        claim = "a grid family whose sums of up to three members share one colour by cardinality"
        return Report("hindman", claim, PASS,
                      params={"verb": args.verb, "g": args.g, "bound": args.bound,
                              "rows": args.rows, "cols": args.cols, "size": args.size},
                      witnesses={"family": [sorted(y) for y in family], "colour": colour,
                                 "triple": list(trace["triple"]), "n": trace["n"], "k": trace["k"]},
                      seed=args.seed)
    raise SymlabError(f"unknown hindman verb {args.verb!r}")


def make_model(args) -> ModelSpec:
    return ModelSpec(
        kind=args.model,
        atoms=args.atoms,
        block_size=args.block_size,
        rows=args.rows,
        cols=args.cols,
        arity=args.arity,
        seed=args.structure_seed,
        demand_size=args.demand_size,
    )


def run_fm(args) -> Report:
    spec = make_model(args)
    support = parse_atom_list(args.support) if args.support else frozenset()
    report = witnesses.standard_scenario(
        spec,
        args.verify,
        support=support,
        n=args.n,
        k=args.k,
        sweep_bound=args.sweep_bound,
        seed=args.seed,
    )
    report.seed = args.seed
    return report


def run_rado(args) -> Report:
    if args.verb == "build":
        structure = build_structure(
            args.arity, args.vertices, seed=args.structure_seed,
            demand_size=args.demand_size, block_size=args.block_size,
            ordered=args.ordered,
        )
        if args.structure_out:
            save_structure(structure, args.structure_out)
        return Report("rado", "a structure certified for all demands up to the declared size", PASS,
                      params={"verb": "build", "arity": args.arity, "vertices": args.vertices,
                              "structure_seed": args.structure_seed, "demand_size": args.demand_size,
                              "block_size": args.block_size, "ordered": args.ordered},
                      witnesses={"certified_demand": structure.certified_demand,
                                 "hyperedge_count": None if structure.hyperedges is None
                                 else len(structure.hyperedges)},
                      seed=args.seed)
    structure = load_structure(args.structure)
    if args.verb == "query":
        position = None
        if args.after is not None or args.before is not None:
            position = (args.after, args.before)
        witness = extension_witness(
            structure,
            adjacent_to=[parse_atom_list(d) for d in args.adjacent.split(";")] if args.adjacent else (),
            nonadjacent_to=[parse_atom_list(d) for d in args.nonadjacent.split(";")] if args.nonadjacent else (),
            position=position,
        )
        claim = "least vertex realizing the adjacency demands in the prescribed position"
        params = {"verb": "query", "adjacent": args.adjacent, "nonadjacent": args.nonadjacent,
                  "after": args.after, "before": args.before}
        if witness is None:
            return Report("rado", claim, ABSENT, params=params,
                          witnesses={"note": "the finite structure is unsaturated for this demand"},
                          seed=args.seed)
        return Report("rado", claim, PASS, params=params, witnesses={"vertex": witness}, seed=args.seed)
    if args.verb == "extend":
        mapping = {}
        if args.map:
            for item in args.map.split(","):
                k, v = item.split(":")
                mapping[int(k)] = int(v)
        extended = extend_partial_iso(structure, mapping, args.target)
        return Report("rado", "one back-and-forth extension step of a partial isomorphism", PASS,
                      params={"verb": "extend", "map": sorted(mapping.items()), "target": args.target},
                      witnesses={"map": sorted(extended.items()),
                                 "image": extended[args.target]},
                      seed=args.seed)
    raise SymlabError(f"unknown rado verb {args.verb!r}")


def run_colour(args) -> Report:
    c = load_set_colouring(args.name, args)
    value = c(parse_atom_list(args.set))
    return Report("colour", "value of the named colouring on the given set", PASS,
                  params={"name": args.name, "set": sorted(parse_atom_list(args.set))},
                  witnesses={"value": value}, seed=args.seed)


HANDLERS = {
    "ramsey": run_ramsey,
    "f-bound": run_f_bound,
    "schur": run_schur,
    "fu-search": run_fu_search,
    "hindman": run_hindman,
    "fm": run_fm,
    "rado": run_rado,
    "colour": run_colour,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symlab", description=__doc__)
    parser.add_argument("--config", help="flat key=value file; explicit flags win")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", default=None, help="report file (stdout when omitted)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ramsey", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-table-m", type=int, default=4, dest="max_table_m")

    p = sub.add_parser("f-bound", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-table-m", type=int, default=4, dest="max_table_m")

    p = sub.add_parser("schur", parents=[common])
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--colouring", default="zero")

    p = sub.add_parser("fu-search", parents=[common])
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--colouring", default="log2")
    p.add_argument("--blocks", default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)

    p = sub.add_parser("hindman", parents=[common])
    p.add_argument("verb", choices=["check-mono", "check-bound", "star", "schur-fs3"])
    p.add_argument("--family", default="[]", help="JSON array of atom arrays")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--base", default="", help="comma-separated atoms")
    p.add_argument("--through", type=int, default=0)
    p.add_argument("--g", default="zero")
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--rows", type=int, default=6)
    p.add_argument("--cols", type=int, default=30)
    p.add_argument("--size", type=int, default=4)

    p = sub.add_parser("fm", parents=[common])
    p.add_argument("--model", required=True,
                   choices=["fraenkel1", "fraenkel2", "omega-fraenkel", "grid",
                            "mostowski", "rado", "ordered-rado"])
    p.add_argument("--verify", required=True,
                   choices=["r-infinite", "h3", "russell", "b-family", "omega-h",
                            "grid", "rado-h2", "rado-rk"])
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--block-size", type=int, default=None, dest="block_size")
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--support", default="")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--sweep-bound", type=int, default=2, dest="sweep_bound")
    p.add_argument("--structure-seed", type=int, default=0, dest="structure_seed")
    p.add_argument("--demand-size", type=int, default=2, dest="demand_size")

    p = sub.add_parser("rado", parents=[common])
    p.add_argument("verb", choices=["build", "query", "extend"])
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--vertices", type=int, default=32)
    p.add_argument("--block-size", type=int, default=None, dest="block_size")
    p.add_argument("--demand-size", type=int, default=2, dest="demand_size")
    p.add_argument("--structure-seed", type=int, default=0, dest="structure_seed")
    p.add_argument("--ordered", action="store_true")
    p.add_argument("--structure-out", default=None, dest="structure_out")
    p.add_argument("--structure", default=None, help="structure file for query/extend")
    p.add_argument("--adjacent", default="", help="semicolon-separated demand tuples")
    p.add_argument("--nonadjacent", default="")
    p.add_argument("--after", type=int, default=None)
    p.add_argument("--before", type=int, default=None)
    p.add_argument("--map", default="", help="comma-separated source:image pairs")
    p.add_argument("--target", type=int, default=0)

    p = sub.add_parser("colour", parents=[common])
    p.add_argument("--name", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--atoms", type=int, default=64)
    p.add_argument("--blocks", default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)

    return parser


def apply_config(parser: argparse.ArgumentParser, argv) -> list:
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv
    defaults = {}
    with open(known.config, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            defaults[key.strip().replace("-", "_")] = value.strip()
    for action_parser in [parser] + list(parser._subparsers._group_actions[0].choices.values()):
        coerced = {}
        for action in action_parser._actions:
            if action.dest in defaults:
                raw = defaults[action.dest]
                coerced[action.dest] = action.type(raw) if action.type else raw
                action.required = False
        action_parser.set_defaults(**coerced)
    return argv


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    argv = apply_config(parser, argv)
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        report = HANDLERS[args.command](args)
    except NotFound as exc:
        report = Report(args.command, "requested witness", ABSENT,
                        witnesses={"note": str(exc)}, seed=getattr(args, "seed", 0))
    except (NoExtension, BudgetExceeded, Unclassifiable) as exc:
        report = Report(args.command, "requested witness", INCONCLUSIVE,
                        witnesses={"note": str(exc)}, seed=getattr(args, "seed", 0))
    except SymlabError as exc:
        report = Report(args.command, "requested witness", ERROR,
                        witnesses={"error": str(exc)}, seed=getattr(args, "seed", 0))
    report.timing_ms = (time.monotonic() - started) * 1000.0
    text = emit_report(report, args.out)
    if args.out is None:
        sys.stdout.write(text)
    print(f"{report.verdict} in {report.timing_ms:.1f} ms", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
