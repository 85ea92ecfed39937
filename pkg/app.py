"""
l2polytopes command line.

    python app.py sweep --q-max 61 --rank 4
    python app.py polytope --q 11
    python app.py tc --table1
    python app.py tc --pres my_group.txt
    python app.py census --q 11
    python app.py lemma3 --q 25 --qprime 5
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# --- Local Imports ---
import src.config as config
from src.census import census_frame, run_census, verify_lemma3
from src.errors import L2PolyError, TupleError
from src.field import field_new
from src.group import PSL, build_group
from src.polytope import (
    build_lattice, check_diamond, edge_graph, export_lattice, flags,
    identify_facet_and_vertex_figure, is_complete, is_self_dual, petrie_orders,
)
from src.presentation import NAMED, NAMED_ORDERS, named, parse, parse_words, table1_rows
from src.reports import rows_frame, summary_frame
from src.search import dedupe, run_search
from src.sweep import SweepConfig, rows_to_dicts, run_sweep, sweep_q_list
from src.todd_coxeter import enumerate_cosets, image_order, permutation_image, probe_structure
from src.utils import parse_int_list, prime_power, set_global_level, setup_logger

logger = setup_logger("CLI")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _group(q: int):
    pp = prime_power(q)
    if pp is None:
        raise argparse.ArgumentTypeError(f"q={q} is not a prime power")
    return build_group(field_new(*pp), PSL)


def _q_arg(text: str) -> int:
    q = int(text)
    if prime_power(q) is None:
        raise argparse.ArgumentTypeError(f"{q} is not a prime power")
    return q


def _q_list_arg(text: str) -> List[int]:
    return [_q_arg(str(q)) for q in parse_int_list(text)]


# ==========================================
# 1. SWEEP
# ==========================================
def cmd_sweep(args) -> int:
    ranks = parse_int_list(args.rank)
    cfg = SweepConfig(
        q_list=sweep_q_list(args.q, args.q_max),
        ranks=ranks,
        workers=args.workers,
        output=Path(args.output),
        use_db=not args.no_db,
        verbose=args.verbose,
    )
    rows = run_sweep(cfg, emit=print)
    summary = summary_frame(rows_frame(rows_to_dicts(rows), cfg.q_list, cfg.ranks))
    summary.to_csv(cfg.output / "summary.csv", index=False)
    print(summary.to_string(index=False), file=sys.stderr)
    return EXIT_OK


# ==========================================
# 2. POLYTOPE
# ==========================================
def _fmt(values) -> str:
    return "(" + ",".join(map(str, values)) + ")"


def cmd_polytope(args) -> int:
    ctx = _group(args.q)
    report = run_search(ctx, args.rank, workers=args.workers, verbose=args.verbose)
    classes = dedupe(ctx, report.records, allow_duality=True)
    if not classes:
        logger.error(f"no rank-{args.rank} string C-group in PSL(2,{args.q})")
        print(f"q={args.q}: no rank-{args.rank} string C-group")
        return EXIT_MISMATCH

    for index, cls in enumerate(classes):
        tup = cls.representative
        lattice = build_lattice(ctx, tup)
        graph = edge_graph(lattice)
        if is_complete(graph):
            graph_text = f"K{graph.number_of_nodes()}"
        else:
            degrees = sorted({d for _, d in graph.degree()})
            regular = f", {degrees[0]}-regular" if len(degrees) == 1 else ""
            graph_text = f"{graph.number_of_nodes()} vertices, {graph.number_of_edges()} edges{regular}"
        parts = [f"type = {{{','.join(map(str, cls.type))}}}",
                 f"f = {_fmt(lattice.f_vector)}",
                 f"edge graph = {graph_text}"]
        if lattice.rank == 4:
            parts.append(f"petrie = {_fmt(petrie_orders(ctx, tup))}")
            facet, vertex_figure = identify_facet_and_vertex_figure(ctx, tup)
            parts.append(f"facet = {facet} (order {facet.order}), vertex-figure = {vertex_figure} "
                         f"(order {vertex_figure.order})")
        parts.append("self-dual" if is_self_dual(ctx, tup) else "not self-dual")

        diamond = check_diamond(lattice, sample=config.DIAMOND_SAMPLES)
        flag_count = len(flags(lattice)) if args.count_flags else None
        parts.append("diamond ok" if diamond else "diamond FAILED")
        if flag_count is not None:
            parts.append(f"flags = {flag_count}")
        print(f"q={args.q}: " + "; ".join(parts))

        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        suffix = "" if index == 0 else f"_{index}"
        path = out / f"lattice_q{args.q}{suffix}.json"
        with open(path, "w") as fh:
            json.dump(export_lattice(lattice), fh)
        logger.info(f"lattice written to {path}")
        if not diamond or (flag_count is not None and flag_count != lattice.group_order):
            return EXIT_MISMATCH
    return EXIT_OK


# ==========================================
# 3. COSET ENUMERATION
# ==========================================
def _table1(args) -> int:
    mismatches = 0
    for row in table1_rows():
        result = enumerate_cosets(row.presentation(), max_cosets=args.max_cosets)
        order = result.index if result.closed else None
        probe = None
        if result.closed and row.structure is not None:
            probe = probe_structure(permutation_image(result), row.structure)
        ok = order == row.order and probe is not False
        mismatches += not ok
        verdict = "ok" if ok else "MISMATCH"
        probe_text = "" if probe is None else f", {row.structure} {'confirmed' if probe else 'REFUTED'}"
        print(f"{row.label:<24} order {order} (expected {row.order}){probe_text}  {verdict}")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_tc(args) -> int:
    if args.table1:
        return _table1(args)

    expected: Optional[int] = None
    check_expected = False
    if args.named:
        pres = named(args.named)
        expected, check_expected = NAMED_ORDERS[args.named], True
    else:
        with open(args.pres or args.presentation) as fh:
            pres = parse(fh.read())

    subgroup = parse_words(args.subgroup, pres) if args.subgroup else []
    result = enumerate_cosets(pres, subgroup, max_cosets=args.max_cosets)
    payload = result.to_json()
    if result.closed and not subgroup and args.image:
        payload["image_order"] = image_order(result)
    print(json.dumps(payload))

    if check_expected:
        if expected is None:
            return EXIT_OK if not result.closed else EXIT_MISMATCH
        return EXIT_OK if result.closed and result.index == expected else EXIT_MISMATCH
    return EXIT_OK


# ==========================================
# 4. CENSUS
# ==========================================
def cmd_census(args) -> int:
    ctx = _group(args.q)
    families = parse_int_list(args.families) if args.families else None
    reports = run_census(ctx, families)
    frame = census_frame(reports)
    if args.output:
        frame.to_csv(args.output, index=False)
    print(frame.to_csv(index=False), end="")
    return EXIT_OK if all(rep.match for rep in reports) else EXIT_MISMATCH


def cmd_lemma3(args) -> int:
    ctx = _group(args.q)
    report = verify_lemma3(ctx, args.qprime)
    print(f"{report.dihedral_intersections} dihedral intersections of order > 4")
    print(report.summary())
    for label, count in sorted(report.profiles.items()):
        print(f"  {label}: {count}")
    return EXIT_OK if report.ok else EXIT_MISMATCH


# ==========================================
# 5. ARGUMENTS
# ==========================================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l2polytopes",
                                     description="Regular polytopes from PSL(2,q) string C-groups")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="debug logging and progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="search and classify over many q")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--q", type=_q_list_arg, help="comma-separated prime powers")
    which.add_argument("--q-max", type=int, help="every prime power up to this bound")
    p.add_argument("--rank", default="4", help="comma-separated ranks from {3,4,5}")
    p.add_argument("--workers", type=int, default=config.DEFAULT_WORKERS)
    p.add_argument("--output", default=str(config.SWEEP_DIR))
    p.add_argument("--no-db", action="store_true", help="do not store the run in SQLite")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("polytope", parents=[common], help="face lattice and invariants at one q")
    p.add_argument("--q", type=_q_arg, required=True)
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--workers", type=int, default=config.DEFAULT_WORKERS)
    p.add_argument("--output", default=str(config.DATA_DIR))
    p.add_argument("--count-flags", action="store_true", help="enumerate every flag")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("tc", parents=[common], help="Todd-Coxeter coset enumeration")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("presentation", nargs="?", help="presentation file")
    source.add_argument("--table1", action="store_true", help="all ten facet / vertex-figure amalgams")
    source.add_argument("--named", choices=sorted(NAMED))
    source.add_argument("--pres", metavar="FILE", help="presentation file (same as the positional form)")
    p.add_argument("--subgroup", help="comma-separated subgroup generator words")
    p.add_argument("--max-cosets", type=int, default=config.DEFAULT_MAX_COSETS)
    p.add_argument("--image", action="store_true", help="also report the order of the permutation image")
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("census", parents=[common], help="Dickson subgroup census")
    p.add_argument("--q", type=_q_arg, required=True)
    p.add_argument("--families", help="comma-separated family numbers 1..11")
    p.add_argument("--output", help="CSV file")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("lemma3", parents=[common], help="intersections of subfield subgroups")
    p.add_argument("--q", type=_q_arg, required=True)
    p.add_argument("--qprime", type=_q_arg, required=True)
    p.set_defaults(func=cmd_lemma3)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_global_level(logging.DEBUG)
    try:
        return args.func(args)
    except TupleError as e:
        logger.error(str(e))
        return EXIT_MISMATCH
    except L2PolyError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
