#!/usr/bin/env python3
"""
Command-line entry point of Cube Amalgam.

Every subcommand reads JSON documents, runs one library operation and writes
canonical JSON to standard output (or a run directory for ``fraisse``).
Exit codes: 0 on success, 1 when the mathematics refuses the request or the
result is negative, 2 on input errors. Logging and progress bars go to
standard error so standard output stays byte-deterministic.
"""

import argparse
import logging
import os
import sys
from typing import Callable, Dict, List

from amalgamation.errors import AmalgamationPreconditionError, AmalgamationRefused, LabelUniverseExhausted
from amalgamation.extension import extend_cube
from amalgamation.sharpness import DEFAULT_BUDGET, search_failure_witness
from amalgamation.strategymgr import UnknownFamilyError, families, get_strategy
from becker.cubesearch import dimension_table, find_cube_embedding
from becker.digraph import FamilyMismatchError, build_digraph, digraph_to_dot
from becker.plotting import digraph_figure, write_figure
from becker.sampling import generic_labeled_sample
from cubes.validators import is_reducible, validate_disjoint, validate_faces
from fraisse.certificate import certify_irreducible
from fraisse.config import (
    DEFAULT_CAP,
    DEFAULT_ELEMENT_CAP,
    DEFAULT_LABELS,
    DEFAULT_TIME_CAP_SECONDS,
    RunConfig,
    RunConfigError,
)
from fraisse.coverage import coverage_report
from fraisse.errors import RunAbortedError
from fraisse.runner import run
from helpers.manifest import (
    is_run_directory,
    manifest_document,
    read_manifest,
    run_directory,
    run_files,
    verify_run,
    write_run,
)
from helpers.serialization import (
    StructureDocumentError,
    canonical_json,
    cube_from_document,
    cube_to_document,
    disjoint_embedding_to_document,
    embedding_pairs,
    is_cube_document,
    load_document,
    structure_from_document,
    structure_to_document,
)
from models.cube import CubeShapeError
from models.structure import StructureError, Structure
from models.types import Document
from structures.embeddings import count_embeddings, embeds
from structures.theta import theta

APP_NAME = "Cube Amalgam"

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_INPUT = 2

INPUT_ERRORS = (
    StructureDocumentError,
    StructureError,
    CubeShapeError,
    RunConfigError,
    UnknownFamilyError,
    FamilyMismatchError,
    AmalgamationPreconditionError,
    OSError,
)

logger = logging.getLogger(__name__)


def emit(doc: Document) -> None:
    sys.stdout.write(canonical_json(doc) + "\n")


def read_document(path: str) -> Document:
    with open(path, "rb") as f:
        return load_document(f.read())


def read_structure(path: str) -> Structure:
    return structure_from_document(read_document(path))


def cmd_validate(args: argparse.Namespace) -> int:
    doc = read_document(args.file)
    if is_cube_document(doc):
        c = cube_from_document(doc)
        report = validate_faces(c, get_strategy(doc["family"], doc["n"]))
        if not report.structural_errors:
            report = report.merge(validate_disjoint(c))
        kind = "cube"
    else:
        s = structure_from_document(doc)
        report = get_strategy(doc["family"], doc["n"]).validate(s)
        kind = "structure"
    emit(dict(report.to_document(), kind=kind))
    return EXIT_OK if report.ok else EXIT_REFUSED


def cmd_theta(args: argparse.Namespace) -> int:
    emit(theta(read_structure(args.file)).to_document())
    return EXIT_OK


def cmd_embed(args: argparse.Namespace) -> int:
    a, b = read_structure(args.source), read_structure(args.target)
    e = embeds(a, b)
    doc = {"embeds": e is not None, "embedding": embedding_pairs(e) if e is not None else None}
    if args.count:
        doc["count"] = count_embeddings(a, b)
    emit(doc)
    return EXIT_OK


def _family(args: argparse.Namespace, doc: Document) -> str:
    return args.family or doc["family"]


def cmd_amalgamate(args: argparse.Namespace) -> int:
    doc = read_document(args.file)
    family = _family(args, doc)
    p = cube_from_document(doc)
    strategy = get_strategy(family, args.n or doc["n"])
    emit(cube_to_document(strategy.amalgamate(p), family))
    return EXIT_OK


def cmd_extend(args: argparse.Namespace) -> int:
    doc = read_document(args.file)
    family = _family(args, doc)
    c = cube_from_document(doc)
    if args.rho not in c.structures:
        raise CubeShapeError(f"{args.rho} is not a face of the cube")
    target = read_structure(args.target)
    h = embeds(c[args.rho], target)
    if h is None:
        logger.error("face %d does not embed into %s", args.rho, args.target)
        return EXIT_REFUSED
    strategy = get_strategy(family, args.n or doc["n"])
    cube, e = extend_cube(c, args.rho, h, strategy, check=args.check)
    emit({"cube": cube_to_document(cube, family), "embedding": disjoint_embedding_to_document(e)})
    return EXIT_OK


def cmd_fraisse(args: argparse.Namespace) -> int:
    config = RunConfig(
        family=args.family,
        n=args.n,
        k=args.k,
        rounds=args.rounds,
        cap=args.cap,
        labels=args.labels,
        seed=args.seed,
        tasks_per_round=args.tasks_per_round,
        element_cap=args.element_cap,
        time_cap_seconds=args.time_cap,
        keep_stages=args.all_stages,
    )
    strategy = get_strategy(config.family, config.n)
    aborted = None
    try:
        state = run(config, strategy, progress=not args.quiet)
    except RunAbortedError as e:
        logger.error("run aborted: %s", e)
        state, aborted = e.state, str(e)
    certificate = certify_irreducible(state)
    coverage = coverage_report(state, strategy)
    if args.out:
        manifest = write_run(run_directory(args.out, config.seed), state, certificate, coverage, aborted=aborted)
    else:
        files = run_files(state, certificate, coverage)
        manifest = manifest_document(state, certificate, coverage, files, aborted)
    emit(manifest)
    if aborted is not None or (args.strict and not certificate.passed):
        return EXIT_REFUSED
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    manifest = read_manifest(args.run)
    problems = verify_run(args.run)
    if not problems and manifest["certificate"]["status"] == "PASS":
        cube = cube_from_document(read_document(os.path.join(args.run, "final-cube.json")))
        recorded = read_document(os.path.join(args.run, "certificate.json"))
        for w in recorded["witnesses"]:
            if w["element"] not in cube.image(w["sigma"]) or w["element"] in cube.image(w["tau"]):
                problems.append(f"certificate: element {w['element']} does not witness {w['pair']}")
        reducible = is_reducible(cube)
        if reducible is not None:
            problems.append(f"certificate: recorded PASS but the cube is reducible at {list(reducible)}")
    emit({"ok": not problems, "problems": problems})
    return EXIT_OK if not problems else EXIT_REFUSED


def _collect(paths: List[str]) -> List[Structure]:
    family: List[Structure] = []
    for path in paths:
        if os.path.isdir(path):
            if is_run_directory(path):
                family.extend(_from_document(read_document(os.path.join(path, "final-cube.json"))))
                continue
            for name in sorted(os.listdir(path)):
                if name.endswith(".json"):
                    family.extend(_from_document(read_document(os.path.join(path, name))))
        else:
            family.extend(_from_document(read_document(path)))
    return family


def _from_document(doc: Document) -> List[Structure]:
    if is_cube_document(doc):
        c = cube_from_document(doc)
        return [c[sigma] for sigma in c.faces()]
    return [structure_from_document(doc)]


def cmd_dimension(args: argparse.Namespace) -> int:
    d = build_digraph(_collect(args.paths), threads=args.threads, progress=not args.quiet)
    table = dimension_table(d, args.kmax)
    found = table[table["found"]]
    estimate = int(found["k"].max()) if not found.empty else -1
    witness = find_cube_embedding(d, estimate) if estimate >= 0 else None
    if args.figure:
        write_figure(digraph_figure(d), args.figure)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(digraph_to_dot(d))
    emit(
        {
            "estimate": estimate,
            "kmax": args.kmax,
            "digraph": d.to_document(),
            "witness": witness.to_document() if witness is not None else None,
            "table": [
                {"k": int(row.k), "found": bool(row.found), "vertices": row.vertices}
                for row in table.itertuples()
            ],
        }
    )
    return EXIT_OK


def cmd_counterexample(args: argparse.Namespace) -> int:
    strategy = get_strategy("bkl", args.n)
    cap = args.cap if args.cap is not None else 2 * args.n + 2
    witness = search_failure_witness(strategy, args.n + 1, cap, args.budget, progress=not args.quiet)
    if witness is None:
        logger.error("no failure witness verified for n=%d up to size %d", args.n, cap)
        return EXIT_REFUSED
    emit(dict(witness.to_document(), cube=cube_to_document(witness.cube)))
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    strategy = get_strategy(args.family, args.n)
    s = generic_labeled_sample(strategy, args.size, args.labels, args.patterns, seed=args.seed)
    emit(structure_to_document(s, args.family))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "theta": cmd_theta,
    "embed": cmd_embed,
    "amalgamate": cmd_amalgamate,
    "extend": cmd_extend,
    "fraisse": cmd_fraisse,
    "verify": cmd_verify,
    "dimension": cmd_dimension,
    "counterexample": cmd_counterexample,
    "sample": cmd_sample,
}


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(arg_list: list[str] | None = None) -> int:
    """
    Run one subcommand and return its exit code.

    Args:
        arg_list (list[str] | None): Command-line arguments; None uses sys.argv.

    Returns:
        int: 0 on success, 1 on a refusal or negative result, 2 on input errors.
    """
    args = parse_args(arg_list)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (AmalgamationRefused, LabelUniverseExhausted) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_REFUSED
    except INPUT_ERRORS as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT


def parse_args(arg_list: list[str] | None):
    """
    Parse command-line arguments.

    Args:
        arg_list (list[str] | None): List of command-line arguments to parse.
            If None, uses sys.argv.

    Returns:
        argparse.Namespace: Parsed command-line arguments.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log INFO (-v) or DEBUG (-vv) to stderr")
    common.add_argument("-q", "--quiet", action="store_true", help="Disable progress bars")

    parser = argparse.ArgumentParser(prog="cube-amalgam", description=APP_NAME)
    sub = parser.add_subparsers(dest="command", required=True)
    family_choices = families()

    p = sub.add_parser("validate", parents=[common], help="Validate a structure or cube document")
    p.add_argument("file")

    p = sub.add_parser("theta", parents=[common], help="Print the formula characterizing embeddings of a structure")
    p.add_argument("file")

    p = sub.add_parser("embed", parents=[common], help="Find an embedding between two structures")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--count", action="store_true", help="Also count all embeddings")

    p = sub.add_parser("amalgamate", parents=[common], help="Complete a disjoint partial cube")
    p.add_argument("file")
    p.add_argument("--family", choices=family_choices, default=None, help="Defaults to the document's family")
    p.add_argument("--n", type=int, default=None, help="Defaults to the document's n")

    p = sub.add_parser("extend", parents=[common], help="Extend a cube along an embedding of one face")
    p.add_argument("file")
    p.add_argument("--rho", type=int, required=True, help="Face mask to extend")
    p.add_argument("--target", required=True, help="Structure document the face embeds into")
    p.add_argument("--family", choices=family_choices, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--check", action="store_true", help="Validate every intermediate partial cube")

    p = sub.add_parser("fraisse", parents=[common], help="Build a cube by a Fraïssé construction")
    p.add_argument("--family", choices=family_choices, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--labels", type=int, default=DEFAULT_LABELS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--tasks-per-round", type=int, default=None, help="Run at most this many tasks per round (default: drain the queue)"
    )
    p.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    p.add_argument("--time-cap", type=int, default=DEFAULT_TIME_CAP_SECONDS, help="Wall-time cap in seconds")
    p.add_argument("--out", default=None, help="Directory receiving <seed>-<timestamp>/")
    p.add_argument("--all-stages", action="store_true", help="Write every stage cube")
    p.add_argument("--strict", action="store_true", help="Exit 1 when the certificate fails")

    p = sub.add_parser("verify", parents=[common], help="Re-hash and re-check a run directory")
    p.add_argument("run")

    p = sub.add_parser("dimension", parents=[common], help="Estimate the dimension of a family")
    p.add_argument("paths", nargs="+", help="Structure or cube files, run directories or directories of documents")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--figure", default=None, help="Write a Plotly HTML figure")
    p.add_argument("--dot", default=None, help="Write a DOT rendering")

    p = sub.add_parser("counterexample", parents=[common], help="Partial (n+1)-cube without a BKL_n completion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help="Largest completion size (default: 2n+2)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("sample", parents=[common], help="Finite generic labelled sample")
    p.add_argument("--family", choices=family_choices, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--patterns", type=int, required=True)
    p.add_argument("--labels", type=int, default=DEFAULT_LABELS)
    p.add_argument("--seed", type=int, default=0)

    return parser.parse_args(arg_list)


if __name__ == "__main__":
    sys.exit(main())
