"""Command-line entry point: ``corridor-det <command> ...``.

Every command except ``random`` prints one JSON run report::

    {"command": ..., "status": "ok" | "violation" | "error", "payload": ...}

Exit codes: 0 ok, 1 violation, 2 unreadable input, 3 size cap, 4 other error.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import arrangements as arr_mod
from . import factorization as fact
from .corridor import glue_system, multi_corridor_partition
from .errors import (
    AxiomViolation,
    CorridorDetError,
    CorridorLabelMismatch,
    InvalidGraph,
    NotACorridor,
    NotAcyclic,
    NotNested,
    ParseError,
    SizeCap,
)
from .formats import (
    arrangement_from_json,
    arrangement_to_json,
    corridor_to_json,
    corridors_from_json,
    dumps,
    graph_from_json,
    graph_to_json,
    is_arrangement,
    is_system,
    load_json,
    matrix_to_json,
    system_from_json,
    system_to_json,
)
from .generators import (
    random_arrangement,
    random_distance_system,
    random_int_blocks,
    random_probabilistic_system,
    random_tree,
)
from .graph import LabeledDigraph, extended_kernel, validate_axioms
from .matrix import SquareMatrix, det
from .poly import parse_poly

EXIT = {"ok": 0, "violation": 1}
VIOLATIONS = (AxiomViolation, NotACorridor, NotNested, NotAcyclic, CorridorLabelMismatch)


@dataclass
class RunReport:
    command: str
    status: str
    payload: Any

    def to_json(self) -> dict:
        return {"command": self.command, "status": self.status, "payload": self.payload}


class _Failure(Exception):
    def __init__(self, status: str, code: int, message: str):
        self.status, self.code, self.message = status, code, message


# -- loading -------------------------------------------------------------------


def load_graph(path) -> tuple[LabeledDigraph, list]:
    """A graph plus any corridors bundled with it.

    Accepts a graph file, a system file (parts glued by their corridors) or
    an arrangement file (its chamber graph).  A graph file may carry its
    own ``"corridors"`` list.
    """
    obj = load_json(path)
    if is_system(obj):
        parts, corridors = system_from_json(obj)
        if any(isinstance(p, arr_mod.Arrangement) for p in parts.values()):
            return arr_mod.arrangement_system(parts, corridors), corridors
        return glue_system(parts, corridors), corridors
    if is_arrangement(obj):
        return arr_mod.chamber_graph(arrangement_from_json(obj)), []
    bundled = corridors_from_json(obj["corridors"]) if isinstance(obj, dict) and "corridors" in obj else []
    return graph_from_json(obj), bundled


def load_corridors(path, bundled: list) -> list:
    if path is None:
        return bundled
    return corridors_from_json(load_json(path))


def blocks_from_json(obj: dict):
    blocks = []
    for b in obj["blocks"]:
        blocks.append(SquareMatrix.from_rows([[parse_poly(str(x)) for x in r] for r in b["rows"]], b["labels"]))
    return blocks, parse_poly(str(obj.get("q", "q"))), obj.get("first_index")


# -- commands ----------------------------------------------------------------------


def cmd_validate(args) -> RunReport:
    obj = load_json(args.graph)
    if isinstance(obj, dict) and "blocks" in obj:
        blocks, _, _ = blocks_from_json(obj)
        return RunReport("validate", "ok", {"blocks": [b.n for b in blocks]})
    g, _ = load_graph(args.graph)
    report = validate_axioms(g)
    return RunReport("validate", "ok" if report.ok else "violation", report.to_json())


def cmd_partition(args) -> RunReport:
    g, bundled = load_graph(args.graph)
    us = load_corridors(args.corridors, bundled)
    part = multi_corridor_partition(g, us)
    return RunReport("partition", "ok", part.to_json())


def cmd_det(args) -> RunReport:
    g, _ = load_graph(args.graph)
    kernel = extended_kernel(g)
    value = det(kernel.matrix, args.algo)
    return RunReport("det", "ok", {"algo": args.algo, "matrix": matrix_to_json(kernel.matrix), "det": str(value)})


def cmd_factor(args) -> RunReport:
    theorem = args.theorem
    if theorem == "lemat":
        report = fact.verify_lemat(args.n)
    elif theorem == "thmat":
        blocks, q, first = blocks_from_json(load_json(args.graph))
        report = fact.verify_thmat(blocks, q, first, args.algo)
    elif theorem == "varchenko":
        report = arr_mod.verify_varchenko(arrangement_from_json(load_json(args.graph)), args.algo)
    elif theorem == "prop2":
        obj = load_json(args.graph)
        if not is_system(obj):
            raise ParseError("prop2 needs a system file of arrangements")
        parts, corridors = system_from_json(obj)
        corridors = load_corridors(args.corridors, corridors)
        report = arr_mod.verify_prop_arrangement_corridor(parts, corridors, args.algo)
    else:
        g, bundled = load_graph(args.graph)
        us = load_corridors(args.corridors, bundled)
        if theorem == "th1":
            report = fact.verify_th1(g, us, args.algo)
        elif theorem == "th2":
            report = fact.verify_th2(g, us, args.algo)
        elif theorem == "ledi":
            report = arr_mod.verify_ledi(g, args.algo)
        else:
            report = arr_mod.verify_prop_acyclic(g, us, args.algo)
    return RunReport(f"factor {theorem}", "ok" if report.equal else "violation", report.to_json())


def cmd_arrange(args) -> RunReport:
    a = arrangement_from_json(load_json(args.arrangement))
    what = args.what
    if what == "faces":
        payload = [{"sign": f.sign, "chamber": f.is_chamber, "witness": [str(x) for x in f.witness]}
                   for f in arr_mod.enumerate_faces(a)]
        for item in payload:
            if not item["chamber"]:
                item["weight"] = str(arr_mod.face_weight(a, item["sign"]))
                item["multiplicity"] = arr_mod.face_multiplicity(a, item["sign"])
    elif what == "chambers":
        payload = [c.sign for c in arr_mod.chambers(a)]
    elif what == "graph":
        payload = graph_to_json(arr_mod.chamber_graph(a))
    else:
        report = arr_mod.verify_varchenko(a, args.algo)
        return RunReport("arrange varchenko", "ok" if report.equal else "violation", report.to_json())
    return RunReport(f"arrange {what}", "ok", payload)


def cmd_random(args) -> Any:
    rng = random.Random(args.seed)
    kind = args.kind
    if kind == "blocks":
        blocks = random_int_blocks(rng, max_blocks=args.size or 4)
        return {
            "blocks": [{"labels": list(b.labels), "rows": b.to_text()} for b in blocks],
            "q": "q",
            "first_index": [b.labels[0] for b in blocks],
        }
    if kind == "tree":
        return graph_to_json(random_tree(rng, args.size or rng.randint(2, 8)))
    if kind == "arrangement":
        return arrangement_to_json(random_arrangement(rng, args.size or 3))
    if args.mode == "probabilistic":
        g, corridors = random_probabilistic_system(rng, max_corridors=args.size or 3)
        return {**graph_to_json(g), "corridors": [corridor_to_json(u) for u in corridors]}
    parts, corridors = random_distance_system(rng, max_corridors=args.size or 3, pool=("x", "y"))
    return system_to_json(parts, corridors)


# -- wiring --------------------------------------------------------------------------


ALGOS = ["auto", "laplace", "dfree", "bareiss"]
THEOREMS = ["lemat", "thmat", "th1", "th2", "ledi", "varchenko", "prop1", "prop2"]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corridor-det", description=__doc__.splitlines()[0])
    p.add_argument("--output", choices=["json", "pretty"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the walking-cat axioms of a graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("partition", help="apartments induced by corridors")
    s.add_argument("graph")
    s.add_argument("corridors", nargs="?")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("det", help="determinant of the extended kernel")
    s.add_argument("graph")
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("factor", help="check a determinant factorization")
    s.add_argument("graph", nargs="?")
    s.add_argument("corridors", nargs="?")
    s.add_argument("--theorem", choices=THEOREMS, required=True)
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.add_argument("--n", type=int, default=4, help="matrix size for --theorem lemat")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("arrange", help="faces, chambers and determinants of an arrangement")
    s.add_argument("what", choices=["faces", "chambers", "graph", "varchenko"])
    s.add_argument("arrangement")
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.set_defaults(func=cmd_arrange)

    s = sub.add_parser("random", help="write a seeded random instance")
    s.add_argument("--kind", choices=["blocks", "tree", "corridor-system", "arrangement"], required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--size", type=int, default=None)
    s.add_argument("--mode", choices=["distance", "probabilistic"], default="distance")
    s.add_argument("-o", "--out", default=None)
    s.set_defaults(func=cmd_random)
    return p


def _classify(exc: Exception) -> _Failure:
    if isinstance(exc, SizeCap):
        return _Failure("error", 3, str(exc))
    if isinstance(exc, VIOLATIONS):
        return _Failure("violation", 1, str(exc))
    if isinstance(exc, (ParseError, InvalidGraph, KeyError, ValueError, OSError)):
        return _Failure("error", 2, f"{type(exc).__name__}: {exc}")
    return _Failure("error", 4, f"{type(exc).__name__}: {exc}")


def _command_name(args) -> str:
    if args.command == "factor":
        return f"factor {args.theorem}"
    if args.command == "arrange":
        return f"arrange {args.what}"
    return args.command


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = args.output == "pretty"
    if args.command == "factor" and args.theorem != "lemat" and not args.graph:
        parser.error(f"--theorem {args.theorem} needs an input file")
    try:
        result = args.func(args)
    except (CorridorDetError, ValueError, KeyError, OSError) as exc:
        fail = _classify(exc)
        report = RunReport(_command_name(args), fail.status, {"error": fail.message})
        sys.stdout.write(dumps(report.to_json(), pretty))
        return fail.code
    if args.command == "random":
        text = dumps(result, pretty=True)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    sys.stdout.write(dumps(result.to_json(), pretty))
    return EXIT.get(result.status, 4)


if __name__ == "__main__":
    sys.exit(main())
