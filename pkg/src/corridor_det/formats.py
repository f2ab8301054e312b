"""JSON encodings for graphs, corridors, arrangements and corridor systems."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .arrangements import Arrangement, Hyperplane
from .corridor import CorridorSet
from .errors import CorridorDetError, ParseError
from .graph import DISTANCE, MODES, LabeledDigraph
from .matrix import SquareMatrix
from .poly import as_rational, parse_poly


def _need(obj: dict, key: str, kind: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{kind} is missing {key!r}")
    return obj[key]


def graph_from_json(obj: dict) -> LabeledDigraph:
    mode = _need(obj, "mode", "graph")
    if mode not in MODES:
        raise ParseError(f"unknown graph mode {mode!r}")
    rooms = [str(r) for r in _need(obj, "rooms", "graph")]
    edges = {}
    for e in _need(obj, "edges", "graph"):
        key = (str(_need(e, "from", "edge")), str(_need(e, "to", "edge")))
        if key in edges:
            raise ParseError(f"duplicate edge {key}")
        edges[key] = parse_poly(str(_need(e, "label", "edge")))
    try:
        return LabeledDigraph(tuple(rooms), edges, mode)
    except CorridorDetError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def graph_to_json(g: LabeledDigraph) -> dict:
    order = {r: i for i, r in enumerate(g.rooms)}
    edges = sorted(g.edges.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]]))
    return {
        "mode": g.mode,
        "rooms": list(g.rooms),
        "edges": [{"from": a, "to": b, "label": str(l)} for (a, b), l in edges],
    }


def corridor_from_json(obj: dict) -> CorridorSet:
    try:
        return CorridorSet(tuple(str(e) for e in _need(obj, "entrances", "corridor")),
                           parse_poly(str(_need(obj, "label", "corridor"))))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def corridors_from_json(obj: Any) -> list:
    """Accepts one corridor object, a list of them, or ``{"corridors": [...]}``."""
    if isinstance(obj, dict) and "corridors" in obj:
        obj = obj["corridors"]
    if isinstance(obj, dict):
        return [corridor_from_json(obj)]
    if isinstance(obj, list):
        return [corridor_from_json(o) for o in obj]
    raise ParseError("corridor file must hold an object or a list")


def corridor_to_json(u: CorridorSet) -> dict:
    return {"entrances": list(u.entrances), "label": str(u.label)}


def arrangement_from_json(obj: dict) -> Arrangement:
    dim = _need(obj, "dim", "arrangement")
    hs = []
    try:
        for h in _need(obj, "hyperplanes", "arrangement"):
            hs.append(Hyperplane(
                tuple(as_rational(str(c)) for c in _need(h, "normal", "hyperplane")),
                as_rational(str(h.get("offset", "0"))),
                str(_need(h, "plus", "hyperplane")),
                str(_need(h, "minus", "hyperplane")),
            ))
        return Arrangement(int(dim), tuple(hs), tuple(obj.get("chamber_order", ())))
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def arrangement_to_json(a: Arrangement) -> dict:
    out = {
        "dim": a.dim,
        "hyperplanes": [
            {"normal": [str(c) for c in h.normal], "offset": str(h.offset),
             "plus": h.plus_var, "minus": h.minus_var}
            for h in a.hyperplanes
        ],
    }
    if a.chamber_order:
        out["chamber_order"] = list(a.chamber_order)
    return out


def is_arrangement(obj: Any) -> bool:
    return isinstance(obj, dict) and "hyperplanes" in obj


def is_system(obj: Any) -> bool:
    return isinstance(obj, dict) and "parts" in obj


def system_from_json(obj: dict):
    """Named parts (graphs or arrangements, not mixed) plus corridors."""
    parts_raw = _need(obj, "parts", "system")
    if not isinstance(parts_raw, dict) or not parts_raw:
        raise ParseError("system parts must be a nonempty object")
    kinds = {is_arrangement(p) for p in parts_raw.values()}
    if len(kinds) != 1:
        raise ParseError("system parts mix graphs and arrangements")
    if kinds == {True}:
        parts = {str(k): arrangement_from_json(v) for k, v in parts_raw.items()}
    else:
        parts = {str(k): graph_from_json(v) for k, v in parts_raw.items()}
    return parts, corridors_from_json(obj.get("corridors", []))


def system_to_json(parts: dict, corridors: list) -> dict:
    enc = {}
    for k, p in parts.items():
        enc[k] = arrangement_to_json(p) if isinstance(p, Arrangement) else graph_to_json(p)
    return {"parts": enc, "corridors": [corridor_to_json(u) for u in corridors]}


def matrix_to_json(m: SquareMatrix) -> dict:
    return {"labels": [str(l) for l in m.labels], "rows": m.to_text()}


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


__all__ = [
    "DISTANCE",
    "arrangement_from_json",
    "arrangement_to_json",
    "corridor_from_json",
    "corridors_from_json",
    "dumps",
    "graph_from_json",
    "graph_to_json",
    "load_json",
    "matrix_to_json",
    "system_from_json",
    "system_to_json",
]
