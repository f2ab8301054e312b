"""Corridors: entrance sets, the induced room partition, and gluing.

A corridor is a set of entrance rooms, pairwise adjacent, such that deleting
the edges between entrances splits the rooms into one apartment per
entrance, every apartment is closed under minimal sequences, and every
minimal route between two apartments passes through their two entrances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    CorridorLabelMismatch,
    InvalidGraph,
    ModeMismatch,
    NotACorridor,
    NotNested,
)
from .graph import DISTANCE, PROBABILISTIC, LabeledDigraph, minimal_sequences
from .matrix import SquareMatrix
from .poly import Polynomial, poly


@dataclass(frozen=True)
class CorridorSet:
    entrances: tuple
    label: Polynomial

    def __post_init__(self):
        ent = tuple(str(e) for e in self.entrances)
        if not ent:
            raise ValueError("a corridor needs at least one entrance")
        if len(set(ent)) != len(ent):
            raise ValueError("duplicate entrance rooms")
        object.__setattr__(self, "entrances", ent)
        object.__setattr__(self, "label", poly(self.label))

    @property
    def width(self) -> int:
        return len(self.entrances)

    def check_label(self, mode: str) -> None:
        label = self.label
        if mode == PROBABILISTIC:
            if not label.is_constant() or not 0 <= label.constant_term() <= 1:
                raise ValueError(f"corridor label {label} is not a probability")
        elif not (label.is_monomial() and label.degree() == 1):
            raise ValueError(f"corridor label {label} is not a single variable")

    def check_against(self, g: LabeledDigraph) -> None:
        """Every entrance is a room and every entrance pair carries the label."""
        missing = [e for e in self.entrances if e not in g.rooms]
        if missing:
            raise InvalidGraph(f"entrances {missing} are not rooms of the graph")
        self.check_label(g.mode)
        for a, b in combinations(self.entrances, 2):
            for x, y in ((a, b), (b, a)):
                if g.has_edge(x, y) and g.label(x, y) != self.label:
                    raise CorridorLabelMismatch(
                        f"edge ({x}, {y}) is labeled {g.label(x, y)}, corridor label is {self.label}")


@dataclass(frozen=True)
class CorridorPartition:
    """Blocks of rooms; ``entrances[k]`` maps corridor index -> entrance in block k."""

    blocks: tuple
    entrances: tuple = field(default=())

    def block_of(self, room: str) -> int:
        for k, b in enumerate(self.blocks):
            if room in b:
                return k
        raise KeyError(room)

    def as_sets(self) -> frozenset:
        return frozenset(frozenset(b) for b in self.blocks)

    def to_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "entrances": [{str(i): r for i, r in sorted(e.items())} for e in self.entrances],
        }


def _components(g: LabeledDigraph, removed: set) -> list:
    seen = set()
    comps = []
    for start in g.rooms:
        if start in seen:
            continue
        comp = {start}
        todo = [start]
        seen.add(start)
        while todo:
            r = todo.pop()
            for s in g.neighbors(r):
                if (r, s) in removed or s in seen:
                    continue
                seen.add(s)
                comp.add(s)
                todo.append(s)
        comps.append(comp)
    return comps


def _ordered(g: LabeledDigraph, rooms) -> tuple:
    rooms = set(rooms)
    return tuple(r for r in g.rooms if r in rooms)


def block_is_closed(g: LabeledDigraph, block) -> tuple | None:
    """First pair of the block with a minimal sequence leaving it, else None."""
    inside = set(block)
    for a in _ordered(g, inside):
        for b in _ordered(g, inside):
            if a == b:
                continue
            for seq in minimal_sequences(g, a, b).sorted():
                if not inside.issuperset(seq):
                    return (a, b)
    return None


def corridor_partition(g: LabeledDigraph, u: CorridorSet) -> CorridorPartition:
    entrances = u.entrances
    for e in entrances:
        if e not in g.rooms:
            raise InvalidGraph(f"entrance {e} is not a room")
    for a, b in combinations(entrances, 2):
        if not g.has_edge(a, b):
            raise NotACorridor(1, (a, b), "entrances are not adjacent")
        if not g.has_edge(b, a):
            raise NotACorridor(1, (b, a), "entrances are not adjacent")
    removed = {(a, b) for a in entrances for b in entrances if a != b}
    comps = _components(g, removed)
    by_entrance = {}
    for comp in comps:
        inside = [e for e in entrances if e in comp]
        if len(inside) != 1:
            raise NotACorridor(1, tuple(inside[:2]), "apartment does not hold exactly one entrance")
        by_entrance[inside[0]] = comp
    blocks = [_ordered(g, by_entrance[e]) for e in entrances]

    for block in blocks:
        bad = block_is_closed(g, block)
        if bad is not None:
            raise NotACorridor(2, bad, "a minimal sequence leaves the apartment")

    for i, j in ((i, j) for i in range(len(blocks)) for j in range(len(blocks)) if i != j):
        ci, cj = entrances[i], entrances[j]
        for a in blocks[i]:
            la = g.length(a, ci)
            for b in blocks[j]:
                if g.length(a, b) != la + 1 + g.length(cj, b):
                    raise NotACorridor(3, (a, b), f"minimal route does not pass through {ci} and {cj}")
    return CorridorPartition(tuple(blocks), tuple({0: e} for e in entrances))


def check_lemma_conditions(g: LabeledDigraph, us: Sequence[CorridorSet], blocks) -> list:
    """Violations of the multi-corridor partition conditions (empty when sound)."""
    problems = []
    covered = [r for b in blocks for r in b]
    if sorted(covered) != sorted(g.rooms):
        problems.append("blocks do not partition the rooms")
    for k, block in enumerate(blocks):
        hits = [len(set(u.entrances) & set(block)) for u in us]
        if not any(hits):
            problems.append(f"block {k} meets no corridor")
        if any(h > 1 for h in hits):
            problems.append(f"block {k} meets a corridor twice")
        bad = block_is_closed(g, block)
        if bad is not None:
            problems.append(f"block {k} is not closed under minimal sequences at {bad}")
    return problems


def multi_corridor_partition(g: LabeledDigraph, us: Sequence[CorridorSet]) -> CorridorPartition:
    us = list(us)
    if not us:
        return CorridorPartition((g.rooms,), ({},))
    for a, b in combinations(range(len(us)), 2):
        if set(us[a].entrances) & set(us[b].entrances):
            raise ValueError(f"corridors {a} and {b} share entrances")
    first = corridor_partition(g, us[0])
    blocks = [set(b) for b in first.blocks]
    for i, u in enumerate(us[1:], start=1):
        holders = {k for k, b in enumerate(blocks) for e in u.entrances if e in b}
        if len(holders) != 1:
            raise NotNested(f"corridor {i} straddles blocks {sorted(holders)}")
        (k,) = holders
        sub = corridor_partition(g, u)
        pieces = [blocks[k] & set(p) for p in sub.blocks]
        pieces = [p for p in pieces if p]
        blocks[k:k + 1] = pieces
    blocks = [_ordered(g, b) for b in blocks]
    expected = sum(u.width for u in us) - len(us) + 1
    if len(blocks) != expected:
        raise NotNested(f"expected {expected} blocks, got {len(blocks)}")
    problems = check_lemma_conditions(g, us, blocks)
    if problems:
        raise NotNested("; ".join(problems))
    entrances = tuple(
        {i: e for i, u in enumerate(us) for e in u.entrances if e in b} for b in blocks)
    return CorridorPartition(tuple(blocks), entrances)


# -- block matrices ------------------------------------------------------------


@dataclass(frozen=True)
class BlockGlueSpec:
    matrices: tuple
    first_index: tuple
    q: Polynomial

    def __post_init__(self):
        mats = tuple(self.matrices)
        first = tuple(self.first_index) if self.first_index else tuple(m.labels[0] for m in mats)
        if len(first) != len(mats):
            raise ValueError("one distinguished index per matrix")
        seen = set()
        for m, f in zip(mats, first):
            if seen & set(m.labels):
                raise ValueError("matrix index sets must be disjoint")
            seen |= set(m.labels)
            if f not in m.labels:
                raise ValueError(f"distinguished index {f!r} not in its matrix")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "first_index", first)
        object.__setattr__(self, "q", poly(self.q))


def build_Mq(spec: BlockGlueSpec) -> SquareMatrix:
    mats, first, q = spec.matrices, spec.first_index, spec.q
    if len(mats) == 1:
        return mats[0]
    where = {}
    for h, m in enumerate(mats):
        for i, l in enumerate(m.labels):
            where[l] = (h, i)
    pivot = [m.index(f) for m, f in zip(mats, first)]

    def entry(a, b):
        h, i = where[a]
        k, j = where[b]
        if h == k:
            return mats[h].rows[i][j]
        return q * mats[h].rows[i][pivot[h]] * mats[k].rows[pivot[k]][j]

    labels = [l for m in mats for l in m.labels]
    return SquareMatrix.from_function(labels, entry)


# -- gluing graphs ------------------------------------------------------------


def _check_label_for_mode(label: Polynomial, mode: str) -> None:
    if mode == PROBABILISTIC:
        if not label.is_constant() or not 0 <= label.constant_term() <= 1:
            raise ValueError(f"{label} is not a probability")
    elif not label.is_monomial():
        raise ValueError(f"{label} is not a monomial")


def glue_graphs(parts: Sequence[LabeledDigraph], entrances: Sequence[str], label) -> LabeledDigraph:
    """Disjoint union of ``parts`` with a corridor joining one entrance per part.

    In probabilistic mode the corridor edges break the row sums; the result
    is structural only and the caller relabels before using it as a model.
    """
    parts = list(parts)
    if len(entrances) != len(parts):
        raise ValueError("one entrance per part")
    modes = {p.mode for p in parts}
    if len(modes) != 1:
        raise ModeMismatch(f"parts mix modes {sorted(modes)}")
    (mode,) = modes
    label = poly(label)
    _check_label_for_mode(label, mode)
    rooms, edges = [], {}
    for p, e in zip(parts, entrances):
        if e not in p.rooms:
            raise InvalidGraph(f"entrance {e} is not a room of its part")
        if set(rooms) & set(p.rooms):
            raise InvalidGraph("parts share room ids")
        rooms.extend(p.rooms)
        edges.update(p.edges)
    for a in entrances:
        for b in entrances:
            if a != b:
                edges[(a, b)] = label
    return LabeledDigraph(tuple(rooms), edges, mode)


def glue_system(parts: Mapping[str, LabeledDigraph], corridors: Sequence[CorridorSet],
                sep: str = ":") -> LabeledDigraph:
    """Union of named parts (rooms renamed ``name:room``) joined by corridors.

    Corridor entrances must already use the prefixed names.
    """
    modes = {p.mode for p in parts.values()}
    if len(modes) != 1:
        raise ModeMismatch(f"parts mix modes {sorted(modes)}")
    (mode,) = modes
    rooms, edges = [], {}
    for name, p in parts.items():
        renamed = p.renamed({r: f"{name}{sep}{r}" for r in p.rooms})
        rooms.extend(renamed.rooms)
        edges.update(renamed.edges)
    for u in corridors:
        _check_label_for_mode(u.label, mode)
        for a in u.entrances:
            if a not in rooms:
                raise InvalidGraph(f"entrance {a} is not a room of the system")
            for b in u.entrances:
                if a != b:
                    if (a, b) in edges:
                        raise InvalidGraph(f"corridor edge ({a}, {b}) already present")
                    edges[(a, b)] = u.label
    return LabeledDigraph(tuple(rooms), edges, mode)


def block_kernels(kernel: SquareMatrix, partition: CorridorPartition) -> list:
    return [kernel.submatrix(b) for b in partition.blocks]


__all__ = [
    "BlockGlueSpec",
    "CorridorPartition",
    "CorridorSet",
    "DISTANCE",
    "block_is_closed",
    "build_Mq",
    "check_lemma_conditions",
    "corridor_partition",
    "glue_graphs",
    "glue_system",
    "multi_corridor_partition",
]
