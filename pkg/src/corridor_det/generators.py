"""Seeded random instances for the property suites and ``corridor-det random``."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .arrangements import Arrangement, Hyperplane, is_simple_line_arrangement
from .corridor import CorridorSet, glue_system
from .graph import DISTANCE, PROBABILISTIC, LabeledDigraph, extension_table
from .matrix import SquareMatrix
from .poly import ZERO, Polynomial


def random_int_blocks(rng: random.Random, max_blocks: int = 4, max_size: int = 4,
                      lo: int = -3, hi: int = 3, max_total: int | None = None) -> list:
    """Integer square blocks with disjoint labels ``b<k>_<i>``."""
    while True:
        r = rng.randint(1, max_blocks)
        sizes = [rng.randint(1, max_size) for _ in range(r)]
        if max_total is None or sum(sizes) <= max_total:
            break
    blocks = []
    for k, n in enumerate(sizes):
        rows = [[Polynomial.const(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        blocks.append(SquareMatrix.from_rows(rows, [f"b{k}_{i}" for i in range(n)]))
    return blocks


def random_poly(rng: random.Random, variables: Sequence[str] = ("x", "y"), max_terms: int = 2,
                max_degree: int = 1, lo: int = -3, hi: int = 3) -> Polynomial:
    out = ZERO
    for _ in range(rng.randint(0, max_terms)):
        exps = {v: rng.randint(0, max_degree) for v in variables}
        out = out + Polynomial.monomial(exps, rng.randint(lo, hi))
    return out


def random_poly_matrix(rng: random.Random, n: int, variables: Sequence[str] = ("x", "y"),
                       max_terms: int = 2, max_degree: int = 1) -> SquareMatrix:
    return SquareMatrix.from_rows(
        [[random_poly(rng, variables, max_terms, max_degree) for _ in range(n)] for _ in range(n)])


def _tree_shape(rng: random.Random, n: int) -> list:
    return [(rng.randrange(i), i) for i in range(1, n)]


def random_tree(rng: random.Random, n: int, prefix: str = "t", pool: Sequence[str] | None = None,
                max_degree: int = 2) -> LabeledDigraph:
    """Distance-mode tree on rooms ``0..n-1``.

    With no ``pool`` each edge direction gets its own variable
    (``<prefix><k>p`` / ``<prefix><k>m``); otherwise labels are random
    monomials over the pool.
    """
    rooms = tuple(str(i) for i in range(n))
    edges = {}
    for k, (a, b) in enumerate(_tree_shape(rng, n)):
        if pool is None:
            fwd = Polynomial.var(f"{prefix}{k}p")
            back = Polynomial.var(f"{prefix}{k}m")
        else:
            fwd, back = (_random_monomial(rng, pool, max_degree) for _ in range(2))
        edges[(str(a), str(b))] = fwd
        edges[(str(b), str(a))] = back
    return LabeledDigraph(rooms, edges, DISTANCE)


def _random_monomial(rng: random.Random, pool: Sequence[str], max_degree: int) -> Polynomial:
    exps = {}
    for _ in range(rng.randint(1, max_degree)):
        v = rng.choice(pool)
        exps[v] = exps.get(v, 0) + 1
    return Polynomial.monomial(exps)


def random_corridor_layout(rng: random.Random, max_corridors: int = 3, max_width: int = 3,
                           max_rooms: int = 4, max_total: int = 12, min_rooms: int = 1):
    """Apartment sizes, and corridors as lists of (apartment, room index).

    Every corridor joins one existing apartment to fresh ones, so the
    apartment/corridor incidence is a tree and entrances never repeat.
    """
    sizes = [rng.randint(min_rooms, max_rooms)]
    corridors = []
    used = set()
    for _ in range(rng.randint(1, max_corridors)):
        free = [(k, j) for k, n in enumerate(sizes) for j in range(n) if (k, j) not in used]
        if not free:
            break
        width = rng.randint(2, max_width)
        budget = max_total - sum(sizes)
        if budget < (width - 1) * min_rooms:
            if corridors:
                break
            width = 2
        host = rng.choice(free)
        ents = [host]
        for _ in range(width - 1):
            budget = max_total - sum(sizes)
            n = max(min_rooms, min(rng.randint(min_rooms, max_rooms), budget))
            sizes.append(n)
            ents.append((len(sizes) - 1, rng.randrange(n)))
        used.update(ents)
        corridors.append(ents)
    return sizes, corridors


def random_distance_system(rng: random.Random, max_corridors: int = 3, max_width: int = 3,
                           max_rooms: int = 4, max_total: int = 8,
                           pool: Sequence[str] | None = None):
    """Corridor-glued distance trees: ``(parts, corridors)`` for :func:`glue_system`.

    The default room budget keeps the symbolic determinant of the glued
    system at a fraction of a second.
    """
    sizes, layout = random_corridor_layout(rng, max_corridors, max_width, max_rooms, max_total)
    parts = {f"P{k}": random_tree(rng, n, prefix=f"x{k}_", pool=pool) for k, n in enumerate(sizes)}
    corridors = [
        CorridorSet(tuple(f"P{k}:{j}" for k, j in ents), Polynomial.var(f"q{i + 1}"))
        for i, ents in enumerate(layout)
    ]
    return parts, corridors


def random_probabilistic_system(rng: random.Random, max_corridors: int = 3, max_width: int = 3,
                                max_rooms: int = 4, max_total: int = 12):
    """A corridor-glued probabilistic graph whose extended rows sum to 1.

    Off-diagonal labels are drawn small; each self-loop then takes whatever
    probability mass the rest of its row leaves.
    """
    sizes, layout = random_corridor_layout(rng, max_corridors, max_width, max_rooms, max_total)
    scale = Fraction(1, 5)
    while True:
        parts = {}
        for k, n in enumerate(sizes):
            rooms = tuple(str(i) for i in range(n))
            edges = {(r, r): ZERO for r in rooms}
            for a, b in _tree_shape(rng, n):
                edges[(str(a), str(b))] = Polynomial.const(scale * Fraction(rng.randint(1, 10), 10))
                edges[(str(b), str(a))] = Polynomial.const(scale * Fraction(rng.randint(1, 10), 10))
            parts[f"P{k}"] = LabeledDigraph(rooms, edges, PROBABILISTIC)
        corridors = [
            CorridorSet(tuple(f"P{k}:{j}" for k, j in ents),
                        Polynomial.const(scale * Fraction(rng.randint(1, 10), 10)))
            for ents in layout
        ]
        g = glue_system(parts, corridors)
        table = extension_table(g)
        loops = {}
        for a in g.rooms:
            rest = sum((table[(a, b)].constant_term() for b in g.rooms if b != a), Fraction(0))
            loops[a] = 1 - rest
        if all(v >= 0 for v in loops.values()):
            break
        scale /= 2
    edges = dict(g.edges)
    for a, v in loops.items():
        edges[(a, a)] = Polynomial.const(v)
    return LabeledDigraph(g.rooms, edges, PROBABILISTIC), corridors


def random_arrangement(rng: random.Random, m: int, spread: int = 4, shared: str | None = None) -> Arrangement:
    """``m`` lines in the plane, no two parallel and no three concurrent."""
    while True:
        hs = []
        for i in range(m):
            normal = (rng.randint(-spread, spread), rng.randint(-spread, spread))
            if normal == (0, 0):
                normal = (1, 0)
            plus = shared or f"h{i + 1}p"
            minus = shared or f"h{i + 1}m"
            hs.append(Hyperplane(normal, rng.randint(-spread, spread), plus, minus))
        try:
            arr = Arrangement(2, tuple(hs))
        except ValueError:
            continue
        if is_simple_line_arrangement(arr):
            return arr


def random_two_apartments(rng: random.Random, max_rooms: int = 4):
    """Two random distance trees plus one entrance each, for gluing by ``q``."""
    g1 = random_tree(rng, rng.randint(1, max_rooms), prefix="u")
    g2 = random_tree(rng, rng.randint(1, max_rooms), prefix="w")
    g2 = g2.renamed({r: f"B{r}" for r in g2.rooms})
    g1 = g1.renamed({r: f"A{r}" for r in g1.rooms})
    return [g1, g2], [rng.choice(g1.rooms), rng.choice(g2.rooms)]


__all__ = [
    "random_arrangement",
    "random_corridor_layout",
    "random_distance_system",
    "random_int_blocks",
    "random_poly",
    "random_poly_matrix",
    "random_probabilistic_system",
    "random_tree",
    "random_two_apartments",
]
