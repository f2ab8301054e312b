"""Real hyperplane arrangements, their chamber graphs, and tree-shaped graphs.

Faces are identified with sign vectors written as strings over ``+0-``, one
character per hyperplane.  A sign vector is a face exactly when the mixed
system of strict inequalities and equations it describes has a rational
solution; that solution is kept as a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .corridor import CorridorSet, glue_system, multi_corridor_partition
from .errors import (
    CorridorDetError,
    Disconnected,
    InconsistentMultiplicity,
    InvalidGraph,
    IsChamber,
    NotAcyclic,
    OddCount,
    SizeCap,
)
from .factorization import FactorizationReport, corridor_factors
from .fourier_motzkin import feasible_point
from .graph import DISTANCE, LabeledDigraph, kernel_matrix
from .matrix import SquareMatrix, det
from .poly import ONE, Polynomial, as_rational

MAX_HYPERPLANES = 8
MAX_DIM = 3
SIGNS = "+0-"


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple
    offset: Fraction
    plus_var: str
    minus_var: str

    def __post_init__(self):
        normal = tuple(as_rational(c) for c in self.normal)
        if not any(normal):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", as_rational(self.offset))
        for v in (self.plus_var, self.minus_var):
            Polynomial.var(v)

    def variable(self, sign: str) -> Polynomial:
        return Polynomial.var(self.plus_var if sign == "+" else self.minus_var)

    def side(self, point) -> str:
        v = sum((a * x for a, x in zip(self.normal, point)), Fraction(0)) - self.offset
        return "+" if v > 0 else "-" if v < 0 else "0"

    def coincides(self, other: "Hyperplane") -> bool:
        a = self.normal + (self.offset,)
        b = other.normal + (other.offset,)
        i = next(k for k, x in enumerate(a) if x)
        if not b[i]:
            return False
        r = b[i] / a[i]
        return all(y == r * x for x, y in zip(a, b))


@dataclass(frozen=True)
class Face:
    sign: str
    witness: tuple

    @property
    def is_chamber(self) -> bool:
        return "0" not in self.sign

    def zeros(self) -> tuple:
        return tuple(i for i, s in enumerate(self.sign) if s == "0")


@dataclass(frozen=True, eq=False)
class Arrangement:
    dim: int
    hyperplanes: tuple
    chamber_order: tuple = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        hs = tuple(self.hyperplanes)
        for h in hs:
            if len(h.normal) != self.dim:
                raise ValueError("hyperplane dimension mismatch")
        for a, b in combinations(range(len(hs)), 2):
            if hs[a].coincides(hs[b]):
                raise ValueError(f"hyperplanes {a} and {b} coincide")
        object.__setattr__(self, "hyperplanes", hs)
        object.__setattr__(self, "chamber_order", tuple(self.chamber_order))

    def __len__(self) -> int:
        return len(self.hyperplanes)


def _constraint(h: Hyperplane, sign: str):
    if sign == "-":
        return tuple(-c for c in h.normal), h.offset
    return h.normal, -h.offset


def enumerate_faces(arr: Arrangement) -> list:
    """All faces, in lexicographic sign order with ``+`` before ``0`` before ``-``."""
    cached = arr._cache.get("faces")
    if cached is not None:
        return cached
    m, n = len(arr), arr.dim
    if m > MAX_HYPERPLANES or n > MAX_DIM:
        raise SizeCap(f"arrangements are capped at {MAX_HYPERPLANES} hyperplanes in dimension {MAX_DIM}")
    faces = []

    def extend(prefix: str, eqs: list, strict: list):
        i = len(prefix)
        if i == m:
            point = feasible_point(eqs, strict, n)
            faces.append(Face(prefix, point))
            return
        h = arr.hyperplanes[i]
        for s in SIGNS:
            e2, s2 = list(eqs), list(strict)
            row = _constraint(h, s)
            (e2 if s == "0" else s2).append(row)
            if feasible_point(e2, s2, n) is not None:
                extend(prefix + s, e2, s2)

    extend("", [], [])
    for f in faces:
        if "".join(h.side(f.witness) for h in arr.hyperplanes) != f.sign:
            raise AssertionError(f"witness {f.witness} does not certify face {f.sign}")
    arr._cache["faces"] = faces
    return faces


def chambers(arr: Arrangement) -> list:
    found = [f for f in enumerate_faces(arr) if f.is_chamber]
    if not arr.chamber_order:
        return found
    by_sign = {f.sign: f for f in found}
    if sorted(arr.chamber_order) != sorted(by_sign):
        raise ValueError("chamber_order is not a permutation of the chambers")
    return [by_sign[s] for s in arr.chamber_order]


def separating(a: str, b: str) -> list:
    return [i for i, (x, y) in enumerate(zip(a, b)) if x != y]


def exponential_distance(arr: Arrangement, a: str, b: str) -> Polynomial:
    """Product of the variables of the half-spaces containing ``a`` but not ``b``."""
    out = ONE
    for i in separating(a, b):
        out = out * arr.hyperplanes[i].variable(a[i])
    return out


def chamber_graph(arr: Arrangement) -> LabeledDigraph:
    rooms = [c.sign for c in chambers(arr)]
    edges = {}
    for a in rooms:
        for b in rooms:
            sep = separating(a, b)
            if len(sep) == 1:
                edges[(a, b)] = arr.hyperplanes[sep[0]].variable(a[sep[0]])
    try:
        return LabeledDigraph(tuple(rooms), edges, DISTANCE)
    except InvalidGraph as exc:
        raise Disconnected(str(exc)) from exc


def chamber_distance_matrix(arr: Arrangement) -> SquareMatrix:
    """Matrix with entry (A, B) = v(B, A), computed straight from sign vectors."""
    rooms = [c.sign for c in chambers(arr)]
    return SquareMatrix.from_function(rooms, lambda a, b: exponential_distance(arr, b, a))


def _face(arr: Arrangement, sign: str) -> Face:
    for f in enumerate_faces(arr):
        if f.sign == sign:
            return f
    raise KeyError(f"{sign} is not a face")


def face_weight(arr: Arrangement, sign: str) -> Polynomial:
    f = _face(arr, sign)
    if f.is_chamber:
        raise IsChamber(f"{sign} is a chamber")
    out = ONE
    for i in f.zeros():
        h = arr.hyperplanes[i]
        out = out * h.variable("+") * h.variable("-")
    return out


def _conforms(g: str, c: str) -> bool:
    return all(x == "0" or x == y for x, y in zip(g, c))


def closure_face_in(arr: Arrangement, chamber: str, i: int) -> str | None:
    """The largest face of the closed chamber lying in hyperplane ``i``."""
    cands = [f.sign for f in enumerate_faces(arr)
             if f.sign[i] == "0" and _conforms(f.sign, chamber)]
    if not cands:
        return None
    top = max(cands, key=lambda s: sum(x != "0" for x in s))
    if not all(_conforms(s, top) for s in cands):
        raise AssertionError(f"closure of {chamber} meets hyperplane {i} in no single face")
    return top


def multiplicity_by_hyperplane(arr: Arrangement, sign: str) -> dict:
    """Multiplicity of the face computed with each hyperplane containing it."""
    f = _face(arr, sign)
    if f.is_chamber:
        raise IsChamber(f"{sign} is a chamber")
    out = {}
    for i in f.zeros():
        count = sum(1 for c in chambers(arr) if closure_face_in(arr, c.sign, i) == sign)
        if count % 2:
            raise OddCount(f"{count} chambers meet hyperplane {i} in face {sign}")
        out[i] = count // 2
    return out


def face_multiplicity(arr: Arrangement, sign: str) -> int:
    per = multiplicity_by_hyperplane(arr, sign)
    values = set(per.values())
    if len(values) != 1:
        raise InconsistentMultiplicity(f"face {sign}: multiplicities {per}")
    return values.pop()


def varchenko_factors(arr: Arrangement) -> list:
    out = []
    for f in enumerate_faces(arr):
        if f.is_chamber:
            continue
        beta = face_multiplicity(arr, f.sign)
        if beta:
            out.append((f"face {f.sign}, multiplicity {beta}", (ONE - face_weight(arr, f.sign)) ** beta))
    return out


def varchenko_rhs(arr: Arrangement) -> Polynomial:
    out = ONE
    for _, p in varchenko_factors(arr):
        out = out * p
    return out


def verify_varchenko(arr: Arrangement, algo: str = "auto") -> FactorizationReport:
    lhs = det(kernel_matrix(chamber_graph(arr)), algo)
    return FactorizationReport.build(lhs, varchenko_factors(arr))


# -- indirectly acyclic digraphs ------------------------------------------------


@dataclass(frozen=True)
class AcyclicCheckResult:
    is_indirectly_acyclic: bool
    undirected_edges: frozenset

    def sorted_edges(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.undirected_edges)


def indirectly_acyclic(g: LabeledDigraph) -> AcyclicCheckResult:
    pairs = frozenset(frozenset((a, b)) for a, b in g.edges if a != b)
    parent = {r: r for r in g.rooms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for e in sorted(tuple(sorted(p)) for p in pairs):
        ra, rb = find(e[0]), find(e[1])
        if ra == rb:
            acyclic = False
            break
        parent[ra] = rb
    return AcyclicCheckResult(acyclic, pairs)


def ledi_factors(g: LabeledDigraph) -> list:
    result = indirectly_acyclic(g)
    if not result.is_indirectly_acyclic:
        raise NotAcyclic("underlying undirected graph has a cycle")
    order = {r: i for i, r in enumerate(g.rooms)}
    out = []
    for a, b in sorted((tuple(sorted(e, key=order.__getitem__)) for e in result.undirected_edges),
                       key=lambda e: (order[e[0]], order[e[1]])):
        out.append((f"edge {{{a},{b}}}", ONE - g.label(a, b) * g.label(b, a)))
    return out


def verify_ledi(g: LabeledDigraph, algo: str = "auto") -> FactorizationReport:
    if g.mode != DISTANCE:
        raise ValueError("expected a distance graph")
    factors = ledi_factors(g)
    return FactorizationReport.build(det(kernel_matrix(g), algo), factors)


# -- corridor systems of trees or arrangements ---------------------------------------


def verify_prop_acyclic(g: LabeledDigraph, us: Sequence[CorridorSet], algo: str = "auto") -> FactorizationReport:
    """Corridor factors times one tree product per apartment."""
    if g.mode != DISTANCE:
        raise ValueError("expected a distance graph")
    kernel = kernel_matrix(g)
    for u in us:
        u.check_against(g)
    partition = multi_corridor_partition(g, us)
    factors = corridor_factors(us)
    for block in partition.blocks:
        factors += ledi_factors(g.induced_subgraph(block))
    return FactorizationReport.build(det(kernel, algo), factors)


def verify_prop_acyclic_corridor(parts: Mapping[str, LabeledDigraph], corridors: Sequence[CorridorSet],
                                 algo: str = "auto") -> FactorizationReport:
    g = glue_system(parts, corridors) if len(parts) > 1 or corridors else next(iter(parts.values()))
    return verify_prop_acyclic(g, corridors, algo)


def arrangement_system(arrangements: Mapping[str, Arrangement], corridors: Sequence[CorridorSet]) -> LabeledDigraph:
    parts = {name: chamber_graph(a) for name, a in arrangements.items()}
    return glue_system(parts, corridors)


def verify_prop_arrangement_corridor(arrangements: Mapping[str, Arrangement], corridors: Sequence[CorridorSet],
                                     algo: str = "auto") -> FactorizationReport:
    g = arrangement_system(arrangements, corridors)
    kernel = kernel_matrix(g)
    for u in corridors:
        u.check_against(g)
    partition = multi_corridor_partition(g, corridors)
    owner = {}
    for name, arr in arrangements.items():
        owner[frozenset(f"{name}:{c.sign}" for c in chambers(arr))] = name
    factors = corridor_factors(corridors)
    for block in partition.blocks:
        name = owner.get(frozenset(block))
        if name is None:
            raise CorridorDetError(f"apartment {list(block)} is not the chamber set of one arrangement")
        for desc, p in varchenko_factors(arrangements[name]):
            factors.append((f"{name} {desc}", p))
    return FactorizationReport.build(det(kernel, algo), factors)


def is_simple_line_arrangement(arr: Arrangement) -> bool:
    """Lines in the plane, no two parallel, no three through one point."""
    if arr.dim != 2:
        return False
    hs = arr.hyperplanes
    for a, b in combinations(hs, 2):
        if a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0] == 0:
            return False
    for a, b, c in combinations(hs, 3):
        m = [list(h.normal) + [h.offset] for h in (a, b, c)]
        d = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
             - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
             + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if d == 0:
            return False
    return True
