"""Walking-cat digraphs: probabilistic and exponential-distance labelings.

Edge labels live on the edge set only; every other ordered pair of rooms
gets its label by multiplying labels along a minimal (shortest) room
sequence.  The kernel matrix is laid out column-wise, entry ``(A, B)`` being
the extended label of the pair ``(B, A)``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AxiomViolation,
    ExplosionCap,
    InvalidGraph,
    Unreachable,
)
from .matrix import SquareMatrix
from .poly import ONE, ZERO, Polynomial, as_rational, poly, poly_eval

PROBABILISTIC = "probabilistic"
DISTANCE = "distance"
MODES = (PROBABILISTIC, DISTANCE)

SEQUENCE_CAP = 10**6


@dataclass(frozen=True, eq=False)
class LabeledDigraph:
    rooms: tuple
    edges: Mapping  # (from, to) -> Polynomial
    mode: str = DISTANCE
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        rooms = tuple(str(r) for r in self.rooms)
        if self.mode not in MODES:
            raise InvalidGraph(f"unknown mode {self.mode!r}")
        if not rooms:
            raise InvalidGraph("a graph needs at least one room")
        if len(set(rooms)) != len(rooms):
            raise InvalidGraph("duplicate room ids")
        known = set(rooms)
        edges = {}
        for (a, b), label in dict(self.edges).items():
            a, b = str(a), str(b)
            if a not in known or b not in known:
                raise InvalidGraph(f"edge ({a}, {b}) touches an unknown room")
            edges[(a, b)] = poly(label)
        for r in rooms:
            if (r, r) not in edges:
                if self.mode == DISTANCE:
                    edges[(r, r)] = ONE
                else:
                    raise InvalidGraph(f"room {r} has no self-loop")
        for (a, b), label in edges.items():
            if self.mode == PROBABILISTIC:
                if not label.is_constant():
                    raise InvalidGraph(f"label of ({a}, {b}) is not a constant: {label}")
                c = label.constant_term()
                if not 0 <= c <= 1:
                    raise InvalidGraph(f"probability of ({a}, {b}) outside [0, 1]: {c}")
            else:
                if not label.is_monomial():
                    raise InvalidGraph(f"label of ({a}, {b}) is not a monomial: {label}")
                if a == b and label != ONE:
                    raise InvalidGraph(f"self-loop of {a} must be labeled 1")
            if a != b and (b, a) not in edges:
                raise InvalidGraph(f"edge ({a}, {b}) has no reverse edge")
        object.__setattr__(self, "rooms", rooms)
        object.__setattr__(self, "edges", edges)
        adj = {r: [] for r in rooms}
        for a, b in edges:
            if a != b:
                adj[a].append(b)
        order = {r: i for i, r in enumerate(rooms)}
        for r in adj:
            adj[r].sort(key=order.__getitem__)
        self._cache["adj"] = {r: tuple(v) for r, v in adj.items()}
        if len(self._reach(rooms[0])) != len(rooms):
            raise InvalidGraph("underlying graph is not connected")

    # -- basic queries -------------------------------------------------------

    def neighbors(self, room: str) -> tuple:
        return self._cache["adj"][room]

    def label(self, a: str, b: str) -> Polynomial:
        return self.edges[(a, b)]

    def has_edge(self, a: str, b: str) -> bool:
        return (a, b) in self.edges

    def _reach(self, start: str) -> set:
        seen = {start}
        todo = [start]
        adj = self._cache["adj"]
        while todo:
            r = todo.pop()
            for s in adj[r]:
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        return seen

    def variables(self) -> frozenset:
        out = set()
        for label in self.edges.values():
            out |= label.variables()
        return frozenset(out)

    def induced_subgraph(self, rooms: Iterable[str]) -> "LabeledDigraph":
        keep = [r for r in self.rooms if r in set(rooms)]
        ks = set(keep)
        edges = {(a, b): l for (a, b), l in self.edges.items() if a in ks and b in ks}
        return LabeledDigraph(tuple(keep), edges, self.mode)

    def renamed(self, mapping: Mapping[str, str]) -> "LabeledDigraph":
        rooms = tuple(mapping.get(r, r) for r in self.rooms)
        edges = {(mapping.get(a, a), mapping.get(b, b)): l for (a, b), l in self.edges.items()}
        return LabeledDigraph(rooms, edges, self.mode)

    def with_label(self, a: str, b: str, label) -> "LabeledDigraph":
        edges = dict(self.edges)
        edges[(a, b)] = poly(label)
        return LabeledDigraph(self.rooms, edges, self.mode)

    def __eq__(self, other):
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return (self.mode, self.rooms, self.edges) == (other.mode, other.rooms, other.edges)

    def __hash__(self):
        return hash((self.mode, self.rooms, frozenset(self.edges.items())))

    # -- shortest paths ------------------------------------------------------

    def bfs(self, source: str):
        """Distances and shortest-path predecessor lists from ``source``."""
        cache = self._cache.setdefault("bfs", {})
        if source in cache:
            return cache[source]
        if source not in self._cache["adj"]:
            raise KeyError(source)
        dist = {source: 0}
        preds = {source: []}
        queue = deque([source])
        adj = self._cache["adj"]
        while queue:
            r = queue.popleft()
            for s in adj[r]:
                if s not in dist:
                    dist[s] = dist[r] + 1
                    preds[s] = [r]
                    queue.append(s)
                elif dist[s] == dist[r] + 1:
                    preds[s].append(r)
        cache[source] = (dist, preds)
        return dist, preds

    def length(self, a: str, b: str) -> int:
        dist, _ = self.bfs(a)
        if b not in dist:
            raise Unreachable(f"no path from {a} to {b}")
        return dist[b]


@dataclass(frozen=True)
class MinimalSequenceSet:
    source: str
    target: str
    sequences: frozenset
    length: int

    def __post_init__(self):
        for s in self.sequences:
            if s[0] != self.source or s[-1] != self.target or len(s) != self.length + 1:
                raise ValueError(f"malformed minimal sequence {s}")

    def sorted(self) -> list:
        return sorted(self.sequences)


def _count_paths(preds: Mapping, target: str) -> int:
    memo = {}

    def count(r):
        if r in memo:
            return memo[r]
        ps = preds[r]
        memo[r] = 1 if not ps else sum(count(p) for p in ps)
        return memo[r]

    return count(target)


def minimal_sequences(g: LabeledDigraph, a: str, b: str, cap: int = SEQUENCE_CAP) -> MinimalSequenceSet:
    if a not in g._cache["adj"] or b not in g._cache["adj"]:
        raise KeyError(f"unknown room in ({a}, {b})")
    dist, preds = g.bfs(a)
    if b not in dist:
        raise Unreachable(f"no directed path from {a} to {b}")
    total = _count_paths(preds, b)
    if total > cap:
        raise ExplosionCap(f"{total} minimal sequences from {a} to {b} exceed the cap {cap}")
    out = []

    def walk(r, suffix):
        if r == a:
            out.append((a,) + suffix)
            return
        for p in preds[r]:
            walk(p, (r,) + suffix)

    walk(b, ())
    return MinimalSequenceSet(a, b, frozenset(out), dist[b])


def sequence_labels(g: LabeledDigraph, seq: Sequence[str]) -> list:
    return [g.edges[(seq[i], seq[i + 1])] for i in range(len(seq) - 1)]


def sequence_product(g: LabeledDigraph, seq: Sequence[str]) -> Polynomial:
    out = ONE
    for label in sequence_labels(g, seq):
        out = out * label
    return out


# -- axiom validation ---------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool = True
    violations: list = field(default_factory=list)

    def fail(self, *detail):
        self.passed = False
        self.violations.append(detail)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "violations": [[str(x) for x in v] for v in self.violations],
        }


@dataclass
class ValidationReport:
    mode: str
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self) -> str:
        bad = [c.name for c in self.checks if not c.passed]
        return "all checks pass" if not bad else "failed: " + ", ".join(bad)

    def to_json(self) -> dict:
        return {"mode": self.mode, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _label_key(p: Polynomial) -> str:
    return p.serialize()


def extension_table(g: LabeledDigraph) -> dict:
    """Label of every ordered room pair, taken along the first minimal sequence."""
    cached = g._cache.get("ext")
    if cached is not None:
        return cached
    table = {}
    for a in g.rooms:
        dist, preds = g.bfs(a)
        # products along a BFS tree: one minimal sequence per target
        prod = {a: ONE}
        for b in sorted(dist, key=dist.__getitem__):
            if b == a:
                continue
            p = min(preds[b], key=g.rooms.index)
            prod[b] = prod[p] * g.edges[(p, b)]
        for b in g.rooms:
            table[(a, b)] = g.edges[(a, a)] if a == b else prod[b]
    g._cache["ext"] = table
    return table


def validate_axioms(g: LabeledDigraph) -> ValidationReport:
    multiset = Check("multiset")
    extension = Check("extension")
    for a in g.rooms:
        for b in g.rooms:
            if a == b:
                continue
            ms = minimal_sequences(g, a, b)
            if len(ms.sequences) < 2:
                continue
            seqs = ms.sorted()
            base = Counter(_label_key(x) for x in sequence_labels(g, seqs[0]))
            base_prod = sequence_product(g, seqs[0])
            for s in seqs[1:]:
                if Counter(_label_key(x) for x in sequence_labels(g, s)) != base:
                    multiset.fail(a, b, "-".join(seqs[0]), "-".join(s))
                if sequence_product(g, s) != base_prod:
                    extension.fail(a, b, "-".join(seqs[0]), "-".join(s))
    checks = [multiset, extension]
    table = extension_table(g)
    if g.mode == PROBABILISTIC:
        sums = Check("row_sums")
        for a in g.rooms:
            total = sum((table[(a, b)].constant_term() for b in g.rooms), Fraction(0))
            if total != 1:
                sums.fail(a, total)
        checks.append(sums)
    else:
        diag = Check("unit_diagonal")
        for a in g.rooms:
            if table[(a, a)] != ONE:
                diag.fail(a, table[(a, a)])
        checks.append(diag)
    return ValidationReport(g.mode, checks)


@dataclass(frozen=True)
class ExtendedKernel:
    matrix: SquareMatrix
    mode: str

    def value(self, a: str, b: str) -> Polynomial:
        """Extended label of the ordered pair (a, b)."""
        return self.matrix.entry(b, a)


def extended_kernel(g: LabeledDigraph, check: bool = True) -> ExtendedKernel:
    if check:
        report = g._cache.get("report")
        if report is None:
            report = g._cache["report"] = validate_axioms(g)
        if not report.ok:
            raise AxiomViolation(report)
    table = extension_table(g)
    m = SquareMatrix.from_function(g.rooms, lambda a, b: table[(b, a)])
    return ExtendedKernel(m, g.mode)


def kernel_matrix(g: LabeledDigraph) -> SquareMatrix:
    return extended_kernel(g).matrix


# -- duality -----------------------------------------------------------------


def _normalized_distances(gd: LabeledDigraph, sigma: Mapping) -> dict:
    table = extension_table(gd)
    values = {k: poly_eval(v, sigma) for k, v in table.items()}
    out = {}
    for a in gd.rooms:
        z = sum((values[(a, c)] for c in gd.rooms), Fraction(0))
        if z == 0:
            raise ZeroDivisionError(f"distances out of {a} sum to zero")
        for b in gd.rooms:
            out[(a, b)] = values[(a, b)] / z
    return out


def check_dual(gp: LabeledDigraph, gd: LabeledDigraph, sigma: Mapping) -> bool:
    """True iff every extended probability equals the normalized distance."""
    if gp.mode != PROBABILISTIC or gd.mode != DISTANCE:
        raise ValueError("check_dual expects a probabilistic and a distance graph")
    if set(gp.rooms) != set(gd.rooms):
        raise ValueError("graphs must share their rooms")
    sigma = {k: as_rational(v) for k, v in sigma.items()}
    expected = _normalized_distances(gd, sigma)
    probs = extension_table(gp)
    return all(probs[k].constant_term() == v for k, v in expected.items())


def dual_probabilistic(gd: LabeledDigraph, sigma: Mapping) -> LabeledDigraph:
    """Probabilistic graph dual to ``gd`` at the point ``sigma``.

    Every ordered pair becomes an edge: normalization by row sums is not
    multiplicative along sequences of two or more steps, so the dual only
    exists on the complete edge set.
    """
    sigma = {k: as_rational(v) for k, v in sigma.items()}
    probs = _normalized_distances(gd, sigma)
    return LabeledDigraph(gd.rooms, {k: Polynomial.const(v) for k, v in probs.items()}, PROBABILISTIC)
