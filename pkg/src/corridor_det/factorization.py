"""Both sides of the determinant factorizations for corridor systems.

Every ``verify_*`` function returns a :class:`FactorizationReport`; a report
with ``equal == False`` is a legitimate result, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .corridor import (
    BlockGlueSpec,
    CorridorPartition,
    CorridorSet,
    build_Mq,
    multi_corridor_partition,
)
from .errors import BadArity
from .graph import DISTANCE, PROBABILISTIC, LabeledDigraph, kernel_matrix
from .matrix import SquareMatrix, det
from .poly import ONE, Polynomial, poly, product


@dataclass(frozen=True)
class FactorizationReport:
    lhs: Polynomial
    rhs_factors: tuple  # of (description, Polynomial)
    rhs_expanded: Polynomial
    equal: bool

    @classmethod
    def build(cls, lhs: Polynomial, factors: Sequence[tuple]) -> "FactorizationReport":
        factors = tuple((d, poly(p)) for d, p in factors)
        rhs = product(p for _, p in factors)
        return cls(lhs, factors, rhs, lhs == rhs)

    def to_json(self) -> dict:
        return {
            "lhs": str(self.lhs),
            "factors": [{"desc": d, "poly": str(p)} for d, p in self.rhs_factors],
            "rhs": str(self.rhs_expanded),
            "equal": self.equal,
        }


def alternating_subset_sum(values: Sequence[Polynomial]) -> Polynomial:
    """``1 + sum over subsets K, |K| >= 2, of (-1)^(|K|-1) (|K|-1) prod(K)``."""
    values = [poly(v) for v in values]
    total = ONE
    for size in range(2, len(values) + 1):
        coef = (-1) ** (size - 1) * (size - 1)
        for subset in combinations(values, size):
            total = total + product(subset).scale(coef)
    return total


def lemat_matrix(n: int, prefix: str = "a") -> SquareMatrix:
    names = [Polynomial.var(f"{prefix}{i}") for i in range(1, n + 1)]
    return SquareMatrix.from_rows(
        [[names[i] if i == j else ONE for j in range(n)] for i in range(n)])


def lemat_rhs(n: int, prefix: str = "a") -> Polynomial:
    if n < 2:
        raise BadArity(f"need n >= 2, got {n}")
    a = [Polynomial.var(f"{prefix}{i}") for i in range(1, n + 1)]
    total = product(a)
    for size in range(0, n - 1):
        coef = (-1) ** (n - size - 1) * (n - size - 1)
        for subset in combinations(a, size):
            total = total + product(subset).scale(coef)
    return total


def verify_lemat(n: int, algo: str = "laplace") -> FactorizationReport:
    lhs = det(lemat_matrix(n), algo)
    return FactorizationReport.build(lhs, [(f"closed form, n={n}", lemat_rhs(n))])


def thmat_rhs(blocks: Sequence[SquareMatrix], q, first_index: Sequence | None = None,
              algo: str = "auto") -> list:
    q = poly(q)
    first = list(first_index) if first_index else [b.labels[0] for b in blocks]
    diag = [q * b.entry(f, f) for b, f in zip(blocks, first)]
    factors = [("corridor", alternating_subset_sum(diag))]
    for k, b in enumerate(blocks):
        factors.append((f"det A{k + 1}", det(b, algo)))
    return factors


def verify_thmat(blocks: Sequence[SquareMatrix], q, first_index: Sequence | None = None,
                 algo: str = "auto") -> FactorizationReport:
    spec = BlockGlueSpec(tuple(blocks), tuple(first_index or ()), poly(q))
    lhs = det(build_Mq(spec), algo)
    return FactorizationReport.build(lhs, thmat_rhs(blocks, q, spec.first_index, algo))


def _prepare(g: LabeledDigraph, us: Sequence[CorridorSet], mode: str):
    if g.mode != mode:
        raise ValueError(f"expected a {mode} graph, got {g.mode}")
    kernel = kernel_matrix(g)
    us = list(us)
    for u in us:
        u.check_against(g)
    partition = multi_corridor_partition(g, us)
    return kernel, us, partition


def _block_factors(kernel: SquareMatrix, partition: CorridorPartition, name: str, algo: str) -> list:
    return [(f"det {name}[{','.join(b)}]", det(kernel.submatrix(b), algo))
            for b in partition.blocks]


def verify_th1(g: LabeledDigraph, us: Sequence[CorridorSet], algo: str = "auto") -> FactorizationReport:
    kernel, us, partition = _prepare(g, us, PROBABILISTIC)
    factors = []
    for i, u in enumerate(us):
        vals = [u.label * kernel.entry(a, a) for a in u.entrances]
        factors.append((f"corridor {i + 1}", alternating_subset_sum(vals)))
    factors += _block_factors(kernel, partition, "S", algo)
    return FactorizationReport.build(det(kernel, algo), factors)


def corridor_factor(width: int, q) -> Polynomial:
    """``(1 + (width-1) q) (1 - q)^(width-1)``."""
    q = poly(q)
    return (ONE + q.scale(width - 1)) * (ONE - q) ** (width - 1)


def corridor_factors(us: Sequence[CorridorSet]) -> list:
    return [(f"corridor {i + 1} ({u.label}, width {u.width})", corridor_factor(u.width, u.label))
            for i, u in enumerate(us)]


def verify_th2(g: LabeledDigraph, us: Sequence[CorridorSet], algo: str = "auto") -> FactorizationReport:
    kernel, us, partition = _prepare(g, us, DISTANCE)
    factors = corridor_factors(us) + _block_factors(kernel, partition, "D", algo)
    return FactorizationReport.build(det(kernel, algo), factors)


def binomial_expansion(m: int, q="q") -> Polynomial:
    q = poly(q)
    total = ONE
    for k in range(2, m + 1):
        total = total + (q ** k).scale((-1) ** (k - 1) * (k - 1) * comb(m, k))
    return total


def th2_binomial_identity(m: int) -> bool:
    if m < 1:
        raise BadArity(f"need m >= 1, got {m}")
    return corridor_factor(m, "q") == binomial_expansion(m)
