"""Labeled dense square matrices over the polynomial ring, and determinants.

Three determinant routines are provided and are expected to agree exactly:

* :func:`det_laplace` -- plain recursive first-row cofactor expansion, the
  brute-force oracle (capped at n = 9).
* :func:`det_division_free` -- dynamic program over column subsets, no
  division anywhere (capped at n = 20).
* :func:`det_bareiss` -- fraction-free elimination with exact polynomial
  division; the workhorse for larger matrices.

The caps can be raised (never above 30) with ``CORRIDOR_DET_MAX_N``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .errors import SizeCap
from .poly import ONE, ZERO, Polynomial, poly, poly_exact_div

LAPLACE_CAP = 9
DIVISION_FREE_CAP = 20
HARD_CAP = 30


def size_cap(default: int) -> int:
    raw = os.environ.get("CORRIDOR_DET_MAX_N")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return max(1, min(value, HARD_CAP))


@dataclass(frozen=True)
class SquareMatrix:
    labels: tuple
    rows: tuple  # tuple of tuples of Polynomial

    def __post_init__(self):
        labels = tuple(self.labels)
        rows = tuple(tuple(poly(x) for x in r) for r in self.rows)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate matrix labels")
        if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
            raise ValueError("matrix must be square and match its labels")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], labels: Sequence[Hashable] | None = None) -> "SquareMatrix":
        rows = [list(r) for r in rows]
        if labels is None:
            labels = range(len(rows))
        return cls(tuple(labels), tuple(tuple(r) for r in rows))

    @classmethod
    def from_function(cls, labels: Sequence[Hashable], f: Callable) -> "SquareMatrix":
        labels = tuple(labels)
        return cls(labels, tuple(tuple(f(a, b) for b in labels) for a in labels))

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls.from_rows([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)

    def entry(self, row_label, col_label) -> Polynomial:
        return self.rows[self.index(row_label)][self.index(col_label)]

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, labels: Sequence[Hashable]) -> "SquareMatrix":
        idx = [self.index(l) for l in labels]
        return SquareMatrix(tuple(labels), tuple(tuple(self.rows[i][j] for j in idx) for i in idx))

    def relabel(self, labels: Sequence[Hashable]) -> "SquareMatrix":
        return SquareMatrix(tuple(labels), self.rows)

    def map(self, f: Callable[[Polynomial], Polynomial]) -> "SquareMatrix":
        return SquareMatrix(self.labels, tuple(tuple(f(x) for x in r) for r in self.rows))

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if other.n != self.n:
            raise ValueError("size mismatch")
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    a = self.rows[i][k]
                    if a:
                        acc = acc + a * other.rows[k][j]
                row.append(acc)
            out.append(tuple(row))
        return SquareMatrix(self.labels, tuple(out))

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(self.labels, tuple(zip(*self.rows)))

    def to_text(self) -> list:
        return [[str(x) for x in r] for r in self.rows]


def _check_cap(n: int, cap: int, name: str) -> None:
    if n > cap:
        raise SizeCap(f"{name} determinant is capped at n={cap}, got n={n}")


def det_laplace(m: SquareMatrix) -> Polynomial:
    _check_cap(m.n, size_cap(LAPLACE_CAP), "cofactor")
    rows = m.rows

    def expand(r: int, cols: tuple) -> Polynomial:
        if not cols:
            return ONE
        total = ZERO
        row = rows[r]
        for k, c in enumerate(cols):
            a = row[c]
            if not a:
                continue
            minor = expand(r + 1, cols[:k] + cols[k + 1:])
            if not minor:
                continue
            term = a * minor
            total = total - term if k & 1 else total + term
        return total

    return expand(0, tuple(range(m.n)))


def det_division_free(m: SquareMatrix) -> Polynomial:
    n = m.n
    _check_cap(n, size_cap(DIVISION_FREE_CAP), "division-free")
    if n == 0:
        return ONE
    rows = m.rows
    # minors[S]: determinant of the last |S| rows restricted to the columns in S
    minors = {0: ONE}
    for size in range(1, n + 1):
        row = rows[n - size]
        nxt = {}
        for mask, sub in minors.items():
            if not sub:
                continue
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    continue
                a = row[c]
                if not a:
                    continue
                full = mask | bit
                # sign: position of c among the columns of full
                below = bin(full & (bit - 1)).count("1")
                term = a * sub
                if below & 1:
                    term = -term
                prev = nxt.get(full)
                nxt[full] = term if prev is None else prev + term
        minors = nxt
    return minors.get((1 << n) - 1, ZERO)


def det_bareiss(m: SquareMatrix) -> Polynomial:
    n = m.n
    if n == 0:
        return ONE
    a = [list(r) for r in m.rows]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j]
                if aik and row_k[j]:
                    num = num - aik * row_k[j]
                row_i[j] = poly_exact_div(num, prev) if prev != ONE else num
            row_i[k] = ZERO
        prev = pivot
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


ALGORITHMS = {
    "laplace": det_laplace,
    "dfree": det_division_free,
    "bareiss": det_bareiss,
}


def det(m: SquareMatrix, algo: str = "auto") -> Polynomial:
    """Determinant with the named algorithm; ``auto`` uses the division-free
    program up to n = 9 and Bareiss beyond."""
    if algo == "auto":
        algo = "dfree" if m.n <= LAPLACE_CAP else "bareiss"
    try:
        fn = ALGORITHMS[algo]
    except KeyError:
        raise ValueError(f"unknown determinant algorithm {algo!r}") from None
    return fn(m)


def block_diagonal(blocks: Sequence[SquareMatrix]) -> SquareMatrix:
    labels = [l for b in blocks for l in b.labels]
    where = {}
    for bi, b in enumerate(blocks):
        for i, l in enumerate(b.labels):
            where[l] = (bi, i)

    def f(x, y):
        bx, ix = where[x]
        by, iy = where[y]
        return blocks[bx].rows[ix][iy] if bx == by else ZERO

    return SquareMatrix.from_function(labels, f)
