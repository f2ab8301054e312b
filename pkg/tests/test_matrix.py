import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corridor_det.errors import SizeCap
from corridor_det.generators import random_poly_matrix
from corridor_det.matrix import (
    SquareMatrix,
    block_diagonal,
    det,
    det_bareiss,
    det_division_free,
    det_laplace,
)
from corridor_det.poly import ONE, ZERO, Polynomial, parse_poly

P = parse_poly
ALGOS = [det_laplace, det_division_free, det_bareiss]


def M(rows, labels=None):
    return SquareMatrix.from_rows([[P(str(x)) for x in r] for r in rows], labels)


@pytest.mark.parametrize("fn", ALGOS)
class TestFrozenValues:
    def test_empty_and_scalar(self, fn):
        assert fn(M([])) == ONE
        assert fn(M([["x"]])) == P("x")

    def test_two_by_two(self, fn):
        assert fn(M([["x", 1], [1, "y"]])) == P("x*y - 1")

    def test_vandermonde(self, fn):
        m = M([[1, "a", "a^2"], [1, "b", "b^2"], [1, "c", "c^2"]])
        assert fn(m) == P("b - a") * P("c - a") * P("c - b")

    def test_integer_matrix(self, fn):
        m = M([[2, -1, 0, 3], [1, 1, -2, 0], [0, 3, 1, 1], [-1, 0, 2, 2]])
        assert fn(m) == 29

    def test_zero_pivot_needs_a_swap(self, fn):
        m = M([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
        assert fn(m) == -2

    def test_singular(self, fn):
        assert fn(M([["x", "y"], ["2*x", "2*y"]])) == ZERO


def test_labels_and_access():
    m = M([["x", 1], [2, "y"]], ["u", "v"])
    assert m.entry("u", "v") == 1
    assert m.entry("v", "u") == 2
    assert m.submatrix(["v"]).rows == ((P("y"),),)
    assert m.transpose().entry("u", "v") == 2
    with pytest.raises(ValueError):
        SquareMatrix.from_rows([[1, 2]])


def test_block_diagonal_determinant_is_a_product():
    a = M([["x", 1], [1, "y"]], ["a0", "a1"])
    b = M([["z"]], ["b0"])
    assert det(block_diagonal([a, b])) == det(a) * det(b)


def test_size_caps(monkeypatch):
    big = SquareMatrix.identity(10)
    with pytest.raises(SizeCap):
        det_laplace(big)
    monkeypatch.setenv("CORRIDOR_DET_MAX_N", "3")
    with pytest.raises(SizeCap):
        det_division_free(SquareMatrix.identity(4))
    monkeypatch.setenv("CORRIDOR_DET_MAX_N", "500")
    assert det_laplace(SquareMatrix.identity(2)) == ONE


def test_auto_handles_beyond_the_laplace_cap():
    m = SquareMatrix.from_function(range(12), lambda i, j: ONE if i == j else Polynomial.const(1 if j == i + 1 else 0))
    assert det(m) == ONE
    assert det(m, "bareiss") == ONE


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        det(M([[1]]), "gauss")


@pytest.mark.parametrize("seed", range(12))
def test_algorithms_agree_on_random_polynomial_matrices(seed):
    rng = random.Random(seed)
    m = random_poly_matrix(rng, rng.randint(1, 6))
    d = det_laplace(m)
    assert det_division_free(m) == d
    assert det_bareiss(m) == d


_small = st.integers(-4, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(_small, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(_small, min_size=n, max_size=n), min_size=n, max_size=n))))
def test_determinant_is_multiplicative(pair):
    a, b = (M(r) for r in pair)
    assert det_bareiss(a @ b) == det_bareiss(a) * det_bareiss(b)
    assert det_division_free(a.transpose()) == det_laplace(a)
