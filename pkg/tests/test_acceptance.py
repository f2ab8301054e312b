"""Acceptance suite: ten exact checks, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import FIXTURES  # noqa: E402
from corridor_det.arrangements import (  # noqa: E402
    arrangement_system,
    enumerate_faces,
    multiplicity_by_hyperplane,
    verify_ledi,
    verify_prop_arrangement_corridor,
    verify_varchenko,
)
from corridor_det.corridor import BlockGlueSpec, build_Mq, corridor_partition, glue_graphs  # noqa: E402
from corridor_det.factorization import (  # noqa: E402
    th2_binomial_identity,
    verify_lemat,
    verify_th1,
    verify_th2,
    verify_thmat,
)
from corridor_det.formats import (  # noqa: E402
    arrangement_from_json,
    corridors_from_json,
    graph_from_json,
    load_json,
    system_from_json,
)
from corridor_det.generators import (  # noqa: E402
    random_int_blocks,
    random_poly_matrix,
    random_tree,
    random_two_apartments,
)
from corridor_det.graph import extended_kernel, kernel_matrix, validate_axioms  # noqa: E402
from corridor_det.matrix import det, det_bareiss, det_division_free, det_laplace  # noqa: E402
from corridor_det.poly import ONE, parse_poly  # noqa: E402

RESULTS: dict = {}

FINAL_MATRIX = [
    "1 h1^2 h1 h1^2 h1 h1 h1^2 q q*h2",
    "h1^2 1 h1 h1^2 h1 h1^3 h1^2 h1^2*q h1^2*q*h2",
    "h1 h1 1 h1 h1^2 h1^2 h1^3 h1*q h1*q*h2",
    "h1^2 h1^2 h1 1 h1^3 h1 h1^2 h1^2*q h1^2*q*h2",
    "h1 h1 h1^2 h1^3 1 h1^2 h1 h1*q h1*q*h2",
    "h1 h1^3 h1^2 h1 h1^2 1 h1 h1*q h1*q*h2",
    "h1^2 h1^2 h1^3 h1^2 h1 h1 1 h1^2*q h1^2*q*h2",
    "q h1^2*q h1*q h1^2*q h1*q h1*q h1^2*q 1 h2",
    "q*h2 h1^2*q*h2 h1*q*h2 h1^2*q*h2 h1*q*h2 h1*q*h2 h1^2*q*h2 h2 1",
]


def exdi_graph_det():
    g = graph_from_json(load_json(FIXTURES / "exdi_graph.json"))
    t0 = time.perf_counter()
    lhs = det(kernel_matrix(g))
    elapsed = time.perf_counter() - t0
    expected = ONE
    for v in "abcde":
        expected = expected * parse_poly(f"1 - {v}+*{v}-")
    ok = lhs == expected and verify_ledi(g).equal and elapsed < 1
    return ok, f"6x6 det equals five-factor product, {elapsed:.3f}s"


def final_example():
    t0 = time.perf_counter()
    parts, us = system_from_json(load_json(FIXTURES / "final_example_system.json"))
    g = arrangement_system(parts, us)
    m = kernel_matrix(g)
    entries = [[str(x) for x in row] for row in m.rows] == [
        [str(parse_poly(t)) for t in line.split()] for line in FINAL_MATRIX]
    lhs = det(m)
    target = parse_poly("1 - q^2") * parse_poly("1 - h1^2") ** 9 * parse_poly("1 - h2^2")
    th2 = verify_th2(g, us).equal
    prop = verify_prop_arrangement_corridor(parts, us).equal
    elapsed = time.perf_counter() - t0
    ok = entries and lhs == target and th2 and prop and elapsed < 5
    return ok, f"matrix match={entries}, det match={lhs == target}, {elapsed:.3f}s"


def expr_figure():
    g = graph_from_json(load_json(FIXTURES / "expr_graph.json"))
    (u,) = corridors_from_json(load_json(FIXTURES / "expr_corridor.json"))
    k = extended_kernel(g)
    sums = all(sum((k.value(a, b).constant_term() for b in g.rooms), Fraction(0)) == 1 for a in g.rooms)
    sums = sums and validate_axioms(g).ok
    blocks = corridor_partition(g, u).blocks == (("1", "2"), ("3", "5"), ("4", "6"))
    th1 = verify_th1(g, [u])
    ok = sums and blocks and th1.equal
    return ok, (f"row sums={sums}, blocks={blocks}, th1 equal={th1.equal} "
                f"(lhs {th1.lhs}, rhs {th1.rhs_expanded})")


def thmat_suite():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    bad = 0
    for _ in range(100):
        blocks = random_int_blocks(rng, max_blocks=4, max_size=4, lo=-3, hi=3, max_total=8)
        spec = BlockGlueSpec(tuple(blocks), (), parse_poly("q"))
        report = verify_thmat(blocks, "q")
        if not (report.equal and det_laplace(build_Mq(spec)) == report.rhs_expanded):
            bad += 1
    elapsed = time.perf_counter() - t0
    return bad == 0 and elapsed < 30, f"100 instances, {bad} failures, {elapsed:.2f}s"


def lemat_suite():
    results = {n: verify_lemat(n, "laplace").equal for n in range(2, 7)}
    return all(results.values()), f"n=2..6 {results}"


def ledi_suite():
    rng = random.Random(11)
    bad = 0
    for _ in range(200):
        g = random_tree(rng, rng.randint(1, 8))
        if not verify_ledi(g).equal:
            bad += 1
    return bad == 0, f"200 trees, {bad} failures"


def varchenko_suite():
    names = ["one_hyperplane", "two_lines", "three_lines", "parallel_lines"]
    equal, checked, consistent = {}, 0, True
    for name in names:
        arr = arrangement_from_json(load_json(FIXTURES / f"{name}.json"))
        equal[name] = verify_varchenko(arr).equal
        for f in enumerate_faces(arr):
            if len(f.zeros()) > 1:
                checked += 1
                consistent &= len(set(multiplicity_by_hyperplane(arr, f.sign).values())) == 1
    ok = all(equal.values()) and consistent
    return ok, f"{equal}, beta independence on {checked} faces={consistent}"


def binomial_identity():
    results = [th2_binomial_identity(m) for m in range(1, 11)]
    return all(results), f"m=1..10, {sum(results)} true"


def glue_commutation():
    rng = random.Random(7)
    bad = 0
    for _ in range(20):
        (g1, g2), ents = random_two_apartments(rng)
        glued = kernel_matrix(glue_graphs([g1, g2], ents, "q"))
        spec = BlockGlueSpec((kernel_matrix(g1), kernel_matrix(g2)), tuple(ents), parse_poly("q"))
        if glued != build_Mq(spec):
            bad += 1
    return bad == 0, f"20 systems, {bad} failures"


def det_oracles():
    rng = random.Random(5)
    bad = 0
    t0 = time.perf_counter()
    for _ in range(50):
        m = random_poly_matrix(rng, rng.randint(1, 8))
        d = det_laplace(m)
        if det_division_free(m) != d or det_bareiss(m) != d:
            bad += 1
    return bad == 0, f"50 matrices, {bad} disagreements, {time.perf_counter() - t0:.2f}s"


CRITERIA = [
    (1, "ExDi determinant", exdi_graph_det),
    (2, "final 9x9 example", final_example),
    (3, "ExPr kernel, partition and Theorem 1", expr_figure),
    (4, "ThMat random suite", thmat_suite),
    (5, "LeMat n=2..6", lemat_suite),
    (6, "LeDi random trees", ledi_suite),
    (7, "Varchenko suite", varchenko_suite),
    (8, "binomial identity", binomial_identity),
    (9, "glue/M_q commutation", glue_commutation),
    (10, "determinant oracle equivalence", det_oracles),
]


def line(number, title, ok, detail) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}: {detail}"


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    ok, detail = fn()
    text = line(number, title, ok, detail)
    RESULTS[number] = text
    print(text)
    assert ok, text


if __name__ == "__main__":
    failures = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failures += not ok
        print(line(number, title, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
