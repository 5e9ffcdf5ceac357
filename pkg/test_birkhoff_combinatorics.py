"""
Tests for Birkhoff polytope vertices, cycle matrices and Birkhoff cycles
"""
import itertools
import os
import sys

import pytest

# Add the current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core.birkhoff_combinatorics import (
    BirkhoffCycle,
    CycleMatrix,
    PermutationMatrix,
    are_adjacent,
    birkhoff_cycle,
    birkhoff_edges,
    check_negative_sum_bound,
    cycle_matrix_from_difference,
    cycle_sign,
    cycle_sum,
    enumerate_edge_directions,
    enumerate_vertices,
    maximal_element,
    negative_sum_bound,
    verify_lemma12,
    verify_negative_sum_bound,
)
from core.errors import DimensionError, DomainError
from core.slicing_basis import slicing_vector

CYCLE_COUNTS = {2: 2, 3: 30, 4: 408, 5: 7880}

N4_CYCLE = {(4, 4): 1, (4, 2): -1, (2, 2): 1, (2, 4): -1}


def _n4_cycle():
    return birkhoff_cycle(slicing_vector(4), CycleMatrix.from_signs(4, N4_CYCLE))


def test_enumerate_vertices():
    assert [P.sigma for P in enumerate_vertices(1)] == [(1,)]
    two = enumerate_vertices(2)
    assert [P.matrix() for P in two] == [((1, 0), (0, 1)), ((0, 1), (1, 0))]
    assert len(enumerate_vertices(3)) == 6
    assert len(enumerate_vertices(4)) == 24
    with pytest.raises(DomainError):
        enumerate_vertices(0)


def test_permutation_matrix_round_trip():
    P = PermutationMatrix(3, (2, 3, 1))
    assert PermutationMatrix.from_matrix(P.matrix()) == P
    assert P.vectorize() == (0, 1, 0, 0, 0, 1, 1, 0, 0)
    with pytest.raises(DomainError):
        PermutationMatrix(3, (1, 1, 2))


def test_are_adjacent_examples():
    identity, swap = enumerate_vertices(2)
    assert are_adjacent(identity, swap)
    assert are_adjacent(PermutationMatrix(3, (1, 2, 3)), PermutationMatrix(3, (2, 1, 3)))
    vertices = enumerate_vertices(3)
    assert all(are_adjacent(P, Q) for P, Q in itertools.combinations(vertices, 2))
    assert len(birkhoff_edges(3)) == 15


def test_are_adjacent_rejects_disjoint_cycles_and_errors():
    # two disjoint transpositions give a difference supported on two 4-cycles
    assert not are_adjacent(PermutationMatrix(4, (1, 2, 3, 4)), PermutationMatrix(4, (2, 1, 4, 3)))
    with pytest.raises(DomainError):
        are_adjacent(PermutationMatrix(3, (1, 2, 3)), PermutationMatrix(3, (1, 2, 3)))
    with pytest.raises(DimensionError):
        are_adjacent(PermutationMatrix(2, (1, 2)), PermutationMatrix(3, (1, 2, 3)))


def test_edge_direction_counts():
    for n in (2, 3, 4):
        assert len(enumerate_edge_directions(n)) == CYCLE_COUNTS[n]
    with pytest.raises(DomainError):
        enumerate_edge_directions(1)


def test_edge_directions_n2():
    cycles = enumerate_edge_directions(2)
    assert {m.entries for m in cycles} == {((1, -1), (-1, 1)), ((-1, 1), (1, -1))}


def test_edge_directions_have_zero_line_sums_and_are_distinct():
    for n in (2, 3, 4):
        cycles = enumerate_edge_directions(n)
        assert len({m.entries for m in cycles}) == len(cycles)
        for m in cycles:
            assert all(sum(row) == 0 for row in m.entries)
            assert all(sum(m.entries[i][j] for i in range(n)) == 0 for j in range(n))
            assert m.negate() in cycles


def test_adjacent_differences_are_edge_directions():
    for n in (2, 3, 4):
        directions = {m.entries for m in enumerate_edge_directions(n)}
        vertices = enumerate_vertices(n)
        for a, b in birkhoff_edges(n):
            assert cycle_matrix_from_difference(vertices[a], vertices[b]).entries in directions
            assert cycle_matrix_from_difference(vertices[b], vertices[a]).entries in directions


def test_cycle_matrix_validation():
    with pytest.raises(DomainError):
        CycleMatrix.from_signs(2, {(1, 1): 1, (2, 2): 1})
    with pytest.raises(DomainError):
        # two disjoint 4-cycles
        CycleMatrix.from_signs(4, {
            (1, 1): 1, (1, 2): -1, (2, 2): 1, (2, 1): -1,
            (3, 3): 1, (3, 4): -1, (4, 4): 1, (4, 3): -1,
        })


def test_cycle_matrix_positions_and_length():
    m = CycleMatrix.from_signs(4, N4_CYCLE)
    assert m.length == 4
    assert m.positions() == [(2, 2, 1), (2, 4, -1), (4, 2, -1), (4, 4, 1)]
    for n in (2, 3, 4):
        for c in enumerate_edge_directions(n):
            assert c.length % 2 == 0 and 4 <= c.length <= 2 * n
            assert sum(s for _, _, s in c.positions()) == 0


def test_birkhoff_cycle_examples():
    m = CycleMatrix(2, ((1, -1), (-1, 1)))
    c = birkhoff_cycle(slicing_vector(2), m)
    assert set(c.elements) == {(1, 1, 1), (1, 2, -1), (2, 2, 1), (2, 1, -1)}

    c4 = _n4_cycle()
    assert c4.values() == [48, -16, 1, -3]

    negated = birkhoff_cycle(slicing_vector(4), c4.to_cycle_matrix().negate())
    assert [(i, j) for i, j, _ in negated.elements] == [(i, j) for i, j, _ in c4.elements]
    assert [s for _, _, s in negated.elements] == [-s for _, _, s in c4.elements]


def test_birkhoff_cycle_order_mismatch():
    with pytest.raises(DimensionError):
        birkhoff_cycle(slicing_vector(3), CycleMatrix(2, ((1, -1), (-1, 1))))
    with pytest.raises(DomainError):
        BirkhoffCycle(2, ((1, 1, 1), (2, 2, 1)))


def test_maximal_element_sign_and_sum():
    c4 = _n4_cycle()
    assert maximal_element(c4) == (4, 4, 1, 48)
    assert cycle_sign(c4) == 1
    assert cycle_sum(c4) == 30

    c2 = birkhoff_cycle(slicing_vector(2), CycleMatrix(2, ((1, -1), (-1, 1))))
    assert maximal_element(c2) == (2, 2, 1, 1)
    assert cycle_sum(c2) == 1

    flipped = birkhoff_cycle(slicing_vector(4), c4.to_cycle_matrix().negate())
    assert maximal_element(flipped)[:2] == (4, 4)
    assert cycle_sign(flipped) == -1
    assert cycle_sum(flipped) == -30


def test_cycle_sum_matches_double_loop():
    for n in (2, 3, 4):
        v = slicing_vector(n)
        for m in enumerate_edge_directions(n):
            expected = 0
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    expected += v.a(i, j) * m.entries[i - 1][j - 1]
            c = birkhoff_cycle(v, m)
            assert cycle_sum(c, v) == expected
            assert cycle_sum(birkhoff_cycle(v, m.negate()), v) == -expected


def test_negative_sum_bound_examples():
    c4 = _n4_cycle()
    terms = negative_sum_bound(c4)
    assert terms["row"] == 4
    assert terms["S"] == 3
    assert terms["bound"] == 14
    assert terms["lower_bound"] == 2
    assert cycle_sum(c4) >= terms["lower_bound"]
    assert check_negative_sum_bound(c4)

    # rows {1, 2} only: nothing above row 2 contributes
    c2 = birkhoff_cycle(slicing_vector(3), CycleMatrix.from_signs(3, {(1, 1): -1, (1, 3): 1, (2, 3): -1, (2, 1): 1}))
    if cycle_sign(c2) < 0:
        c2 = birkhoff_cycle(slicing_vector(3), c2.to_cycle_matrix().negate())
    terms = negative_sum_bound(c2)
    assert terms["S"] == 0 and terms["bound"] == 0
    assert terms["lower_bound"] == 1

    with pytest.raises(DomainError):
        negative_sum_bound(birkhoff_cycle(slicing_vector(4), c4.to_cycle_matrix().negate()))


def test_verify_lemma12_exhaustive():
    for n in (2, 3, 4, 5):
        report = verify_lemma12(n)
        assert report["passed"], report["witness"]
        assert report["cycle_count"] == CYCLE_COUNTS[n]
        assert report["violations"] == 0
        assert report["min_positive_sum"] > 0
        assert report["max_negative_sum"] < 0


def test_verify_negative_sum_bound_exhaustive():
    for n in (2, 3, 4, 5):
        report = verify_negative_sum_bound(n)
        assert report["passed"], report["witness"]
        assert report["cycle_count"] == CYCLE_COUNTS[n] // 2
        assert report["min_slack"] >= 0


def main():
    """Run all tests"""
    tests = [value for name, value in sorted(globals().items()) if name.startswith("test_") and callable(value)]
    print("🧪 Birkhoff combinatorics tests\n" + "=" * 50)
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")
    print(f"\n📊 {len(tests) - failed}/{len(tests)} tests passed")
    return failed == 0


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
