"""
Tests for the exact rational linear algebra layer
"""
import os
import random
import sys
from fractions import Fraction

import numpy as np
import pytest

# Add the current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core.errors import DimensionError, DomainError, SingularMatrixError
from core.rational_linalg import (
    as_fraction_array,
    as_int_array,
    det_exact,
    hnf,
    identity,
    integer_kernel,
    inverse_exact,
    nullspace_exact,
    rank_exact,
    saturated_lattice_basis,
    solve_exact,
    solve_integer,
)

BASIS_3 = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, -2, 1, 0, 0, 0],
    [0, 0, 0, 0, -3, 0, 0, 1, 0],
    [0, 0, 0, 0, -6, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
]


def _random_int_matrix(rng, rows, cols, low=-9, high=9):
    return [[rng.randint(low, high) for _ in range(cols)] for _ in range(rows)]


def _matmul(A, B):
    return as_fraction_array(A).dot(as_fraction_array(B))


def test_det_examples():
    assert det_exact(identity(3)) == 1
    assert det_exact([[0, 1], [1, 0]]) == -1
    assert abs(det_exact(BASIS_3)) == 1
    assert det_exact([[Fraction(1, 2), 1], [1, 4]]) == 1
    assert det_exact(np.empty((0, 0), dtype=object)) == 1


def test_det_singular_and_non_square():
    assert det_exact([[1, 2], [2, 4]]) == 0
    assert det_exact([[0, 0, 1], [0, 1, 0], [0, 0, 0]]) == 0
    with pytest.raises(DimensionError):
        det_exact([[1, 2, 3], [4, 5, 6]])


def test_det_transpose_invariance():
    rng = random.Random(1234)
    for size in range(1, 7):
        for _ in range(20):
            M = as_int_array(_random_int_matrix(rng, size, size))
            assert det_exact(M) == det_exact(M.T)


def test_det_rational_matches_cofactor_2x2():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c, d = (Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(4))
        assert det_exact([[a, b], [c, d]]) == a * d - b * c


def test_floats_are_rejected():
    with pytest.raises(DomainError):
        as_fraction_array([[0.5, 1]])
    with pytest.raises(DomainError):
        as_int_array([[Fraction(1, 2)]])


def test_hnf_examples():
    H, U, r = hnf(identity(3))
    assert H.tolist() == identity(3).tolist()
    assert U.tolist() == identity(3).tolist()
    assert r == 3

    H, U, r = hnf([[2, 0], [0, 3]])
    assert H.tolist() == [[2, 0], [0, 3]]
    assert U.tolist() == [[1, 0], [0, 1]]

    A = [[2, 4], [1, 3]]
    H, U, r = hnf(A)
    assert _matmul(U, A).tolist() == H.tolist()
    assert abs(det_exact(U)) == 1
    assert H[0, 0] > 0 and H[1, 1] > 0
    assert H[1, 0] == 0
    assert 0 <= H[0, 1] < H[1, 1]


def test_hnf_random_identities():
    rng = random.Random(99)
    for _ in range(60):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        A = _random_int_matrix(rng, rows, cols)
        H, U, r = hnf(A)
        assert _matmul(U, A).tolist() == H.tolist()
        assert abs(det_exact(U)) == 1
        assert r == rank_exact(A)
        # echelon shape with positive pivots and reduced entries above them
        last = -1
        for i in range(r):
            p = next(c for c in range(cols) if H[i, c] != 0)
            assert p > last and H[i, p] > 0
            for k in range(i):
                assert 0 <= H[k, p] < H[i, p]
            last = p
        assert all(x == 0 for x in H[r:].flat)


def test_solve_exact_examples():
    assert list(solve_exact(identity(2), [5, 7])) == [5, 7]
    assert list(solve_exact([[2, 0], [0, 2]], [1, 1])) == [Fraction(1, 2), Fraction(1, 2)]
    identity_permutation = [1, 0, 0, 0, 1, 0, 0, 0, 1]
    x = solve_exact(as_int_array(BASIS_3).T, identity_permutation)
    assert list(x) == [1, 0, 0, 0, 0, 0, 0, 1, 7]


def test_solve_exact_random_residual():
    rng = random.Random(2024)
    for size in range(1, 6):
        for _ in range(20):
            A = _random_int_matrix(rng, size, size)
            if det_exact(A) == 0:
                continue
            b = [Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(size)]
            x = solve_exact(A, b)
            assert list(as_fraction_array(A).dot(x)) == b


def test_solve_exact_errors():
    with pytest.raises(SingularMatrixError):
        solve_exact([[1, 2], [2, 4]], [1, 1])
    with pytest.raises(DimensionError):
        solve_exact([[1, 2, 3], [4, 5, 6]], [1, 1])
    with pytest.raises(DimensionError):
        solve_exact(identity(2), [1, 2, 3])


def test_inverse_exact():
    A = [[2, 1], [1, 1]]
    assert _matmul(A, inverse_exact(A)).tolist() == [[1, 0], [0, 1]]
    with pytest.raises(SingularMatrixError):
        inverse_exact([[1, 1], [1, 1]])


def test_rational_arithmetic_against_cross_multiplication():
    rng = random.Random(42)
    for _ in range(10_000):
        a, c = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        b, d = rng.randint(1, 10**6), rng.randint(1, 10**6)
        total = Fraction(a, b) + Fraction(c, d)
        assert total.numerator * b * d == (a * d + c * b) * total.denominator
        assert total.denominator > 0


def test_nullspace_and_kernel():
    A = [[1, 1, 1]]
    null = nullspace_exact(A)
    assert null.shape == (2, 3)
    assert all(x == 0 for x in as_fraction_array(A).dot(null.T).flat)

    K = integer_kernel([[2, 4, 6]])
    assert K.shape == (2, 3)
    assert all(x == 0 for x in as_int_array([[2, 4, 6]]).dot(K.T).flat)
    # kernel basis plus a vector of functional value 1 spans Z^3
    assert abs(det_exact([list(K[0]), list(K[1]), [1, 0, 0]])) == 1


def test_saturated_lattice_basis():
    B = saturated_lattice_basis([[2, 4]], 2)
    assert B.shape == (1, 2)
    assert [abs(x) for x in B[0]] == [1, 2]

    full = saturated_lattice_basis([[1, 0], [0, 3]], 2)
    assert full.tolist() == [[1, 0], [0, 1]]

    assert saturated_lattice_basis([], 3).shape == (0, 3)


def test_solve_integer():
    assert solve_integer([[2, 0], [0, 3]], [4, 9]) == (2, 3)
    assert solve_integer([[2, 0]], [3]) is None
    assert solve_integer([[1, 2]], [Fraction(1, 2)]) is None
    x = solve_integer([[3, 5]], [1])
    assert x is not None and 3 * x[0] + 5 * x[1] == 1
    assert solve_integer([[1, 1], [1, 1]], [1, 2]) is None


def main():
    """Run all tests"""
    tests = [value for name, value in sorted(globals().items()) if name.startswith("test_") and callable(value)]
    print("🧪 Rational linear algebra tests\n" + "=" * 50)
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
