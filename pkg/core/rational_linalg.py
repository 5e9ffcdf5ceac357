"""
Exact rational linear algebra

Matrices are numpy arrays of dtype=object holding Python ints or `Fraction`s, so every
operation is carried out in arbitrary precision with no rounding.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, DomainError, SingularMatrixError

logger = logging.getLogger(__name__)

Rational = Fraction
# Row-major object arrays; the aliases document which scalar the entries hold.
RatMatrix = np.ndarray
IntMatrix = np.ndarray


def _to_fraction(x) -> Fraction:
    if isinstance(x, (float, np.floating)):
        raise DomainError(f"floating point value {x!r} in exact computation")
    return Fraction(x)


def as_fraction_array(a, shape: Optional[Tuple[int, ...]] = None) -> RatMatrix:
    """
    Convert a nested sequence or array into an object array of `Fraction`s.

    `shape` is only needed for empty inputs, whose shape numpy cannot infer.
    """
    arr = np.array(a, dtype=object)
    if shape is not None and arr.size == 0:
        return np.empty(shape, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for index, x in np.ndenumerate(arr):
        out[index] = _to_fraction(x)
    return out


def as_int_array(a, shape: Optional[Tuple[int, ...]] = None) -> IntMatrix:
    """Convert to an object array of Python ints; non-integral entries are rejected"""
    arr = np.array(a, dtype=object)
    if shape is not None and arr.size == 0:
        return np.empty(shape, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for index, x in np.ndenumerate(arr):
        value = _to_fraction(x)
        if value.denominator != 1:
            raise DomainError(f"non-integral entry {value} where an integer matrix is required")
        out[index] = value.numerator
    return out


def identity(n: int) -> IntMatrix:
    """n×n identity as an object array of ints"""
    eye = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            eye[i, j] = 1 if i == j else 0
    return eye


def _is_integral(a: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in a.flat)


def _require_2d(a: np.ndarray, name: str = "matrix") -> None:
    if a.ndim != 2:
        raise DimensionError(f"{name} must be two-dimensional, got shape {a.shape}")


def det_exact(M) -> Fraction:
    """
    Exact determinant by fraction-free (Bareiss) elimination.

    Integer input stays in Python ints, where every Bareiss division is exact;
    rational input is eliminated over `Fraction`s.

    Raises:
        DimensionError: If M is not square
    """
    a = np.array(M, dtype=object)
    if a.size == 0 and a.ndim < 2:
        return Fraction(1)
    _require_2d(a)
    n, m = a.shape
    if n != m:
        raise DimensionError(f"determinant of a non-square {n}x{m} matrix")
    if n == 0:
        return Fraction(1)

    integral = _is_integral(a)
    work = as_int_array(a) if integral else as_fraction_array(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k, k] == 0:
            nz = [r for r in range(k + 1, n) if work[r, k] != 0]
            if not nz:
                return Fraction(0)
            r = nz[0]
            work[[k, r], :] = work[[r, k], :]
            sign = -sign
        pivot = work[k, k]
        block = work[k + 1:, k + 1:] * pivot - np.multiply.outer(work[k + 1:, k], work[k, k + 1:])
        if integral:
            block = block // prev
        else:
            block = block / prev
        work[k + 1:, k + 1:] = block
        work[k + 1:, k] = 0
        prev = pivot
    return Fraction(sign * work[n - 1, n - 1])


class HNFResult(NamedTuple):
    """
    (Row) Hermite Normal Form decomposition of an n×m integer matrix A, such that:
        H = U·A
    where H is in row echelon form with positive pivots, entries above each pivot
    reduced into [0, pivot), U unimodular, and `rank` the number of nonzero rows of H.
    """
    H: IntMatrix
    U: IntMatrix
    rank: int


def hnf(A) -> HNFResult:
    """
    Row Hermite Normal Form of an integer matrix.

    Pivots are found by repeated division with remainder on the smallest nonzero
    entry of the current column until the entries below the pivot vanish.
    """
    H = as_int_array(A)
    _require_2d(H)
    n, m = H.shape
    U = identity(n)
    i = 0
    j = 0
    while i < n and j < m:
        # Find pivot
        candidates = [r for r in range(i, n) if H[r, j] != 0]
        if not candidates:
            j += 1
            continue
        r = min(candidates, key=lambda rr: abs(H[rr, j]))
        p = H[r, j]

        # Swap rows
        if r != i:
            H[[i, r], :] = H[[r, i], :]
            U[[i, r], :] = U[[r, i], :]

        # Reduce rows below
        done = True
        for r in range(i + 1, n):
            q = H[r, j] // p
            if q != 0:
                H[r, j:] -= H[i, j:] * q
                U[r, :] -= U[i, :] * q
            if H[r, j] != 0:
                done = False

        if done:
            # Correct pivot sign
            if p < 0:
                H[i, j:] *= -1
                U[i, :] *= -1
                p = -p

            # Reduce rows above
            for r in range(i):
                q = H[r, j] // p
                if q != 0:
                    H[r, j:] -= H[i, j:] * q
                    U[r, :] -= U[i, :] * q

            i += 1
            j += 1
    return HNFResult(H, U, i)


def rref(M) -> Tuple[RatMatrix, List[int]]:
    """Reduced row echelon form over the rationals and its pivot columns"""
    R = as_fraction_array(M)
    _require_2d(R)
    n, m = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(m):
        if row == n:
            break
        nz = [r for r in range(row, n) if R[r, col] != 0]
        if not nz:
            continue
        r = nz[0]
        if r != row:
            R[[row, r], :] = R[[r, row], :]
        R[row, :] = R[row, :] / R[row, col]
        for r in range(n):
            if r != row and R[r, col] != 0:
                R[r, :] -= R[row, :] * R[r, col]
        pivots.append(col)
        row += 1
    return R, pivots


def rank_exact(M) -> int:
    """Exact rank"""
    a = np.array(M, dtype=object)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def pivot_columns(M) -> List[int]:
    """Indices of a maximal set of linearly independent columns, leftmost first"""
    return rref(M)[1]


def nullspace_exact(M) -> RatMatrix:
    """Rows form a basis of {x : M x = 0}"""
    R, pivots = rref(M)
    m = R.shape[1]
    free = [c for c in range(m) if c not in pivots]
    basis = np.zeros((len(free), m), dtype=object) + Fraction(0)
    for k, f in enumerate(free):
        basis[k, f] = Fraction(1)
        for i, p in enumerate(pivots):
            basis[k, p] = -R[i, f]
    return basis


def solve_exact(A, b: Sequence) -> np.ndarray:
    """
    Solve A·x = b exactly for square invertible A.

    Raises:
        DimensionError: If A is not square or b has the wrong length
        SingularMatrixError: If A is singular
    """
    a = as_fraction_array(A)
    _require_2d(a)
    n, m = a.shape
    if n != m:
        raise DimensionError(f"solve_exact needs a square matrix, got {n}x{m}")
    y = as_fraction_array(b)
    if y.shape != (n,):
        raise DimensionError(f"right-hand side has shape {y.shape}, expected ({n},)")

    aug = np.concatenate([a, y.reshape((n, 1))], axis=1)
    for c in range(n):
        nz = [r for r in range(c, n) if aug[r, c] != 0]
        if not nz:
            raise SingularMatrixError("matrix is singular")
        r = nz[0]
        if r != c:
            aug[[c, r], :] = aug[[r, c], :]
        pivot = aug[c, c]
        for r in range(c + 1, n):
            if aug[r, c] != 0:
                aug[r, c:] -= aug[c, c:] * (aug[r, c] / pivot)

    x = np.empty(n, dtype=object)
    for i in range(n - 1, -1, -1):
        acc = aug[i, n]
        for j in range(i + 1, n):
            acc -= aug[i, j] * x[j]
        x[i] = acc / aug[i, i]
    return x


def inverse_exact(A) -> RatMatrix:
    """
    Inverse of a square invertible matrix by Gauss-Jordan elimination on [A | I].

    Raises:
        DimensionError: If A is not square
        SingularMatrixError: If A is singular
    """
    a = as_fraction_array(A)
    _require_2d(a)
    n, m = a.shape
    if n != m:
        raise DimensionError(f"inverse of a non-square {n}x{m} matrix")
    R, pivots = rref(np.concatenate([a, as_fraction_array(identity(n))], axis=1))
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return R[:, n:]


def scale_to_integers(row: Sequence) -> List[int]:
    """Smallest positive multiple of a rational row that is integral"""
    values = [Fraction(x) for x in row]
    denominator = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * denominator) for v in values]


def integer_kernel(A, columns: Optional[int] = None) -> IntMatrix:
    """
    Lattice basis (as rows) of {z ∈ Z^m : A z = 0}.

    The rows of U in U·Aᵗ = H that meet the zero rows of H span the kernel, and
    since U is unimodular they form a basis of the whole kernel lattice.
    """
    a = as_int_array(A)
    if a.size == 0:
        if columns is None:
            columns = a.shape[1] if a.ndim == 2 else 0
        return identity(columns)
    _require_2d(a)
    H, U, r = hnf(a.T)
    return U[r:, :].copy()


def saturated_lattice_basis(rows, dimension: int) -> IntMatrix:
    """Lattice basis of span(rows) ∩ Z^dimension"""
    a = as_fraction_array(rows, shape=(0, dimension))
    if a.size == 0 or rank_exact(a) == 0:
        return np.empty((0, dimension), dtype=object)
    complement = nullspace_exact(a)
    if complement.shape[0] == 0:
        return identity(dimension)
    integral = as_int_array([scale_to_integers(row) for row in complement])
    return integer_kernel(integral)


def solve_integer(A, b: Sequence) -> Optional[Tuple[int, ...]]:
    """
    An integer solution of A·x = b, or None when none exists.

    With U·Aᵗ = H, substituting x = Uᵗ·z turns the system into Hᵗ·z = b, which is
    triangular on the pivot columns of H.
    """
    a = as_int_array(A)
    _require_2d(a)
    m, D = a.shape
    rhs = [Fraction(v) for v in b]
    if len(rhs) != m:
        raise DimensionError(f"right-hand side has length {len(rhs)}, expected {m}")
    if any(v.denominator != 1 for v in rhs):
        return None

    H, U, r = hnf(a.T)
    z = [0] * D
    for i in range(r):
        p = next(c for c in range(m) if H[i, c] != 0)
        residual = rhs[p] - sum(z[k] * H[k, p] for k in range(i))
        if residual % H[i, p] != 0:
            return None
        z[i] = int(residual // H[i, p])
    for c in range(m):
        if sum(z[k] * H[k, c] for k in range(r)) != rhs[c]:
            return None
    x = U.T.dot(np.array(z, dtype=object))
    return tuple(int(v) for v in x)
