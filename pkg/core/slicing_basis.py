"""
Slicing vector V_n and the unimodular change of basis built from it

V_n = (a_ij) has a zero first row and column and a_ij = (j−1)·n^(i−2) elsewhere. It is
never orthogonal to an edge direction of B_n, so hyperplanes normal to V_n cut no edge of
B_n lengthwise. The basis spans the hyperplane H_n orthogonal to V_n with n²−1 integer
vectors and closes it with an offset vector of inner product 1, which makes the whole
basis unimodular.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from .birkhoff_combinatorics import (
    PermutationMatrix,
    birkhoff_cycle,
    birkhoff_edges,
    cycle_sign,
    enumerate_edge_directions,
    enumerate_vertices,
)
from .errors import DimensionError, DomainError
from .rational_linalg import IntMatrix, as_fraction_array, as_int_array, det_exact, inverse_exact

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]

FAMILY_TOP_ROW = "top_row"
FAMILY_LEFT_COLUMN = "left_column"
FAMILY_TWO_ENTRY = "two_entry"
FAMILY_OFFSET = "offset"


@dataclass(frozen=True)
class SlicingVector:
    """V_n with 1-based entry accessor a(i, j)"""
    n: int

    def a(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise DimensionError(f"entry ({i}, {j}) outside V_{self.n}")
        if self.n == 1:
            return 1
        if i == 1:
            return 0
        return (j - 1) * self.n ** (i - 2)

    def matrix(self) -> Matrix:
        return tuple(
            tuple(self.a(i, j) for j in range(1, self.n + 1))
            for i in range(1, self.n + 1)
        )

    def vectorize(self) -> Tuple[int, ...]:
        return tuple(x for row in self.matrix() for x in row)


def slicing_vector(n: int) -> SlicingVector:
    """V_n for n ≥ 1 (V_1 = 1)"""
    if n < 1:
        raise DomainError(f"V_n needs n >= 1, got {n}")
    return SlicingVector(n)


def elementary(n: int, i: int, j: int) -> Matrix:
    """E(i, j): zero except for a single 1 at (i, j)"""
    return tuple(
        tuple(1 if (r, c) == (i, j) else 0 for c in range(1, n + 1))
        for r in range(1, n + 1)
    )


@dataclass(frozen=True)
class SlicingBasis:
    """
    Ordered basis of n×n matrices. The matrix form stacks the row-major vectorization of
    each basis vector as one row.
    """
    n: int
    vectors: Tuple[Matrix, ...]
    families: Tuple[str, ...]

    @property
    def offset_index(self) -> int:
        return self.families.index(FAMILY_OFFSET)

    @cached_property
    def matrix_form(self) -> IntMatrix:
        return as_int_array([[x for row in vector for x in row] for vector in self.vectors])

    @cached_property
    def coordinate_map(self) -> np.ndarray:
        # x = (Bᵗ)⁻¹ · vec(p); integral whenever B is unimodular
        return inverse_exact(self.matrix_form.T)


def build_basis(n: int) -> SlicingBasis:
    """
    The change of basis for B_n, in this order:
    E(1,1..n), then E(2..n,1), then for i, j ≥ 2 with (i, j) ≠ (2, 2) in row-major order
    the vector with −a_ij at (2,2) and 1 at (i,j), and last the offset E(2,2).
    """
    if n < 2:
        raise DomainError(f"the slicing basis needs n >= 2, got {n}")
    v = slicing_vector(n)
    vectors: List[Matrix] = []
    families: List[str] = []

    for j in range(1, n + 1):
        vectors.append(elementary(n, 1, j))
        families.append(FAMILY_TOP_ROW)
    for i in range(2, n + 1):
        vectors.append(elementary(n, i, 1))
        families.append(FAMILY_LEFT_COLUMN)
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            if (i, j) == (2, 2):
                continue
            grid = [[0] * n for _ in range(n)]
            grid[1][1] = -v.a(i, j)
            grid[i - 1][j - 1] = 1
            vectors.append(tuple(tuple(row) for row in grid))
            families.append(FAMILY_TWO_ENTRY)
    vectors.append(elementary(n, 2, 2))
    families.append(FAMILY_OFFSET)

    return SlicingBasis(n, tuple(vectors), tuple(families))


def basis_inner_products(b: SlicingBasis) -> List[int]:
    """V_n · b_k for every basis vector"""
    v = slicing_vector(b.n).vectorize()
    return [sum(x * y for x, y in zip(v, row)) for row in b.matrix_form.tolist()]


def check_unimodular(b: SlicingBasis) -> bool:
    """True iff |det(matrix form)| = 1"""
    return abs(det_exact(b.matrix_form)) == 1


def _as_flat_point(b: SlicingBasis, p: Union[PermutationMatrix, Sequence]) -> List[Fraction]:
    if isinstance(p, PermutationMatrix):
        if p.n != b.n:
            raise DimensionError(f"vertex of B_{p.n} given to the basis of order {b.n}")
        return [Fraction(x) for x in p.vectorize()]
    flat = list(p)
    if flat and isinstance(flat[0], (list, tuple)):
        flat = [x for row in flat for x in row]
    if len(flat) != b.n * b.n:
        raise DimensionError(f"point has {len(flat)} coordinates, expected {b.n * b.n}")
    return [Fraction(x) for x in flat]


def to_new_coordinates(b: SlicingBasis, p: Union[PermutationMatrix, Sequence]) -> Tuple[Fraction, ...]:
    """The unique x with (matrix form)ᵗ · x = vec(p)"""
    point = as_fraction_array(_as_flat_point(b, p))
    return tuple(b.coordinate_map.dot(point))


def from_new_coordinates(b: SlicingBasis, x: Sequence) -> Tuple[Fraction, ...]:
    """Inverse of to_new_coordinates: the row-major point Σ x_k · b_k"""
    coords = as_fraction_array(list(x))
    if coords.shape != (b.n * b.n,):
        raise DimensionError(f"coordinate vector has {coords.shape[0]} entries, expected {b.n * b.n}")
    return tuple(b.matrix_form.T.dot(coords))


def slicing_coordinate(v: SlicingVector, P: PermutationMatrix) -> int:
    """V_n · P = Σ_i a(i, sigma(i))"""
    if v.n != P.n:
        raise DimensionError(f"V_{v.n} against a vertex of B_{P.n}")
    return sum(v.a(i + 1, P.sigma[i]) for i in range(P.n))


def is_1_general_position(vertices: Sequence[Sequence], edges: Sequence[Tuple[int, int]], axis: int) -> bool:
    """True iff every edge has a nonzero component along coordinate `axis` (0-based)"""
    for a, b in edges:
        if not (0 <= a < len(vertices) and 0 <= b < len(vertices)):
            raise DomainError(f"edge ({a}, {b}) references a missing vertex")
        if list(vertices[a]) == list(vertices[b]):
            raise DomainError(f"degenerate edge ({a}, {b}): equal endpoints")
    return all(vertices[a][axis] != vertices[b][axis] for a, b in edges)


def transformed_vertex_table(n: int, transformed: bool = True) -> List[Dict[str, Any]]:
    """
    One row per vertex of B_n: the permutation, its coordinates (new basis or row-major
    standard) and its slicing coordinate.
    """
    v = slicing_vector(n)
    b = build_basis(n) if transformed else None
    rows = []
    for P in enumerate_vertices(n):
        coordinates = to_new_coordinates(b, P) if transformed else tuple(P.vectorize())
        rows.append({
            "sigma": list(P.sigma),
            "coordinates": [int(x) for x in coordinates],
            "slicing_coordinate": slicing_coordinate(v, P),
        })
    return rows


def verify_theorem4(n: int) -> Dict[str, Any]:
    """
    Check V_n · M ≠ 0 for every M in M_n, and that its sign is the cycle sign.

    Returns:
        dict: check name, n, verdict, cycle count, zero count, minimum |V_n · M|,
        sign disagreements and the first failing cycle matrix
    """
    v = slicing_vector(n)
    V = v.matrix()
    zeros = 0
    disagreements = 0
    min_abs = None
    witness = None
    cycles = enumerate_edge_directions(n)
    for m in cycles:
        value = m.inner_product(V)
        if min_abs is None or abs(value) < min_abs:
            min_abs = abs(value)
        sign = cycle_sign(birkhoff_cycle(v, m))
        if value == 0:
            zeros += 1
        elif (value > 0) != (sign > 0):
            disagreements += 1
        if (value == 0 or (value > 0) != (sign > 0)) and witness is None:
            witness = {"entries": [list(row) for row in m.entries], "inner_product": value}

    passed = zeros == 0 and disagreements == 0
    logger.info(f"theorem4 n={n}: {len(cycles)} cycles, min |V.M| = {min_abs}")
    return {
        "check": "theorem4",
        "n": n,
        "passed": passed,
        "cycle_count": len(cycles),
        "zero_count": zeros,
        "sign_disagreements": disagreements,
        "min_abs_inner_product": min_abs,
        "witness": witness,
    }


def verify_unimodular(n: int) -> Dict[str, Any]:
    """Exact determinant of the basis matrix form plus the H_n membership of every vector"""
    b = build_basis(n)
    det = det_exact(b.matrix_form)
    products = basis_inner_products(b)
    offset = b.offset_index
    in_hyperplane = all(p == 0 for k, p in enumerate(products) if k != offset)
    passed = abs(det) == 1 and in_hyperplane and products[offset] == 1
    logger.info(f"unimodular n={n}: det = {det}")
    return {
        "check": "unimodular",
        "n": n,
        "passed": passed,
        "determinant": int(det),
        "dimension": n * n,
        "offset_inner_product": products[offset],
        "hyperplane_vectors": len(products) - 1,
    }


def verify_general_position(n: int) -> Dict[str, Any]:
    """Every edge of B_n joins vertices with distinct slicing coordinates after the change of basis"""
    v = slicing_vector(n)
    b = build_basis(n)
    vertices = enumerate_vertices(n)
    edges = birkhoff_edges(n)
    coords = [to_new_coordinates(b, P) for P in vertices]
    levels = [slicing_coordinate(v, P) for P in vertices]

    offset_agrees = all(coords[k][b.offset_index] == levels[k] for k in range(len(vertices)))
    general = is_1_general_position(coords, edges, b.offset_index) if edges else True
    gaps = [abs(levels[a] - levels[c]) for a, c in edges]
    witness = None
    for a, c in edges:
        if levels[a] == levels[c]:
            witness = {"edge": [list(vertices[a].sigma), list(vertices[c].sigma)], "level": levels[a]}
            break

    passed = general and offset_agrees and witness is None
    logger.info(f"genpos n={n}: {len(edges)} edges, levels {min(levels)}..{max(levels)}")
    return {
        "check": "genpos",
        "n": n,
        "passed": passed,
        "vertex_count": len(vertices),
        "edge_count": len(edges),
        "min_level_gap": min(gaps) if gaps else None,
        "levels": sorted(set(levels)),
        "witness": witness,
    }
