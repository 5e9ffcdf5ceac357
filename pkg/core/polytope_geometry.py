"""
Polytope geometry for the slicing volume formula

A polytope that is 0-integral (integral vertices) and in 1-general position (no edge
parallel to the hyperplanes x_1 = const) has normalized volume equal to the sum, over the
integers y between its smallest and largest first coordinate, of the lattice volumes of its
slices at x_1 = y. Polytopes that are not full-dimensional are first moved into a lattice
chart of their affine hull whose first coordinate is the chosen slicing functional.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .birkhoff_combinatorics import birkhoff_edges, enumerate_vertices
from .errors import (
    DegenerateDimensionError,
    DimensionError,
    DomainError,
    NonPrimitiveFunctionalError,
    PreconditionError,
    UnsupportedDepthError,
)
from .rational_linalg import (
    as_fraction_array,
    as_int_array,
    det_exact,
    hnf,
    inverse_exact,
    nullspace_exact,
    pivot_columns,
    rank_exact,
    saturated_lattice_basis,
    scale_to_integers,
    solve_integer,
)
from .triangulation import PlacingTriangulation, extreme_points, hull_edges

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]
Edge = Tuple[int, int]


def _point(p: Sequence) -> Point:
    return tuple(Fraction(x) for x in p)


def _is_integral(p: Sequence[Fraction]) -> bool:
    return all(Fraction(x).denominator == 1 for x in p)


def _describe(p: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in p) + ")"


def _differences(points: Sequence[Point]) -> List[List[Fraction]]:
    base = points[0]
    return [[x - y for x, y in zip(p, base)] for p in points[1:]]


@dataclass(frozen=True)
class VPolytope:
    """Vertices in R^D with an optional edge list (index pairs)"""
    vertices: Tuple[Point, ...]
    edges: Optional[Tuple[Edge, ...]] = None

    def __post_init__(self):
        if self.vertices:
            D = len(self.vertices[0])
            if any(len(v) != D for v in self.vertices):
                raise DimensionError("all vertices must have the same number of coordinates")
        for a, b in self.edges or ():
            if not (0 <= a < len(self.vertices) and 0 <= b < len(self.vertices)):
                raise DomainError(f"edge ({a}, {b}) references a missing vertex")
            if a == b or self.vertices[a] == self.vertices[b]:
                raise DomainError(f"edge ({a}, {b}) does not connect distinct vertices")

    @classmethod
    def from_points(cls, points: Sequence[Sequence], edges: Optional[Sequence[Sequence[int]]] = None) -> "VPolytope":
        return cls(
            tuple(_point(p) for p in points),
            None if edges is None else tuple((int(a), int(b)) for a, b in edges),
        )

    @property
    def ambient_dimension(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    @cached_property
    def affine_dimension(self) -> int:
        """Rank of the differences from the first vertex; −1 for the empty polytope"""
        if not self.vertices:
            return -1
        if len(self.vertices) == 1:
            return 0
        return rank_exact(_differences(self.vertices))

    def translate(self, v: Sequence) -> "VPolytope":
        shift = _point(v)
        return VPolytope(tuple(tuple(x + s for x, s in zip(p, shift)) for p in self.vertices), self.edges)


@dataclass(frozen=True)
class SlicingSpace:
    """π_k(y): the points whose first k coordinates equal y"""
    level: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.level)

    def contains(self, point: Sequence) -> bool:
        return project(point, self.k) == tuple(Fraction(y) for y in self.level)


@dataclass(frozen=True)
class SliceRecord:
    level: int
    slice: VPolytope
    volume: Fraction

    @property
    def space(self) -> SlicingSpace:
        return SlicingSpace((self.level,))


class _LatticeFrame:
    """Coordinates with respect to an affine lattice base + Σ c_i·rows[i]"""

    def __init__(self, base: Sequence, rows):
        self.base = _point(base)
        self.rows = as_int_array(rows, shape=(0, len(self.base)))
        self.dimension = self.rows.shape[0]
        if self.dimension:
            self.columns = pivot_columns(self.rows)
            self.inverse = inverse_exact(self.rows[:, self.columns])

    def to_coords(self, x: Sequence) -> Point:
        if not self.dimension:
            return ()
        diff = as_fraction_array([Fraction(x[c]) - self.base[c] for c in self.columns])
        return tuple(diff.dot(self.inverse))

    def from_coords(self, c: Sequence) -> Point:
        point = list(self.base)
        for coefficient, row in zip(c, self.rows.tolist()):
            for k, value in enumerate(row):
                point[k] += Fraction(coefficient) * value
        return tuple(point)


def _direction_frame(points: Sequence[Point]) -> _LatticeFrame:
    """Frame on the lattice (direction space of the points) ∩ Z^D, based at the first point"""
    D = len(points[0])
    basis = saturated_lattice_basis(_differences(points), D) if len(points) > 1 else np.empty((0, D), dtype=object)
    return _LatticeFrame(points[0], basis)


@dataclass(frozen=True)
class LatticeChart:
    """
    Lattice basis of aff(P) ∩ Z^D: x = base + Σ c_i·directions[i]. The first direction has
    functional value 1 and the others span the functional's kernel, so the first chart
    coordinate of x is functional(x) − functional(base); the base has functional value 0.
    """
    base: Tuple[int, ...]
    directions: Tuple[Tuple[int, ...], ...]
    functional: Tuple[int, ...]
    _frame: _LatticeFrame = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_frame", _LatticeFrame(self.base, self.directions))

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def to_chart(self, x: Sequence) -> Point:
        return self._frame.to_coords(x)

    def from_chart(self, c: Sequence) -> Point:
        return self._frame.from_coords(c)

    def apply(self, p: VPolytope) -> VPolytope:
        return VPolytope(tuple(self.to_chart(v) for v in p.vertices), p.edges)

    def gram_determinant(self) -> int:
        W = as_int_array(self.directions)
        return int(det_exact(W.dot(W.T)))


def project(p: Sequence, k: int) -> Point:
    """π^(k): the first k coordinates"""
    if k < 0 or k > len(p):
        raise DomainError(f"cannot project a point of R^{len(p)} to R^{k}")
    return tuple(Fraction(x) for x in p[:k])


def is_affinely_integral(points: Sequence[Sequence]) -> bool:
    """
    True iff the lattice points of the affine hull U project onto all of Z^dim(U) under
    the first dim(U) coordinates.
    """
    pts = [_point(p) for p in points]
    if not pts:
        raise DomainError("affine integrality of an empty point set")
    if len(pts) == 1 or rank_exact(_differences(pts)) == 0:
        return _is_integral(pts[0])

    D = len(pts[0])
    diffs = _differences(pts)
    m = rank_exact(diffs)
    complement = nullspace_exact(diffs)
    if complement.shape[0]:
        C = as_int_array([scale_to_integers(row) for row in complement])
        rhs = [sum(c * x for c, x in zip(row, pts[0])) for row in C.tolist()]
        if solve_integer(C, rhs) is None:
            return False
    basis = saturated_lattice_basis(diffs, D)
    return abs(det_exact(basis[:, :m])) == 1


def is_in_general_position(points: Sequence[Sequence]) -> bool:
    """True iff the first dim(U) coordinates map the affine hull U onto R^dim(U)"""
    pts = [_point(p) for p in points]
    if not pts:
        raise DomainError("general position of an empty point set")
    if len(pts) == 1:
        return True
    diffs = _differences(pts)
    m = rank_exact(diffs)
    if m == 0:
        return True
    return rank_exact([row[:m] for row in diffs]) == m


def is_k_general_position(p: VPolytope, k: int) -> bool:
    """
    Faces of dimension ≤ k in affinely general position. Vertices always are; for k = 1
    this asks that no edge direction has a zero first coordinate.
    """
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if k > 1:
        raise UnsupportedDepthError(f"k-general position is only supported for k <= 1, got k={k}")
    if k == 0:
        return True
    if p.edges is None:
        raise DomainError("1-general position needs the edge list")
    return all(p.vertices[a][0] != p.vertices[b][0] for a, b in p.edges)


def build_lattice_chart(p: VPolytope, functional: Sequence[int]) -> LatticeChart:
    """
    Lattice chart of aff(p) whose first coordinate is the given integer functional.

    Raises:
        PreconditionError: If a vertex is not integral
        DimensionError: If the functional has the wrong length
        NonPrimitiveFunctionalError: If the functional is not primitive on the difference lattice
    """
    for index, v in enumerate(p.vertices):
        if not _is_integral(v):
            raise PreconditionError(f"vertex {index} {_describe(v)} is not integral", witness=index)
    D = p.ambient_dimension
    f = [int(x) for x in functional]
    if len(f) != D:
        raise DimensionError(f"functional has {len(f)} entries, polytope lives in R^{D}")
    if p.affine_dimension < 1:
        raise DomainError("a chart needs a polytope of dimension at least 1")

    basis = saturated_lattice_basis(_differences(p.vertices), D)
    values = [[sum(a * b for a, b in zip(f, row))] for row in basis.tolist()]
    H, U, r = hnf(values)
    if r == 0 or H[0, 0] != 1:
        found = H[0, 0] if r else 0
        raise NonPrimitiveFunctionalError(f"functional attains gcd {found} on the difference lattice, need 1")
    W = U.dot(basis)
    w1 = [int(x) for x in W[0]]

    if p.affine_dimension == D:
        base = [0] * D
    else:
        v0 = [int(x) for x in p.vertices[0]]
        level = sum(a * b for a, b in zip(f, v0))
        base = [x - level * w for x, w in zip(v0, w1)]

    chart = LatticeChart(tuple(base), tuple(tuple(int(x) for x in row) for row in W.tolist()), tuple(f))
    logger.info(f"Lattice chart of dimension {chart.dimension} in R^{D}")
    return chart


def _frame_volume(points: Sequence[Point]) -> Fraction:
    frame = _direction_frame(points)
    coords = [frame.to_coords(p) for p in points]
    return PlacingTriangulation(coords).volume()


def relative_volume(q: VPolytope, dimension: Optional[int] = None) -> Fraction:
    """
    Volume of q normalized to the lattice (direction space of q) ∩ Z^D.

    With `dimension` given, a polytope of lower dimension has volume 0; a lone point has
    volume 1 only when no dimension is requested.
    """
    if not q.vertices:
        return Fraction(0)
    d = q.affine_dimension
    if dimension is not None and d < dimension:
        return Fraction(0)
    if d == 0:
        return Fraction(1)
    return _frame_volume(q.vertices)


def slice_at(p: VPolytope, y: int) -> SliceRecord:
    """
    Intersection of p (full-dimensional, in chart coordinates, edges known) with x_1 = y.
    Slice vertices are the vertices on the hyperplane plus the crossing points of edges.
    """
    if p.edges is None:
        raise DomainError("slicing needs the edge list")
    level = Fraction(y)
    found: Dict[Point, None] = {}
    for v in p.vertices:
        if v[0] == level:
            found[v] = None
    for a, b in p.edges:
        u, w = p.vertices[a], p.vertices[b]
        if (u[0] - level) * (w[0] - level) < 0:
            t = (level - u[0]) / (w[0] - u[0])
            found[tuple(x + t * (z - x) for x, z in zip(u, w))] = None

    piece = VPolytope(tuple(sorted(found)))
    volume = relative_volume(piece, dimension=p.ambient_dimension - 1) if found else Fraction(0)
    return SliceRecord(int(y), piece, volume)


def volume_by_slicing(
    p: VPolytope,
    chart: LatticeChart,
    max_workers: Optional[int] = None,
) -> Tuple[Fraction, List[SliceRecord]]:
    """
    Normalized volume of p as the sum of its integer slices along the chart's first coordinate.

    Returns:
        tuple: (total volume, slice records sorted by level, zero-volume slices included)

    Raises:
        DegenerateDimensionError: If p has dimension ≤ 1
        PreconditionError: If a vertex is not integral, an edge list is missing, or an edge
            is parallel to the slicing hyperplanes
    """
    d = p.affine_dimension
    if d <= 1:
        raise DegenerateDimensionError(f"slicing needs dimension >= 2, got {d}")
    if p.edges is None:
        raise PreconditionError("slicing needs the edge list of the polytope")
    for index, v in enumerate(p.vertices):
        if not _is_integral(v):
            raise PreconditionError(f"vertex {index} {_describe(v)} is not integral", witness=index)

    q = chart.apply(p)
    for a, b in q.edges:
        if q.vertices[a][0] == q.vertices[b][0]:
            u = _describe(p.vertices[a])
            w = _describe(p.vertices[b])
            raise PreconditionError(
                f"not in 1-general position: edge {u}-{w} is parallel to the slicing hyperplanes",
                witness=(a, b),
            )

    firsts = [v[0] for v in q.vertices]
    levels = list(range(math.ceil(min(firsts)), math.floor(max(firsts)) + 1))
    logger.info(f"Slicing a {d}-polytope with {len(q.vertices)} vertices at {len(levels)} levels")

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(lambda y: slice_at(q, y), levels))
    else:
        records = [slice_at(q, y) for y in levels]
    records.sort(key=lambda record: record.level)

    total = sum((record.volume for record in records), Fraction(0))
    return total, records


def triangulation_oracle(p: VPolytope) -> Fraction:
    """
    Normalized volume of p without slicing: lattice coordinates of the direction space,
    exact placing triangulation, Σ |det| / d!.
    """
    if not p.vertices:
        return Fraction(0)
    if p.affine_dimension == 0:
        return Fraction(1)
    frame = _direction_frame(p.vertices)
    coords = [frame.to_coords(v) for v in p.vertices]
    return PlacingTriangulation(coords).volume()


def euclidean_volume(normalized: Fraction, chart: LatticeChart) -> Optional[Fraction]:
    """normalized × covolume of the chart lattice, when sqrt(det Gram) is an integer"""
    gram = chart.gram_determinant()
    root = math.isqrt(gram)
    if root * root != gram:
        return None
    return Fraction(normalized) * root


def compute_edges(vertices: Sequence[Sequence]) -> List[Edge]:
    """Exact edge list of conv(vertices), via the facets of a placing triangulation"""
    pts = [_point(v) for v in vertices]
    if len(pts) < 2:
        return []
    frame = _direction_frame(pts)
    return hull_edges([frame.to_coords(v) for v in pts])


def check_extreme(vertices: Sequence[Sequence]) -> List[bool]:
    """For each point, whether it is a vertex of conv(vertices)"""
    pts = [_point(v) for v in vertices]
    if len(pts) == 1:
        return [True]
    frame = _direction_frame(pts)
    coords = [frame.to_coords(v) for v in pts]
    if frame.dimension == 0:
        return [False] * len(pts)
    return extreme_points(coords)


def birkhoff_polytope(n: int) -> VPolytope:
    """B_n in R^(n²): vectorized permutation matrices with the cycle-adjacency edges"""
    vertices = enumerate_vertices(n)
    return VPolytope(
        tuple(tuple(Fraction(x) for x in P.vectorize()) for P in vertices),
        tuple(birkhoff_edges(n)),
    )
