"""
Exact placing triangulation of a full-dimensional point set

Points are inserted one at a time. The boundary of the current triangulation is kept as
(d−1)-simplices, each remembering the opposite vertex of the simplex it bounds. A new
point is joined to every boundary simplex that sees it strictly from outside; ridges
between seen and unseen boundary simplices become the new boundary. The boundary simplices
of the final triangulation also give the facets of the convex hull, from which edges and
extreme points follow combinatorially.
"""
import itertools
import logging
from collections import Counter
from fractions import Fraction
from math import factorial, gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .config import Config
from .errors import DomainError
from .rational_linalg import det_exact, nullspace_exact, rank_exact, scale_to_integers

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]
Simplex = Tuple[int, ...]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class PlacingTriangulation:
    """Placing triangulation of points spanning R^d, d ≥ 1"""

    def __init__(
        self,
        points: Sequence[Sequence],
        max_dimension: int = Config.HULL_MAX_DIMENSION,
        max_vertices: int = Config.HULL_MAX_VERTICES,
    ):
        self.points: List[Point] = [tuple(Fraction(x) for x in p) for p in points]
        if not self.points:
            raise DomainError("cannot triangulate an empty point set")
        self.dimension = len(self.points[0])
        if self.dimension > max_dimension:
            raise DomainError(f"exact hull limited to dimension {max_dimension}, got {self.dimension}")
        if len(self.points) > max_vertices:
            raise DomainError(f"exact hull limited to {max_vertices} points, got {len(self.points)}")

        self.simplices: List[Simplex] = []
        self.boundary: Dict[Simplex, int] = {}
        self._build()

    def _orientation(self, facet: Sequence[int], point: Point) -> int:
        base = self.points[facet[0]]
        rows = [[x - y for x, y in zip(self.points[f], base)] for f in facet[1:]]
        rows.append([x - y for x, y in zip(point, base)])
        return _sign(det_exact(rows))

    def _initial_simplex(self) -> List[int]:
        chosen = [0]
        base = self.points[0]
        diffs: List[List[Fraction]] = []
        for k, p in enumerate(self.points[1:], start=1):
            candidate = diffs + [[x - y for x, y in zip(p, base)]]
            if rank_exact(candidate) > len(diffs):
                diffs = candidate
                chosen.append(k)
                if len(chosen) == self.dimension + 1:
                    return chosen
        raise DomainError(
            f"points span only {len(chosen) - 1} dimensions of R^{self.dimension}"
        )

    def _build(self) -> None:
        d = self.dimension
        start = self._initial_simplex()
        self.simplices.append(tuple(start))
        for w in start:
            self.boundary[tuple(sorted(set(start) - {w}))] = w

        placed = set(start)
        for p in range(len(self.points)):
            if p in placed:
                continue
            point = self.points[p]
            visible = [
                facet for facet, inside in self.boundary.items()
                if 0 != self._orientation(facet, point) != self._orientation(facet, self.points[inside])
            ]
            placed.add(p)
            if not visible:
                continue
            ridges: Counter = Counter()
            opposite: Dict[Simplex, int] = {}
            for facet in visible:
                self.simplices.append(facet + (p,))
                for w in facet:
                    ridge = tuple(x for x in facet if x != w)
                    ridges[ridge] += 1
                    opposite[ridge] = w
                del self.boundary[facet]
            for ridge, count in ridges.items():
                if count == 1:
                    self.boundary[tuple(sorted(ridge + (p,)))] = opposite[ridge]
        logger.debug(
            f"Placing triangulation in R^{d}: {len(self.points)} points, "
            f"{len(self.simplices)} simplices, {len(self.boundary)} boundary simplices"
        )

    def simplex_volume(self, simplex: Simplex) -> Fraction:
        base = self.points[simplex[0]]
        rows = [[x - y for x, y in zip(self.points[s], base)] for s in simplex[1:]]
        return abs(det_exact(rows)) / factorial(self.dimension)

    def volume(self) -> Fraction:
        """Sum of |det| / d! over the simplices"""
        return sum((self.simplex_volume(s) for s in self.simplices), Fraction(0))

    def facets(self) -> List[Tuple[Tuple[int, ...], int, FrozenSet[int]]]:
        """
        Hull facets as (primitive outward normal, offset, indices of points on the facet),
        grouping boundary simplices that share a supporting hyperplane.
        """
        if self.dimension == 1:
            values = [p[0] for p in self.points]
            low, high = min(values), max(values)
            return [
                ((-1,), -low, frozenset(i for i, x in enumerate(values) if x == low)),
                ((1,), high, frozenset(i for i, x in enumerate(values) if x == high)),
            ]
        seen: Dict[Tuple[Tuple[int, ...], Fraction], FrozenSet[int]] = {}
        for facet, inside in self.boundary.items():
            base = self.points[facet[0]]
            rows = [[x - y for x, y in zip(self.points[f], base)] for f in facet[1:]]
            normal = scale_to_integers(nullspace_exact(rows)[0])
            g = gcd(*normal)
            normal = [c // g for c in normal]
            side = sum(c * (x - y) for c, x, y in zip(normal, self.points[inside], base))
            if side > 0:
                normal = [-c for c in normal]
            offset = sum(c * x for c, x in zip(normal, base))
            key = (tuple(normal), offset)
            if key not in seen:
                seen[key] = frozenset(
                    i for i, p in enumerate(self.points)
                    if sum(c * x for c, x in zip(normal, p)) == offset
                )
        return sorted((normal, offset, members) for (normal, offset), members in seen.items())


def _facet_incidence(facets) -> Dict[int, Set[int]]:
    incidence: Dict[int, Set[int]] = {}
    for k, (_, _, members) in enumerate(facets):
        for i in members:
            incidence.setdefault(i, set()).add(k)
    return incidence


def _smallest_face(facets, facet_ids: Set[int], count: int) -> Set[int]:
    members: Set[int] = set(range(count))
    for k in facet_ids:
        members &= facets[k][2]
    return members


def extreme_points(points: Sequence[Sequence], triangulation: Optional[PlacingTriangulation] = None) -> List[bool]:
    """Mask of points that are vertices of their convex hull (full-dimensional input)"""
    tri = triangulation or PlacingTriangulation(points)
    facets = tri.facets()
    incidence = _facet_incidence(facets)
    count = len(tri.points)
    return [
        _smallest_face(facets, incidence.get(i, set()), count) == {i}
        for i in range(count)
    ]


def hull_edges(points: Sequence[Sequence], triangulation: Optional[PlacingTriangulation] = None) -> List[Tuple[int, int]]:
    """
    Edges of the convex hull as index pairs: u, v span an edge iff the intersection of
    all facets containing both holds no other point.
    """
    tri = triangulation or PlacingTriangulation(points)
    facets = tri.facets()
    incidence = _facet_incidence(facets)
    count = len(tri.points)
    if tri.dimension == 1:
        values = [p[0] for p in tri.points]
        low = [i for i, x in enumerate(values) if x == min(values)]
        high = [i for i, x in enumerate(values) if x == max(values)]
        return [tuple(sorted((low[0], high[0])))] if len(low) == 1 and len(high) == 1 else []
    edges = []
    for u, v in itertools.combinations(range(count), 2):
        common = incidence.get(u, set()) & incidence.get(v, set())
        if not common:
            continue
        if _smallest_face(facets, common, count) == {u, v}:
            edges.append((u, v))
    return edges
