"""
Vertices and edge directions of Birkhoff polytopes

Vertices of B_n are permutation matrices. Two vertices are adjacent exactly when their
difference is a (−1,0,1)-matrix whose support is one directed simple cycle of the
complete bipartite graph K_{n,n}: +1 at (i, j) is the edge u_i → v_j and −1 is the edge
v_j → u_i. These cycle matrices, read against the slicing vector V_n, are the Birkhoff
cycles whose sums decide the sign of V_n · M.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

Position = Tuple[int, int]
Element = Tuple[int, int, int]  # (row, column, sign), 1-based


def _default_vector(n: int, v: Any) -> Any:
    # slicing_basis builds on this module, so V_n is looked up lazily
    if v is not None:
        return v
    from .slicing_basis import slicing_vector
    return slicing_vector(n)


@dataclass(frozen=True)
class PermutationMatrix:
    """A vertex of B_n: sigma[i-1] is the column of the 1 in row i"""
    n: int
    sigma: Tuple[int, ...]

    def __post_init__(self):
        if len(self.sigma) != self.n or sorted(self.sigma) != list(range(1, self.n + 1)):
            raise DomainError(f"{self.sigma} is not a permutation of 1..{self.n}")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "PermutationMatrix":
        n = len(rows)
        sigma = []
        for row in rows:
            if len(row) != n or sorted(row) != [0] * (n - 1) + [1]:
                raise DomainError(f"{row} is not a row of a permutation matrix")
            sigma.append(list(row).index(1) + 1)
        return cls(n, tuple(sigma))

    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple(1 if self.sigma[i] == j + 1 else 0 for j in range(self.n))
            for i in range(self.n)
        )

    def vectorize(self) -> Tuple[int, ...]:
        """Row-major concatenation of the matrix rows"""
        return tuple(x for row in self.matrix() for x in row)


def _walk_row_first(signs: Dict[Position, int], start: Position) -> List[Position]:
    """Walk a support whose lines hold exactly two entries, leaving `start` along its row"""
    by_row: Dict[int, List[Position]] = {}
    by_col: Dict[int, List[Position]] = {}
    for (i, j) in signs:
        by_row.setdefault(i, []).append((i, j))
        by_col.setdefault(j, []).append((i, j))

    order = [start]
    current = start
    along_row = True
    while len(order) <= len(signs):
        line = by_row[current[0]] if along_row else by_col[current[1]]
        nxt = line[0] if line[1] == current else line[1]
        along_row = not along_row
        if nxt == start:
            break
        order.append(nxt)
        current = nxt
    return order


def _check_cycle_support(n: int, signs: Dict[Position, int]) -> Optional[str]:
    """None when `signs` is a single alternating simple cycle, else the reason it is not"""
    if len(signs) < 4:
        return "a cycle needs at least four entries"
    lines: Dict[Tuple[str, int], List[int]] = {}
    for (i, j), s in signs.items():
        if not (1 <= i <= n and 1 <= j <= n):
            return f"position {(i, j)} outside a {n}x{n} matrix"
        lines.setdefault(("row", i), []).append(s)
        lines.setdefault(("column", j), []).append(s)
    for (kind, index), values in lines.items():
        if sorted(values) != [-1, 1]:
            return f"{kind} {index} does not hold exactly one +1 and one -1"
    walk = _walk_row_first(signs, min(signs))
    if len(walk) != len(signs):
        return "the support splits into several cycles"
    return None


@dataclass(frozen=True)
class CycleMatrix:
    """An element of M_n: one directed simple cycle of K_{n,n} as a (−1,0,1)-matrix"""
    n: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            raise DimensionError(f"cycle matrix must be {self.n}x{self.n}")
        problem = _check_cycle_support(self.n, self.signs())
        if problem is not None:
            raise DomainError(f"not a cycle matrix: {problem}")

    @classmethod
    def from_signs(cls, n: int, signs: Dict[Position, int]) -> "CycleMatrix":
        """Build from 1-based positions mapped to ±1"""
        grid = [[0] * n for _ in range(n)]
        for (i, j), s in signs.items():
            grid[i - 1][j - 1] = s
        return cls(n, tuple(tuple(row) for row in grid))

    def signs(self) -> Dict[Position, int]:
        return {
            (i + 1, j + 1): value
            for i, row in enumerate(self.entries)
            for j, value in enumerate(row)
            if value != 0
        }

    def positions(self) -> List[Element]:
        return sorted((i, j, s) for (i, j), s in self.signs().items())

    @property
    def length(self) -> int:
        return len(self.signs())

    def negate(self) -> "CycleMatrix":
        return CycleMatrix(self.n, tuple(tuple(-x for x in row) for row in self.entries))

    def inner_product(self, matrix: Sequence[Sequence[int]]) -> int:
        """Entrywise inner product with an n×n matrix"""
        return sum(
            matrix[i][j] * self.entries[i][j]
            for i in range(self.n)
            for j in range(self.n)
            if self.entries[i][j] != 0
        )


@dataclass(frozen=True)
class BirkhoffCycle:
    """
    The signed entries of V_n picked out by a cycle matrix (Definition of a Birkhoff cycle).

    `elements` lists (row, column, sign) starting at the maximal element and walking the
    cycle, first along the maximal element's row. Values are read from a slicing vector
    on demand, so one cycle can be evaluated against any vector of the same order.
    """
    n: int
    elements: Tuple[Element, ...]

    def __post_init__(self):
        count = len(self.elements)
        for k in range(count):
            i, j, s = self.elements[k]
            ni, nj, ns = self.elements[(k + 1) % count]
            if (i != ni and j != nj) or s == ns:
                raise DomainError("Birkhoff cycle elements must alternate in sign along shared lines")

    def values(self, v: Any = None) -> List[int]:
        """Signed entries of the slicing vector along the cycle"""
        vector = _default_vector(self.n, v)
        return [s * vector.a(i, j) for (i, j, s) in self.elements]

    def to_cycle_matrix(self) -> CycleMatrix:
        return CycleMatrix.from_signs(self.n, {(i, j): s for (i, j, s) in self.elements})


def enumerate_vertices(n: int) -> List[PermutationMatrix]:
    """All n! permutation matrices, lexicographic in sigma"""
    if n < 1:
        raise DomainError(f"Birkhoff polytopes need n >= 1, got {n}")
    return [PermutationMatrix(n, sigma) for sigma in itertools.permutations(range(1, n + 1))]


def cycle_matrix_from_difference(P: PermutationMatrix, Q: PermutationMatrix) -> CycleMatrix:
    """P − Q as a CycleMatrix; DomainError when the difference is not a single cycle"""
    if P.n != Q.n:
        raise DimensionError(f"orders differ: {P.n} and {Q.n}")
    if P == Q:
        raise DomainError("a vertex is not adjacent to itself")
    signs: Dict[Position, int] = {}
    for i in range(P.n):
        if P.sigma[i] != Q.sigma[i]:
            signs[(i + 1, P.sigma[i])] = 1
            signs[(i + 1, Q.sigma[i])] = -1
    return CycleMatrix.from_signs(P.n, signs)


def are_adjacent(P: PermutationMatrix, Q: PermutationMatrix) -> bool:
    """True iff the support of P − Q is one simple cycle of K_{n,n}"""
    if P.n != Q.n:
        raise DimensionError(f"orders differ: {P.n} and {Q.n}")
    if P == Q:
        raise DomainError("adjacency needs two distinct vertices")
    signs: Dict[Position, int] = {}
    for i in range(P.n):
        if P.sigma[i] != Q.sigma[i]:
            signs[(i + 1, P.sigma[i])] = 1
            signs[(i + 1, Q.sigma[i])] = -1
    return _check_cycle_support(P.n, signs) is None


def birkhoff_edges(n: int) -> List[Tuple[int, int]]:
    """Index pairs (into enumerate_vertices(n)) of adjacent vertices"""
    vertices = enumerate_vertices(n)
    edges = [
        (a, b)
        for a, b in itertools.combinations(range(len(vertices)), 2)
        if are_adjacent(vertices[a], vertices[b])
    ]
    logger.debug(f"B_{n}: {len(vertices)} vertices, {len(edges)} edges")
    return edges


def enumerate_edge_directions(n: int) -> List[CycleMatrix]:
    """
    Every directed simple cycle of K_{n,n} as a CycleMatrix.

    A directed cycle u_{r0} → v_{c1} → u_{r1} → ... → v_{ck} → u_{r0} is generated once,
    from its lowest row r0, so the two orientations of an undirected cycle both appear.
    Output is ordered by cycle length, then by depth-first discovery order.
    """
    if n < 2:
        raise DomainError(f"K_{{n,n}} has no cycles for n={n}")

    found: List[Tuple[int, int, CycleMatrix]] = []

    def emit(rows: List[int], cols: List[int]) -> None:
        k = len(cols)
        signs: Dict[Position, int] = {}
        for t in range(k):
            signs[(rows[t] + 1, cols[t] + 1)] = 1
            signs[(rows[(t + 1) % k] + 1, cols[t] + 1)] = -1
        found.append((2 * k, len(found), CycleMatrix.from_signs(n, signs)))

    def extend(rows: List[int], cols: List[int]) -> None:
        if len(cols) >= 2:
            emit(rows, cols)
        for r in range(rows[0] + 1, n):
            if r in rows:
                continue
            for c in range(n):
                if c in cols:
                    continue
                extend(rows + [r], cols + [c])

    for r0 in range(n):
        for c1 in range(n):
            extend([r0], [c1])

    found.sort(key=lambda item: (item[0], item[1]))
    logger.info(f"Enumerated {len(found)} directed cycles of K_{n},{n}")
    return [cycle for _, _, cycle in found]


def birkhoff_cycle(v: Any, m: CycleMatrix) -> BirkhoffCycle:
    """Signed V_n entries at the support of m, starting from the maximal element"""
    if v.n != m.n:
        raise DimensionError(f"slicing vector of order {v.n} against a cycle of order {m.n}")
    signs = m.signs()
    start = max(signs)
    walk = _walk_row_first(signs, start)
    return BirkhoffCycle(m.n, tuple((i, j, signs[(i, j)]) for (i, j) in walk))


def maximal_element(c: BirkhoffCycle, v: Any = None) -> Tuple[int, int, int, int]:
    """The bottom and rightmost element as (row, column, sign, value)"""
    if not c.elements:
        raise DomainError("empty Birkhoff cycle")
    i, j, s = max(c.elements, key=lambda e: (e[0], e[1]))
    vector = _default_vector(c.n, v)
    return i, j, s, vector.a(i, j)


def cycle_sign(c: BirkhoffCycle) -> int:
    """+1 for a positive cycle, −1 for a negative one"""
    if not c.elements:
        raise DomainError("empty Birkhoff cycle")
    return max(c.elements, key=lambda e: (e[0], e[1]))[2]


def cycle_sum(c: BirkhoffCycle, v: Any = None) -> int:
    """Sum of the elements, signs included (= V_n · M)"""
    return sum(c.values(v))


def negative_sum_bound(c: BirkhoffCycle, v: Any = None) -> Dict[str, int]:
    """
    Terms of the positive-cycle estimate: S is the sum of the negative elements above
    the maximal element's row r, `bound` its worst case over all cycles of order n and
    `lower_bound` the resulting floor n^(r−2) − bound on the cycle sum.
    """
    if cycle_sign(c) < 0:
        raise DomainError("the negative-sum bound applies to positive cycles only")
    vector = _default_vector(c.n, v)
    n = c.n
    r, _, _, top = maximal_element(c, vector)
    S = sum(vector.a(i, j) for (i, j, s) in c.elements if s < 0 and i < r)
    bound = sum((n - r + k + 2) * n ** k for k in range(r - 2))
    row_r = sum(s * vector.a(i, j) for (i, j, s) in c.elements if i == r)
    return {
        "row": r,
        "S": S,
        "bound": bound,
        "lower_bound": n ** (r - 2) - bound,
        "row_contribution": row_r,
        "maximal_value": top,
    }


def check_negative_sum_bound(c: BirkhoffCycle, v: Any = None) -> bool:
    """True iff S ≤ Σ_{k=0}^{r−3} (n − r + k + 2)·n^k"""
    terms = negative_sum_bound(c, v)
    return terms["S"] <= terms["bound"]


def verify_lemma12(n: int) -> Dict[str, Any]:
    """
    Check on all of M_n that every cycle sum is nonzero with the sign of its maximal element.

    Returns:
        dict: check name, n, verdict, cycle count, violation count, extremal sums and the
        first violating cycle (None when the check passes)
    """
    v = _default_vector(n, None)
    cycles = enumerate_edge_directions(n)
    violations = 0
    witness = None
    sums = []
    min_positive = None
    max_negative = None
    for m in cycles:
        c = birkhoff_cycle(v, m)
        total = cycle_sum(c, v)
        sign = cycle_sign(c)
        sums.append(total)
        if sign > 0 and (min_positive is None or total < min_positive):
            min_positive = total
        if sign < 0 and (max_negative is None or total > max_negative):
            max_negative = total
        if total == 0 or (total > 0) != (sign > 0):
            violations += 1
            if witness is None:
                witness = {"elements": [list(e) for e in c.elements], "sum": total, "sign": sign}

    passed = violations == 0
    logger.info(f"lemma12 n={n}: {len(cycles)} cycles, {violations} violations")
    return {
        "check": "lemma12",
        "n": n,
        "passed": passed,
        "cycle_count": len(cycles),
        "violations": violations,
        "min_sum": min(sums),
        "max_sum": max(sums),
        "min_positive_sum": min_positive,
        "max_negative_sum": max_negative,
        "witness": witness,
    }


def verify_negative_sum_bound(n: int) -> Dict[str, Any]:
    """Check the negative-sum estimate, and sum ≥ n^(r−2) − S, on every positive cycle of M_n"""
    v = _default_vector(n, None)
    positive = 0
    violations = 0
    tightest = None
    witness = None
    for m in enumerate_edge_directions(n):
        c = birkhoff_cycle(v, m)
        if cycle_sign(c) < 0:
            continue
        positive += 1
        terms = negative_sum_bound(c, v)
        total = cycle_sum(c, v)
        slack = terms["bound"] - terms["S"]
        if tightest is None or slack < tightest:
            tightest = slack
        lower_ok = total >= n ** (terms["row"] - 2) - terms["S"] and total >= terms["lower_bound"]
        if slack < 0 or not lower_ok:
            violations += 1
            if witness is None:
                witness = {"elements": [list(e) for e in c.elements], **terms}

    logger.info(f"bound n={n}: {positive} positive cycles, {violations} violations")
    return {
        "check": "bound",
        "n": n,
        "passed": violations == 0,
        "cycle_count": positive,
        "violations": violations,
        "min_slack": tightest,
        "witness": witness,
    }
