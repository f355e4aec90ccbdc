"""
Projective Line over a Finite Ring
Admissible pairs, unit-orbit point classes, the distant/neighbour relation,
neighbourhoods, coordinate shells and the 3x3 array of PR(1) over GF(2)^2
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.finite_ring import FiniteRing, RingElement
from src.relations import RelationMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """Canonical representative (alpha, beta) of a unit orbit of admissible pairs"""
    ring_id: str
    alpha: RingElement
    beta: RingElement
    name: str = field(default='', compare=False)

    def __str__(self) -> str:
        return self.name or f"({self.alpha.index},{self.beta.index})"


class ShellTag(Enum):
    NUCLEUS = 'nucleus'
    MIXED = 'mixed'
    OUTER = 'outer'


def is_admissible(ring: FiniteRing, alpha, beta) -> bool:
    """(alpha, beta) completes to an invertible 2x2 matrix over the ring"""
    a, b = ring.element(alpha).index, ring.element(beta).index
    if ring.components is not None:
        first, second = ring.components[a], ring.components[b]
        return all(x or y for x, y in zip(first, second))
    for gamma in range(ring.order):
        for delta in range(ring.order):
            if ring.is_unit(ring.sub(ring.mul(a, delta), ring.mul(gamma, b))):
                return True
    return False


def canonical_pair(ring: FiniteRing, alpha, beta) -> Tuple[int, int]:
    """Lexicographically smallest member of the unit orbit"""
    a, b = ring.element(alpha).index, ring.element(beta).index
    return min((ring.mul(u.index, a), ring.mul(u.index, b)) for u in ring.units())


def make_point(ring: FiniteRing, alpha, beta) -> ProjectivePoint:
    if not is_admissible(ring, alpha, beta):
        raise ValueError(f"Pair ({ring.name(ring.element(alpha))},{ring.name(ring.element(beta))}) "
                         f"is not admissible over {ring.ring_id}")
    a, b = canonical_pair(ring, alpha, beta)
    return ProjectivePoint(ring.ring_id, RingElement(ring.ring_id, a), RingElement(ring.ring_id, b),
                           f"({ring.name(a)},{ring.name(b)})")


def _determinant(ring: FiniteRing, p: ProjectivePoint, q: ProjectivePoint) -> int:
    for point in (p, q):
        if point.ring_id != ring.ring_id:
            raise ValueError(f"Point {point} belongs to ring {point.ring_id}, not {ring.ring_id}")
    return ring.sub(ring.mul(p.alpha, q.beta), ring.mul(q.alpha, p.beta))


def is_distant(ring: FiniteRing, p: ProjectivePoint, q: ProjectivePoint) -> bool:
    """The stacked representatives have a unit determinant"""
    return ring.is_unit(_determinant(ring, p, q))


class ProjectiveLineModel:
    """All points of PR(1) with the symmetric distant matrix"""

    def __init__(self, ring: FiniteRing, points: Sequence[ProjectivePoint], distant: np.ndarray):
        self.ring = ring
        self.ring_id = ring.ring_id
        self.points = list(points)
        self.distant = np.array(distant, dtype=bool)
        self.distant.setflags(write=False)
        self._position = {p: i for i, p in enumerate(self.points)}
        self._by_name = {p.name: p for p in self.points}

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, point: ProjectivePoint) -> int:
        if point not in self._position:
            raise ValueError(f"Point {point} is not on the line over {self.ring_id}")
        return self._position[point]

    def point(self, name: str) -> ProjectivePoint:
        """Look up a point by its printed coordinates, e.g. '(x,x+1)'"""
        key = name.replace(' ', '')
        if key in self._by_name:
            return self._by_name[key]
        parts = key.strip('()').split(',')
        if len(parts) == 2:
            try:
                candidate = make_point(self.ring, parts[0], parts[1])
            except ValueError:
                candidate = None
            if candidate is not None and candidate in self._position:
                return self.points[self._position[candidate]]
        raise ValueError(f"Unknown point {name!r} on the line over {self.ring_id}")

    def is_distant(self, p: ProjectivePoint, q: ProjectivePoint) -> bool:
        return bool(self.distant[self.index_of(p), self.index_of(q)])

    def names(self) -> List[str]:
        return [p.name for p in self.points]


def enumerate_points(ring: FiniteRing) -> ProjectiveLineModel:
    """Every canonical admissible class, ordered by index pair"""
    pairs = set()
    for a in range(ring.order):
        for b in range(ring.order):
            if is_admissible(ring, a, b):
                pairs.add(canonical_pair(ring, a, b))
    ordered = sorted(pairs)
    points = [ProjectivePoint(ring.ring_id, RingElement(ring.ring_id, a), RingElement(ring.ring_id, b),
                              f"({ring.name(a)},{ring.name(b)})") for a, b in ordered]
    alphas = np.array([a for a, _ in ordered], dtype=np.int64)
    betas = np.array([b for _, b in ordered], dtype=np.int64)
    cross = ring.mul_table[alphas[:, None], betas[None, :]]
    determinants = ring.sub_table[cross, cross.T]
    distant = ring.unit_mask[determinants]
    logger.info("Line over %s: %d points", ring.ring_id, len(points))
    return ProjectiveLineModel(ring, points, distant)


def neighbourhood(model: ProjectiveLineModel, point: ProjectivePoint) -> List[ProjectivePoint]:
    """Points other than the given one that are not distant from it"""
    i = model.index_of(point)
    return [q for j, q in enumerate(model.points) if j != i and not model.distant[i, j]]


def classify_point(ring: FiniteRing, point: ProjectivePoint) -> ShellTag:
    """Shell by the number of nontrivial zero-divisors among the coordinates"""
    nontrivial = ring.nontrivial_zero_divisors()
    count = sum(1 for e in (point.alpha, point.beta) if e in nontrivial)
    return (ShellTag.NUCLEUS, ShellTag.MIXED, ShellTag.OUTER)[count]


def shell_census(model: ProjectiveLineModel) -> Dict[str, int]:
    """Point counts per shell, with the outer shell split by composite entries"""
    ring = model.ring
    tags = Counter(classify_point(ring, p) for p in model.points)
    composite = ring.composite_zero_divisors()
    outer = [p for p in model.points if classify_point(ring, p) is ShellTag.OUTER]
    both_composite = sum(1 for p in outer if p.alpha in composite and p.beta in composite)
    return {
        'nucleus': tags[ShellTag.NUCLEUS],
        'mixed': tags[ShellTag.MIXED],
        'outer': tags[ShellTag.OUTER],
        'outer_composite': both_composite,
        'outer_other': len(outer) - both_composite,
    }


def mutually_distant_triples(model: ProjectiveLineModel) -> List[Tuple[ProjectivePoint, ...]]:
    d = model.distant
    return [tuple(model.points[k] for k in triple)
            for triple in itertools.combinations(range(len(model)), 3)
            if d[triple[0], triple[1]] and d[triple[0], triple[2]] and d[triple[1], triple[2]]]


def non_transitivity_witness(model: ProjectiveLineModel
                             ) -> Optional[Tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint]]:
    """First (X, Y, Z) with X~Y and Y~Z neighbours while X and Z are distant"""
    d = model.distant
    n = len(model)
    for x in range(n):
        for y in range(n):
            if y == x or d[x, y]:
                continue
            for z in range(n):
                if z not in (x, y) and not d[y, z] and d[x, z]:
                    return model.points[x], model.points[y], model.points[z]
    return None


def neighbourhood_profile(model: ProjectiveLineModel) -> Dict[str, List[int]]:
    """Distinct sizes of neighbourhoods and of their intersections over distant pairs and distant triples"""
    near = ~model.distant
    np.fill_diagonal(near, False)
    n = len(model)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if model.distant[i, j]]
    triples = [t for t in itertools.combinations(range(n), 3)
               if model.distant[t[0], t[1]] and model.distant[t[0], t[2]] and model.distant[t[1], t[2]]]
    return {
        'neighbourhood_sizes': sorted({int(s) for s in near.sum(axis=1)}),
        'distant_pair_common': sorted({int((near[i] & near[j]).sum()) for i, j in pairs}),
        'distant_triple_common': sorted({int((near[a] & near[b] & near[c]).sum()) for a, b, c in triples}),
    }


@dataclass
class PointArray:
    grid: List[List[ProjectivePoint]]
    distinguished: Tuple[ProjectivePoint, ...]

    def lines(self) -> List[Tuple[ProjectivePoint, ...]]:
        rows = [tuple(row) for row in self.grid]
        cols = [tuple(self.grid[r][c] for r in range(3)) for c in range(3)]
        return rows + cols

    def to_dict(self) -> Dict:
        return {
            'grid': [[p.name for p in row] for row in self.grid],
            'distinguished': [p.name for p in self.distinguished],
        }


def _same_character(ring: FiniteRing, point: ProjectivePoint) -> bool:
    entries = (point.alpha, point.beta)
    nontrivial = ring.nontrivial_zero_divisors()
    return all(ring.is_unit(e) for e in entries) or all(e in nontrivial for e in entries)


def array_3x3(model: ProjectiveLineModel) -> PointArray:
    """Lexicographically first 3x3 arrangement with pairwise distant rows and columns"""
    ring = model.ring
    if len(model) != 9 or ring.order != 4 or ring.components is None:
        raise ValueError(f"The 3x3 array needs the nine-point line over GF(2)^2, got {ring.ring_id}")
    d = model.distant
    cells: List[int] = []

    def fits(k: int, candidate: int) -> bool:
        r, c = divmod(k, 3)
        row_mates = cells[r * 3:k]
        col_mates = [cells[rr * 3 + c] for rr in range(r)]
        return all(d[candidate, m] for m in row_mates + col_mates)

    def fill(k: int) -> bool:
        if k == 9:
            return True
        for candidate in range(9):
            if candidate not in cells and fits(k, candidate):
                cells.append(candidate)
                if fill(k + 1):
                    return True
                cells.pop()
        return False

    if not fill(0):
        raise ValueError("No 3x3 arrangement exists")
    grid = [[model.points[cells[r * 3 + c]] for c in range(3)] for r in range(3)]
    layout = PointArray(grid, ())
    distinguished = [line for line in layout.lines() if all(_same_character(ring, p) for p in line)]
    if len(distinguished) != 1:
        raise ValueError(f"Expected one distinguished triple, found {len(distinguished)}")
    layout.distinguished = tuple(sorted(distinguished[0]))
    return layout


def distant_graph(model: ProjectiveLineModel, subset: Sequence[ProjectivePoint]) -> RelationMatrix:
    """Distant matrix restricted to a subset, labelled by point names"""
    idx = [model.index_of(p) for p in subset]
    return RelationMatrix([p.name for p in subset], [p.name for p in subset], model.distant[np.ix_(idx, idx)])


def distant_relation(model: ProjectiveLineModel, rows: Sequence[ProjectivePoint],
                     cols: Sequence[ProjectivePoint]) -> RelationMatrix:
    """Rectangular distant matrix between two point lists"""
    ri = [model.index_of(p) for p in rows]
    ci = [model.index_of(p) for p in cols]
    return RelationMatrix([p.name for p in rows], [p.name for p in cols], model.distant[np.ix_(ri, ci)])


def swap_coordinates(model: ProjectiveLineModel, point: ProjectivePoint) -> ProjectivePoint:
    """The point with exchanged coordinates"""
    return model.points[model.index_of(make_point(model.ring, point.beta, point.alpha))]
