"""
Operator/Geometry Correspondence
Matches operator commutation matrices against distant/neighbour matrices of
projective ring lines: mismatch counting, best-bijection search, the
printed distant tables over GF(2)^3 and the shell-coupling test over GF(2)^4
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from multiprocessing import Pool, freeze_support
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.exact_linalg import ONE
from src.finite_ring import FiniteRing, RingElement, direct_product_ring
from src.fixture_store import FixtureStore
from src.pauli_two_qubit import (B_ORDER, B_SET, KERNEL, commutation_cross, commutation_graph,
                                 commutation_relation, commutes, line_product)
from src.projective_line import (ProjectiveLineModel, ProjectivePoint, array_3x3, distant_graph, distant_relation,
                                 enumerate_points, make_point, swap_coordinates)
from src.relations import RelationMatrix

logger = logging.getLogger(__name__)

MAX_FREE_LABELS = 9

# Operator labels behind the printed headers of the GF(2)^3 tables; the
# headers list points in the same order as the operator tables list labels
FIXTURE_BIJECTION = {
    1: '(1,0)', 2: '(0,1)', 3: '(1,1)', 6: '(c,r)', 14: '(b,y)', 9: '(y,b)', 12: '(r,c)',
    4: '(y,1)', 7: '(b,1)', 11: '(r,1)', 13: '(c,1)',
    5: '(1,c)', 10: '(1,b)', 15: '(1,r)', 8: '(1,y)',
}

# Mismatch counts stated in the captions of the printed tables
EXPECTED_MISMATCHES = {6: 0, 7: 0, 8: 4, 9: 14}

DISTINGUISHED_SELECTORS = (2, 3, 8, 12)


@dataclass
class Correspondence:
    """A labelling of operators by points and the cells where the two relations differ"""
    bijection: Dict[Hashable, Hashable]
    mismatch_cells: List[Tuple[Hashable, Hashable]] = field(default_factory=list)

    @property
    def mismatch_count(self) -> int:
        return len(self.mismatch_cells)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bijection': {str(k): str(v) for k, v in sorted(self.bijection.items())},
            'mismatch_cells': [[str(r), str(c)] for r, c in self.mismatch_cells],
            'mismatch_count': self.mismatch_count,
        }


def _restrict(op_rel: RelationMatrix, pt_rel: RelationMatrix,
              bijection: Dict[Hashable, Hashable]) -> Dict[Hashable, Hashable]:
    labels = list(dict.fromkeys(op_rel.row_labels + op_rel.col_labels))
    missing = [label for label in labels if label not in bijection]
    if missing:
        raise ValueError(f"Bijection does not cover operator labels {missing}")
    restricted = {label: bijection[label] for label in labels}
    if len(set(restricted.values())) != len(restricted):
        raise ValueError("Mapping is not injective")
    if ({restricted[r] for r in op_rel.row_labels} != set(pt_rel.row_labels)
            or {restricted[c] for c in op_rel.col_labels} != set(pt_rel.col_labels)):
        raise ValueError("Mapping does not carry the operator rows and columns onto the point rows and columns")
    return restricted


def mismatch(op_rel: RelationMatrix, pt_rel: RelationMatrix, bijection: Dict[Hashable, Hashable]) -> Correspondence:
    """Cells of the point matrix, in its printed order, whose value differs from the mapped operator cell"""
    restricted = _restrict(op_rel, pt_rel, bijection)
    inverse = {point: label for label, point in restricted.items()}
    cells = [(pr, pc) for pr in pt_rel.row_labels for pc in pt_rel.col_labels
             if op_rel.cell(inverse[pr], inverse[pc]) != pt_rel.cell(pr, pc)]
    return Correspondence(restricted, cells)


# ---- best-bijection search -------------------------------------------------

def _search_chunk(task: Tuple) -> Tuple[int, Tuple[int, ...]]:
    """Lowest score and its assignment among the permutations of one chunk"""
    op, pt, cost, template, free_pos, first, rest = task
    orders = list(itertools.permutations(rest))
    perms = np.array(orders, dtype=np.int64).reshape(len(orders), len(rest))
    full = np.tile(template, (len(orders), 1))
    if free_pos:
        full[:, free_pos[0]] = first
        full[:, free_pos[1:]] = perms
    if cost is not None:
        scores = cost[np.arange(full.shape[1])[None, :], full].sum(axis=1)
    else:
        scores = (pt[full[:, :, None], full[:, None, :]] != op[None, :, :]).sum(axis=(1, 2))
    best = int(np.argmin(scores))
    return int(scores[best]), tuple(int(v) for v in full[best])


def best_bijection_search(op_rel: RelationMatrix, pt_rel: RelationMatrix,
                          constraints: Optional[Dict[Hashable, Hashable]] = None,
                          workers: int = 1) -> Correspondence:
    """Lexicographically first bijection with the fewest mismatching cells.

    Square relations are matched by one relabelling of their common label set.
    A rectangular operator relation needs every column label pinned; the rows
    are then assigned freely. Chunks split on the target of the first free
    label and may run on a worker pool.
    """
    constraints = dict(constraints or {})
    square = op_rel.is_square and pt_rel.is_square
    if square:
        if len(op_rel.row_labels) != len(pt_rel.row_labels):
            raise ValueError(f"Label sets differ in size: {len(op_rel.row_labels)} vs {len(pt_rel.row_labels)}")
    else:
        if len(op_rel.row_labels) != len(pt_rel.row_labels) or len(op_rel.col_labels) != len(pt_rel.col_labels):
            raise ValueError("Rectangular relations must have matching shapes")
        if set(op_rel.row_labels) & set(op_rel.col_labels):
            raise ValueError("Rectangular search needs disjoint row and column labels")
        unpinned = [c for c in op_rel.col_labels if c not in constraints]
        if unpinned:
            raise ValueError(f"Rectangular search needs every column pinned, missing {unpinned}")

    labels = list(op_rel.row_labels)
    targets = list(pt_rel.row_labels)
    target_pos = {t: i for i, t in enumerate(targets)}
    col_map = None
    for label, target in constraints.items():
        in_rows = label in labels
        if not in_rows and (square or label not in op_rel.col_labels):
            raise ValueError(f"Infeasible constraints: {label!r} is not an operator label")
        valid_targets = targets if in_rows else pt_rel.col_labels
        if target not in valid_targets:
            raise ValueError(f"Infeasible constraints: {target!r} is not a point label")
    row_pins = {k: v for k, v in constraints.items() if k in labels}
    if len(set(row_pins.values())) != len(row_pins):
        raise ValueError("Infeasible constraints: two labels pinned to one point")

    template = np.full(len(labels), -1, dtype=np.int64)
    for label, target in row_pins.items():
        template[labels.index(label)] = target_pos[target]
    free_pos = [i for i in range(len(labels)) if template[i] < 0]
    free_targets = sorted(set(range(len(targets))) - set(int(t) for t in template if t >= 0))
    if len(free_pos) > MAX_FREE_LABELS:
        raise ValueError(f"Search over {len(free_pos)} free labels exceeds the exhaustive limit {MAX_FREE_LABELS}")

    op = op_rel.cells
    pt = pt_rel.cells
    cost = None
    if not square:
        col_map = [pt_rel.col_labels.index(constraints[c]) for c in op_rel.col_labels]
        # cost[i, p]: mismatches when operator row i sits on point row p
        cost = (op[:, None, :] != pt[None, :, col_map]).sum(axis=2)

    if free_pos:
        tasks = [(op, pt, cost, template, free_pos, first, [t for t in free_targets if t != first])
                 for first in free_targets]
    else:
        tasks = [(op, pt, cost, template, [], None, [])]

    start_time = time.time()
    logger.info("Bijection search: %d free labels, %d chunks, %d workers", len(free_pos), len(tasks), workers)
    if workers > 1 and len(tasks) > 1:
        freeze_support()
        with Pool(workers) as pool:
            results = pool.map(_search_chunk, tasks)
    else:
        results = [_search_chunk(task) for task in tasks]
    score, assignment = min(results)
    logger.info("Bijection search finished in %.2fs, minimum %d", time.time() - start_time, score)

    bijection = {label: targets[assignment[i]] for i, label in enumerate(labels)}
    if col_map is not None:
        bijection.update({c: constraints[c] for c in op_rel.col_labels})
    result = mismatch(op_rel, pt_rel, bijection)
    if result.mismatch_count != score:
        raise ArithmeticError(f"Search score {score} disagrees with the recount {result.mismatch_count}")
    return result


# ---- printed tables over GF(2)^3 ------------------------------------------

@dataclass
class TableReport:
    table: int
    correspondence: Correspondence
    fixture_differences: List[Tuple[str, str]]
    flagged_cells: List[Tuple[str, str]]
    min_mismatch: int
    swapped_identical: Optional[bool] = None

    @property
    def mismatch_count(self) -> int:
        return self.correspondence.mismatch_count

    @property
    def flags_match(self) -> bool:
        return set(self.correspondence.mismatch_cells) == set(self.flagged_cells)

    @property
    def below_printed_count(self) -> bool:
        """True when some labelling beats the count given in the caption"""
        return self.min_mismatch < EXPECTED_MISMATCHES[self.table]

    @property
    def passed(self) -> bool:
        return (not self.fixture_differences and self.flags_match
                and self.mismatch_count == EXPECTED_MISMATCHES[self.table]
                and self.min_mismatch <= self.mismatch_count
                and self.swapped_identical is not False)

    def to_dict(self) -> Dict[str, Any]:
        payload = self.correspondence.to_dict()
        payload.update({
            'table': self.table,
            'min_mismatch': self.min_mismatch,
            'below_printed_count': self.below_printed_count,
            'fixture_differences': [list(cell) for cell in self.fixture_differences],
            'flags_match': self.flags_match,
            'passed': self.passed,
        })
        if self.swapped_identical is not None:
            payload['swapped_identical'] = self.swapped_identical
        return payload


def _header_points(model: ProjectiveLineModel, names: Sequence[str]) -> List[ProjectivePoint]:
    return [model.point(name) for name in names]


def _operator_labels(names: Sequence[str]) -> List[int]:
    label_of = {point: label for label, point in FIXTURE_BIJECTION.items()}
    unknown = [name for name in names if name not in label_of]
    if unknown:
        raise ValueError(f"No operator is attached to the points {unknown}")
    return [label_of[name] for name in names]


def _fixture_differences(computed: RelationMatrix, printed_cells: np.ndarray) -> List[Tuple[str, str]]:
    rows, cols = np.nonzero(computed.cells != printed_cells)
    return [(computed.row_labels[i], computed.col_labels[j]) for i, j in zip(rows, cols)]


def reproduce_table(which: int, store: Optional[FixtureStore] = None,
                    model: Optional[ProjectiveLineModel] = None, workers: int = 1) -> TableReport:
    """Recompute a printed distant table, check it against the fixture and match it to the operators"""
    if which not in EXPECTED_MISMATCHES:
        raise ValueError(f"Unknown table {which!r}; choose one of {sorted(EXPECTED_MISMATCHES)}")
    store = store or FixtureStore()
    model = model or enumerate_points(direct_product_ring(3))
    fixture = store.relation_table(which)
    rows = _header_points(model, fixture.row_labels)
    cols = _header_points(model, fixture.col_labels)
    row_labels = _operator_labels(fixture.row_labels)
    col_labels = _operator_labels(fixture.col_labels)

    if fixture.row_labels == fixture.col_labels:
        geometry = distant_graph(model, rows)
        operators = commutation_relation(row_labels)
        min_result = best_bijection_search(operators, geometry, workers=workers)
    else:
        geometry = distant_relation(model, rows, cols)
        operators = commutation_cross(row_labels, col_labels)
        pins = {label: FIXTURE_BIJECTION[label] for label in col_labels}
        min_result = best_bijection_search(operators, geometry, constraints=pins, workers=workers)

    correspondence = mismatch(operators, geometry, FIXTURE_BIJECTION)
    report = TableReport(which, correspondence, _fixture_differences(geometry, fixture.cells),
                         fixture.flagged_cells(), min_result.mismatch_count)

    if which == 7:
        twins = [swap_coordinates(model, p) for p in rows]
        twin_geometry = distant_graph(model, twins)
        twin_operators = commutation_relation(_operator_labels([p.name for p in twins]))
        report.swapped_identical = (np.array_equal(twin_geometry.cells, geometry.cells)
                                    and not mismatch(twin_operators, twin_geometry, FIXTURE_BIJECTION).mismatch_cells)
    if report.below_printed_count:
        logger.warning("Table %d: a labelling with %d mismatches beats the printed %d",
                       which, report.min_mismatch, EXPECTED_MISMATCHES[which])
    logger.info("Table %d: %d mismatches, %d fixture differences", which, report.mismatch_count,
                len(report.fixture_differences))
    return report


def _isomorphisms(first: nx.Graph, second: nx.Graph) -> List[Dict]:
    return list(nx.algorithms.isomorphism.GraphMatcher(first, second).isomorphisms_iter())


def consistent_fixture_labellings(store: Optional[FixtureStore] = None,
                                  model: Optional[ProjectiveLineModel] = None) -> List[Dict[int, str]]:
    """Every operator labelling of the printed points that reproduces the printed tables.

    The kernel part is a graph isomorphism onto the first table pinned at
    (1,1) -> 3 and {(1,0), (0,1)} -> {1, 2}; the cube part must miss exactly
    the flagged cells of the square table and, jointly with the kernel part,
    exactly the flagged cells of the rectangular one.
    """
    store = store or FixtureStore()
    model = model or enumerate_points(direct_product_ring(3))
    kernel_table, cube_table, cross_table = (store.relation_table(n) for n in (6, 8, 9))

    kernel_points = _header_points(model, kernel_table.col_labels)
    kernel_geometry = distant_graph(model, kernel_points)
    kappas = [m for m in _isomorphisms(commutation_graph(KERNEL), kernel_geometry.to_graph())
              if m[3] == '(1,1)' and {m[1], m[2]} == {'(1,0)', '(0,1)'}]

    cube_points = _header_points(model, cube_table.row_labels)
    cube_geometry = distant_graph(model, cube_points)
    toggled = RelationMatrix(cube_geometry.row_labels, cube_geometry.col_labels,
                             cube_geometry.cells ^ cube_table.flags)
    betas = _isomorphisms(commutation_graph(B_SET), toggled.to_graph())

    cross_geometry = distant_relation(model, _header_points(model, cross_table.row_labels),
                                      _header_points(model, cross_table.col_labels))
    target = cross_geometry.cells ^ cross_table.flags
    row_pos = {name: i for i, name in enumerate(cross_geometry.row_labels)}
    col_pos = {name: j for j, name in enumerate(cross_geometry.col_labels)}
    b_labels, k_labels = sorted(B_SET), sorted(KERNEL)
    operators = commutation_cross(b_labels, k_labels).cells

    def order_key(mapping: Dict[int, str]) -> Tuple[int, ...]:
        return tuple(model.index_of(model.point(mapping[label])) for label in sorted(mapping))

    found = []
    for kappa in sorted(kappas, key=order_key):
        cols = [col_pos[kappa[label]] for label in k_labels]
        for beta in sorted(betas, key=order_key):
            rows = [row_pos[beta[label]] for label in b_labels]
            if np.array_equal(target[np.ix_(rows, cols)], operators):
                found.append({**kappa, **beta})
    logger.info("Fixture labellings: %d kernel maps, %d cube maps, %d consistent",
                len(kappas), len(betas), len(found))
    return found


def recover_fixture_bijection(store: Optional[FixtureStore] = None,
                              model: Optional[ProjectiveLineModel] = None) -> Optional[Dict[int, str]]:
    """Lexicographically first consistent labelling, or None"""
    found = consistent_fixture_labellings(store, model)
    return found[0] if found else None


@dataclass
class MerminLineReport:
    correspondence: Correspondence
    bell_column: List[int]
    distinguished: List[str]

    @property
    def bell_on_distinguished(self) -> bool:
        return sorted(self.correspondence.bijection[label] for label in self.bell_column) == sorted(self.distinguished)

    @property
    def passed(self) -> bool:
        return self.correspondence.mismatch_count == 0 and self.bell_on_distinguished

    def to_dict(self) -> Dict[str, Any]:
        payload = self.correspondence.to_dict()
        payload.update({'bell_column': self.bell_column, 'distinguished': self.distinguished,
                        'bell_on_distinguished': self.bell_on_distinguished, 'passed': self.passed})
        return payload


def mermin_line_match(grid: Sequence[Sequence[int]], model: Optional[ProjectiveLineModel] = None,
                      workers: int = 1) -> MerminLineReport:
    """Best labelling of the nine square observables by the nine points of the line over GF(2)^2.

    The entangled column (the one whose product is minus the identity) is
    pinned onto the distinguished triple of the 3x3 point array.
    """
    model = model or enumerate_points(direct_product_ring(2))
    layout = array_3x3(model)
    labels = [label for row in grid for label in row]
    columns = [[grid[r][c] for r in range(3)] for c in range(3)]
    bell = next((col for col in columns if line_product(col).phase == -ONE), None)
    if bell is None:
        raise ValueError(f"Square {list(map(list, grid))} has no column with product minus the identity")
    distinguished = [p.name for p in layout.distinguished]
    pins = dict(zip(bell, distinguished))
    correspondence = best_bijection_search(commutation_relation(labels), distant_graph(model, model.points),
                                           constraints=pins, workers=workers)
    return MerminLineReport(correspondence, list(bell), distinguished)


# ---- GF(2)^4 ----------------------------------------------------------------

@dataclass
class DistinguishedElements:
    elements: List[RingElement]
    names: List[str]
    ideal_sizes: List[int]
    triples_share_one: bool
    radical_trivial: bool

    @property
    def passed(self) -> bool:
        return len(self.elements) == 4 and self.triples_share_one and self.radical_trivial

    def to_dict(self) -> Dict[str, Any]:
        return {
            'elements': self.names,
            'ideal_sizes': self.ideal_sizes,
            'triples_share_one': self.triples_share_one,
            'radical_trivial': self.radical_trivial,
        }


def distinguished_elements(ring: FiniteRing) -> DistinguishedElements:
    """Nonzero elements lying in at least three of the four maximal ideals of GF(2)^4"""
    if ring.order != 16 or ring.components is None or len(ring.components[0]) != 4:
        raise ValueError(f"Distinguished elements need GF(2)^4, got {ring.ring_id}")
    maximal = ring.maximal_ideals()
    if len(maximal) != 4:
        raise ValueError(f"Ring {ring.ring_id} has {len(maximal)} maximal ideals, expected 4")
    chosen = sorted(RingElement(ring.ring_id, e) for e in range(ring.order)
                    if e != ring.zero and sum(e in ideal for ideal in maximal) >= 3)
    triples = [frozenset.intersection(*(ideal.elements for ideal in triple)) - {ring.zero}
               for triple in itertools.combinations(maximal, 3)]
    triples_share_one = all(len(common) == 1 for common in triples)
    radical_trivial = ring.jacobson_radical().elements == frozenset({ring.zero})
    return DistinguishedElements(chosen, [ring.name(e) for e in chosen], [len(m) for m in maximal],
                                 triples_share_one, radical_trivial)


@dataclass
class QuadShellReport:
    cube_points: List[str]
    cube_isomorphic: bool
    configurations: int
    kernel_pattern_configurations: int
    isolated_configurations: int
    kernel_points: List[str]
    distant_cross_pairs: int
    commuting_cross_pairs: int

    @property
    def kernel_pattern_exists(self) -> bool:
        return self.kernel_pattern_configurations > 0

    @property
    def failure_detected(self) -> bool:
        """The geometry separates the shells while the operators do not"""
        return (self.cube_isomorphic and self.kernel_pattern_exists and bool(self.kernel_points)
                and self.distant_cross_pairs == 0 and self.commuting_cross_pairs > 0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'cube_points': self.cube_points,
            'cube_isomorphic': self.cube_isomorphic,
            'configurations': self.configurations,
            'kernel_pattern_configurations': self.kernel_pattern_configurations,
            'isolated_configurations': self.isolated_configurations,
            'kernel_points': self.kernel_points,
            'distant_cross_pairs': self.distant_cross_pairs,
            'commuting_cross_pairs': self.commuting_cross_pairs,
            'failure_detected': self.failure_detected,
        }


def cube_subset(model: ProjectiveLineModel) -> List[ProjectivePoint]:
    """(1, x_d) and (x_d, 1) for the four distinguished zero-divisors"""
    ring = model.ring
    points = []
    for d in DISTINGUISHED_SELECTORS:
        points.append(make_point(ring, ring.one, d))
        points.append(make_point(ring, d, ring.one))
    return [model.points[model.index_of(p)] for p in points]


def kernel_configurations(model: ProjectiveLineModel) -> List[List[ProjectivePoint]]:
    """(1,1) with three of the complementary pairs (z, 1+z), (1+z, z)"""
    ring = model.ring
    pairs = sorted({tuple(sorted((z, ring.add(z, ring.one)))) for z in range(ring.order)
                    if z not in (ring.zero, ring.one)})
    centre = make_point(ring, ring.one, ring.one)
    configurations = []
    for chosen in itertools.combinations(pairs, 3):
        points = [centre]
        for z, w in chosen:
            points.extend([make_point(ring, z, w), make_point(ring, w, z)])
        configurations.append([model.points[model.index_of(p)] for p in points])
    return configurations


def quad_shell_check(model: Optional[ProjectiveLineModel] = None) -> QuadShellReport:
    """Try to place both operator shells on the line over GF(2)^4 and test their coupling"""
    model = model or enumerate_points(direct_product_ring(4))
    cube = cube_subset(model)
    cube_graph = distant_graph(model, cube).to_graph()
    cube_isomorphic = nx.is_isomorphic(cube_graph, commutation_graph(B_SET))

    kernel_graph = commutation_graph(KERNEL)
    configurations = kernel_configurations(model)
    kernel_like = [c for c in configurations if nx.is_isomorphic(distant_graph(model, c).to_graph(), kernel_graph)]
    cube_idx = [model.index_of(p) for p in cube]

    def cross_distant(points: List[ProjectivePoint]) -> int:
        idx = [model.index_of(p) for p in points]
        return int(model.distant[np.ix_(idx, cube_idx)].sum())

    isolated = [c for c in kernel_like if cross_distant(c) == 0 and not set(c) & set(cube)]
    chosen = isolated[0] if isolated else []
    commuting = sum(1 for k in KERNEL for b in B_ORDER if commutes(k, b))
    logger.info("Line over %s: %d of %d configurations follow the kernel pattern, %d isolated from the cube",
                model.ring_id, len(kernel_like), len(configurations), len(isolated))
    return QuadShellReport([p.name for p in cube], cube_isomorphic, len(configurations), len(kernel_like),
                           len(isolated), [p.name for p in chosen],
                           cross_distant(chosen) if chosen else -1, commuting)
