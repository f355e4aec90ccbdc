"""
Two-Qubit Pauli Algebra
The sixteen operators sigma_i (x) sigma_j with exact phased products,
commutation structure, mutually unbiased bases, Mermin squares, Fano
pencils and the kernel/cube configuration
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from sympy.polys.domains.gaussiandomains import GaussianInteger

from src.exact_linalg import (I_UNIT, ONE, ZERO, ExactMatrix, SignSignature, StateVector, format_gaussian,
                              inner, is_unbiased_pair, joint_eigenbasis, matmul, schmidt_rank, tensor)
from src.finite_ring import quotient_ring_gf2, ring_isomorphic_upto_phase
from src.fixture_store import FixtureStore
from src.relations import RelationMatrix

logger = logging.getLogger(__name__)

SIGMA = {
    'I': ExactMatrix.from_entries(2, 2, [1, 0, 0, 1]),
    'X': ExactMatrix.from_entries(2, 2, [0, 1, 1, 0]),
    'Y': ExactMatrix.from_entries(2, 2, [0, -I_UNIT, I_UNIT, 0]),
    'Z': ExactMatrix.from_entries(2, 2, [1, 0, 0, -1]),
}

# label -> (left factor, right factor)
LABEL_FACTORS = {
    0: ('I', 'I'), 1: ('I', 'Z'), 2: ('Z', 'I'), 3: ('Z', 'Z'),
    4: ('X', 'I'), 5: ('I', 'Y'), 6: ('X', 'Y'),
    7: ('X', 'Z'), 8: ('Z', 'X'), 9: ('Y', 'Y'),
    10: ('I', 'X'), 11: ('Y', 'I'), 12: ('Y', 'X'),
    13: ('Y', 'Z'), 14: ('X', 'X'), 15: ('Z', 'Y'),
}
FACTOR_LABEL = {factors: label for label, factors in LABEL_FACTORS.items()}

# XY = iZ, YZ = iX, ZX = iY
_CYCLIC = {('X', 'Y'): 'Z', ('Y', 'Z'): 'X', ('Z', 'X'): 'Y'}

ALL_LABELS = frozenset(range(16))
A_SET = frozenset({0, 1, 2, 3, 6, 9, 12, 14})
B_SET = frozenset({4, 5, 7, 8, 10, 11, 13, 15})
C_SET = frozenset({0, 1, 2, 3})
E_SET = frozenset({6, 9, 12, 14})
KERNEL = frozenset(A_SET - {0})

A_ORDER = [0, 1, 2, 3, 6, 14, 9, 12]
B_ORDER = [4, 7, 11, 13, 5, 10, 15, 8]
TABLE_LAYOUT = {1: (A_ORDER, A_ORDER), 2: (B_ORDER, B_ORDER), 3: (B_ORDER, A_ORDER)}

MUB_ROWS = [(1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12), (13, 14, 15)]
KERNEL_PAIRS = [(1, 2), (6, 12), (9, 14)]

# (table, row, column) cells whose printed phase is a sign slip
KNOWN_TABLE_ERRATA = frozenset({(1, 14, 12), (1, 12, 14), (3, 8, 14)})
# (basis, vector) whose printed eigenvalue signs contradict 3*6 = 12
KNOWN_SIGNATURE_ERRATA = frozenset({((3, 6, 12), '(0,1,i,0)'), ((3, 6, 12), '(0,1,-i,0)')})

_PHASE_TEXT = {ONE: '', -ONE: '-', I_UNIT: 'i', -I_UNIT: '-i'}


def _check_label(label: int):
    if not isinstance(label, int) or not 0 <= label <= 15:
        raise ValueError(f"Operator label must be in 0..15, got {label!r}")


@dataclass(frozen=True)
class PauliOp:
    label: int
    left_factor: str
    right_factor: str

    @classmethod
    def of(cls, label: int) -> 'PauliOp':
        _check_label(label)
        return cls(label, *LABEL_FACTORS[label])

    @property
    def matrix(self) -> ExactMatrix:
        return op_matrix(self.label)

    def __str__(self) -> str:
        return f"{self.left_factor}{self.right_factor}"


@dataclass(frozen=True)
class PhasedOp:
    """phase * operator(label) with phase in {1, -1, i, -i}"""
    phase: GaussianInteger
    label: int

    @classmethod
    def parse(cls, text: str) -> 'PhasedOp':
        """Parse a printed table cell such as '3', '-9', 'i14', '-i6'"""
        token = text.replace(' ', '').replace('−', '-')
        sign = -1 if token.startswith('-') else 1
        token = token.lstrip('+-')
        phase = ONE
        if token.startswith('i'):
            phase, token = I_UNIT, token[1:]
        if not token.isdigit():
            raise ValueError(f"Cannot parse phased operator: {text!r}")
        label = int(token)
        _check_label(label)
        return cls(phase * sign, label)

    def __mul__(self, other: 'PhasedOp') -> 'PhasedOp':
        product = phased_product(self.label, other.label)
        return PhasedOp(self.phase * other.phase * product.phase, product.label)

    @property
    def matrix(self) -> ExactMatrix:
        return op_matrix(self.label).scale(self.phase)

    def sign_symbol(self) -> str:
        """'+' or '-' for a real phase"""
        if self.phase == ONE:
            return '+'
        if self.phase == -ONE:
            return '-'
        raise ValueError(f"Phase {format_gaussian(self.phase)} is not real")

    def __str__(self) -> str:
        return f"{_PHASE_TEXT[self.phase]}{self.label}"


@lru_cache(maxsize=None)
def op_matrix(label: int) -> ExactMatrix:
    """Tensor product of the two single-qubit factors"""
    _check_label(label)
    left, right = LABEL_FACTORS[label]
    return tensor(SIGMA[left], SIGMA[right])


def _single_product(p: str, q: str) -> Tuple[GaussianInteger, str]:
    if p == 'I':
        return ONE, q
    if q == 'I':
        return ONE, p
    if p == q:
        return ONE, 'I'
    if (p, q) in _CYCLIC:
        return I_UNIT, _CYCLIC[(p, q)]
    return -I_UNIT, _CYCLIC[(q, p)]


def _symbolic_product(a: int, b: int) -> PhasedOp:
    (a1, a2), (b1, b2) = LABEL_FACTORS[a], LABEL_FACTORS[b]
    phase1, f1 = _single_product(a1, b1)
    phase2, f2 = _single_product(a2, b2)
    return PhasedOp(phase1 * phase2, FACTOR_LABEL[(f1, f2)])


@lru_cache(maxsize=None)
def _product_table() -> Dict[Tuple[int, int], PhasedOp]:
    table = {}
    for a in range(16):
        for b in range(16):
            product = _symbolic_product(a, b)
            if matmul(op_matrix(a), op_matrix(b)) != product.matrix:
                raise ArithmeticError(f"Symbolic product {a}*{b} = {product} disagrees with the matrix product")
            table[(a, b)] = product
    logger.debug("Built and checked the 256 phased products")
    return table


def phased_product(a: int, b: int) -> PhasedOp:
    """(phase, label) with matrix(a) . matrix(b) = phase * matrix(label)"""
    _check_label(a)
    _check_label(b)
    return _product_table()[(a, b)]


def oracle_disagreements() -> List[Tuple[int, int]]:
    """Ordered pairs where the symbolic product and the matrix product differ"""
    return [(a, b) for a in range(16) for b in range(16)
            if matmul(op_matrix(a), op_matrix(b)) != _symbolic_product(a, b).matrix]


def commutes(a: int, b: int) -> bool:
    return phased_product(a, b) == phased_product(b, a)


def phase_dichotomy_holds() -> bool:
    """Any two operators either commute or anticommute"""
    for a in range(16):
        for b in range(16):
            ab, ba = phased_product(a, b), phased_product(b, a)
            if ab.label != ba.label or ab.phase not in (ba.phase, -ba.phase):
                return False
    return True


def line_product(labels: Sequence[int]) -> PhasedOp:
    """Ordered left-to-right product of a sequence of operators"""
    result = PhasedOp(ONE, 0)
    for label in labels:
        result = result * PhasedOp(ONE, label)
    return result


def commutation_relation(labels: Sequence[int]) -> RelationMatrix:
    """'+' where two distinct operators commute"""
    cells = [[a != b and commutes(a, b) for b in labels] for a in labels]
    return RelationMatrix(list(labels), list(labels), cells)


def commutation_cross(rows: Sequence[int], cols: Sequence[int]) -> RelationMatrix:
    return RelationMatrix(list(rows), list(cols), [[commutes(a, b) for b in cols] for a in rows])


def commutation_graph(labels: Iterable[int]) -> nx.Graph:
    return commutation_relation(sorted(labels)).to_graph()


def commutant_in(label: int, universe: Iterable[int]) -> List[int]:
    """Members of a universe, other than the label, that commute with it"""
    return sorted(u for u in universe if u != label and commutes(label, u))


# ---- operator partition ---------------------------------------------------

@dataclass(frozen=True)
class OperatorPartition:
    A: FrozenSet[int] = A_SET
    B: FrozenSet[int] = B_SET
    C: FrozenSet[int] = C_SET
    E: FrozenSet[int] = E_SET

    def is_consistent(self) -> bool:
        return (self.A | self.B == ALL_LABELS and not self.A & self.B and self.C | self.E == self.A)


def closure_check(partition: OperatorPartition) -> bool:
    """A*A and B*B land in A, mixed products land in B"""
    def lands(x: int, y: int, target: FrozenSet[int]) -> bool:
        return phased_product(x, y).label in target

    same = all(lands(a, b, partition.A) for a in partition.A for b in partition.A)
    same = same and all(lands(a, b, partition.A) for a in partition.B for b in partition.B)
    mixed = all(lands(a, b, partition.B) and lands(b, a, partition.B)
                for a in partition.A for b in partition.B)
    return same and mixed


# ---- printed tables --------------------------------------------------------

def product_grid(rows: Sequence[int], cols: Sequence[int]) -> List[List[PhasedOp]]:
    return [[phased_product(r, c) for c in cols] for r in rows]


@dataclass
class TableCheck:
    table: int
    cells_checked: int
    discrepancies: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(d['erratum'] for d in self.discrepancies)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'table': self.table,
            'cells_checked': self.cells_checked,
            'discrepancies': self.discrepancies,
            'unexplained': sum(1 for d in self.discrepancies if not d['erratum']),
            'passed': self.passed,
        }


def verify_tables(store: Optional[FixtureStore] = None) -> List[TableCheck]:
    """Regenerate Tables 1-3 and diff them cell by cell against the printed fixtures"""
    store = store or FixtureStore()
    checks = []
    for number in sorted(TABLE_LAYOUT):
        fixture = store.product_table(number)
        check = TableCheck(number, len(fixture.row_labels) * len(fixture.col_labels))
        for r, row_label in enumerate(fixture.row_labels):
            for c, col_label in enumerate(fixture.col_labels):
                printed = PhasedOp.parse(fixture.cells[r][c])
                computed = phased_product(row_label, col_label)
                if printed != computed:
                    check.discrepancies.append({
                        'row': row_label, 'col': col_label,
                        'printed': str(printed), 'computed': str(computed),
                        'erratum': (number, row_label, col_label) in KNOWN_TABLE_ERRATA,
                    })
        logger.info("Table %d: %d discrepancies", number, len(check.discrepancies))
        checks.append(check)
    return checks


# ---- eigenbases and MUBs ---------------------------------------------------

@dataclass
class LineBasis:
    triple: Tuple[int, int, int]
    vectors: List[Tuple[StateVector, SignSignature]]
    entangled: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'triple': list(self.triple),
            'vectors': [f"{v}{s}" for v, s in self.vectors],
            'entangled': self.entangled,
        }


def _check_closed_commuting(triple: Sequence[int]):
    if len(triple) != 3 or len(set(triple)) != 3:
        raise ValueError(f"Need three distinct operators, got {list(triple)}")
    for label in triple:
        _check_label(label)
    a, b, c = triple
    if 0 in triple:
        raise ValueError("The identity cannot belong to an operator line")
    if not all(commutes(x, y) for x, y in itertools.combinations(triple, 2)):
        raise ValueError(f"Operators {list(triple)} do not commute pairwise")
    if phased_product(a, b).label != c:
        raise ValueError(f"Operators {list(triple)} are not closed under the product")


def line_eigenbasis(triple: Sequence[int]) -> LineBasis:
    """Joint eigenbasis of a commuting closed triple with signs for all three operators"""
    _check_closed_commuting(triple)
    a, b, c = triple
    vectors = joint_eigenbasis(op_matrix(a), op_matrix(b), op_matrix(c))
    entangled = all(schmidt_rank(v) == 2 for v, _ in vectors)
    return LineBasis(tuple(triple), vectors, entangled)


@dataclass
class MubReport:
    bases: List[LineBasis]
    pairs_checked: int
    all_unbiased: bool
    within_row_orthogonal: bool
    entangled_rows: List[int]

    @property
    def passed(self) -> bool:
        return self.all_unbiased and self.within_row_orthogonal and self.entangled_rows == [3, 5]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pairs_checked': self.pairs_checked,
            'all_unbiased': self.all_unbiased,
            'within_row_orthogonal': self.within_row_orthogonal,
            'entangled_rows': self.entangled_rows,
            'bases': [b.to_dict() for b in self.bases],
        }


def mub_partition() -> MubReport:
    """Joint eigenbases of the five rows and their pairwise unbiasedness"""
    bases = [line_eigenbasis(row) for row in MUB_ROWS]
    vectors = [[v for v, _ in basis.vectors] for basis in bases]
    pairs = list(itertools.combinations(range(len(bases)), 2))
    all_unbiased = all(is_unbiased_pair(vectors[i], vectors[j]) for i, j in pairs)
    orthogonal = all(inner(u, v) == ZERO for row in vectors for u, v in itertools.combinations(row, 2))
    entangled = [k + 1 for k, basis in enumerate(bases) if basis.entangled]
    return MubReport(bases, len(pairs), all_unbiased, orthogonal, entangled)


@dataclass
class EigenbasisCheck:
    triple: Tuple[int, ...]
    discrepancies: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(d['erratum'] for d in self.discrepancies)

    def to_dict(self) -> Dict[str, Any]:
        return {'triple': list(self.triple), 'discrepancies': self.discrepancies, 'passed': self.passed}


def verify_eigenbases(store: Optional[FixtureStore] = None) -> List[EigenbasisCheck]:
    """Compare the printed bases with the computed ones, each vector up to a Gaussian scalar"""
    store = store or FixtureStore()
    checks = []
    for triple, printed in store.eigenbases().items():
        computed = {v.primitive(): s for v, s in line_eigenbasis(triple).vectors}
        check = EigenbasisCheck(triple)
        seen = set()
        for vector, signature in printed:
            ray = vector.primitive()
            seen.add(ray)
            if ray not in computed:
                check.discrepancies.append({'vector': str(vector), 'printed': str(signature),
                                            'computed': None, 'erratum': False})
            elif computed[ray] != signature:
                check.discrepancies.append({
                    'vector': str(vector), 'printed': str(signature), 'computed': str(computed[ray]),
                    'erratum': (tuple(triple), str(ray)) in KNOWN_SIGNATURE_ERRATA,
                })
        for ray in computed:
            if ray not in seen:
                check.discrepancies.append({'vector': str(ray), 'printed': None,
                                            'computed': str(computed[ray]), 'erratum': False})
        checks.append(check)
    return checks


# ---- Mermin squares --------------------------------------------------------

@dataclass
class MerminSquare:
    grid: List[List[int]]

    def rows(self) -> List[List[int]]:
        return [list(row) for row in self.grid]

    def columns(self) -> List[List[int]]:
        return [[self.grid[r][c] for r in range(3)] for c in range(3)]


@dataclass
class MerminReport:
    square: int
    grid: List[List[int]]
    row_phases: List[str]
    col_phases: List[str]
    lines_commute: bool

    @property
    def passed(self) -> bool:
        return self.lines_commute and self.row_phases == ['+'] * 3 and self.col_phases == ['+', '+', '-']

    def to_dict(self) -> Dict[str, Any]:
        return {
            'square': self.square,
            'grid': self.grid,
            'row_phases': self.row_phases,
            'col_phases': self.col_phases,
            'lines_commute': self.lines_commute,
            'passed': self.passed,
        }


def _line_sign(line: Sequence[int]) -> str:
    product = line_product(line)
    if product.label != 0:
        return '?'
    return product.sign_symbol()


def mermin_squares(store: Optional[FixtureStore] = None) -> List[MerminReport]:
    """Commutation and ordered-product signs of every row and column of the four squares"""
    store = store or FixtureStore()
    reports = []
    for k, grid in enumerate(store.mermin_grids(), start=1):
        square = MerminSquare(grid)
        lines = square.rows() + square.columns()
        lines_commute = all(commutes(a, b) for line in lines for a, b in itertools.combinations(line, 2))
        reports.append(MerminReport(k, grid, [_line_sign(r) for r in square.rows()],
                                    [_line_sign(c) for c in square.columns()], lines_commute))
    return reports


def mermin_label_multiplicity(grids: Sequence[Sequence[Sequence[int]]]) -> Dict[int, int]:
    return dict(sorted(Counter(label for grid in grids for row in grid for label in row).items()))


def mermin_multiplicity_ok(grids: Sequence[Sequence[Sequence[int]]]) -> bool:
    """1, 2, 3 four times each, every other nontrivial label twice"""
    expected = {label: (4 if label in (1, 2, 3) else 2) for label in range(1, 16)}
    return mermin_label_multiplicity(grids) == expected


# ---- Fano plane and pencils ------------------------------------------------

@dataclass
class FanoEmbedding:
    mapping: Dict[int, int]
    lines: List[Tuple[int, int, int]]
    cross_validated: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mapping': {str(k): format(v, '03b') for k, v in self.mapping.items()},
            'lines': [list(line) for line in self.lines],
            'cross_validated': self.cross_validated,
        }


def _xor_law(mapping: Dict[int, int], labels: Sequence[int]) -> bool:
    return all(mapping[phased_product(a, b).label] == mapping[a] ^ mapping[b]
               for a in labels for b in labels if a != b)


def fano_embedding() -> FanoEmbedding:
    """First bijection of A minus 0 onto nonzero 3-bit vectors turning products into XOR"""
    labels = sorted(KERNEL)
    mapping = None
    for perm in itertools.permutations(range(1, 8)):
        candidate = dict(zip(labels, perm))
        if _xor_law(candidate, labels):
            mapping = candidate
            break
    if mapping is None:
        raise ArithmeticError("No Fano embedding of the kernel exists")
    lines = sorted(t for t in itertools.combinations(labels, 3)
                   if mapping[t[0]] ^ mapping[t[1]] ^ mapping[t[2]] == 0)

    gf8 = quotient_ring_gf2(0b1011)
    additive = ring_isomorphic_upto_phase(A_ORDER, product_grid(A_ORDER, A_ORDER), gf8)
    cross_validated = False
    if additive is not None:
        ring_map = {label: element.index for label, element in additive.items()}
        cross_validated = (_xor_law(ring_map, labels)
                           and all(ring_map[a] ^ ring_map[b] ^ ring_map[c] == 0 for a, b, c in lines))
    return FanoEmbedding(mapping, lines, cross_validated)


@dataclass
class PencilLine:
    labels: Tuple[int, int, int]
    full: bool
    entangled: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'labels': list(self.labels), 'full': self.full, 'entangled': self.entangled}


def pencil_through(base: int, universe: Iterable[int]) -> List[PencilLine]:
    """Closed triples through a base point, full when the three operators commute"""
    universe = frozenset(universe)
    if base == 0:
        raise ValueError("The identity is not a point of the configuration")
    if base not in universe:
        raise ValueError(f"Base {base} is not in the universe")
    lines = set()
    for other in universe - {base, 0}:
        third = phased_product(base, other).label
        if third in universe and third not in (0, base):
            lines.add(tuple(sorted((base, other, third))))
    result = []
    for triple in sorted(lines):
        full = all(commutes(x, y) for x, y in itertools.combinations(triple, 2))
        entangled = None
        if full:
            ordered = (base,) + tuple(t for t in triple if t != base)
            entangled = line_eigenbasis(ordered).entangled
        result.append(PencilLine(triple, full, entangled))
    return result


# ---- kernel, cube and their coupling --------------------------------------

@dataclass
class CubeReport:
    relation: RelationMatrix
    edge_count: int
    regular_degree: Optional[int]
    bipartite: bool
    triangle_free: bool
    isomorphism: Dict[int, str]

    @property
    def is_cube(self) -> bool:
        return (self.edge_count == 12 and self.regular_degree == 3 and self.bipartite
                and self.triangle_free and len(self.isomorphism) == 8)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'relation': self.relation.to_dict(),
            'edge_count': self.edge_count,
            'regular_degree': self.regular_degree,
            'bipartite': self.bipartite,
            'triangle_free': self.triangle_free,
            'isomorphism': {str(k): v for k, v in sorted(self.isomorphism.items())},
            'is_cube': self.is_cube,
        }


def regular_degree(graph: nx.Graph) -> Optional[int]:
    degrees = {d for _, d in graph.degree()}
    return degrees.pop() if len(degrees) == 1 else None


def cube_isomorphism(graph: nx.Graph) -> Dict[Any, str]:
    """A vertex map onto the 3-cube with vertices written as bit strings, empty if none"""
    cube = nx.hypercube_graph(3)
    matcher = nx.algorithms.isomorphism.GraphMatcher(graph, cube)
    if not matcher.is_isomorphic():
        return {}
    mapping = next(matcher.isomorphisms_iter())
    return {vertex: ''.join(str(bit) for bit in mapping[vertex]) for vertex in graph.nodes}


def cube_structure() -> CubeReport:
    """Commutation graph on B and its identification with the 3-cube"""
    relation = commutation_relation(B_ORDER)
    graph = relation.to_graph()
    return CubeReport(relation, graph.number_of_edges(), regular_degree(graph), nx.is_bipartite(graph),
                      sum(nx.triangles(graph).values()) == 0, cube_isomorphism(graph))


@dataclass
class PairCoupling:
    pair: Tuple[int, int]
    four_tuples: Tuple[List[int], List[int]]
    matching: List[Tuple[int, int]]
    faces: List[List[int]]

    @property
    def valid(self) -> bool:
        return len(self.matching) == 4 and len(self.faces) == 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pair': list(self.pair),
            'four_tuples': [list(t) for t in self.four_tuples],
            'matching': [list(e) for e in self.matching],
            'faces': self.faces,
            'valid': self.valid,
        }


@dataclass
class CouplingReport:
    pairs: List[PairCoupling]
    full_degree: Optional[int]
    full_edges: int
    kernel_without_outer_links: List[int]

    @property
    def qualifying_pairs(self) -> List[Tuple[int, int]]:
        return [p.pair for p in self.pairs]

    @property
    def passed(self) -> bool:
        return (self.qualifying_pairs == sorted(KERNEL_PAIRS) and all(p.valid for p in self.pairs)
                and self.full_degree == 6 and self.full_edges == 45)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pairs': [p.to_dict() for p in self.pairs],
            'full_degree': self.full_degree,
            'full_edges': self.full_edges,
            'kernel_without_outer_links': self.kernel_without_outer_links,
            'passed': self.passed,
        }


def _pair_coupling(pair: Tuple[int, int], cube: nx.Graph) -> Optional[PairCoupling]:
    first, second = (commutant_in(label, B_SET) for label in pair)
    if len(first) != 4 or len(second) != 4 or set(first) & set(second) or set(first) | set(second) != B_SET:
        return None
    matching = sorted(tuple(sorted(e)) for e in cube.edges()
                      if (e[0] in first and e[1] in first) or (e[0] in second and e[1] in second))
    remainder = cube.copy()
    remainder.remove_edges_from(matching)
    faces = []
    for component in sorted(nx.connected_components(remainder), key=min):
        sub = remainder.subgraph(component)
        if len(component) == 4 and regular_degree(sub) == 2:
            faces.append(sorted(component))
    return PairCoupling(pair, (first, second), matching, faces)


def shell_coupling() -> CouplingReport:
    """Kernel pairs whose commutants in B are complementary four-tuples"""
    cube = commutation_graph(B_SET)
    pairs = []
    for pair in itertools.combinations(sorted(KERNEL), 2):
        coupling = _pair_coupling(pair, cube)
        if coupling is not None:
            pairs.append(coupling)
    full = commutation_graph(range(1, 16))
    isolated = sorted(k for k in KERNEL if not commutant_in(k, B_SET))
    return CouplingReport(pairs, regular_degree(full), full.number_of_edges(), isolated)
