"""
Finite Commutative Rings
Table-driven rings with unity: direct products GF(2)^n, quotient rings
GF(2)[x]/<f>, units, zero-divisors, ideals and the Jacobson radical
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

# R_perp = GF(2)^2 in the order 0, 1, x, x+1
_PERP_BITS = [(0, 0), (1, 1), (1, 0), (0, 1)]
_PERP_NAMES = ['0', '1', 'x', 'x+1']

# R_triangle = GF(2)^3 in the order 0, 1, b, y, r, c, g, m
_TRIANGLE_BITS = [(0, 0, 0), (1, 1, 1), (1, 0, 0), (0, 1, 1), (0, 1, 0), (1, 0, 1), (0, 0, 1), (1, 1, 0)]
_TRIANGLE_NAMES = ['0', '1', 'b', 'y', 'r', 'c', 'g', 'm']

# GF(2)^4 as pairs of R_perp elements, x_k for the rest; x_0 is zero and x_5 the identity
_QUAD_NAMES = {0: '0', 5: '1'}

MAX_PRODUCT_FACTORS = 6


@dataclass(frozen=True, order=True)
class RingElement:
    """An element addressed by its row/column index in the ring tables"""
    ring_id: str
    index: int


@dataclass(frozen=True)
class Ideal:
    ring_id: str
    elements: FrozenSet[int]
    generator: Optional[int] = None
    is_maximal: bool = False

    def __contains__(self, index: int) -> bool:
        return index in self.elements

    def __len__(self) -> int:
        return len(self.elements)


class FiniteRing:
    """Finite commutative ring with unity given by explicit addition and multiplication tables"""

    def __init__(self, ring_id: str, element_names: Sequence[str], add_table, mul_table,
                 zero: int = 0, one: int = 1, components: Optional[Sequence[Tuple[int, ...]]] = None):
        self.ring_id = ring_id
        self.element_names = list(element_names)
        self.add_table = np.array(add_table, dtype=np.int64)
        self.mul_table = np.array(mul_table, dtype=np.int64)
        self.zero = zero
        self.one = one
        self.components = [tuple(c) for c in components] if components is not None else None

        n = len(self.element_names)
        if self.add_table.shape != (n, n) or self.mul_table.shape != (n, n):
            raise ValueError(f"Ring {ring_id}: tables must be {n}x{n}")
        if len(set(self.element_names)) != n:
            raise ValueError(f"Ring {ring_id}: element names are not distinct")
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self._index = {name: i for i, name in enumerate(self.element_names)}
        self._negation = np.array([int(np.flatnonzero(self.add_table[a] == zero)[0]) for a in range(n)])
        self._unit_mask = (self.mul_table == one).any(axis=1)
        self._sub_table = self.add_table[np.arange(n)[:, None], self._negation[None, :]]

    @property
    def order(self) -> int:
        return len(self.element_names)

    def __repr__(self) -> str:
        return f"FiniteRing({self.ring_id}, order={self.order})"

    # ---- element access -------------------------------------------------

    def element(self, key: Union[str, int, RingElement]) -> RingElement:
        """Look up an element by name or index"""
        if isinstance(key, RingElement):
            self._check_same_ring(key)
            return key
        if isinstance(key, str):
            if key not in self._index:
                raise ValueError(f"Ring {self.ring_id} has no element named {key!r}")
            return RingElement(self.ring_id, self._index[key])
        if not 0 <= key < self.order:
            raise ValueError(f"Ring {self.ring_id} has no element with index {key}")
        return RingElement(self.ring_id, int(key))

    def name(self, key: Union[int, RingElement]) -> str:
        index = key.index if isinstance(key, RingElement) else key
        return self.element_names[index]

    def _check_same_ring(self, element: RingElement):
        if element.ring_id != self.ring_id:
            raise ValueError(f"Element of ring {element.ring_id} used with ring {self.ring_id}")

    def _idx(self, key: Union[str, int, RingElement]) -> int:
        if isinstance(key, RingElement):
            self._check_same_ring(key)
            return key.index
        if isinstance(key, str):
            return self.element(key).index
        return int(key)

    def add(self, a, b) -> int:
        return int(self.add_table[self._idx(a), self._idx(b)])

    def sub(self, a, b) -> int:
        return int(self._sub_table[self._idx(a), self._idx(b)])

    def mul(self, a, b) -> int:
        return int(self.mul_table[self._idx(a), self._idx(b)])

    @property
    def sub_table(self) -> np.ndarray:
        return self._sub_table

    @property
    def unit_mask(self) -> np.ndarray:
        return self._unit_mask

    def is_unit(self, a) -> bool:
        return bool(self._unit_mask[self._idx(a)])

    # ---- structure ------------------------------------------------------

    def check_axioms(self) -> bool:
        """Exhaustive check of the commutative-ring-with-unity axioms"""
        n = self.order
        r = np.arange(n)
        add, mul = self.add_table, self.mul_table
        a, b, c = r[:, None, None], r[None, :, None], r[None, None, :]
        checks = [
            np.array_equal(add, add.T),
            np.array_equal(mul, mul.T),
            np.array_equal(add[self.zero], r),
            np.array_equal(mul[self.one], r),
            bool((add == self.zero).any(axis=1).all()),
            np.array_equal(add[add[a, b], c], add[a, add[b, c]]),
            np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]),
            np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]),
        ]
        return all(checks)

    def units(self) -> FrozenSet[RingElement]:
        """Elements with a multiplicative inverse"""
        return frozenset(RingElement(self.ring_id, int(i)) for i in np.flatnonzero(self._unit_mask))

    def zero_divisors(self) -> FrozenSet[RingElement]:
        """Complement of the units, including the trivial zero-divisor 0"""
        return frozenset(RingElement(self.ring_id, int(i)) for i in np.flatnonzero(~self._unit_mask))

    def nontrivial_zero_divisors(self) -> FrozenSet[RingElement]:
        return frozenset(e for e in self.zero_divisors() if e.index != self.zero)

    def units_form_group(self) -> bool:
        unit_idx = set(int(i) for i in np.flatnonzero(self._unit_mask))
        closed = all(self.mul(a, b) in unit_idx for a in unit_idx for b in unit_idx)
        return closed and self.one in unit_idx

    def is_field(self) -> bool:
        return self.zero_divisors() == frozenset({RingElement(self.ring_id, self.zero)})

    def characteristic(self) -> int:
        """Smallest s with s*1 = 0"""
        total, s = self.one, 1
        while total != self.zero:
            total = self.add(total, self.one)
            s += 1
        return s

    def is_ideal(self, elements: Iterable[int]) -> bool:
        members = set(elements)
        if self.zero not in members:
            return False
        additive = all(self.add(a, b) in members for a in members for b in members)
        absorbing = all(self.mul(r, a) in members for r in range(self.order) for a in members)
        return additive and absorbing

    def ideal_generated(self, generators: Iterable[Union[int, RingElement]]) -> Ideal:
        """Additive closure of all multiples r*g"""
        gens = [self._idx(g) for g in generators]
        members = {self.zero}
        members.update(self.mul(r, g) for g in gens for r in range(self.order))
        frontier = set(members)
        while frontier:
            fresh = {self.add(a, b) for a in frontier for b in members} - members
            members |= fresh
            frontier = fresh
        generator = self._principal_generator(frozenset(members))
        return Ideal(self.ring_id, frozenset(members), generator)

    def principal_ideal(self, a: Union[int, RingElement]) -> Ideal:
        """The ideal Ra"""
        index = self._idx(a)
        members = frozenset(self.mul(r, index) for r in range(self.order))
        return Ideal(self.ring_id, members, index)

    def _principal_generator(self, members: FrozenSet[int]) -> Optional[int]:
        for candidate in sorted(members):
            if frozenset(self.mul(r, candidate) for r in range(self.order)) == members:
                return candidate
        return None

    def maximal_ideals(self) -> List[Ideal]:
        """Inclusion-maximal proper ideals among those generated by at most two zero-divisors"""
        zd = sorted(e.index for e in self.zero_divisors())
        candidates = {frozenset({self.zero})}
        for size in (1, 2):
            for gens in itertools.combinations(zd, size):
                members = self.ideal_generated(gens).elements
                if len(members) < self.order:
                    candidates.add(members)
        maximal = [c for c in candidates if not any(c < other for other in candidates)]
        ideals = [Ideal(self.ring_id, m, self._principal_generator(m), True) for m in maximal]
        ideals.sort(key=lambda ideal: (ideal.generator if ideal.generator is not None else self.order,
                                       sorted(ideal.elements)))
        logger.debug("Ring %s: %d maximal ideals", self.ring_id, len(ideals))
        return ideals

    def jacobson_radical(self) -> Ideal:
        """Intersection of all maximal ideals"""
        maximal = self.maximal_ideals()
        members = frozenset.intersection(*(m.elements for m in maximal))
        return Ideal(self.ring_id, members, self._principal_generator(members),
                     any(m.elements == members for m in maximal))

    def is_local(self) -> bool:
        return len(self.maximal_ideals()) == 1

    def composite_zero_divisors(self) -> FrozenSet[RingElement]:
        """Nontrivial zero-divisors whose principal ideal is maximal"""
        maximal = {m.elements for m in self.maximal_ideals()}
        return frozenset(e for e in self.nontrivial_zero_divisors()
                         if self.principal_ideal(e).elements in maximal)

    def quotient_by_ideal(self, ideal: Ideal) -> 'FiniteRing':
        """The factor ring R/I on cosets, each named by its smallest-index representative"""
        if not self.is_ideal(ideal.elements):
            raise ValueError(f"Not an ideal of {self.ring_id}: {sorted(ideal.elements)}")
        coset_of = {}
        representatives = []
        for a in range(self.order):
            coset = frozenset(self.add(a, i) for i in ideal.elements)
            if coset not in coset_of:
                coset_of[coset] = len(representatives)
                representatives.append(a)
        lookup = {a: coset_of[frozenset(self.add(a, i) for i in ideal.elements)] for a in range(self.order)}
        add = [[lookup[self.add(a, b)] for b in representatives] for a in representatives]
        mul = [[lookup[self.mul(a, b)] for b in representatives] for a in representatives]
        label = self.name(ideal.generator) if ideal.generator is not None else str(sorted(ideal.elements))
        return FiniteRing(f"{self.ring_id}/<{label}>", [self.name(a) for a in representatives],
                          add, mul, zero=lookup[self.zero], one=lookup[self.one])

    def to_dict(self) -> Dict:
        return {
            'order': self.order,
            'names': list(self.element_names),
            'add': self.add_table.tolist(),
            'mul': self.mul_table.tolist(),
        }

    def name_tables(self) -> Tuple[List[List[str]], List[List[str]]]:
        """Addition and multiplication tables spelled with element names"""
        spell = np.vectorize(lambda i: self.element_names[i], otypes=[object])
        return spell(self.add_table).tolist(), spell(self.mul_table).tolist()


def same_addition_table(first: FiniteRing, second: FiniteRing) -> bool:
    """Identical addition tables under the index identity"""
    return first.order == second.order and np.array_equal(first.add_table, second.add_table)


def _product_elements(n: int) -> Tuple[List[Tuple[int, ...]], List[str]]:
    if n == 2:
        return list(_PERP_BITS), list(_PERP_NAMES)
    if n == 3:
        return list(_TRIANGLE_BITS), list(_TRIANGLE_NAMES)
    if n == 4:
        bits = [_PERP_BITS[k // 4] + _PERP_BITS[k % 4] for k in range(16)]
        return bits, [_QUAD_NAMES.get(k, f"x{k}") for k in range(16)]
    bits = list(itertools.product((0, 1), repeat=n))
    if n == 1:
        return bits, ['0', '1']
    return bits, ['[' + ','.join(map(str, b)) + ']' for b in bits]


def direct_product_ring(n: int) -> FiniteRing:
    """GF(2)^n with componentwise tables and the customary element names"""
    if not 1 <= n <= MAX_PRODUCT_FACTORS:
        raise ValueError(f"Number of GF(2) factors must be in 1..{MAX_PRODUCT_FACTORS}, got {n}")
    bits, names = _product_elements(n)
    arr = np.array(bits, dtype=np.int64)
    weights = 1 << np.arange(n)[::-1]
    code_to_index = np.empty(2 ** n, dtype=np.int64)
    code_to_index[arr @ weights] = np.arange(len(bits))
    add = code_to_index[(arr[:, None, :] ^ arr[None, :, :]) @ weights]
    mul = code_to_index[(arr[:, None, :] & arr[None, :, :]) @ weights]
    zero = bits.index(tuple([0] * n))
    one = bits.index(tuple([1] * n))
    return FiniteRing(f"gf2x{n}", names, add, mul, zero=zero, one=one, components=bits)


def poly_degree(poly: int) -> int:
    return poly.bit_length() - 1


def poly_mod(poly: int, modulus: int) -> int:
    """Remainder of carry-less division over GF(2)"""
    degree = poly_degree(modulus)
    while poly and poly_degree(poly) >= degree:
        poly ^= modulus << (poly_degree(poly) - degree)
    return poly


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two bit-polynomials"""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def poly_name(poly: int) -> str:
    if poly == 0:
        return '0'
    terms = []
    for power in range(poly_degree(poly), -1, -1):
        if poly >> power & 1:
            terms.append('1' if power == 0 else 'x' if power == 1 else f"x^{power}")
    return '+'.join(terms)


def quotient_ring_gf2(modulus: int) -> FiniteRing:
    """GF(2)[x]/<modulus> with the modulus written as a bitmask (x^2+x+1 = 0b111)"""
    if modulus <= 0:
        raise ValueError("Modulus must be a nonzero polynomial")
    if poly_degree(modulus) < 1:
        raise ValueError(f"Modulus {poly_name(modulus)} must have degree at least 1")
    size = 1 << poly_degree(modulus)
    add = [[a ^ b for b in range(size)] for a in range(size)]
    mul = [[poly_mod(poly_mul(a, b), modulus) for b in range(size)] for a in range(size)]
    return FiniteRing(f"gf2[x]/<{poly_name(modulus)}>", [poly_name(p) for p in range(size)],
                      add, mul, zero=0, one=1)


RING_SELECTORS = {
    'gf2x2': lambda: direct_product_ring(2),
    'gf2x3': lambda: direct_product_ring(3),
    'gf2x4': lambda: direct_product_ring(4),
    'gf4': lambda: quotient_ring_gf2(0b111),
    'gf8': lambda: quotient_ring_gf2(0b1011),
}


def ring_by_selector(selector: str) -> FiniteRing:
    if selector not in RING_SELECTORS:
        raise ValueError(f"Unsupported ring {selector!r}; choose one of {', '.join(RING_SELECTORS)}")
    return RING_SELECTORS[selector]()


def ring_isomorphic_upto_phase(labels: Sequence[int], table: Sequence[Sequence], ring: FiniteRing
                               ) -> Optional[Dict[int, RingElement]]:
    """Bijection phi with phi(a*b) = phi(a) + phi(b), phases ignored.

    ``table[i][j]`` holds the product of ``labels[i]`` and ``labels[j]``, either a plain
    label or an object with a ``label`` attribute. The table's identity maps to zero.
    """
    n = len(labels)
    if n != ring.order or len(table) != n or any(len(row) != n for row in table):
        raise ValueError(f"Table of size {n} cannot match ring {ring.ring_id} of order {ring.order}")
    position = {label: i for i, label in enumerate(labels)}
    products = np.array([[position[getattr(cell, 'label', cell)] for cell in row] for row in table])
    identity = next((i for i in range(n) if np.array_equal(products[i], np.arange(n))), None)
    if identity is None:
        return None
    others = [i for i in range(n) if i != identity]
    targets = [e for e in range(ring.order) if e != ring.zero]
    for perm in itertools.permutations(targets):
        phi = np.empty(n, dtype=np.int64)
        phi[identity] = ring.zero
        phi[others] = perm
        if np.array_equal(phi[products], ring.add_table[phi[:, None], phi[None, :]]):
            return {labels[i]: RingElement(ring.ring_id, int(phi[i])) for i in range(n)}
    return None


def verify_ring_table(ring: FiniteRing, names: Sequence[str], add_cells: Sequence[Sequence[str]],
                      mul_cells: Sequence[Sequence[str]]) -> List[Dict[str, str]]:
    """Cells where a printed ring table differs from the computed one"""
    if list(names) != ring.element_names[:len(names)] or len(names) != ring.order:
        raise ValueError(f"Printed element order {list(names)} does not match {ring.element_names}")
    add_names, mul_names = ring.name_tables()
    diffs = []
    for op, printed, computed in (('+', add_cells, add_names), ('x', mul_cells, mul_names)):
        for i, row in enumerate(printed):
            for j, cell in enumerate(row):
                if cell != computed[i][j]:
                    diffs.append({'op': op, 'row': names[i], 'col': names[j],
                                  'printed': cell, 'computed': computed[i][j]})
    return diffs
