"""
Fixture Store
Plain-text grids transcribed from the printed multiplication, ring and
distant/neighbour tables, plus the Mermin squares and eigenbasis lists
"""

import logging
import os
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.exact_linalg import SignSignature, StateVector

logger = logging.getLogger(__name__)

FIXTURE_ENV_VAR = 'PRG_FIXTURES'
DEFAULT_FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')

_VECTOR_TOKEN = re.compile(r'^(\([^)]*\))([+\-]+)$')


class FixtureError(ValueError):
    """A fixture file is missing or malformed"""


@dataclass
class ProductTableFixture:
    row_labels: List[int]
    col_labels: List[int]
    cells: List[List[str]]


@dataclass
class RelationFixture:
    row_labels: List[str]
    col_labels: List[str]
    cells: np.ndarray
    flags: np.ndarray

    def flagged_cells(self) -> List[Tuple[str, str]]:
        return [(self.row_labels[i], self.col_labels[j]) for i, j in zip(*np.nonzero(self.flags))]


@dataclass
class RingTableFixture:
    names: List[str]
    add: List[List[str]]
    mul: List[List[str]]


class FixtureStore:
    """Reads fixture grids from PRG_FIXTURES or the bundled directory"""

    def __init__(self, fixture_dir: Optional[str] = None):
        self.fixture_dir = fixture_dir or os.environ.get(FIXTURE_ENV_VAR) or DEFAULT_FIXTURE_DIR

    def _blocks(self, filename: str) -> List[List[List[str]]]:
        path = os.path.join(self.fixture_dir, filename)
        if not os.path.isfile(path):
            raise FixtureError(f"Fixture file not found: {path}")
        logger.debug("Loading fixture %s", path)
        blocks, current = [], []
        with open(path, encoding='utf-8') as handle:
            for line in handle:
                stripped = line.split('#', 1)[0].strip()
                if not stripped:
                    if current:
                        blocks.append(current)
                        current = []
                    continue
                current.append(stripped.split())
        if current:
            blocks.append(current)
        if not blocks:
            raise FixtureError(f"Fixture file is empty: {path}")
        return blocks

    @staticmethod
    def _grid(block: List[List[str]], filename: str) -> Tuple[str, List[str], List[str], List[List[str]]]:
        header = block[0]
        if len(header) < 2:
            raise FixtureError(f"{filename}: header row is too short")
        corner, cols = header[0], header[1:]
        rows, cells = [], []
        for tokens in block[1:]:
            if len(tokens) != len(cols) + 1:
                raise FixtureError(f"{filename}: row {tokens[0]!r} has {len(tokens) - 1} cells, "
                                   f"expected {len(cols)}")
            rows.append(tokens[0])
            cells.append(tokens[1:])
        return corner, rows, cols, cells

    def product_table(self, number: int) -> ProductTableFixture:
        """Tables 1-3: operator products such as '3', '-9', 'i14', '-i6'"""
        filename = f"table{number}.txt"
        _, rows, cols, cells = self._grid(self._blocks(filename)[0], filename)
        try:
            return ProductTableFixture([int(r) for r in rows], [int(c) for c in cols], cells)
        except ValueError as e:
            raise FixtureError(f"{filename}: non-numeric operator label ({e})") from e

    def relation_table(self, number: int) -> RelationFixture:
        """Tables 6-9: '+'/'-' cells, a trailing '!' marks a flagged cell"""
        filename = f"table{number}.txt"
        _, rows, cols, cells = self._grid(self._blocks(filename)[0], filename)
        values = np.zeros((len(rows), len(cols)), dtype=bool)
        flags = np.zeros((len(rows), len(cols)), dtype=bool)
        for i, row in enumerate(cells):
            for j, token in enumerate(row):
                sign = token.rstrip('!')
                if sign not in ('+', '-'):
                    raise FixtureError(f"{filename}: bad cell {token!r} at ({rows[i]}, {cols[j]})")
                values[i, j] = sign == '+'
                flags[i, j] = token.endswith('!')
        return RelationFixture(rows, cols, values, flags)

    def ring_table(self, name: str) -> RingTableFixture:
        """Tables 4-5: an addition block and a multiplication block"""
        filename = f"{name}.txt"
        blocks = self._blocks(filename)
        if len(blocks) != 2:
            raise FixtureError(f"{filename}: expected an addition and a multiplication block")
        add_corner, add_rows, add_cols, add_cells = self._grid(blocks[0], filename)
        mul_corner, mul_rows, mul_cols, mul_cells = self._grid(blocks[1], filename)
        if (add_corner, mul_corner) != ('+', 'x') or not add_rows == add_cols == mul_rows == mul_cols:
            raise FixtureError(f"{filename}: blocks must be '+' then 'x' over one element list")
        return RingTableFixture(add_cols, add_cells, mul_cells)

    def mermin_grids(self) -> List[List[List[int]]]:
        filename = 'mermin.txt'
        grids = []
        for block in self._blocks(filename):
            if len(block) != 3 or any(len(row) != 3 for row in block):
                raise FixtureError(f"{filename}: every square must be 3x3")
            grids.append([[int(token) for token in row] for row in block])
        return grids

    def eigenbases(self) -> Dict[Tuple[int, ...], List[Tuple[StateVector, SignSignature]]]:
        """Printed bases keyed by operator triple, e.g. [3,14,9]"""
        filename = 'eigenbases.txt'
        bases = {}
        for block in self._blocks(filename):
            for tokens in block:
                key = tuple(int(part) for part in tokens[0].strip('[]:').split(','))
                entries = []
                for token in tokens[1:]:
                    match = _VECTOR_TOKEN.match(token)
                    if not match:
                        raise FixtureError(f"{filename}: bad vector token {token!r}")
                    entries.append((StateVector.parse(match.group(1)), SignSignature.parse(match.group(2))))
                bases[key] = entries
        return bases
