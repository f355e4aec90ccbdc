"""
Relation Matrices
Boolean relation tables over labelled vertex sets ('+' = distant or commuting)
"""

from typing import Any, Dict, Hashable, List, Sequence, Tuple

import networkx as nx
import numpy as np


class RelationMatrix:
    """Boolean matrix with row and column labels"""

    def __init__(self, row_labels: Sequence[Hashable], col_labels: Sequence[Hashable], cells):
        self.row_labels = list(row_labels)
        self.col_labels = list(col_labels)
        self.cells = np.array(cells, dtype=bool).reshape(len(self.row_labels), len(self.col_labels))
        self.cells.setflags(write=False)
        self._row_pos = {label: i for i, label in enumerate(self.row_labels)}
        self._col_pos = {label: j for j, label in enumerate(self.col_labels)}
        if len(self._row_pos) != len(self.row_labels) or len(self._col_pos) != len(self.col_labels):
            raise ValueError("Relation labels must be distinct")

    @property
    def is_square(self) -> bool:
        return self.row_labels == self.col_labels

    def cell(self, row: Hashable, col: Hashable) -> bool:
        if row not in self._row_pos or col not in self._col_pos:
            raise ValueError(f"Unknown cell ({row}, {col})")
        return bool(self.cells[self._row_pos[row], self._col_pos[col]])

    def is_symmetric(self) -> bool:
        """Square, symmetric and false on the diagonal"""
        return (self.is_square and np.array_equal(self.cells, self.cells.T)
                and not self.cells.diagonal().any())

    def edges(self) -> List[Tuple[Hashable, Hashable]]:
        """True cells above the diagonal of a square relation"""
        if not self.is_square:
            raise ValueError("Edges are defined for square relations only")
        rows, cols = np.nonzero(np.triu(self.cells, k=1))
        return [(self.row_labels[i], self.col_labels[j]) for i, j in zip(rows, cols)]

    def to_graph(self) -> nx.Graph:
        if not self.is_symmetric():
            raise ValueError("Graph export needs a square symmetric relation")
        graph = nx.Graph()
        graph.add_nodes_from(self.row_labels)
        graph.add_edges_from(self.edges())
        return graph

    def submatrix(self, rows: Sequence[Hashable], cols: Sequence[Hashable]) -> 'RelationMatrix':
        for label in rows:
            if label not in self._row_pos:
                raise ValueError(f"Unknown row label {label}")
        for label in cols:
            if label not in self._col_pos:
                raise ValueError(f"Unknown column label {label}")
        ri = [self._row_pos[r] for r in rows]
        ci = [self._col_pos[c] for c in cols]
        return RelationMatrix(rows, cols, self.cells[np.ix_(ri, ci)])

    def relabel(self, mapping: Dict[Hashable, Hashable]) -> 'RelationMatrix':
        return RelationMatrix([mapping[r] for r in self.row_labels],
                              [mapping[c] for c in self.col_labels], self.cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RelationMatrix):
            return NotImplemented
        return (self.row_labels == other.row_labels and self.col_labels == other.col_labels
                and np.array_equal(self.cells, other.cells))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rows': [str(r) for r in self.row_labels],
            'cols': [str(c) for c in self.col_labels],
            'cells': [''.join('+' if v else '-' for v in row) for row in self.cells.tolist()],
        }
