"""
Render Components
Text tables in the printed row/column layout, DOT graphs and canonical JSON
"""

import json
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.finite_ring import FiniteRing
from src.relations import RelationMatrix
from src.verification_monitor import Report


class RenderComponents:
    """Reusable output builders for the command-line front end"""

    @staticmethod
    def relation_frame(relation: RelationMatrix, flags: Optional[np.ndarray] = None) -> pd.DataFrame:
        """'+'/'-' grid; flagged cells get a trailing '!'"""
        cells = np.where(relation.cells, '+', '-').astype(object)
        if flags is not None:
            cells = np.where(flags, cells + '!', cells)
        return pd.DataFrame(cells, index=[str(r) for r in relation.row_labels],
                            columns=[str(c) for c in relation.col_labels])

    @staticmethod
    def product_frame(rows: Sequence[int], cols: Sequence[int], grid: Sequence[Sequence[Any]]) -> pd.DataFrame:
        """Multiplication table with cells such as '-i14'"""
        return pd.DataFrame([[str(cell) for cell in row] for row in grid],
                            index=[str(r) for r in rows], columns=[str(c) for c in cols])

    @staticmethod
    def ring_frames(ring: FiniteRing) -> Dict[str, pd.DataFrame]:
        """Addition and multiplication tables spelled with element names"""
        add, mul = ring.name_tables()
        names = ring.element_names
        return {
            '+': pd.DataFrame(add, index=names, columns=names),
            'x': pd.DataFrame(mul, index=names, columns=names),
        }

    @staticmethod
    def render_frame(frame: pd.DataFrame, corner: str = '*') -> str:
        frame = frame.copy()
        frame.index.name = corner
        return frame.to_string()

    @staticmethod
    def grid_text(grid: Sequence[Sequence[Any]]) -> str:
        width = max(len(str(cell)) for row in grid for cell in row)
        return '\n'.join('  '.join(str(cell).ljust(width) for cell in row).rstrip() for row in grid)

    @staticmethod
    def export_dot(relation: RelationMatrix, name: str = 'G') -> str:
        """Undirected DOT graph with one edge per true cell above the diagonal"""
        if not relation.is_square:
            raise ValueError("DOT export needs a square relation")
        if not relation.is_symmetric():
            raise ValueError("DOT export needs a symmetric relation with an empty diagonal")
        lines = [f"graph {name} {{"]
        lines.extend(f'  "{label}";' for label in relation.row_labels)
        lines.extend(f'  "{a}" -- "{b}";' for a, b in relation.edges())
        lines.append('}')
        return '\n'.join(lines) + '\n'

    @staticmethod
    def export_json(report: Report) -> str:
        """Canonical JSON: sorted keys, two-space indent"""
        return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + '\n'

    @staticmethod
    def status_line(name: str, passed: bool) -> str:
        return f"{'✅' if passed else '❌'} {name}"

    @staticmethod
    def summary_lines(checks: List[Dict[str, Any]]) -> List[str]:
        lines = [RenderComponents.status_line(entry['name'], entry['passed']) for entry in checks]
        failed = sum(1 for entry in checks if not entry['passed'])
        lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
        return lines
