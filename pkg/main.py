"""
PRGeom: Projective Ring Geometry of Two-Qubit Observables
Main Application Entry Point

An exact toolkit that rebuilds the two-qubit Pauli algebra, Mermin squares,
mutually unbiased bases and the projective lines over GF(2)^n, and checks
how operator commutation matches the distant/neighbour relation.

Author: Development Team
Created: February 2026
"""

from multiprocessing import freeze_support

from src.cli import main


if __name__ == "__main__":
    freeze_support()
    main()
