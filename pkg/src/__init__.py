# PRGeom Package
# Exact projective ring geometry of two-qubit observables
