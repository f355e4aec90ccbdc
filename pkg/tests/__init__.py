# Test package for PRGeom
