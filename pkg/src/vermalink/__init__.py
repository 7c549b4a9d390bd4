"""HOMFLY-PT values via Verma modules, floating-dot KLR algebras and
triply graded link homology of braid closures."""
