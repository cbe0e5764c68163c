"""Exact-arithmetic invariants of quasi-homogeneous curve singularities.

Weight spectra of the scaling action on pluricanonical sections, characters,
alpha-invariants and slopes attached to zero-order tuples of differentials,
together with the singularity side: numerical semigroups, graded branch
algebras, delta invariants, conductors and Gorenstein tests.
"""

__version__ = "0.1.0"
