"""Finite simplicial complexes: homology, collapses, the combinatorial hierarchy, flips and knots."""

__version__ = "0.1.0"
