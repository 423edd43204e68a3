"""Exact Hopf-cyclic cohomology computations for presented Hopf algebras."""

__version__ = "0.1.0"
