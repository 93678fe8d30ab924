"""Localization observables for positive-energy free Dirac and Klein-Gordon particles."""
from .kernels import BACKEND
from .lattice import ComplexField, Lattice, PhysicalParams, make_lattice

__version__ = "0.1.0"
__all__ = ["BACKEND", "ComplexField", "Lattice", "PhysicalParams", "make_lattice", "__version__"]
