"""Exact computations for complex hyperplane arrangements: Orlik-Solomon
algebras, Aomoto complexes, Massey products, holonomy Lie algebras and bar
constructions, plus a small numeric layer for iterated integrals."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    braid_arrangement,
    dense_flats,
    esv_check,
    intersection_lattice,
    load_arrangement,
)
from .aomoto import aomoto_cohomology, h1_completion_profile
from .laurent import LaurentElement, laurent_cohomology, laurent_d, laurent_multiply
from .massey import MasseyError, massey_triple
from .orlik_solomon import OSAlgebra, build_os
from .scalar import R, RatFunc, scalar_parse
from .weights import WeightMatrix, WindowBox, load_weight_matrix

__version__ = "0.1.0"
