"""Exact and numerical tools for signed random walks whose generator is a
multiple of the iterated discrete Laplacian, their first-passage and exit
laws, and the continuum limits of those laws."""

from .errors import (ArtifactError, DegenerateNodes, DomainError, HorizonTooLarge, MissingValue, NearSingular,
                     SingularMatrix, SingularSchur)
from .walk import Bounds, SignedMeasure, WalkParams, bounds, step_pmf, walk_cdf_closed, walk_pmf_closed

__all__ = [
    "ArtifactError", "DegenerateNodes", "DomainError", "HorizonTooLarge", "MissingValue", "NearSingular",
    "SingularMatrix", "SingularSchur", "Bounds", "SignedMeasure", "WalkParams", "bounds", "step_pmf",
    "walk_cdf_closed", "walk_pmf_closed",
]

__version__ = "0.1.0"
