"""Path-algebra quotients: rewriting, assembly, caching."""

from preproj.algebra.core import FinDimAlgebra, assemble, check_relations, opposite
from preproj.algebra.linalg import Field
from preproj.algebra.rewriting import RewriteSystem, complete

__all__ = [
    "Field",
    "FinDimAlgebra",
    "RewriteSystem",
    "assemble",
    "check_relations",
    "complete",
    "opposite",
]
