"""Finite-dimensional modules over Π and Π^op."""

from preproj.modules.base import ModuleRep, RankVector, direct_sum, dual, subquotient
from preproj.modules.constructions import generalized_simple, projective, regular, simple, zero_module
from preproj.modules.homological import (
    ext1,
    hom_dim,
    hom_space,
    in_fac,
    is_projective,
    is_tau_rigid,
    projective_presentation,
    tau,
    tensor_over,
    tor1,
)
from preproj.modules.structure import (
    annihilator,
    is_isomorphic,
    is_locally_free,
    locally_free_rank,
    num_indec_summands,
    radical,
    socle,
)

__all__ = [
    "ModuleRep",
    "RankVector",
    "annihilator",
    "direct_sum",
    "dual",
    "ext1",
    "generalized_simple",
    "hom_dim",
    "hom_space",
    "in_fac",
    "is_isomorphic",
    "is_locally_free",
    "is_projective",
    "is_tau_rigid",
    "locally_free_rank",
    "num_indec_summands",
    "projective",
    "projective_presentation",
    "radical",
    "regular",
    "simple",
    "socle",
    "subquotient",
    "tau",
    "tensor_over",
    "tor1",
    "zero_module",
]
