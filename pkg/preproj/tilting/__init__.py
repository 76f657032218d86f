"""Ideals I_w and the support τ-tilting lattice."""

from preproj.tilting.ideals import IdealCalculus, IdealSubspace, ideal_of_weyl, ideal_product, idempotent_ideal
from preproj.tilting.lattice import (
    SttiltLattice,
    SttiltNode,
    itrigid_set,
    mutation_check,
    sttilt_lattice,
    torsion_pair_report,
)

__all__ = [
    "IdealCalculus",
    "IdealSubspace",
    "SttiltLattice",
    "SttiltNode",
    "ideal_of_weyl",
    "ideal_product",
    "idempotent_ideal",
    "itrigid_set",
    "mutation_check",
    "sttilt_lattice",
    "torsion_pair_report",
]
