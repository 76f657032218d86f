"""Standard modules: regular, projective, simple, generalized simple, ideals."""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Any, Iterable, Mapping

from sympy.polys.matrices import DomainMatrix

from preproj.algebra.core import FinDimAlgebra
from preproj.algebra.linalg import Vector, from_columns, from_dod
from preproj.modules.base import ModuleRep, subquotient

logger = logging.getLogger(__name__)


def _tag(A: FinDimAlgebra, base: str, i: int) -> str:
    return f"{base}'{i+1}" if A.is_opposite else f"{base}{i+1}"


@lru_cache(maxsize=None)
def regular(A: FinDimAlgebra) -> ModuleRep:
    """A as a left module over itself (right multiplication for Π^op)."""
    order = sorted(range(A.dim), key=lambda b: (A.target(b), b))
    position: dict[int, int] = {}
    dims = [0] * A.n
    for b in order:
        position[b] = dims[A.target(b)]
        dims[A.target(b)] += 1

    maps: dict[int, DomainMatrix] = {}
    for arrow in A.presentation.arrows:
        a = arrow.index
        s, t = A.arrow_source(a), A.arrow_target(a)
        g = A.generator(a)
        cols = []
        for b in A.with_target(s):
            prod = A.multiply(g, {b: A.field.one})
            cols.append({position[k]: c for k, c in prod.items()})
        maps[a] = from_columns(cols, dims[t], A.field)

    elements = [{b: A.field.one} for b in order]
    return ModuleRep(A, tuple(dims), maps, name=A.name, elements=elements, check=False)


def to_regular(A: FinDimAlgebra, x: Mapping[int, Any]) -> Vector:
    """Algebra coordinates → global coordinates of regular(A)."""
    index = _regular_index(A)
    return {index[b]: c for b, c in x.items()}


@lru_cache(maxsize=None)
def _regular_index(A: FinDimAlgebra) -> dict[int, int]:
    R = regular(A)
    return {next(iter(x)): g for g, x in enumerate(R.elements)}


def element_positions(M: ModuleRep) -> dict[int, int]:
    """Algebra basis index → basis vector, for modules spanned by basis words."""
    if M.elements is None:
        raise ValueError(f"{M.name} is not realized inside the algebra")
    out = {}
    for g, x in enumerate(M.elements):
        if len(x) != 1:
            raise ValueError(f"{M.name} is not spanned by basis words")
        (b, c), = x.items()
        out[b] = g
    return out


@lru_cache(maxsize=None)
def projective(A: FinDimAlgebra, i: int) -> ModuleRep:
    """Ae_i: the basis words with source i."""
    units = [to_regular(A, {b: A.field.one}) for b in A.with_source(i)]
    name = f"e{i+1}Π" if A.is_opposite else f"Πe{i+1}"
    return subquotient(regular(A), (), units, name=name).module


def zero_module(A: FinDimAlgebra) -> ModuleRep:
    return ModuleRep(A, (0,) * A.n, name="0", elements=[], check=False)


def simple(A: FinDimAlgebra, i: int) -> ModuleRep:
    dims = tuple(int(k == i) for k in range(A.n))
    return ModuleRep(A, dims, name=_tag(A, "S", i))


def generalized_simple(A: FinDimAlgebra, i: int) -> ModuleRep:
    """H_i at vertex i, the loop acting as one nilpotent Jordan block."""
    c = A.presentation.cartan.D[i]
    dims = tuple(c if k == i else 0 for k in range(A.n))
    one = A.field.one
    jordan = from_dod({k + 1: {k: one} for k in range(c - 1)}, c, c, A.field)
    return ModuleRep(A, dims, {A.presentation.loop(i): jordan}, name=_tag(A, "E", i))


def ideal_module(A: FinDimAlgebra, vectors: Iterable[Mapping[int, Any]], name: str = "I") -> ModuleRep:
    """A left ideal (given by algebra vectors) as a module."""
    return subquotient(regular(A), (), [to_regular(A, v) for v in vectors], name=name).module


def quotient_module(A: FinDimAlgebra, vectors: Iterable[Mapping[int, Any]], name: str = "Π/I") -> ModuleRep:
    """A/I for a left ideal I."""
    return subquotient(regular(A), [to_regular(A, v) for v in vectors], None, name=name).module
