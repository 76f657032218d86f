"""Structural invariants of modules: local freeness, isomorphism, annihilators,
socles and summand counts."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from math import isqrt

from sympy import Poly, Symbol

from preproj.algebra.linalg import (
    Echelon,
    Vector,
    axpy,
    dod,
    flatten,
    from_columns,
    from_rows,
    nullspace,
    rank,
)
from preproj.errors import CharacteristicUnsupported, NotFoundError, NotLocallyFreeError, PreprojError
from preproj.modules.base import ModuleRep, RankVector, Subquotient, subquotient
from preproj.modules.homological import hom_dim, hom_space, radical_basis

logger = logging.getLogger(__name__)

__all__ = [
    "SummandCount",
    "annihilator",
    "is_isomorphic",
    "is_locally_free",
    "locally_free_rank",
    "num_indec_summands",
    "radical",
    "socle",
]

DEFAULT_TRIALS = 8
_RANDOM_BOUND = 2**31 - 1


# ─── Local freeness ───────────────────────────────────────────


def locally_free_rank(M: ModuleRep) -> RankVector:
    """Rank vector of a locally free module.

    Freeness at i is decided by c_i·dim ker(ε_i) = dim e_iM and
    cross-checked against the Jordan block sizes of ε_i.
    """
    ranks = []
    for i in range(len(M.dims)):
        view = M.restrict(i)
        sizes = view.block_sizes()
        by_count = view.is_free()
        by_blocks = all(s == view.c for s in sizes)
        if by_count != by_blocks:
            raise PreprojError(
                f"freeness tests disagree at vertex {i+1} of {M.name}",
                vertex=i + 1,
                block_sizes=sizes,
            )
        if not by_count:
            raise NotLocallyFreeError(
                f"{M.name} is not locally free at vertex {i+1} (blocks {sizes}, c={view.c})",
                vertex=i + 1,
                block_sizes=sizes,
            )
        ranks.append(view.kernel_dim())
    return RankVector(tuple(ranks))


def is_locally_free(M: ModuleRep) -> bool:
    try:
        locally_free_rank(M)
    except NotLocallyFreeError:
        return False
    return True


# ─── Isomorphism ──────────────────────────────────────────────


def _invertible(f, dim: int) -> bool:
    return rank(f) == dim


def is_isomorphic(M: ModuleRep, N: ModuleRep, trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    """Decide M ≅ N by searching Hom(M, N) for an invertible element."""
    if M.algebra is not N.algebra:
        return False
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    H = hom_space(M, N)
    if not H.dim:
        return False
    # Hom(M,N), Hom(M,M), Hom(N,M), Hom(N,N) all agree when M ≅ N
    if hom_dim(M, M) != H.dim or hom_dim(N, M) != H.dim or hom_dim(N, N) != H.dim:
        return False

    field = M.field
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = {k: field(rng.randint(1, _RANDOM_BOUND)) for k in range(H.dim)}
        if _invertible(H.combination(coeffs), M.dim):
            return True

    logger.debug("No invertible map in %d random trials for %s → %s; sweeping", trials, M.name, N.name)
    for t in range(trials * H.dim + 1):
        coeffs = {k: field(t) ** k for k in range(H.dim)}
        if _invertible(H.combination(coeffs), M.dim):
            return True
    return False


# ─── Annihilators, radicals, socles ───────────────────────────


def annihilator(M: ModuleRep) -> Echelon:
    """{a ∈ A : a·M = 0} in algebra coordinates."""
    A = M.algebra
    if M.is_zero():
        return Echelon.span([{b: A.field.one} for b in range(A.dim)], A.dim, A.field)
    cols = [flatten(M.action(b)) for b in range(A.dim)]
    system = from_columns(cols, M.dim * M.dim, A.field)
    return Echelon.span(nullspace(system, A.field), A.dim, A.field)


def radical(M: ModuleRep) -> Subquotient:
    vectors: list[Vector] = []
    for i, R in enumerate(radical_basis(M)):
        o = M.offsets[i]
        vectors.extend({o + k: c for k, c in row.items()} for row in R.rows)
    return subquotient(M, (), vectors, name=f"rad {M.name}")


def socle(M: ModuleRep) -> Subquotient:
    """{m : rad·m = 0}: vectors killed by every arrow leaving their vertex."""
    A = M.algebra
    vectors: list[Vector] = []
    for i in range(len(M.dims)):
        d = M.dims[i]
        if not d:
            continue
        rows: list[Vector] = []
        for arrow in A.presentation.arrows:
            a = arrow.index
            if A.arrow_source(a) == i and M.dims[A.arrow_target(a)]:
                rows.extend(r for r in dod(M.maps[a]).values())
        if rows:
            local = nullspace(from_rows(rows, d, M.field), M.field)
        else:
            local = [{k: M.field.one} for k in range(d)]
        o = M.offsets[i]
        vectors.extend({o + k: c for k, c in v.items()} for v in local)
    return subquotient(M, (), vectors, name=f"soc {M.name}")


# ─── Summand counting ─────────────────────────────────────────


@dataclass(frozen=True)
class SummandCount:
    """Indecomposable summands with multiplicity, and without."""
    total: int
    basic: int


def _trace(f) -> object:
    entries = dod(f)
    out = None
    for i, row in entries.items():
        v = row.get(i)
        if v:
            out = v if out is None else out + v
    return out


def num_indec_summands(M: ModuleRep, seed: int = 0, attempts: int = 12) -> SummandCount:
    """Count summands from End(M)/rad End(M) ≅ ∏ Mat_{n_k}(K).

    The radical is the kernel of the trace form tr(xy) on End(M) ⊂ End_K(M),
    valid in characteristic 0 or above dim M.
    """
    if M.is_zero():
        return SummandCount(0, 0)
    field = M.field
    p = field.characteristic
    if p and p <= M.dim:
        raise CharacteristicUnsupported(
            f"trace-form radical needs characteristic 0 or > {M.dim}", characteristic=p
        )

    E = hom_space(M, M)
    h = E.dim
    products = {(i, j): E.maps[i].matmul(E.maps[j]) for i in range(h) for j in range(h)}
    gram = [[_trace(products[(i, j)]) or field.zero for j in range(h)] for i in range(h)]
    gram_m = from_rows([{j: v for j, v in enumerate(row) if v} for row in gram], h, field)
    rad = Echelon.span(nullspace(gram_m, field), h, field)
    quotient_cols = rad.free_columns()
    s = len(quotient_cols)

    def reduce(x: Vector) -> Vector:
        y = rad.reduce(x)
        return {m: y[q] for m, q in enumerate(quotient_cols) if y.get(q)}

    mult = {
        (m, n): reduce(E.coordinates(products[(qm, qn)]))
        for m, qm in enumerate(quotient_cols)
        for n, qn in enumerate(quotient_cols)
    }

    # centre of the semisimple quotient
    eqs: list[Vector] = []
    for n in range(s):
        for coord in range(s):
            row: Vector = {}
            for m in range(s):
                c = mult[(m, n)].get(coord)
                d = mult[(n, m)].get(coord)
                v = (c or field.zero) - (d or field.zero)
                if v:
                    row[m] = v
            if row:
                eqs.append(row)
    centre = nullspace(from_rows(eqs, s, field), field) if eqs else [{m: field.one} for m in range(s)]
    blocks = len(centre)
    if blocks == 1:
        return SummandCount(isqrt(s), 1)

    rng = random.Random(seed)
    t = Symbol("t")
    for _ in range(attempts):
        z: Vector = {}
        for v in centre:
            axpy(z, field(rng.randint(1, _RANDOM_BOUND)), v)
        cols = []
        for n in range(s):
            col: Vector = {}
            for m, c in z.items():
                axpy(col, c, mult[(m, n)])
            cols.append(col)
        charpoly = from_columns(cols, s, field).to_dense().charpoly()
        coeffs = [field.domain.to_sympy(c) for c in charpoly]
        poly = Poly(coeffs, t, modulus=p) if p else Poly(coeffs, t, domain="QQ")
        _, factors = poly.factor_list()
        if len(factors) == blocks and all(f.degree() == 1 for f, _ in factors):
            sizes = [isqrt(mult_k) for _, mult_k in factors]
            return SummandCount(sum(sizes), blocks)
    raise NotFoundError(f"no separating central element found for End({M.name})", blocks=blocks)
