"""Hom spaces, projective presentations and the derived functors built on them.

Every projective here is a direct sum of indecomposables Ae_v. A map
between two such sums is determined by where it sends the generators
e_v, i.e. by algebra elements x_kl ∈ e_{u_l} A e_{v_k}; Hom(−, N),
−⊗N and the Nakayama functor are all read off from those elements.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Mapping

from sympy.polys.matrices import DomainMatrix

from preproj.algebra.core import FinDimAlgebra
from preproj.algebra.linalg import (
    Echelon,
    Vector,
    axpy,
    columns_of,
    dod,
    from_columns,
    from_dod,
    kernel_basis,
    rank,
    zeros,
)
from preproj.errors import PreprojError
from preproj.modules.base import DirectSum, ModuleRep, direct_sum, dual, kernel
from preproj.modules.constructions import element_positions, projective, zero_module

logger = logging.getLogger(__name__)


# ─── Hom ──────────────────────────────────────────────────────


@dataclass
class HomSpace:
    """Basis of Hom(M, N) as global matrices (N.dim × M.dim).

    Basis map k has a 1 at ``positions[k]`` where every other basis map
    is 0, so a homomorphism's coordinates are its entries there.
    """
    source: ModuleRep
    target: ModuleRep
    maps: list[DomainMatrix]
    positions: list[tuple[int, int]]

    @property
    def dim(self) -> int:
        return len(self.maps)

    def coordinates(self, f: DomainMatrix) -> Vector:
        entries = dod(f)
        out: Vector = {}
        for k, (r, c) in enumerate(self.positions):
            v = entries.get(r, {}).get(c)
            if v:
                out[k] = v
        return out

    def combination(self, coeffs: Mapping[int, Any]) -> DomainMatrix:
        out = zeros(self.target.dim, self.source.dim, self.source.field)
        for k, c in coeffs.items():
            if c:
                out = out + self.maps[k].mul(c)
        return out


def _check_same_algebra(M: ModuleRep, N: ModuleRep) -> None:
    if M.algebra is not N.algebra:
        raise PreprojError(f"{M.name} and {N.name} are modules over different algebras")


def hom_space(M: ModuleRep, N: ModuleRep) -> HomSpace:
    """Solve N_a f_s = f_t M_a for every arrow a, with f = (f_i) per vertex."""
    _check_same_algebra(M, N)
    A = M.algebra
    field = M.field
    base: list[int] = []
    acc = 0
    for i in range(A.n):
        base.append(acc)
        acc += N.dims[i] * M.dims[i]
    nvars = acc

    def var(i: int, r: int, c: int) -> int:
        return base[i] + r * M.dims[i] + c

    rows: list[Vector] = []
    for arrow in A.presentation.arrows:
        a = arrow.index
        s, t = A.arrow_source(a), A.arrow_target(a)
        ms, nt = M.dims[s], N.dims[t]
        if not ms or not nt:
            continue
        Na = dod(N.maps[a])
        Ma_cols = columns_of(M.maps[a])
        for r in range(nt):
            na_row = Na.get(r, {})
            for c in range(ms):
                eq: Vector = {}
                for k, v in na_row.items():
                    axpy(eq, v, {var(s, k, c): field.one})
                for k, v in Ma_cols[c].items():
                    axpy(eq, -v, {var(t, r, k): field.one})
                if eq:
                    rows.append(eq)

    system = from_dod(dict(enumerate(rows)), len(rows), nvars, field)
    basis, free = kernel_basis(system, field)

    def entry(x: int) -> tuple[int, int]:
        i = max(k for k in range(A.n) if base[k] <= x and (N.dims[k] * M.dims[k]))
        r, c = divmod(x - base[i], M.dims[i])
        return N.offsets[i] + r, M.offsets[i] + c

    maps = []
    for v in basis:
        entries: dict[int, dict[int, Any]] = {}
        for x, c in v.items():
            r, col = entry(x)
            entries.setdefault(r, {})[col] = c
        maps.append(from_dod(entries, N.dim, M.dim, field))
    return HomSpace(M, N, maps, [entry(f) for f in free])


def hom_dim(M: ModuleRep, N: ModuleRep) -> int:
    return hom_space(M, N).dim


# ─── Projective covers and presentations ──────────────────────


@dataclass
class ProjectiveSum:
    """⊕_k Ae_{v_k}, with generator e_{v_k} of each summand."""
    parts: DirectSum
    vertices: list[int]

    @property
    def module(self) -> ModuleRep:
        return self.parts.module

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def generator(self, k: int) -> int:
        v = self.vertices[k]
        local = element_positions(self.parts.summands[k])[v]
        return self.parts.embeddings[k][local]

    def as_element(self, k: int, v: Mapping[int, Any]) -> Vector:
        """Component of v in summand k, as an element of the algebra."""
        summand = self.parts.summands[k]
        out: Vector = {}
        for g, c in self.parts.component(k, v).items():
            axpy(out, c, summand.elements[g])
        return out

    def place(self, k: int, x: Mapping[int, Any]) -> Vector:
        """Algebra element x ∈ Ae_{v_k} as a vector of the sum."""
        pos = element_positions(self.parts.summands[k])
        return self.parts.embed(k, {pos[b]: c for b, c in x.items()})


def projective_sum(A: FinDimAlgebra, vertices: list[int]) -> ProjectiveSum:
    if not vertices:
        zero = zero_module(A)
        return ProjectiveSum(DirectSum(zero, [], []), [])
    parts = direct_sum([projective(A, v) for v in vertices])
    return ProjectiveSum(parts, list(vertices))


def generator_images(d: DomainMatrix, src: ProjectiveSum, tgt: ProjectiveSum) -> list[list[Vector]]:
    """images[l][k] = x_kl, the summand-k component of d(e_{u_l})."""
    cols = columns_of(d)
    return [
        [tgt.as_element(k, cols[src.generator(l)]) for k in range(tgt.rank)]
        for l in range(src.rank)
    ]


def radical_basis(M: ModuleRep) -> list[Echelon]:
    """Per vertex, the echelon basis of (rad M)_i = Σ images of arrows."""
    vectors = []
    for a in M.maps:
        vectors.extend(columns_of(M.arrow_matrix(a)))
    out = []
    for i in range(len(M.dims)):
        o, d = M.offsets[i], M.dims[i]
        local = [{g - o: c for g, c in v.items() if o <= g < o + d} for v in vectors]
        out.append(Echelon.span(local, d, M.field))
    return out


@dataclass
class Cover:
    projective: ProjectiveSum
    map: DomainMatrix
    top: list[Vector]


def projective_cover(M: ModuleRep) -> Cover:
    """Minimal P → M lifting the top; generators are standard basis vectors
    outside the radical's pivot columns."""
    A = M.algebra
    top: list[Vector] = []
    vertices: list[int] = []
    for i, R in enumerate(radical_basis(M)):
        for c in R.free_columns():
            top.append({M.offsets[i] + c: M.field.one})
            vertices.append(i)
    P = projective_sum(A, vertices)
    cols: list[Vector] = [{} for _ in range(P.module.dim)]
    for k, m in enumerate(top):
        summand = P.parts.summands[k]
        for g, x in enumerate(summand.elements):
            (b, _), = x.items()
            cols[P.parts.embeddings[k][g]] = M.act_on(b, m)
    return Cover(P, from_columns(cols, M.dim, M.field), top)


@dataclass
class Presentation:
    """P2 → P1 → P0 → M → 0 with minimal covers at each step."""
    module: ModuleRep
    P0: ProjectiveSum
    P1: ProjectiveSum
    P2: ProjectiveSum
    d0: DomainMatrix
    d1: DomainMatrix
    d2: DomainMatrix


def _next_step(P: ProjectiveSum, d: DomainMatrix) -> tuple[ProjectiveSum, DomainMatrix]:
    K = kernel(d, P.module)
    cover = projective_cover(K.module)
    if not cover.projective.rank:
        return cover.projective, zeros(P.module.dim, 0, P.module.field)
    return cover.projective, K.lift_matrix().matmul(cover.map)


def projective_presentation(M: ModuleRep) -> Presentation:
    c0 = projective_cover(M)
    P1, d1 = _next_step(c0.projective, c0.map)
    P2, d2 = _next_step(P1, d1)
    logger.debug("Presentation of %s: ranks %d, %d, %d", M.name, c0.projective.rank, P1.rank, P2.rank)
    return Presentation(M, c0.projective, P1, P2, c0.map, d1, d2)


def is_projective(M: ModuleRep) -> bool:
    return projective_presentation(M).P1.rank == 0


# ─── Induced maps ─────────────────────────────────────────────


def _induced(
    images: list[list[Vector]],
    row_vertices: list[int],
    col_vertices: list[int],
    N: ModuleRep,
    rows_are_sources: bool,
) -> DomainMatrix:
    """Block matrix with block (row r, col c) = N acting by x, between vertex blocks.

    For Hom(−, N) rows run over the source summands of d; for −⊗N rows
    run over the target summands.
    """
    field = N.field
    row_off, acc = [], 0
    for v in row_vertices:
        row_off.append(acc)
        acc += N.dims[v]
    nrows = acc
    col_off, acc = [], 0
    for v in col_vertices:
        col_off.append(acc)
        acc += N.dims[v]
    ncols = acc

    entries: dict[int, dict[int, Any]] = {}
    for l, row in enumerate(images):
        for k, x in enumerate(row):
            if not x:
                continue
            r_idx, c_idx = (l, k) if rows_are_sources else (k, l)
            rv, cv = row_vertices[r_idx], col_vertices[c_idx]
            rb, cb = N.block(rv), N.block(cv)
            for r, vals in dod(N.act(x)).items():
                if r not in rb:
                    continue
                for c, v in vals.items():
                    if c in cb:
                        entries.setdefault(row_off[r_idx] + r - rb.start, {})[col_off[c_idx] + c - cb.start] = v
    return from_dod(entries, nrows, ncols, field)


def _hom_induced(d: DomainMatrix, src: ProjectiveSum, tgt: ProjectiveSum, N: ModuleRep) -> DomainMatrix:
    """Hom(d, N): Hom(tgt, N) → Hom(src, N), with Hom(Ae_v, N) = e_vN."""
    return _induced(generator_images(d, src, tgt), src.vertices, tgt.vertices, N, rows_are_sources=True)


def _tensor_induced(d: DomainMatrix, src: ProjectiveSum, tgt: ProjectiveSum, N: ModuleRep) -> DomainMatrix:
    """d ⊗ N: src ⊗ N → tgt ⊗ N, with e_vA ⊗ N = e_vN."""
    return _induced(generator_images(d, src, tgt), tgt.vertices, src.vertices, N, rows_are_sources=False)


def _hom_rank(P: ProjectiveSum, N: ModuleRep) -> int:
    return sum(N.dims[v] for v in P.vertices)


# ─── Derived functors ─────────────────────────────────────────


def ext1(M: ModuleRep, N: ModuleRep, presentation: Presentation | None = None) -> int:
    """dim Ext¹(M, N) from Hom(P0,N) → Hom(P1,N) → Hom(P2,N)."""
    _check_same_algebra(M, N)
    pres = presentation or projective_presentation(M)
    if not pres.P1.rank:
        return 0
    h1 = _hom_induced(pres.d1, pres.P1, pres.P0, N)
    cycles = _hom_rank(pres.P1, N)
    if pres.P2.rank:
        cycles -= rank(_hom_induced(pres.d2, pres.P2, pres.P1, N))
    return cycles - rank(h1)


def tensor_over(M: ModuleRep, N: ModuleRep) -> int:
    """dim M ⊗_A N for a right module M (over A^op) and left module N."""
    if M.algebra is not N.algebra.opposite():
        raise PreprojError(f"{M.name} must be a right module over the algebra of {N.name}")
    A = N.algebra
    field = N.field
    offsets, acc = [], 0
    for i in range(A.n):
        offsets.append(acc)
        acc += M.dims[i] * N.dims[i]
    total = acc

    def idx(i: int, m: int, n: int) -> int:
        return offsets[i] + m * N.dims[i] + n

    relators: list[Vector] = []
    for arrow in A.presentation.arrows:
        a = arrow.index
        s, t = arrow.source, arrow.target
        if not M.dims[t] or not N.dims[s]:
            continue
        Ma = columns_of(M.maps[a])  # m ↦ m·a, block t → s
        Na = columns_of(N.maps[a])  # n ↦ a·n, block s → t
        for m in range(M.dims[t]):
            for n in range(N.dims[s]):
                rel: Vector = {}
                for p, v in Ma[m].items():
                    axpy(rel, v, {idx(s, p, n): field.one})
                for q, v in Na[n].items():
                    axpy(rel, -v, {idx(t, m, q): field.one})
                if rel:
                    relators.append(rel)
    return total - Echelon.span(relators, total, field).dim


def tor1(M: ModuleRep, N: ModuleRep) -> int:
    """dim Tor₁(M, N) from the presentation of the right module M tensored with N."""
    if M.algebra is not N.algebra.opposite():
        raise PreprojError(f"{M.name} must be a right module over the algebra of {N.name}")
    pres = projective_presentation(M)
    if not pres.P1.rank:
        return 0
    t1 = _tensor_induced(pres.d1, pres.P1, pres.P0, N)
    cycles = _hom_rank(pres.P1, N) - rank(t1)
    if pres.P2.rank:
        cycles -= rank(_tensor_induced(pres.d2, pres.P2, pres.P1, N))
    return cycles


def tau(M: ModuleRep) -> ModuleRep:
    """Auslander–Reiten translate: ker(νP1 → νP0) with ν = D Hom(−, A)."""
    A = M.algebra
    pres = projective_presentation(M)
    if not pres.P1.rank:
        return zero_module(A)
    Aop = A.opposite()
    H0 = projective_sum(Aop, pres.P0.vertices)  # Hom(P0, A) = ⊕ e_v A
    H1 = projective_sum(Aop, pres.P1.vertices)
    images = generator_images(pres.d1, pres.P1, pres.P0)

    cols: list[Vector] = [{} for _ in range(H0.module.dim)]
    for k in range(H0.rank):
        summand = H0.parts.summands[k]
        for g, y in enumerate(summand.elements):
            out: Vector = {}
            for l in range(H1.rank):
                z = A.multiply(images[l][k], y)
                if z:
                    axpy(out, A.field.one, H1.place(l, z))
            cols[H0.parts.embeddings[k][g]] = out
    phi = from_columns(cols, H1.module.dim, A.field)

    nu_d1 = phi.transpose()  # D(H1) → D(H0)
    result = kernel(nu_d1, dual(H1.module), name=f"τ{M.name}").module
    logger.debug("τ(%s) has dims %s", M.name, result.dims)
    return result


def is_tau_rigid(M: ModuleRep) -> bool:
    if M.is_zero():
        return True
    return hom_dim(M, tau(M)) == 0


def in_fac(X: ModuleRep, T: ModuleRep) -> bool:
    """X is a quotient of a finite sum of copies of T."""
    _check_same_algebra(X, T)
    if X.is_zero():
        return True
    return trace(T, X).dim == X.dim


def trace(T: ModuleRep, X: ModuleRep) -> Echelon:
    """Sum of images of all maps T → X."""
    H = hom_space(T, X)
    columns: list[Vector] = []
    for f in H.maps:
        columns.extend(c for c in columns_of(f) if c)
    return Echelon.span(columns, X.dim, X.field)
