"""Module representations over a finite-dimensional path-algebra quotient.

A ``ModuleRep`` stores one vector space per vertex and one block matrix
per arrow, of shape ``dims[target] × dims[source]`` in the orientation of
its algebra. Modules over ``A.opposite()`` are right A-modules.

Elements are sparse vectors in the global basis, which lists vertex 0's
space first, then vertex 1's, and so on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping

from sympy.polys.matrices import DomainMatrix

from preproj.algebra.core import FinDimAlgebra
from preproj.algebra.linalg import (
    Echelon,
    Field,
    Vector,
    apply,
    axpy,
    columns_of,
    dod,
    eye,
    from_columns,
    from_dod,
    is_zero_matrix,
    nullspace,
    quotient_basis,
    rank,
    zeros,
)
from preproj.algebra.paths import Word
from preproj.errors import PreprojError, RelationViolation

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class ModuleRep:
    """A finite-dimensional left module over ``algebra``.

    ``elements`` optionally records, per basis vector, an algebra element
    representing it (set for modules cut out of the regular module).
    """
    algebra: FinDimAlgebra
    dims: tuple[int, ...]
    maps: dict[int, DomainMatrix] = field(default_factory=dict)
    name: str = "M"
    elements: list[Vector] | None = None
    check: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        A = self.algebra
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != A.n:
            raise PreprojError(f"module {self.name} has {len(self.dims)} vertex spaces, expected {A.n}")
        for arrow in A.presentation.arrows:
            a = arrow.index
            shape = (self.dims[A.arrow_target(a)], self.dims[A.arrow_source(a)])
            block = self.maps.get(a)
            if block is None:
                self.maps[a] = zeros(*shape, self.field)
            elif block.shape != shape:
                raise PreprojError(
                    f"arrow {arrow.label} of {self.name} has shape {block.shape}, expected {shape}",
                    arrow=arrow.name,
                )
        self._actions: dict[int, DomainMatrix] = {}
        if self.check:
            self.check_relations()

    # ─── Shape ─────────────────────────────────────────────────

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def side(self) -> str:
        return "right" if self.algebra.is_opposite else "left"

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def block(self, i: int) -> range:
        return range(self.offsets[i], self.offsets[i] + self.dims[i])

    def is_zero(self) -> bool:
        return self.dim == 0

    def support(self) -> list[int]:
        return [i for i, d in enumerate(self.dims) if d]

    # ─── Action ────────────────────────────────────────────────

    def _word_block(self, word: Word) -> DomainMatrix | None:
        """Block matrix of a presentation word, or None if it factors through 0."""
        A = self.algebra
        factors = list(reversed(word)) if A.is_opposite else list(word)
        for a in factors:
            if not self.dims[A.arrow_source(a)] or not self.dims[A.arrow_target(a)]:
                return None
        out = self.maps[factors[0]]
        for a in factors[1:]:
            out = out.matmul(self.maps[a])
        return out

    def check_relations(self) -> None:
        K = self.field.domain
        for relation in self.algebra.presentation.relations:
            total: DomainMatrix | None = None
            for coeff, word in relation.terms:
                block = self._word_block(word)
                if block is None:
                    continue
                term = block.mul(K(coeff))
                total = term if total is None else total + term
            if total is not None and not is_zero_matrix(total):
                raise RelationViolation(
                    f"relation {relation.name} does not act as zero on {self.name}",
                    relation=relation.name,
                    module=self.name,
                )

    @cached_property
    def _global_arrows(self) -> dict[int, DomainMatrix]:
        A = self.algebra
        out = {}
        for a, block in self.maps.items():
            so, to = self.offsets[A.arrow_source(a)], self.offsets[A.arrow_target(a)]
            shifted = {to + r: {so + c: v for c, v in row.items()} for r, row in dod(block).items()}
            out[a] = from_dod(shifted, self.dim, self.dim, self.field)
        return out

    def arrow_matrix(self, a: int) -> DomainMatrix:
        """Action of arrow a on the global basis."""
        return self._global_arrows[a]

    def action(self, b: int) -> DomainMatrix:
        """Action of algebra basis element b on the global basis."""
        cached = self._actions.get(b)
        if cached is not None:
            return cached
        A = self.algebra
        if A.basis[b].is_idempotent:
            i = A.source(b)
            out = from_dod({g: {g: self.field.one} for g in self.block(i)}, self.dim, self.dim, self.field)
        else:
            factors = A.factors(b)
            out = self.arrow_matrix(factors[0])
            for a in factors[1:]:
                out = out.matmul(self.arrow_matrix(a))
        self._actions[b] = out
        return out

    def act(self, x: Mapping[int, Any]) -> DomainMatrix:
        """Action of an algebra element."""
        out = zeros(self.dim, self.dim, self.field)
        for b, c in x.items():
            out = out + self.action(b).mul(c)
        return out

    def act_on(self, b: int, v: Mapping[int, Any]) -> Vector:
        """b·v without forming the full action matrix."""
        A = self.algebra
        if A.basis[b].is_idempotent:
            block = self.block(A.source(b))
            return {g: c for g, c in v.items() if g in block}
        out = dict(v)
        for a in reversed(A.factors(b)):
            out = apply(self.arrow_matrix(a), out)
            if not out:
                break
        return out

    # ─── Views ─────────────────────────────────────────────────

    def restrict(self, i: int) -> HiModuleView:
        """e_iM as a module over the truncated polynomial ring at i."""
        loop = self.algebra.presentation.loop(i)
        return HiModuleView(i, self.maps[loop], self.algebra.presentation.cartan.D[i])

    def to_dict(self) -> dict[str, Any]:
        arrows = self.algebra.presentation.arrows
        maps = {}
        for a, block in sorted(self.maps.items()):
            rows, cols = block.shape
            if not rows or not cols:
                continue
            entries = dod(block)
            maps[arrows[a].name] = [
                [self.field.to_json(entries.get(r, {}).get(c, self.field.zero)) for c in range(cols)]
                for r in range(rows)
            ]
        return {"name": self.name, "side": self.side, "dims": list(self.dims), "maps": maps}

    def __repr__(self) -> str:
        return f"ModuleRep({self.name}, dims={self.dims}, {self.side})"


@dataclass
class HiModuleView:
    """Action of the loop at one vertex on e_iM."""
    vertex: int
    matrix: DomainMatrix
    c: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def kernel_dim(self) -> int:
        return self.dim - rank(self.matrix)

    def is_free(self) -> bool:
        return self.c * self.kernel_dim() == self.dim

    def block_sizes(self) -> list[int]:
        """Jordan block sizes of the nilpotent action, largest first."""
        n = self.dim
        if not n:
            return []
        ranks = [n]
        power = self.matrix
        while ranks[-1]:
            ranks.append(rank(power))
            if len(ranks) > n + 1:
                raise PreprojError("loop action is not nilpotent", vertex=self.vertex)
            power = power.matmul(self.matrix)
        # blocks of size ≥ j: ranks[j-1] - ranks[j]
        at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
        sizes: list[int] = []
        for j in range(len(at_least), 0, -1):
            exact = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
            sizes.extend([j] * exact)
        return sizes


@dataclass(frozen=True)
class RankVector:
    r: tuple[int, ...]

    def __iter__(self):
        return iter(self.r)

    def __getitem__(self, i: int) -> int:
        return self.r[i]

    def dims(self, D: Iterable[int]) -> tuple[int, ...]:
        return tuple(c * r for c, r in zip(D, self.r))


# ─── Subquotients ─────────────────────────────────────────────


@dataclass
class Subquotient:
    """span(ambient)/span(sub) inside a module, as a module.

    ``lift[k]`` is a representative in the ambient module of new basis
    vector k; ``coordinates`` maps ambient vectors to the new basis.
    """
    module: ModuleRep
    parent: ModuleRep
    lift: list[Vector]
    _sub: list[Echelon]
    _quot: list[Echelon]

    def coordinates(self, v: Mapping[int, Any]) -> Vector:
        P, M = self.parent, self.module
        out: Vector = {}
        for i in range(len(P.dims)):
            local = _local(v, P, i)
            if not local:
                continue
            y = self._sub[i].reduce(local)
            for k, c in self._quot[i].coordinates(y).items():
                out[M.offsets[i] + k] = c
        return out

    def lift_matrix(self) -> DomainMatrix:
        """Parent-dim × module-dim matrix of the representatives."""
        return from_columns(self.lift, self.parent.dim, self.parent.field)


def _local(v: Mapping[int, Any], M: ModuleRep, i: int) -> Vector:
    o = M.offsets[i]
    d = M.dims[i]
    return {g - o: c for g, c in v.items() if o <= g < o + d}


def subquotient(
    M: ModuleRep,
    sub: Iterable[Mapping[int, Any]] = (),
    ambient: Iterable[Mapping[int, Any]] | None = None,
    name: str | None = None,
) -> Subquotient:
    """Build span(ambient)/span(sub); both must be submodules of M."""
    field_ = M.field
    sub = list(sub)
    amb = None if ambient is None else list(ambient)
    subs: list[Echelon] = []
    quots: list[Echelon] = []
    for i, d in enumerate(M.dims):
        S = Echelon.span((_local(v, M, i) for v in sub), d, field_)
        if amb is None:
            U = [{k: field_.one} for k in range(d)]
        else:
            U = [_local(v, M, i) for v in amb]
        quots.append(quotient_basis(S, U))
        subs.append(S)

    dims = tuple(Q.dim for Q in quots)
    A = M.algebra
    maps: dict[int, DomainMatrix] = {}
    for arrow in A.presentation.arrows:
        a = arrow.index
        s, t = A.arrow_source(a), A.arrow_target(a)
        if not dims[s] or not dims[t]:
            continue
        cols = []
        for x in quots[s].rows:
            y = subs[t].reduce(apply(M.maps[a], x))
            if quots[t].reduce(y):
                raise RelationViolation(
                    f"subspace of {M.name} is not closed under {arrow.label}", arrow=arrow.name
                )
            cols.append(quots[t].coordinates(y))
        maps[a] = from_columns(cols, dims[t], field_)

    lift: list[Vector] = []
    for i, Q in enumerate(quots):
        o = M.offsets[i]
        lift.extend({o + k: c for k, c in row.items()} for row in Q.rows)

    elements = None
    if M.elements is not None:
        elements = []
        for v in lift:
            x: Vector = {}
            for g, c in v.items():
                axpy(x, c, M.elements[g])
            elements.append(x)

    module = ModuleRep(A, dims, maps, name=name or f"{M.name}'", elements=elements, check=False)
    return Subquotient(module, M, lift, subs, quots)


# ─── Direct sums ──────────────────────────────────────────────


@dataclass
class DirectSum:
    """A direct sum with the positions of each summand's basis in the sum."""
    module: ModuleRep
    summands: list[ModuleRep]
    embeddings: list[list[int]]

    def inclusion(self, k: int) -> DomainMatrix:
        one = self.module.field.one
        cols = [{g: one} for g in self.embeddings[k]]
        return from_columns(cols, self.module.dim, self.module.field)

    def embed(self, k: int, v: Mapping[int, Any]) -> Vector:
        pos = self.embeddings[k]
        return {pos[g]: c for g, c in v.items()}

    def component(self, k: int, v: Mapping[int, Any]) -> Vector:
        back = {g: j for j, g in enumerate(self.embeddings[k])}
        return {back[g]: c for g, c in v.items() if g in back}


def direct_sum(modules: Iterable[ModuleRep], name: str | None = None) -> DirectSum:
    modules = list(modules)
    if not modules:
        raise PreprojError("direct sum of no modules needs an algebra; use zero_module")
    A = modules[0].algebra
    if any(m.algebra is not A for m in modules):
        raise PreprojError("direct sum of modules over different algebras")
    n = A.n
    dims = tuple(sum(m.dims[i] for m in modules) for i in range(n))
    offsets = [sum(dims[:i]) for i in range(n)]

    embeddings: list[list[int]] = []
    shift = [0] * n
    for m in modules:
        pos = []
        for i in range(n):
            pos.extend(offsets[i] + shift[i] + k for k in range(m.dims[i]))
            shift[i] += m.dims[i]
        embeddings.append(pos)

    maps: dict[int, DomainMatrix] = {}
    for arrow in A.presentation.arrows:
        a = arrow.index
        s, t = A.arrow_source(a), A.arrow_target(a)
        entries: dict[int, dict[int, Any]] = {}
        rs = cs = 0
        for m in modules:
            for r, row in dod(m.maps[a]).items():
                entries.setdefault(rs + r, {}).update({cs + c: v for c, v in row.items()})
            rs += m.dims[t]
            cs += m.dims[s]
        maps[a] = from_dod(entries, dims[t], dims[s], A.field)

    elements = None
    if all(m.elements is not None for m in modules):
        elements = [dict() for _ in range(sum(dims))]
        for m, pos in zip(modules, embeddings):
            for g, x in enumerate(m.elements):
                elements[pos[g]] = x

    label = name or "⊕".join(m.name for m in modules)
    module = ModuleRep(A, dims, maps, name=label, elements=elements, check=False)
    return DirectSum(module, modules, embeddings)


# ─── Maps between modules ─────────────────────────────────────


def identity_map(M: ModuleRep) -> DomainMatrix:
    return eye(M.dim, M.field)


def kernel(f: DomainMatrix, M: ModuleRep, name: str | None = None) -> Subquotient:
    """Kernel of a module map f: M → N as a submodule of M."""
    return subquotient(M, (), nullspace(f, M.field), name=name or f"ker→{M.name}")


def image(f: DomainMatrix, N: ModuleRep, name: str | None = None) -> Subquotient:
    """Image of a module map f: M → N as a submodule of N."""
    return subquotient(N, (), columns_of(f), name=name or f"im→{N.name}")


def cokernel(f: DomainMatrix, N: ModuleRep, name: str | None = None) -> Subquotient:
    return subquotient(N, columns_of(f), None, name=name or f"coker→{N.name}")


def dual(M: ModuleRep) -> ModuleRep:
    """D M = Hom_K(M, K) over the opposite algebra: transposed actions."""
    maps = {a: block.transpose() for a, block in M.maps.items()}
    name = M.name[2:-1] if M.name.startswith("D(") and M.name.endswith(")") else f"D({M.name})"
    return ModuleRep(M.algebra.opposite(), M.dims, maps, name=name, check=False)
