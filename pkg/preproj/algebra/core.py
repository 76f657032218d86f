"""Finite-dimensional algebras given by structure constants."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Iterable

from preproj.algebra.linalg import Field, Vector, axpy
from preproj.algebra.paths import Path, Poly, Word, relation_poly
from preproj.algebra.rewriting import RewriteSystem
from preproj.cartan import QuiverPresentation, Relation
from preproj.errors import RelationViolation

logger = logging.getLogger(__name__)


class FinDimAlgebra:
    """Basis of bigraded paths with a sparse multiplication table.

    ``mult[(i, j)]`` is the product b_i·b_j (b_j first), stored only when
    nonzero. The opposite algebra shares basis and table, reading the
    table with swapped arguments and swapped endpoint tags.
    """

    def __init__(
        self,
        presentation: QuiverPresentation,
        field: Field,
        basis: list[Path],
        mult: dict[tuple[int, int], Vector],
        generators: dict[int, Vector],
        *,
        is_opposite: bool = False,
        provenance: dict[str, Any] | None = None,
    ):
        self.presentation = presentation
        self.field = field
        self.basis = basis
        self._mult = mult
        self.generators = generators
        self.is_opposite = is_opposite
        self.provenance = provenance or {}
        self._partner: FinDimAlgebra | None = None
        self.index = {p: k for k, p in enumerate(basis)}
        self._by_target: dict[int, list[int]] = {}
        self._by_source: dict[int, list[int]] = {}
        for k in range(len(basis)):
            self._by_target.setdefault(self.target(k), []).append(k)
            self._by_source.setdefault(self.source(k), []).append(k)

    # ─── Shape ─────────────────────────────────────────────────

    @property
    def n(self) -> int:
        return self.presentation.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def name(self) -> str:
        return "Π^op" if self.is_opposite else "Π"

    def source(self, k: int) -> int:
        p = self.basis[k]
        return p.target if self.is_opposite else p.source

    def target(self, k: int) -> int:
        p = self.basis[k]
        return p.source if self.is_opposite else p.target

    def arrow_source(self, a: int) -> int:
        arrow = self.presentation.arrows[a]
        return arrow.target if self.is_opposite else arrow.source

    def arrow_target(self, a: int) -> int:
        arrow = self.presentation.arrows[a]
        return arrow.source if self.is_opposite else arrow.target

    def with_source(self, i: int) -> list[int]:
        return list(self._by_source.get(i, []))

    def with_target(self, j: int) -> list[int]:
        return list(self._by_target.get(j, []))

    def block_dim(self, j: int, i: int) -> int:
        """dim e_j A e_i."""
        return sum(1 for k in self._by_source.get(i, []) if self.target(k) == j)

    def one(self) -> Vector:
        return {i: self.field.one for i in range(self.n)}

    # ─── Multiplication ───────────────────────────────────────

    def product(self, i: int, j: int) -> Vector:
        key = (j, i) if self.is_opposite else (i, j)
        return self._mult.get(key, {})

    def multiply(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.product(i, j)
                if prod:
                    axpy(out, a * b, prod)
        return out

    def generator(self, a: int) -> Vector:
        return self.generators[a]

    def factors(self, k: int) -> list[int]:
        """Arrows whose actions compose (left to right) to the action of b_k."""
        arrows = self.basis[k].arrows
        return list(reversed(arrows)) if self.is_opposite else list(arrows)

    def word_element(self, word: Word) -> Vector:
        """Product of generators along a presentation word."""
        factors = list(reversed(word)) if self.is_opposite else list(word)
        v = self.presentation.target(word) if not self.is_opposite else self.presentation.source(word)
        out: Vector = {v: self.field.one}
        for a in factors:
            out = self.multiply(out, self.generator(a))
        return out

    def element_of(self, poly: Poly) -> Vector:
        out: Vector = {}
        for word, c in poly.items():
            axpy(out, c, self.word_element(word))
        return out

    # ─── Opposite ─────────────────────────────────────────────

    def opposite(self) -> FinDimAlgebra:
        if self._partner is None:
            partner = FinDimAlgebra(
                self.presentation,
                self.field,
                self.basis,
                self._mult,
                self.generators,
                is_opposite=not self.is_opposite,
                provenance=self.provenance,
            )
            partner._partner = self
            self._partner = partner
        return self._partner

    def mult_table(self) -> dict[tuple[int, int], Vector]:
        """Structure constants as seen from this side."""
        if not self.is_opposite:
            return dict(self._mult)
        return {(j, i): v for (i, j), v in self._mult.items()}

    # ─── Checks ───────────────────────────────────────────────

    def check_associativity(self, samples: int | None = None, seed: int = 0) -> list[tuple[int, int, int]]:
        """Triples (i, j, k) with (b_i b_j) b_k ≠ b_i (b_j b_k)."""
        n = self.dim
        if samples is None:
            triples: Iterable[tuple[int, int, int]] = (
                (i, j, k) for i in range(n) for j in range(n) for k in range(n)
            )
        else:
            rng = random.Random(seed)
            triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
        one = self.field.one
        bad = []
        for i, j, k in triples:
            left = self.multiply(self.product(i, j), {k: one})
            right = self.multiply({i: one}, self.product(j, k))
            if left != right:
                bad.append((i, j, k))
        return bad

    def __repr__(self) -> str:
        return f"FinDimAlgebra({self.name}, dim={self.dim}, field={self.field.label})"


# ─── Assembly ─────────────────────────────────────────────────


def assemble(rs: RewriteSystem) -> FinDimAlgebra:
    """Basis = irreducible words; products = normal forms of concatenations."""
    basis = rs.irreducible_paths()
    index = {p.arrows: k for k, p in enumerate(basis) if p.arrows}
    one = rs.field.one

    def to_vector(poly: Poly) -> Vector:
        return {index[w]: c for w, c in poly.items()}

    mult: dict[tuple[int, int], Vector] = {}
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if bi.source != bj.target:
                continue
            if bi.is_idempotent:
                mult[(i, j)] = {j: one}
            elif bj.is_idempotent:
                mult[(i, j)] = {i: one}
            else:
                prod = to_vector(rs.normal_form_word(bi.arrows + bj.arrows))
                if prod:
                    mult[(i, j)] = prod

    generators = {
        a.index: to_vector(rs.normal_form_word((a.index,)))
        for a in rs.presentation.arrows
    }
    algebra = FinDimAlgebra(
        rs.presentation,
        rs.field,
        basis,
        mult,
        generators,
        provenance={"certificate_degree": rs.certificate_degree, "rules": len(rs.rules)},
    )
    logger.debug("Assembled %r", algebra)
    return algebra


def opposite(A: FinDimAlgebra) -> FinDimAlgebra:
    return A.opposite()


@dataclass
class RelationCheck:
    name: str
    ok: bool
    residual: dict[int, str] = field(default_factory=dict)


@dataclass
class RelationReport:
    checks: list[RelationCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.ok]


def relation_element(A: FinDimAlgebra, relation: Relation) -> Vector:
    return A.element_of(relation_poly(relation, A.field.domain))


def check_relations(A: FinDimAlgebra, p: QuiverPresentation, strict: bool = False) -> RelationReport:
    """Evaluate every relation of p by multiplying generators in A."""
    checks = []
    for relation in p.relations:
        value = relation_element(A, relation)
        checks.append(RelationCheck(
            relation.name,
            not value,
            {k: A.field.to_json(v) for k, v in value.items()},
        ))
    report = RelationReport(checks)
    if strict and not report.ok:
        bad = report.failures[0]
        raise RelationViolation(f"relation {bad.name} does not vanish", relation=bad.name, residual=bad.residual)
    return report
