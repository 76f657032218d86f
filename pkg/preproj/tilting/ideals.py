"""Two-sided ideals of Π as echelonized subspaces, and the ideals I_w."""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from preproj.algebra.core import FinDimAlgebra
from preproj.algebra.linalg import Echelon, Vector
from preproj.errors import PreprojError, WordMismatchError
from preproj.modules.base import ModuleRep, subquotient
from preproj.modules.constructions import ideal_module, quotient_module, regular, to_regular
from preproj.weyl import WeylElement, WeylGroup, Word, reduced_words

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class IdealSubspace:
    """A two-sided ideal, stored by its reduced echelon basis.

    Equal ideals have identical bases, so comparison is syntactic.
    """
    algebra: FinDimAlgebra
    space: Echelon

    @classmethod
    def span(cls, A: FinDimAlgebra, vectors: Iterable[Mapping[int, Any]]) -> IdealSubspace:
        return cls(A, Echelon.span(vectors, A.dim, A.field))

    @property
    def basis(self) -> list[Vector]:
        return self.space.rows

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def codim(self) -> int:
        return self.algebra.dim - self.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_whole(self) -> bool:
        return self.dim == self.algebra.dim

    def contains(self, x: Mapping[int, Any]) -> bool:
        return self.space.contains(x)

    def key(self) -> tuple:
        return self.space.key()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealSubspace):
            return NotImplemented
        return self.algebra is other.algebra and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.key())

    def __le__(self, other: IdealSubspace) -> bool:
        return self.space <= other.space

    def is_two_sided(self) -> bool:
        A = self.algebra
        one = A.field.one
        for x in self.basis:
            for b in range(A.dim):
                if not self.contains(A.multiply({b: one}, x)) or not self.contains(A.multiply(x, {b: one})):
                    return False
        return True

    # ─── Pieces ────────────────────────────────────────────────

    def part(self, vertices: Iterable[int]) -> Echelon:
        """I·(Σ_{k in vertices} e_k) as a subspace of Π."""
        A = self.algebra
        vertices = set(vertices)
        vectors = [{b: c for b, c in x.items() if A.source(b) in vertices} for x in self.basis]
        return Echelon.span(vectors, A.dim, A.field)

    def summand_space(self, k: int) -> Echelon:
        """I e_k as a subspace of Π."""
        return self.part([k])

    # ─── As modules ────────────────────────────────────────────

    def to_module(self, name: str = "I") -> ModuleRep:
        return ideal_module(self.algebra, self.basis, name=name)

    def summand(self, k: int, name: str | None = None) -> ModuleRep:
        return ideal_module(self.algebra, self.summand_space(k).rows, name=name or f"Ie{k+1}")

    def part_module(self, vertices: Iterable[int], name: str = "I(1-e)") -> ModuleRep:
        return ideal_module(self.algebra, self.part(vertices).rows, name=name)

    def quotient(self, name: str = "Π/I") -> ModuleRep:
        return quotient_module(self.algebra, self.basis, name=name)

    def quotient_by(self, smaller: IdealSubspace, name: str = "I/J") -> ModuleRep:
        """I/J for an ideal J ⊆ I, as a left module."""
        A = self.algebra
        R = regular(A)
        sub = [to_regular(A, x) for x in smaller.basis]
        ambient = [to_regular(A, x) for x in self.basis]
        return subquotient(R, sub, ambient, name=name).module

    def to_right_module(self, name: str = "I") -> ModuleRep:
        return ideal_module(self.algebra.opposite(), self.basis, name=name)

    def right_quotient(self, name: str = "Π/I") -> ModuleRep:
        return quotient_module(self.algebra.opposite(), self.basis, name=name)

    def __repr__(self) -> str:
        return f"IdealSubspace(dim={self.dim}, codim={self.codim})"


# ─── Constructions ────────────────────────────────────────────


def _multipliers(A: FinDimAlgebra) -> list[Vector]:
    one = A.field.one
    return [{i: one} for i in range(A.n)] + [A.generator(a.index) for a in A.presentation.arrows]


def two_sided_closure(A: FinDimAlgebra, vectors: Iterable[Mapping[int, Any]]) -> IdealSubspace:
    """Smallest two-sided ideal containing ``vectors``."""
    mults = _multipliers(A)
    current = Echelon.span(vectors, A.dim, A.field)
    frontier = list(current.rows)
    while frontier:
        candidates = []
        for x in frontier:
            for g in mults:
                candidates.append(A.multiply(g, x))
                candidates.append(A.multiply(x, g))
        grown = Echelon.span(current.rows + candidates, A.dim, A.field)
        if grown.dim == current.dim:
            break
        frontier = [current.reduce(r) for r in grown.rows]
        frontier = [v for v in frontier if v]
        current = grown
    return IdealSubspace(A, current)


def whole_ideal(A: FinDimAlgebra) -> IdealSubspace:
    one = A.field.one
    return IdealSubspace.span(A, ({b: one} for b in range(A.dim)))


def idempotent_ideal(A: FinDimAlgebra, i: int) -> IdealSubspace:
    """I_i = Π(1 − e_i)Π."""
    one = A.field.one
    return two_sided_closure(A, [{j: one} for j in range(A.n) if j != i])


def ideal_product(I: IdealSubspace, J: IdealSubspace) -> IdealSubspace:
    """Span of the products x·y with x ∈ I, y ∈ J."""
    if I.algebra is not J.algebra:
        raise PreprojError("ideal product across different algebras")
    A = I.algebra
    products = [A.multiply(x, y) for x in I.basis for y in J.basis]
    return IdealSubspace.span(A, (p for p in products if p))


# ─── I_w ──────────────────────────────────────────────────────


class IdealCalculus:
    """Products of the I_i along words, cached by prefix."""

    def __init__(self, A: FinDimAlgebra, W: WeylGroup):
        self.algebra = A
        self.group = W
        self._simple = [idempotent_ideal(A, i) for i in range(A.n)]
        self._by_word: dict[Word, IdealSubspace] = {(): whole_ideal(A)}
        self._lock = threading.RLock()

    def simple(self, i: int) -> IdealSubspace:
        return self._simple[i]

    def along(self, word: Word) -> IdealSubspace:
        """I_{i_1} I_{i_2} ⋯ I_{i_k} for word = (i_1, ..., i_k)."""
        with self._lock:
            cached = self._by_word.get(word)
            if cached is not None:
                return cached
            out = ideal_product(self.along(word[:-1]), self._simple[word[-1]])
            self._by_word[word] = out
            return out

    def of(self, w: WeylElement, check_all_words: bool = False) -> IdealSubspace:
        ideal = self.along(w.word)
        if check_all_words:
            for word in sorted(reduced_words(self.group, w)):
                other = self.along(word)
                if other != ideal:
                    raise WordMismatchError(
                        f"reduced words of {w.label} give different ideals",
                        element=w.label,
                        words=[_word_label(w.word), _word_label(word)],
                        dims=[ideal.dim, other.dim],
                    )
        return ideal

    def warm(self, elements: Iterable[WeylElement]) -> None:
        """Fill the prefix cache level by level."""
        by_length: dict[int, list[WeylElement]] = {}
        for w in elements:
            by_length.setdefault(w.length, []).append(w)
        for length in sorted(by_length):
            for w in by_length[length]:
                self.along(w.word)
            logger.debug("Ideal cache: level %d done (%d words cached)", length, len(self._by_word))


def _word_label(word: Word) -> str:
    return "".join(f"s{i+1}" for i in word) or "e"


def ideal_of_weyl(
    A: FinDimAlgebra,
    W: WeylGroup,
    w: WeylElement,
    check_all_words: bool = False,
    calculus: IdealCalculus | None = None,
) -> IdealSubspace:
    calculus = calculus or IdealCalculus(A, W)
    return calculus.of(w, check_all_words=check_all_words)
