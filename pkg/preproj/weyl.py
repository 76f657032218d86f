"""Finite Weyl groups, reduced words and the right weak order."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import networkx as nx
import numpy as np

from preproj.cartan import CartanData, classify
from preproj.errors import NotFiniteError

logger = logging.getLogger(__name__)

Word = tuple[int, ...]
MatrixKey = tuple[tuple[int, ...], ...]

_ROOT_LIMIT = 10_000


def _key(a: np.ndarray) -> MatrixKey:
    return tuple(tuple(int(v) for v in row) for row in a.tolist())


@dataclass(frozen=True)
class WeylElement:
    """An element of W acting on the simple-root basis.

    Identity is the matrix; ``length`` and the stored reduced ``word``
    are metadata.
    """
    matrix: MatrixKey
    length: int = field(compare=False)
    word: Word = field(compare=False)

    @property
    def label(self) -> str:
        if not self.word:
            return "e"
        return "".join(f"s{i+1}" for i in self.word)

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def __repr__(self) -> str:
        return f"WeylElement({self.label})"


def simple_reflection(cd: CartanData, i: int) -> np.ndarray:
    """Matrix of s_i: α_j ↦ α_j − c_ij·α_i (columns are images)."""
    s = np.eye(cd.n, dtype=np.int64)
    for j in range(cd.n):
        s[i, j] -= cd.C[i][j]
    return s


def positive_roots(cd: CartanData) -> list[tuple[int, ...]]:
    """Positive roots by root strings, in order of height."""
    n = cd.n
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    found: set[tuple[int, ...]] = set(simple)
    ordered = list(simple)
    frontier = list(simple)
    while frontier:
        nxt: list[tuple[int, ...]] = []
        for beta in frontier:
            for i in range(n):
                if beta == simple[i]:
                    continue
                pairing = sum(beta[j] * cd.C[i][j] for j in range(n))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up_t = tuple(up)
                    if up_t not in found:
                        found.add(up_t)
                        ordered.append(up_t)
                        nxt.append(up_t)
        if len(found) > _ROOT_LIMIT:
            raise NotFiniteError("root system exceeds enumeration limit", limit=_ROOT_LIMIT)
        frontier = nxt
    return ordered


class WeylGroup:
    """All elements of a finite W(C), generated breadth-first."""

    def __init__(self, cd: CartanData, elements: list[WeylElement], generators: list[np.ndarray]):
        self.cartan = cd
        self.n = cd.n
        self.elements = elements
        self.generators = generators
        self._by_matrix = {w.matrix: w for w in elements}
        self._position = {w.matrix: k for k, w in enumerate(elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self.elements)

    def __contains__(self, w: object) -> bool:
        return isinstance(w, WeylElement) and w.matrix in self._by_matrix

    def index(self, w: WeylElement) -> int:
        return self._position[w.matrix]

    def element(self, matrix: np.ndarray | MatrixKey) -> WeylElement:
        key = matrix if isinstance(matrix, tuple) else _key(matrix)
        return self._by_matrix[key]

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def simple(self, i: int) -> WeylElement:
        return self.element(self.generators[i])

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return self.element(u.array() @ v.array())

    def times_simple(self, w: WeylElement, i: int) -> WeylElement:
        return self.element(w.array() @ self.generators[i])

    def simple_times(self, i: int, w: WeylElement) -> WeylElement:
        return self.element(self.generators[i] @ w.array())

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.from_word(tuple(reversed(w.word)))

    def from_word(self, word: Word) -> WeylElement:
        m = np.eye(self.n, dtype=np.int64)
        for i in word:
            m = m @ self.generators[i]
        return self.element(m)

    def ascents(self, w: WeylElement) -> list[int]:
        """Right ascents: i with ℓ(w s_i) > ℓ(w)."""
        return [i for i in range(self.n) if self.times_simple(w, i).length > w.length]

    def descents(self, w: WeylElement) -> list[int]:
        return [i for i in range(self.n) if self.times_simple(w, i).length < w.length]

    def by_label(self, label: str) -> WeylElement:
        for w in self.elements:
            if w.label == label:
                return w
        raise KeyError(label)


def generate(cd: CartanData) -> WeylGroup:
    """Breadth-first closure of {e} under right multiplication by s_i."""
    kind = classify(cd)
    if not kind.is_dynkin:
        raise NotFiniteError(f"Weyl group of a {kind.tag.value} Cartan matrix is infinite", tag=kind.tag.value)

    cap = len(positive_roots(cd)) + 1
    gens = [simple_reflection(cd, i) for i in range(cd.n)]

    ident = np.eye(cd.n, dtype=np.int64)
    elements = [WeylElement(_key(ident), 0, ())]
    seen = {elements[0].matrix}
    queue: deque[tuple[np.ndarray, WeylElement]] = deque([(ident, elements[0])])
    while queue:
        m, w = queue.popleft()
        for i, s in enumerate(gens):
            mm = m @ s
            key = _key(mm)
            if key in seen:
                continue
            if w.length + 1 > cap:
                raise NotFiniteError("BFS exceeded the positive-root depth cap", cap=cap)
            seen.add(key)
            child = WeylElement(key, w.length + 1, w.word + (i,))
            elements.append(child)
            queue.append((mm, child))

    elements.sort(key=lambda x: (x.length, x.word))
    logger.debug("Generated W with %d elements (rank %d)", len(elements), cd.n)
    return WeylGroup(cd, elements, gens)


def reduced_words(W: WeylGroup, w: WeylElement) -> set[Word]:
    """All reduced words of w: a reduced word ends in a right descent."""
    memo: dict[MatrixKey, set[Word]] = {W.identity.matrix: {()}}

    def walk(x: WeylElement) -> set[Word]:
        if x.matrix in memo:
            return memo[x.matrix]
        words: set[Word] = set()
        for i in W.descents(x):
            for prefix in walk(W.times_simple(x, i)):
                words.add(prefix + (i,))
        memo[x.matrix] = words
        return words

    return walk(w)


def longest_element(W: WeylGroup) -> WeylElement:
    top = max(w.length for w in W)
    (w0,) = [w for w in W if w.length == top]
    return w0


# ─── Weak order ───────────────────────────────────────────────


@dataclass
class WeakOrderPoset:
    """Right weak order on W with its Hasse diagram."""
    group: WeylGroup
    hasse_edges: set[tuple[WeylElement, WeylElement, int]]

    @property
    def elements(self) -> list[WeylElement]:
        return self.group.elements

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        for u, v, i in self.hasse_edges:
            g.add_edge(u, v, generator=i)
        return g

    def leq(self, u: WeylElement, v: WeylElement) -> bool:
        """u ≤_R v iff ℓ(v) = ℓ(u) + ℓ(u⁻¹v)."""
        W = self.group
        return v.length == u.length + W.multiply(W.inverse(u), v).length

    @cached_property
    def _order(self) -> dict[tuple[MatrixKey, MatrixKey], bool]:
        return {(u.matrix, v.matrix): self.leq(u, v) for u in self.elements for v in self.elements}

    def _le(self, u: WeylElement, v: WeylElement) -> bool:
        return self._order[(u.matrix, v.matrix)]

    def meet(self, u: WeylElement, v: WeylElement) -> WeylElement | None:
        lower = [x for x in self.elements if self._le(x, u) and self._le(x, v)]
        tops = [m for m in lower if all(self._le(x, m) for x in lower)]
        return tops[0] if len(tops) == 1 else None

    def join(self, u: WeylElement, v: WeylElement) -> WeylElement | None:
        upper = [x for x in self.elements if self._le(u, x) and self._le(v, x)]
        bottoms = [m for m in upper if all(self._le(m, x) for x in upper)]
        return bottoms[0] if len(bottoms) == 1 else None

    def is_lattice(self) -> bool:
        return all(
            self.meet(u, v) is not None and self.join(u, v) is not None
            for u in self.elements for v in self.elements
        )

    @property
    def minimum(self) -> WeylElement:
        return self.group.identity

    @property
    def maximum(self) -> WeylElement:
        return longest_element(self.group)


def weak_order(W: WeylGroup) -> WeakOrderPoset:
    edges = {
        (w, W.times_simple(w, i), i)
        for w in W
        for i in W.ascents(w)
    }
    return WeakOrderPoset(W, edges)


def meet_irreducibles(P: WeakOrderPoset) -> list[WeylElement]:
    """Elements covered by exactly one element (a unique right ascent)."""
    W = P.group
    return [w for w in W if len(W.ascents(w)) == 1]


def join_irreducibles(P: WeakOrderPoset) -> list[WeylElement]:
    W = P.group
    return [w for w in W if len(W.descents(w)) == 1]
