"""Cartan data: validation, classification and quiver presentations.

Python indices are 0-based throughout; arrow names and relation labels
use 1-based vertex numbers.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import networkx as nx
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from preproj.errors import (
    BadOrientationError,
    DisconnectedError,
    NotDynkinError,
    NotFoundError,
    NotGCMError,
    NotSymmetrizerError,
)

logger = logging.getLogger(__name__)

Word = tuple[int, ...]


# ─── Cartan data ──────────────────────────────────────────────


@dataclass(frozen=True)
class CartanData:
    """A validated symmetrizable GCM with symmetrizer and orientation."""
    n: int
    C: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]
    omega: frozenset[tuple[int, int]]
    g: dict[tuple[int, int], int] = field(compare=False, hash=False, repr=False)
    f: dict[tuple[int, int], int] = field(compare=False, hash=False, repr=False)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Edges of the valued graph as pairs i < j."""
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.C[i][j] < 0]

    @property
    def omega_star(self) -> frozenset[tuple[int, int]]:
        return frozenset((j, i) for i, j in self.omega)

    @property
    def omega_bar(self) -> frozenset[tuple[int, int]]:
        return self.omega | self.omega_star

    def sgn(self, i: int, j: int) -> int:
        return 1 if (i, j) in self.omega else -1

    def neighbours(self, i: int) -> list[int]:
        """Vertices j with (i, j) in the doubled orientation."""
        return [j for j in range(self.n) if j != i and self.C[i][j] < 0]

    def symmetrized(self) -> tuple[tuple[int, ...], ...]:
        """The symmetric matrix DC."""
        return tuple(tuple(self.D[i] * self.C[i][j] for j in range(self.n)) for i in range(self.n))

    def valued_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for i, j in self.edges:
            graph.add_edge(i, j, value=(-self.C[i][j], -self.C[j][i]))
        return graph

    def to_external(self) -> dict:
        """1-based JSON-ready form."""
        return {
            "cartan": [list(r) for r in self.C],
            "symmetrizer": list(self.D),
            "orientation": sorted([i + 1, j + 1] for i, j in self.omega),
        }


class CartanTag(Enum):
    """Definiteness type of DC."""
    DYNKIN = "Dynkin"
    EUCLIDEAN = "Euclidean"
    OTHER = "Other"


@dataclass(frozen=True)
class CartanClass:
    tag: CartanTag
    connected: bool

    @property
    def is_dynkin(self) -> bool:
        return self.tag is CartanTag.DYNKIN


# ─── Validation ───────────────────────────────────────────────


def check_gcm(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Check the GCM axioms, returning M as a tuple matrix."""
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise NotGCMError("Cartan matrix must be square and non-empty", shape=[len(r) for r in M])
    C = tuple(tuple(int(v) for v in row) for row in M)
    for i in range(n):
        if C[i][i] != 2:
            raise NotGCMError(f"diagonal entry c_{i+1}{i+1} = {C[i][i]} must be 2", entry=[i + 1, i + 1])
        for j in range(n):
            if i == j:
                continue
            if C[i][j] > 0:
                raise NotGCMError(
                    f"off-diagonal entry c_{i+1}{j+1} = {C[i][j]} must be non-positive",
                    entry=[i + 1, j + 1],
                )
            if (C[i][j] == 0) != (C[j][i] == 0):
                raise NotGCMError(
                    f"c_{i+1}{j+1} = {C[i][j]} but c_{j+1}{i+1} = {C[j][i]}: zero pattern must be symmetric",
                    entry=[i + 1, j + 1],
                )
    return C


def validate_gcm(
    M: Sequence[Sequence[int]],
    D: Sequence[int],
    orientation: Iterable[tuple[int, int]] | None = None,
) -> CartanData:
    """Validate (C, D, Ω) and derive g_ij, f_ij."""
    C = check_gcm(M)
    n = len(C)
    if len(D) != n:
        raise NotSymmetrizerError(f"symmetrizer has {len(D)} entries, expected {n}", symmetrizer=list(D))
    D = tuple(int(d) for d in D)
    for i, d in enumerate(D):
        if d <= 0:
            raise NotSymmetrizerError(f"symmetrizer entry c_{i+1} = {d} must be positive", entry=i + 1)
    for i in range(n):
        for j in range(i + 1, n):
            if D[i] * C[i][j] != D[j] * C[j][i]:
                raise NotSymmetrizerError(
                    f"DC is not symmetric at ({i+1},{j+1}): "
                    f"{D[i]}·{C[i][j]} ≠ {D[j]}·{C[j][i]}",
                    entry=[i + 1, j + 1],
                )

    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if C[i][j] < 0}
    if orientation is None:
        omega = frozenset(edges)
    else:
        omega = frozenset((int(i), int(j)) for i, j in orientation)
        _check_orientation(omega, edges, n)

    g: dict[tuple[int, int], int] = {}
    f: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(n):
            if i != j and C[i][j] < 0:
                g[(i, j)] = abs(gcd(C[i][j], C[j][i]))
                f[(i, j)] = abs(C[i][j]) // g[(i, j)]

    return CartanData(n=n, C=C, D=D, omega=omega, g=g, f=f)


def _check_orientation(omega: frozenset[tuple[int, int]], edges: set[tuple[int, int]], n: int) -> None:
    seen: set[tuple[int, int]] = set()
    for i, j in omega:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise BadOrientationError(f"orientation pair ({i+1},{j+1}) is not an edge", pair=[i + 1, j + 1])
        key = (min(i, j), max(i, j))
        if key not in edges:
            raise BadOrientationError(f"orientation pair ({i+1},{j+1}) is not an edge", pair=[i + 1, j + 1])
        if key in seen:
            raise BadOrientationError(f"edge {{{i+1},{j+1}}} is oriented twice", pair=[i + 1, j + 1])
        seen.add(key)
    missing = sorted(edges - seen)
    if missing:
        i, j = missing[0]
        raise BadOrientationError(f"edge {{{i+1},{j+1}}} has no orientation", pair=[i + 1, j + 1])

    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(n))
    digraph.add_edges_from(omega)
    if not nx.is_directed_acyclic_graph(digraph):
        cycle = [[a + 1, b + 1] for a, b in nx.find_cycle(digraph)]
        raise BadOrientationError("orientation contains a cycle", cycle=cycle)


# ─── Classification ───────────────────────────────────────────


def _minor(S: Sequence[Sequence[int]], idx: Sequence[int]) -> int:
    k = len(idx)
    rows = [[ZZ(S[a][b]) for b in idx] for a in idx]
    return int(DomainMatrix(rows, (k, k), ZZ).det())


def classify(cd: CartanData) -> CartanClass:
    """Definiteness of DC by exact principal minors (Sylvester)."""
    S = cd.symmetrized()
    n = cd.n
    connected = nx.is_connected(cd.valued_graph())

    if all(_minor(S, range(k)) > 0 for k in range(1, n + 1)):
        return CartanClass(CartanTag.DYNKIN, connected)

    psd = all(
        _minor(S, idx) >= 0
        for k in range(1, n + 1)
        for idx in itertools.combinations(range(n), k)
    )
    tag = CartanTag.EUCLIDEAN if psd else CartanTag.OTHER
    return CartanClass(tag, connected)


def minimal_symmetrizer(C: Sequence[Sequence[int]], allow_disconnected: bool = False) -> list[int]:
    """Unique minimal symmetrizer, propagated along spanning trees.

    On disconnected input each component is minimized separately; this
    raises DisconnectedError (carrying the result) unless allowed.
    """
    C = check_gcm(C)
    n = len(C)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((i, j) for i in range(n) for j in range(i + 1, n) if C[i][j] < 0)

    D = [0] * n
    components = [sorted(c) for c in nx.connected_components(graph)]
    components.sort()
    for comp in components:
        root = comp[0]
        ratio: dict[int, Fraction] = {root: Fraction(1)}
        for i, j in nx.bfs_edges(graph, root):
            ratio[j] = ratio[i] * C[i][j] / C[j][i]
        for i in comp:
            for j in comp:
                if C[i][j] < 0 and ratio[i] * C[i][j] != ratio[j] * C[j][i]:
                    raise NotSymmetrizerError(
                        f"C is not symmetrizable (cycle condition fails at ({i+1},{j+1}))",
                        entry=[i + 1, j + 1],
                    )
        denom = lcm(*(r.denominator for r in ratio.values()))
        ints = [int(ratio[i] * denom) for i in comp]
        common = gcd(*ints)
        for i, v in zip(comp, ints):
            D[i] = v // common

    if len(components) > 1:
        comps = [[i + 1 for i in c] for c in components]
        if not allow_disconnected:
            raise DisconnectedError(
                "Cartan matrix is disconnected; symmetrizer is minimal per component only",
                symmetrizer=D,
                components=comps,
            )
        logger.warning("Disconnected Cartan matrix: minimal symmetrizer taken per component %s", comps)
    return D


# ─── Quiver presentation ──────────────────────────────────────


class PresentationMode(Enum):
    PI = "Pi"
    H = "H"


class ArrowKind(Enum):
    LOOP = "loop"
    ORDINARY = "ordinary"


@dataclass(frozen=True)
class Arrow:
    """A quiver arrow. Ordinary arrows α_ij^(g) run j → i."""
    index: int
    name: str
    label: str
    source: int
    target: int
    kind: ArrowKind
    pair: tuple[int, int] | None = None
    copy: int = 0


@dataclass(frozen=True)
class Relation:
    """Formal integer combination of parallel paths.

    Words are tuples of arrow indices in composition order: the last
    arrow is traversed first.
    """
    name: str
    terms: tuple[tuple[int, Word], ...]
    source: int
    target: int

    def text(self, arrows: Sequence[Arrow]) -> str:
        parts = []
        for k, (coeff, word) in enumerate(self.terms):
            body = _word_text(word, arrows)
            if k == 0:
                sign = "-" if coeff < 0 else ""
            else:
                sign = " - " if coeff < 0 else " + "
            mag = "" if abs(coeff) == 1 else f"{abs(coeff)}·"
            parts.append(f"{sign}{mag}{body}")
        return "".join(parts) + " = 0"


def _word_text(word: Word, arrows: Sequence[Arrow]) -> str:
    out: list[str] = []
    for a, group in itertools.groupby(word):
        k = len(list(group))
        out.append(arrows[a].label + (f"^{k}" if k > 1 else ""))
    return "".join(out)


@dataclass(frozen=True)
class QuiverPresentation:
    cartan: CartanData
    mode: PresentationMode
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...]
    signs: dict[tuple[int, int], int] = field(compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return self.cartan.n

    @property
    def vertices(self) -> list[int]:
        return list(range(self.cartan.n))

    def loop(self, i: int) -> int:
        return i

    def source(self, word: Word) -> int:
        return self.arrows[word[-1]].source

    def target(self, word: Word) -> int:
        return self.arrows[word[0]].target

    def ordinary_arrows(self) -> list[Arrow]:
        return [a for a in self.arrows if a.kind is ArrowKind.ORDINARY]

    def relation_lines(self) -> list[str]:
        return [f"{r.name}: {r.text(self.arrows)}" for r in self.relations]

    def flip_sign(self, relation_name: str, term: int = 0) -> QuiverPresentation:
        """Copy with one term's sign flipped (sensitivity control)."""
        relations = []
        found = False
        for r in self.relations:
            if r.name == relation_name:
                terms = list(r.terms)
                coeff, word = terms[term]
                terms[term] = (-coeff, word)
                r = Relation(r.name, tuple(terms), r.source, r.target)
                found = True
            relations.append(r)
        if not found:
            raise KeyError(relation_name)
        return QuiverPresentation(self.cartan, self.mode, self.arrows, tuple(relations), self.signs)


def _combine(terms: Iterable[tuple[int, Word]]) -> tuple[tuple[int, Word], ...]:
    acc: dict[Word, int] = {}
    order: list[Word] = []
    for coeff, word in terms:
        if word not in acc:
            order.append(word)
            acc[word] = 0
        acc[word] += coeff
    return tuple((acc[w], w) for w in order if acc[w])


def quiver_presentation(cd: CartanData, mode: PresentationMode = PresentationMode.PI) -> QuiverPresentation:
    """Emit the quiver and relations of Π(C, D, Ω̄) or H(C, D, Ω)."""
    wide = cd.n >= 10

    def vname(i: int, j: int) -> str:
        return f"{i+1}_{j+1}" if wide else f"{i+1}{j+1}"

    arrows: list[Arrow] = [
        Arrow(i, f"eps{i+1}", f"ε{i+1}", i, i, ArrowKind.LOOP) for i in range(cd.n)
    ]
    pairs = cd.omega_bar if mode is PresentationMode.PI else cd.omega
    alpha: dict[tuple[int, int, int], int] = {}
    for i, j in sorted(pairs):
        for copy in range(1, cd.g[(i, j)] + 1):
            sup = f"^({copy})" if cd.g[(i, j)] > 1 else ""
            idx = len(arrows)
            arrows.append(Arrow(
                index=idx,
                name=f"a{vname(i, j)}" + (f"_{copy}" if sup else ""),
                label=f"α{vname(i, j)}{sup}",
                source=j,
                target=i,
                kind=ArrowKind.ORDINARY,
                pair=(i, j),
                copy=copy,
            ))
            alpha[(i, j, copy)] = idx

    def eps(i: int, k: int) -> Word:
        return (i,) * k

    relations: list[Relation] = []
    first = "P" if mode is PresentationMode.PI else "H"

    for i in range(cd.n):
        relations.append(Relation(f"{first}1({i+1})", ((1, eps(i, cd.D[i])),), i, i))

    for i, j in sorted(pairs):
        for copy in range(1, cd.g[(i, j)] + 1):
            a = alpha[(i, j, copy)]
            terms = _combine([
                (1, eps(i, cd.f[(j, i)]) + (a,)),
                (-1, (a,) + eps(j, cd.f[(i, j)])),
            ])
            if terms:
                relations.append(Relation(f"{first}2({i+1},{j+1};{copy})", terms, j, i))

    if mode is PresentationMode.PI:
        for i in range(cd.n):
            raw: list[tuple[int, Word]] = []
            for j in cd.neighbours(i):
                fji = cd.f[(j, i)]
                for copy in range(1, cd.g[(i, j)] + 1):
                    a_ij = alpha[(i, j, copy)]
                    a_ji = alpha[(j, i, copy)]
                    for k in range(fji):
                        raw.append((cd.sgn(i, j), eps(i, k) + (a_ij, a_ji) + eps(i, fji - 1 - k)))
            terms = _combine(raw)
            if terms:
                relations.append(Relation(f"P3({i+1})", terms, i, i))

    signs = {(i, j): cd.sgn(i, j) for i, j in cd.omega_bar}
    presentation = QuiverPresentation(cd, mode, tuple(arrows), tuple(relations), signs)
    logger.debug(
        "%s-presentation: %d arrows, %d relations", mode.value, len(arrows), len(relations)
    )
    return presentation


# ─── Euclidean extensions ─────────────────────────────────────


_ROW_VALUES = (0, -1, -2, -3)


def find_euclidean_extension(cd: CartanData) -> CartanData:
    """Smallest connected Euclidean GCM containing cd, new vertex at index 0.

    Search order is lexicographic in (new symmetrizer entry, new row).
    """
    kind = classify(cd)
    if not kind.is_dynkin or not kind.connected:
        raise NotDynkinError("Euclidean extensions are searched only for connected Dynkin data",
                             tag=kind.tag.value, connected=kind.connected)

    n = cd.n
    bound = lcm(*cd.D)
    for c0 in range(1, bound + 1):
        for row in itertools.product(_ROW_VALUES, repeat=n):
            if not any(row):
                continue
            column = []
            for j, r in enumerate(row):
                num = c0 * r
                if num % cd.D[j]:
                    break
                column.append(num // cd.D[j])
            else:
                C = [[2] + list(row)]
                for j in range(n):
                    C.append([column[j]] + list(cd.C[j]))
                D = [c0] + list(cd.D)
                try:
                    candidate = validate_gcm(C, D)
                except (NotGCMError, NotSymmetrizerError):
                    continue
                found = classify(candidate)
                if found.tag is CartanTag.EUCLIDEAN and found.connected:
                    logger.debug("Euclidean extension: c0=%d row=%s", c0, row)
                    return candidate

    raise NotFoundError("no Euclidean extension within the search bound", bound=bound)
