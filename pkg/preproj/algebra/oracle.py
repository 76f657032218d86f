"""Brute-force dimension oracle, independent of the rewriting engine.

Works in KQ / (I + J^{L+1}) for growing L, where J is the arrow ideal:
the relation ideal is spanned by u·r·v with longer words dropped. Once
two consecutive top levels have no standard words the truncation has
stabilised and its dimension is dim KQ/I.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from preproj.algebra.linalg import Field, from_rows, rref
from preproj.algebra.paths import Path, Word, deglex_key, paths_from, relation_poly
from preproj.cartan import QuiverPresentation
from preproj.errors import DegreeBoundExceeded

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    dim: int
    standard_words: list[Word]
    length_bound: int


def _standard_words(p: QuiverPresentation, field: Field, L: int) -> list[Word]:
    paths = list(paths_from(p, L))
    words = sorted((q.arrows for q in paths if q.arrows), key=deglex_key, reverse=True)
    column = {w: k for k, w in enumerate(words)}
    by_target: dict[int, list[Path]] = {}
    by_source: dict[int, list[Path]] = {}
    for q in paths:
        by_target.setdefault(q.target, []).append(q)
        by_source.setdefault(q.source, []).append(q)

    rows = []
    for relation in p.relations:
        poly = relation_poly(relation, field.domain)
        shortest = min(len(w) for w in poly)
        # u·r·v: u starts where r ends, v ends where r starts
        for u in by_source.get(relation.target, []):
            for v in by_target.get(relation.source, []):
                if u.length + v.length + shortest > L:
                    continue
                row = {}
                for w, c in poly.items():
                    word = u.arrows + w + v.arrows
                    if len(word) <= L:
                        row[column[word]] = c
                if row:
                    rows.append(row)

    pivots: set[int] = set()
    if rows:
        _, piv = rref(from_rows(rows, len(words), field))
        pivots = set(piv)
    return [w for k, w in enumerate(words) if k not in pivots]


def oracle_dimension(
    p: QuiverPresentation,
    field: Field | None = None,
    max_length: int = 16,
) -> OracleResult:
    """dim KQ/I by degree-by-degree linear algebra on path spaces."""
    field = field or Field.rational()
    n = p.n
    for L in range(2, max_length + 1):
        standard = _standard_words(p, field, L)
        lengths = {len(w) for w in standard}
        logger.debug("Oracle L=%d: %d standard words", L, n + len(standard))
        if L not in lengths and (L - 1) not in lengths:
            standard.sort(key=deglex_key)
            return OracleResult(n + len(standard), standard, L)
    raise DegreeBoundExceeded(
        f"oracle did not stabilise by path length {max_length}", max_length=max_length
    )
