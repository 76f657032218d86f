"""Path words and formal combinations of paths.

A word is a tuple of arrow indices in composition order: ``(a, b)`` is
the path that traverses ``b`` first. Combinations are dicts
``{word: coefficient}`` over the ground field.
"""

from __future__ import annotations

from typing import Any, Iterator, NamedTuple

from preproj.cartan import QuiverPresentation, Relation

Word = tuple[int, ...]
Poly = dict[Word, Any]


class Path(NamedTuple):
    """A basis path with its endpoints; empty words are vertex idempotents."""
    source: int
    target: int
    arrows: Word

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_idempotent(self) -> bool:
        return not self.arrows

    def token(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return ".".join(str(a) for a in self.arrows)

    @classmethod
    def from_token(cls, token: str, presentation: QuiverPresentation) -> Path:
        if token.startswith("e"):
            v = int(token[1:])
            return cls(v, v, ())
        arrows = tuple(int(a) for a in token.split("."))
        return cls(presentation.source(arrows), presentation.target(arrows), arrows)


def deglex_key(word: Word) -> tuple[int, Word]:
    """Degree first, then arrow indices left to right."""
    return (len(word), word)


def leading(poly: Poly) -> Word:
    return max(poly, key=deglex_key)


def poly_add(p: Poly, a, q: Poly) -> Poly:
    """p += a·q in place."""
    if not a:
        return p
    for w, c in q.items():
        s = p.get(w)
        t = a * c if s is None else s + a * c
        if t:
            p[w] = t
        elif s is not None:
            del p[w]
    return p


def poly_mul_words(left: Word, poly: Poly, right: Word) -> Poly:
    return {left + w + right: c for w, c in poly.items()}


def relation_poly(relation: Relation, domain) -> Poly:
    out: Poly = {}
    for coeff, word in relation.terms:
        poly_add(out, domain.one, {word: domain(coeff)})
    return out


def paths_from(presentation: QuiverPresentation, max_length: int) -> Iterator[Path]:
    """All paths of length ≤ max_length, shortest first."""
    arrows = presentation.arrows
    level = [Path(v, v, ()) for v in presentation.vertices]
    yield from level
    for _ in range(max_length):
        nxt: list[Path] = []
        for p in level:
            for a in arrows:
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, (a.index,) + p.arrows))
        level = nxt
        yield from level
