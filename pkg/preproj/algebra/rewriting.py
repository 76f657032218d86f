"""Rewriting-system completion for path-algebra quotients.

Relations are oriented by degree-lex order into rules ``lead → tail``
and completed by resolving overlap ambiguities until every pair of
combined degree ≤ max_degree reduces to zero. Finiteness is certified by
a degree d with no irreducible words.
"""

from __future__ import annotations

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field as dc_field

from preproj.algebra.linalg import Field
from preproj.algebra.paths import Path, Poly, Word, deglex_key, leading, poly_add, poly_mul_words, relation_poly
from preproj.cartan import QuiverPresentation
from preproj.errors import DegreeBoundExceeded

logger = logging.getLogger(__name__)


@dataclass
class Rule:
    """lead ≡ tail, with every word of tail smaller than lead."""
    lead: Word
    tail: Poly

    def poly(self, field: Field) -> Poly:
        out: Poly = {self.lead: field.one}
        poly_add(out, -field.one, self.tail)
        return out


class _RuleIndex:
    """Subword lookup over rule leads."""

    def __init__(self) -> None:
        self.by_lead: dict[Word, Rule] = {}
        self._lengths: dict[int, int] = {}

    def add(self, rule: Rule) -> None:
        self.by_lead[rule.lead] = rule
        n = len(rule.lead)
        self._lengths[n] = self._lengths.get(n, 0) + 1

    def remove(self, rule: Rule) -> None:
        del self.by_lead[rule.lead]
        n = len(rule.lead)
        self._lengths[n] -= 1
        if not self._lengths[n]:
            del self._lengths[n]

    def find(self, word: Word) -> tuple[int, Rule] | None:
        lengths = sorted(self._lengths)
        for start in range(len(word)):
            for n in lengths:
                if start + n > len(word):
                    break
                rule = self.by_lead.get(word[start:start + n])
                if rule is not None:
                    return start, rule
        return None

    def reduce(self, poly: Poly, field: Field) -> Poly:
        todo = dict(poly)
        out: Poly = {}
        while todo:
            w = leading(todo)
            c = todo.pop(w)
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            start, rule = hit
            left, right = w[:start], w[start + len(rule.lead):]
            poly_add(todo, c, poly_mul_words(left, rule.tail, right))
        return out


@dataclass
class RewriteSystem:
    """A completed, degree-lex oriented rewriting system."""
    presentation: QuiverPresentation
    field: Field
    rules: list[Rule]
    confluent_up_to: int
    certificate_degree: int
    ordering: str = "deglex"
    _index: _RuleIndex = dc_field(default_factory=_RuleIndex, repr=False)

    def __post_init__(self) -> None:
        if not self._index.by_lead:
            for rule in self.rules:
                self._index.add(rule)

    def normal_form(self, poly: Poly) -> Poly:
        return self._index.reduce(poly, self.field)

    def normal_form_word(self, word: Word) -> Poly:
        return self.normal_form({word: self.field.one})

    def irreducible_paths(self) -> list[Path]:
        """Vertex idempotents, then irreducible words in degree-lex order."""
        p = self.presentation
        paths = [Path(v, v, ()) for v in p.vertices]
        words = _irreducible_levels(p, self._index, self.certificate_degree)
        for level in words:
            for w in sorted(level, key=deglex_key):
                paths.append(Path(p.source(w), p.target(w), w))
        return paths


def _irreducible_levels(p: QuiverPresentation, index: _RuleIndex, limit: int) -> list[list[Word]]:
    """Irreducible words grouped by length, stopping at the first empty level."""
    level = [(a.index,) for a in p.arrows if (a.index,) not in index.by_lead]
    levels: list[list[Word]] = []
    depth = 1
    while level and depth <= limit:
        levels.append(level)
        nxt: list[Word] = []
        for w in level:
            tgt = p.target(w)
            for a in p.arrows:
                if a.source != tgt:
                    continue
                cand = (a.index,) + w
                # w is irreducible, so only prefixes of cand can match a lead
                if any(cand[:m] in index.by_lead for m in range(1, len(cand) + 1)):
                    continue
                nxt.append(cand)
        level = nxt
        depth += 1
    if level:
        levels.append(level)
    return levels


class _Completion:
    def __init__(self, presentation: QuiverPresentation, field: Field, max_degree: int):
        self.p = presentation
        self.field = field
        self.max_degree = max_degree
        self.index = _RuleIndex()
        self.ids: dict[int, Rule] = {}
        self.live: set[int] = set()
        self.next_id = 0
        self.pairs: list[tuple[int, int, int, int]] = []
        self.skipped: list[tuple[int, int, int, int]] = []
        self.pending: deque[Poly] = deque()
        self.processed = 0

    def run(self) -> None:
        K = self.field.domain
        for relation in self.p.relations:
            self.pending.append(relation_poly(relation, K))
        while True:
            self._drain()
            if not self.pairs:
                break
            length, a, b, k = heapq.heappop(self.pairs)
            if a not in self.live or b not in self.live:
                continue
            if length > self.max_degree:
                self.skipped.append((length, a, b, k))
                continue
            self.processed += 1
            self.pending.append(self._s_poly(self.ids[a], self.ids[b], k))

    def _drain(self) -> None:
        while self.pending:
            poly = self.index.reduce(self.pending.popleft(), self.field)
            if poly:
                self._add(poly)

    def _add(self, poly: Poly) -> None:
        lead = leading(poly)
        inv = self.field.one / poly[lead]
        tail = {w: -inv * c for w, c in poly.items() if w != lead}
        rule = Rule(lead, tail)

        for rid in sorted(self.live):
            old = self.ids[rid]
            if _contains(old.lead, lead):
                self.live.discard(rid)
                self.index.remove(old)
                self.pending.append(old.poly(self.field))

        rid = self.next_id
        self.next_id += 1
        self.ids[rid] = rule
        self.live.add(rid)
        self.index.add(rule)
        for other in sorted(self.live):
            self._queue_overlaps(rid, other)
            if other != rid:
                self._queue_overlaps(other, rid)

    def _queue_overlaps(self, a: int, b: int) -> None:
        la, lb = self.ids[a].lead, self.ids[b].lead
        for k in range(1, min(len(la), len(lb))):
            if la[-k:] == lb[:k]:
                heapq.heappush(self.pairs, (len(la) + len(lb) - k, a, b, k))

    def _s_poly(self, ra: Rule, rb: Rule, k: int) -> Poly:
        u = ra.lead[: len(ra.lead) - k]
        v = rb.lead[k:]
        out = poly_mul_words(u, rb.tail, ())
        poly_add(out, -self.field.one, poly_mul_words((), ra.tail, v))
        return out

    def live_skipped(self) -> list[tuple[int, int, int, int]]:
        return [s for s in self.skipped if s[1] in self.live and s[2] in self.live]


def _contains(word: Word, sub: Word) -> bool:
    n = len(sub)
    return any(word[i:i + n] == sub for i in range(len(word) - n + 1))


def default_max_degree(presentation: QuiverPresentation) -> int:
    cd = presentation.cartan
    return 4 * sum(cd.D) * cd.n


def complete(
    presentation: QuiverPresentation,
    max_degree: int | None = None,
    field: Field | None = None,
) -> RewriteSystem:
    """Complete the relations into a confluent system with a finiteness certificate."""
    field = field or Field.rational()
    max_degree = max_degree or default_max_degree(presentation)

    run = _Completion(presentation, field, max_degree)
    run.run()
    rules = [run.ids[r] for r in sorted(run.live)]
    logger.debug(
        "Completion: %d rules, %d overlaps resolved, %d skipped",
        len(rules), run.processed, len(run.skipped),
    )

    unresolved = run.live_skipped()
    if unresolved:
        shortest = min(s[0] for s in unresolved)
        raise DegreeBoundExceeded(
            f"overlap ambiguities beyond degree {max_degree} remain unresolved",
            max_degree=max_degree,
            shortest_overlap=shortest,
        )

    levels = _irreducible_levels(presentation, run.index, max_degree)
    certificate = len(levels) + 1
    if certificate > max_degree:
        raise DegreeBoundExceeded(
            f"irreducible words persist up to degree {max_degree}",
            max_degree=max_degree,
        )

    return RewriteSystem(
        presentation=presentation,
        field=field,
        rules=rules,
        confluent_up_to=max_degree,
        certificate_degree=certificate,
        _index=run.index,
    )
