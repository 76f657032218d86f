"""Tests for Weyl group enumeration and the right weak order."""

import pytest

from preproj.cartan import minimal_symmetrizer, validate_gcm
from preproj.errors import NotFiniteError
from preproj.weyl import (
    generate,
    join_irreducibles,
    longest_element,
    meet_irreducibles,
    positive_roots,
    reduced_words,
    weak_order,
)

CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "G2": [[2, -1], [-3, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
}


def group(name):
    C = CARTAN[name]
    return generate(validate_gcm(C, minimal_symmetrizer(C)))


# ─── Enumeration Tests ────────────────────────────────────────


class TestGenerate:
    @pytest.mark.parametrize("name, order", [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24)])
    def test_order(self, name, order):
        assert len(group(name)) == order

    @pytest.mark.parametrize("name, count", [("A2", 3), ("B2", 4), ("G2", 6), ("A3", 6)])
    def test_positive_roots(self, name, count):
        C = CARTAN[name]
        assert len(positive_roots(validate_gcm(C, minimal_symmetrizer(C)))) == count

    def test_identity_first(self):
        W = group("B2")
        assert W.identity.label == "e"
        assert W.identity.length == 0

    def test_longest_element_length_matches_roots(self):
        for name in ("A2", "B2", "G2", "A3"):
            W = group(name)
            C = CARTAN[name]
            assert longest_element(W).length == len(positive_roots(validate_gcm(C, minimal_symmetrizer(C))))

    def test_infinite_group_refused(self):
        cd = validate_gcm([[2, -2], [-2, 2]], [1, 1])
        with pytest.raises(NotFiniteError):
            generate(cd)


class TestGroupOperations:
    def test_simple_reflections_are_involutions(self):
        W = group("B2")
        for i in range(2):
            assert W.multiply(W.simple(i), W.simple(i)) == W.identity

    def test_inverse(self):
        W = group("A2")
        w = W.from_word((0, 1))
        assert W.inverse(w) == W.from_word((1, 0))
        assert W.multiply(w, W.inverse(w)) == W.identity

    def test_from_word_reduces(self):
        W = group("A2")
        assert W.from_word((0, 0)) == W.identity
        assert W.from_word((0, 1, 0)) == W.from_word((1, 0, 1))

    def test_ascents_and_descents(self):
        W = group("B2")
        w0 = longest_element(W)
        assert W.ascents(W.identity) == [0, 1]
        assert W.descents(w0) == [0, 1]
        assert W.ascents(w0) == []

    def test_left_and_right_multiplication(self):
        W = group("B2")
        s1 = W.simple(0)
        assert W.times_simple(s1, 1).label == "s1s2"
        assert W.simple_times(1, s1) == W.from_word((1, 0))

    def test_by_label(self):
        W = group("B2")
        assert W.by_label("s2s1").word == (1, 0)
        with pytest.raises(KeyError):
            W.by_label("s3")

    def test_reduced_words_of_longest_a2(self):
        W = group("A2")
        assert reduced_words(W, longest_element(W)) == {(0, 1, 0), (1, 0, 1)}

    def test_reduced_words_of_longest_b2(self):
        W = group("B2")
        assert reduced_words(W, longest_element(W)) == {(0, 1, 0, 1), (1, 0, 1, 0)}


# ─── Weak Order Tests ─────────────────────────────────────────


class TestWeakOrder:
    def test_a2_hexagon(self):
        P = weak_order(group("A2"))
        assert len(P.hasse_edges) == 6

    def test_b2_octagon(self):
        P = weak_order(group("B2"))
        assert len(P.hasse_edges) == 8

    def test_extremes(self):
        W = group("B2")
        P = weak_order(W)
        assert P.minimum == W.identity
        assert P.maximum == longest_element(W)
        assert all(P.leq(W.identity, w) and P.leq(w, P.maximum) for w in W)

    def test_incomparable(self):
        W = group("B2")
        P = weak_order(W)
        assert not P.leq(W.simple(0), W.simple(1))
        assert not P.leq(W.simple(1), W.simple(0))

    def test_meet_and_join(self):
        W = group("B2")
        P = weak_order(W)
        assert P.meet(W.simple(0), W.simple(1)) == W.identity
        assert P.join(W.simple(0), W.simple(1)) == longest_element(W)

    def test_is_lattice(self):
        assert weak_order(group("A2")).is_lattice()

    def test_graph_matches_edges(self):
        P = weak_order(group("A3"))
        assert P.graph.number_of_edges() == len(P.hasse_edges)
        assert P.graph.number_of_nodes() == 24

    @pytest.mark.parametrize("name, count", [("A1", 1), ("A2", 4), ("B2", 6), ("G2", 10)])
    def test_meet_irreducibles(self, name, count):
        P = weak_order(group(name))
        assert len(meet_irreducibles(P)) == count
        assert len(join_irreducibles(P)) == count
