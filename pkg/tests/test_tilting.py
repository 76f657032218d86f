"""Tests for the ideals I_w and the support τ-tilting lattice."""

from concurrent.futures import ThreadPoolExecutor

import pytest

from preproj.errors import PreprojError
from preproj.tilting import (
    ideal_of_weyl,
    ideal_product,
    idempotent_ideal,
    itrigid_set,
    mutation_check,
    torsion_pair_report,
)
from preproj.tilting.ideals import IdealCalculus
from preproj.tilting.lattice import check_order, check_pair, descent_check
from preproj.weyl import longest_element

B2_LABELS = {"Pi", "I1e1+Pi e2", "Pi e1+I2e2", "I1e1+E2", "E1+I2e2", "E2", "E1", "0"}


# ─── Ideal Tests ──────────────────────────────────────────────


class TestIdeals:
    def test_idempotent_ideal_dims(self, b2):
        A = b2.algebra
        assert idempotent_ideal(A, 0).dim == 8
        assert idempotent_ideal(A, 1).dim == 9

    def test_idempotent_ideals_are_two_sided(self, b2):
        A = b2.algebra
        for i in range(A.n):
            assert idempotent_ideal(A, i).is_two_sided()

    def test_idempotent_ideal_is_idempotent(self, b2):
        I1 = idempotent_ideal(b2.algebra, 0)
        assert ideal_product(I1, I1) == I1

    def test_concurrent_lookups_share_cache(self, b2):
        calculus = IdealCalculus(b2.algebra, b2.group)
        words = [w.word for w in b2.group] * 4
        with ThreadPoolExecutor(max_workers=4) as pool:
            results = list(pool.map(calculus.along, words))
        for word, ideal in zip(words, results):
            assert ideal is calculus.along(word)
            assert ideal == b2.calculus.along(word)

    def test_extreme_elements(self, b2):
        W, calculus = b2.group, b2.calculus
        assert calculus.of(W.identity).is_whole()
        assert calculus.of(W.identity).dim == 10
        assert calculus.of(longest_element(W)).is_zero()

    def test_simple_reflections(self, b2):
        W, calculus = b2.group, b2.calculus
        assert calculus.of(W.simple(0)).dim == 8
        assert calculus.of(W.simple(1)).dim == 9

    def test_reduced_words_agree(self, b2):
        for w in b2.group:
            ideal = b2.calculus.of(w, check_all_words=True)
            assert ideal.is_two_sided()

    def test_ideal_of_weyl_without_calculus(self, a2):
        W = a2.group
        w0 = longest_element(W)
        assert ideal_of_weyl(a2.algebra, W, w0, check_all_words=True).is_zero()

    def test_left_ascent_shrinks_ideal(self, b2):
        W, calculus = b2.group, b2.calculus
        w = W.simple(0)
        for i in range(2):
            product = ideal_product(calculus.simple(i), calculus.of(w))
            assert (product != calculus.of(w)) == (W.simple_times(i, w).length > w.length)

    def test_descent_keeps_ideal(self, b2):
        W = b2.group
        w0 = longest_element(W)
        assert descent_check(b2.calculus, w0, 0)
        assert descent_check(b2.calculus, w0, 1)

    def test_ideals_ordered_by_inclusion(self, b2):
        W, calculus = b2.group, b2.calculus
        for u, v, _ in b2.poset.hasse_edges:
            assert calculus.of(v) <= calculus.of(u)
        assert calculus.of(W.identity).dim == b2.algebra.dim


# ─── Lattice Tests ────────────────────────────────────────────


class TestLattice:
    def test_b2_labels(self, b2):
        assert {n.label for n in b2.lattice.ordered()} == B2_LABELS

    def test_b2_named_nodes(self, b2):
        W, lattice = b2.group, b2.lattice
        assert lattice.node(W.identity).label == "Pi"
        assert lattice.node(W.simple(0)).label == "I1e1+Pi e2"
        assert lattice.node(W.simple(1)).label == "Pi e1+I2e2"
        assert lattice.node(longest_element(W)).label == "0"

    def test_projective_part(self, b2):
        W = b2.group
        node = b2.lattice.node(longest_element(W))
        assert node.projective_vertices == [0, 1]
        assert b2.lattice.node(W.identity).projective_vertices == []

    def test_sincere_nodes(self, b2):
        labels = {n.label for n in b2.lattice.sincere()}
        assert "I1e1+Pi e2" in labels
        assert "Pi" in labels
        assert "0" not in labels
        assert "E1" not in labels

    def test_pairs_and_order(self, b2):
        for node in b2.lattice.ordered():
            check_pair(node)
        check_order(b2.lattice)

    def test_a2_pairs_use_support_of_ideal(self, a2):
        for node in a2.lattice.ordered():
            check_pair(node)
        by_label = {n.w.label: n for n in a2.lattice.ordered()}
        assert by_label["s1s2"].module.dims == (0, 1)
        assert by_label["s1s2"].projective_vertices == [0]
        assert by_label["s2s1"].projective_vertices == [1]
        assert by_label["s1s2"].to_dict()["projective_part"] == [1]

    def test_edges_follow_weak_order(self, b2):
        assert len(b2.lattice.edges) == 8

    def test_a1_with_loop(self, open_instance):
        ctx = open_instance("A1c2")
        assert [n.label for n in ctx.lattice.ordered()] == ["Pi", "0"]

    def test_node_to_dict(self, b2):
        data = b2.lattice.node(b2.group.simple(0)).to_dict()
        assert data["w"] == "s1"
        assert data["dim"] == 8
        assert data["projective_part"] == []
        assert [s["vertex"] for s in data["summands"]] == [1, 2]


# ─── Mutation Tests ───────────────────────────────────────────


class TestMutation:
    def test_identity_at_first_vertex(self, b2):
        report = mutation_check(b2.calculus, b2.group.identity, 0)
        assert report.held_by == "subspace"
        assert all(report.extras.values())
        assert not report.product_vanishes

    def test_every_ascent(self, b2):
        W = b2.group
        for w in W:
            for i in W.ascents(w):
                report = mutation_check(b2.calculus, w, i)
                assert report.held_by == "subspace"
                assert all(report.extras.values())

    def test_non_ascent_rejected(self, b2):
        with pytest.raises(PreprojError):
            mutation_check(b2.calculus, longest_element(b2.group), 0)

    def test_report_uses_one_based_vertex(self, b2):
        data = mutation_check(b2.calculus, b2.group.identity, 1).to_dict()
        assert data["vertex"] == 2
        assert data["w"] == "e"


# ─── Rigid Module Tests ───────────────────────────────────────


class TestRigid:
    def test_b2_members(self, b2):
        members = itrigid_set(b2.calculus)
        assert {m.label for m in members} == {"Pi e2", "Pi e1", "I1e1", "I2e2", "E2", "E1"}
        assert all(m.generates_node for m in members)

    def test_a2_count(self, a2):
        assert len(itrigid_set(a2.calculus)) == 4


# ─── Torsion Pair Tests ───────────────────────────────────────


class TestTorsionPairs:
    def test_identity(self, b2):
        report = torsion_pair_report(b2.calculus, b2.group.identity)
        assert report.left_duality and report.right_duality
        assert report.cogenerator_dims == (6, 4)

    def test_every_element(self, b2):
        for w in b2.group:
            report = torsion_pair_report(b2.calculus, w)
            assert report.left_duality and report.right_duality

    def test_longest_element(self, b2):
        report = torsion_pair_report(b2.calculus, longest_element(b2.group))
        assert report.cogenerator_dims == (0, 0)
