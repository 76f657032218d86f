"""Tests for module constructions, Hom/Ext/Tor and structural invariants over B2."""

import logging

import pytest

from preproj.algebra.linalg import zeros
from preproj.errors import NotLocallyFreeError, PreprojError
from preproj.modules import (
    annihilator,
    direct_sum,
    dual,
    ext1,
    generalized_simple,
    hom_dim,
    hom_space,
    in_fac,
    is_isomorphic,
    is_locally_free,
    is_projective,
    is_tau_rigid,
    locally_free_rank,
    num_indec_summands,
    projective,
    projective_presentation,
    radical,
    regular,
    simple,
    socle,
    tau,
    tensor_over,
    tor1,
    zero_module,
)
from preproj.modules.base import cokernel, identity_map, image, kernel
from preproj.tilting.ideals import IdealSubspace, idempotent_ideal


# ─── Construction Tests ───────────────────────────────────────


class TestConstructions:
    def test_projective_dims(self, b2):
        A = b2.algebra
        assert projective(A, 0).dims == (4, 2)
        assert projective(A, 1).dims == (2, 2)

    def test_regular_dims(self, b2):
        assert regular(b2.algebra).dims == (6, 4)

    def test_generalized_simples(self, b2):
        A = b2.algebra
        assert generalized_simple(A, 0).dims == (2, 0)
        assert generalized_simple(A, 1).dims == (0, 1)

    def test_right_projectives(self, b2):
        Aop = b2.algebra.opposite()
        assert projective(Aop, 0).algebra is Aop
        assert sum(projective(Aop, i).dim for i in range(2)) == b2.algebra.dim

    def test_zero_module(self, b2):
        Z = zero_module(b2.algebra)
        assert Z.is_zero()
        assert Z.dims == (0, 0)

    def test_direct_sum_dims(self, b2):
        A = b2.algebra
        S = direct_sum([projective(A, 0), generalized_simple(A, 1)]).module
        assert S.dims == (4, 3)

    def test_wrong_vertex_count_rejected(self, b2):
        from preproj.modules.base import ModuleRep
        with pytest.raises(PreprojError):
            ModuleRep(b2.algebra, (1,))


# ─── Module Map Tests ─────────────────────────────────────────


class TestModuleMaps:
    def test_identity_has_zero_kernel_and_cokernel(self, b2):
        P = projective(b2.algebra, 0)
        f = identity_map(P)
        assert kernel(f, P).module.is_zero()
        assert cokernel(f, P).module.is_zero()
        assert image(f, P).module.dims == P.dims

    def test_zero_map_kernel_is_everything(self, b2):
        A = b2.algebra
        P, E = projective(A, 0), generalized_simple(A, 0)
        f = zeros(E.dim, P.dim, P.field)
        assert kernel(f, P).module.dims == P.dims
        assert image(f, E).module.is_zero()
        assert cokernel(f, E).module.dims == E.dims


# ─── Local Freeness Tests ─────────────────────────────────────


class TestLocallyFree:
    def test_regular_rank(self, b2):
        assert list(locally_free_rank(regular(b2.algebra))) == [3, 4]

    def test_projective_rank(self, b2):
        assert list(locally_free_rank(projective(b2.algebra, 0))) == [2, 2]

    def test_generalized_simple_rank(self, b2):
        assert list(locally_free_rank(generalized_simple(b2.algebra, 0))) == [1, 0]

    def test_simple_is_not_locally_free(self, b2):
        S = simple(b2.algebra, 0)
        with pytest.raises(NotLocallyFreeError) as exc:
            locally_free_rank(S)
        assert exc.value.details["vertex"] == 1
        assert exc.value.details["block_sizes"] == [1]
        assert not is_locally_free(S)

    def test_simple_at_c1_vertex_is_locally_free(self, b2):
        assert is_locally_free(simple(b2.algebra, 1))

    def test_block_sizes(self, b2):
        view = projective(b2.algebra, 0).restrict(0)
        assert view.block_sizes() == [2, 2]
        assert view.is_free()


# ─── Hom and Isomorphism Tests ────────────────────────────────


class TestHom:
    def test_hom_from_projective(self, b2):
        A = b2.algebra
        assert hom_dim(projective(A, 0), generalized_simple(A, 0)) == 2
        assert hom_dim(projective(A, 1), generalized_simple(A, 0)) == 0

    def test_hom_space_basis(self, b2):
        A = b2.algebra
        P, E = projective(A, 0), generalized_simple(A, 0)
        H = hom_space(P, E)
        assert H.dim == len(H.positions) == 2
        assert all(f.shape == (E.dim, P.dim) for f in H.maps)

    def test_presentation_of_generalized_simple(self, b2):
        pres = projective_presentation(generalized_simple(b2.algebra, 0))
        assert pres.P0.vertices == [0]
        assert pres.P1.rank >= 1

    def test_isomorphism(self, b2):
        A = b2.algebra
        assert is_isomorphic(projective(A, 0), projective(A, 0))
        assert not is_isomorphic(projective(A, 0), projective(A, 1))

    def test_sweep_fallback_logs_at_debug(self, b2, caplog):
        P = projective(b2.algebra, 0)
        with caplog.at_level(logging.DEBUG, logger="preproj.modules.structure"):
            is_isomorphic(P, P, trials=0)
        assert any("sweeping" in r.getMessage() for r in caplog.records)
        assert all(r.levelno < logging.WARNING for r in caplog.records)

    def test_simple_at_c1_vertex_is_generalized_simple(self, b2):
        A = b2.algebra
        assert is_isomorphic(simple(A, 1), generalized_simple(A, 1))

    def test_fac(self, b2):
        A = b2.algebra
        assert in_fac(generalized_simple(A, 0), projective(A, 0))
        assert not in_fac(projective(A, 0), generalized_simple(A, 0))
        assert in_fac(zero_module(A), generalized_simple(A, 1))


# ─── Homological Tests ────────────────────────────────────────


class TestHomological:
    def test_projectivity(self, b2):
        A = b2.algebra
        assert is_projective(projective(A, 0))
        assert not is_projective(generalized_simple(A, 0))

    def test_tau_of_projective_vanishes(self, b2):
        assert tau(projective(b2.algebra, 1)).is_zero()

    def test_tau_rigid(self, b2):
        A = b2.algebra
        assert is_tau_rigid(projective(A, 0))
        assert is_tau_rigid(generalized_simple(A, 0))

    def test_ext_against_regular(self, b2):
        A = b2.algebra
        R = regular(A)
        E = generalized_simple(A, 0)
        assert ext1(R, E) == 0
        assert ext1(E, R) == 0

    def test_tensor_with_regular(self, b2):
        A = b2.algebra
        E_right = generalized_simple(A.opposite(), 0)
        assert tensor_over(E_right, regular(A)) == 2
        assert tor1(E_right, regular(A)) == 0

    def test_tensor_needs_opposite_sides(self, b2):
        A = b2.algebra
        with pytest.raises(PreprojError):
            tensor_over(regular(A), regular(A))


# ─── Structure Tests ──────────────────────────────────────────


class TestStructure:
    def test_dual_switches_side(self, b2):
        A = b2.algebra
        D = dual(projective(A, 0))
        assert D.algebra is A.opposite()
        assert D.dims == (4, 2)

    def test_annihilators(self, b2):
        A = b2.algebra
        assert annihilator(regular(A)).dim == 0
        assert annihilator(zero_module(A)).dim == A.dim

    def test_annihilator_of_generalized_simple(self, b2):
        A = b2.algebra
        for i in range(2):
            assert IdealSubspace(A, annihilator(generalized_simple(A, i))) == idempotent_ideal(A, i)

    def test_socles(self, b2):
        A = b2.algebra
        assert socle(regular(A)).module.dims == (1, 1)
        assert socle(generalized_simple(A, 0)).module.dims == (1, 0)

    def test_radical(self, b2):
        assert radical(projective(b2.algebra, 0)).module.dims == (3, 2)

    def test_summand_counts(self, b2):
        A = b2.algebra
        assert num_indec_summands(projective(A, 0)).total == 1
        count = num_indec_summands(regular(A))
        assert (count.total, count.basic) == (2, 2)

    def test_repeated_summand(self, b2):
        A = b2.algebra
        M = direct_sum([generalized_simple(A, 0), generalized_simple(A, 0)]).module
        count = num_indec_summands(M)
        assert (count.total, count.basic) == (2, 1)
