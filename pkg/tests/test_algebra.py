"""Tests for completion, assembly, the oracle and the algebra cache."""

import json

import pytest
import sympy

from preproj.algebra.cache import instance_hash, load_algebra, save_algebra
from preproj.algebra.core import assemble, check_relations
from preproj.algebra.linalg import Field
from preproj.algebra.oracle import oracle_dimension
from preproj.algebra.rewriting import complete, default_max_degree
from preproj.cartan import minimal_symmetrizer, quiver_presentation, validate_gcm
from preproj.engine import build_algebra
from preproj.errors import CacheIntegrityError, NotDynkinError

B2 = [[2, -1], [-2, 2]]
A2 = [[2, -1], [-1, 2]]


def presentation(C, D=None):
    return quiver_presentation(validate_gcm(C, D or minimal_symmetrizer(C)))


# ─── Dimension Tests ──────────────────────────────────────────


class TestDimensions:
    @pytest.mark.parametrize("name", ["A1", "A1c2", "A1c3", "A2", "A2x2", "B2", "B2x2", "A3"])
    def test_desk_dimensions(self, open_instance, name):
        expected = {"A1": 1, "A1c2": 2, "A1c3": 3, "A2": 4, "A2x2": 8, "B2": 10, "B2x2": 20, "A3": 10}
        assert open_instance(name).algebra.dim == expected[name]

    @pytest.mark.parametrize("C, D", [([[2]], [1]), ([[2]], [2]), ([[2]], [3]), (A2, [1, 1]), (B2, [2, 1])])
    def test_oracle_agrees(self, C, D):
        p = presentation(C, D)
        A = assemble(complete(p))
        assert oracle_dimension(p).dim == A.dim

    def test_b2_projective_dimensions(self, b2):
        A = b2.algebra
        assert [A.block_dim(j, 0) for j in range(2)] == [4, 2]
        assert [A.block_dim(j, 1) for j in range(2)] == [2, 2]

    def test_default_degree_bound(self):
        assert default_max_degree(presentation(B2)) == 4 * 3 * 2

    def test_certificate_recorded(self, b2):
        assert b2.algebra.provenance["certificate_degree"] >= 1


# ─── Structure Tests ──────────────────────────────────────────


class TestStructure:
    def test_relations_hold(self, b2):
        report = check_relations(b2.algebra, b2.presentation)
        assert report.ok

    def test_associative(self, b2):
        assert b2.algebra.check_associativity() == []

    def test_idempotents_sum_to_one(self, b2):
        A = b2.algebra
        assert A.one() == {i: A.field.one for i in range(A.n)}

    def test_opposite_round_trip(self, b2):
        A = b2.algebra
        assert A.opposite().opposite() is A
        assert A.opposite().dim == A.dim

    def test_opposite_swaps_ends(self, b2):
        A = b2.algebra
        Aop = A.opposite()
        for k in range(A.dim):
            assert (Aop.source(k), Aop.target(k)) == (A.target(k), A.source(k))

    def test_prime_field_dimension(self):
        p = sympy.nextprime(2**31)
        field = Field.prime(p)
        cd = validate_gcm(B2, [2, 1])
        A = build_algebra(quiver_presentation(cd), field)
        assert A.dim == 10
        assert A.field.characteristic == p


class TestNegativeControl:
    def test_flipped_sign_breaks_relations(self, b2):
        corrupted = b2.presentation.flip_sign("P3(1)")
        report = check_relations(b2.algebra, corrupted)
        assert not report.ok
        assert [c.name for c in report.failures] == ["P3(1)"]

    def test_euclidean_not_constructed(self, engine):
        ctx = engine.open(engine.instance("B2-affine"))
        assert ctx.algebra is None
        with pytest.raises(NotDynkinError):
            ctx.require_algebra()


# ─── Field Tests ──────────────────────────────────────────────


class TestField:
    def test_parse(self):
        assert Field.parse("rational").characteristic == 0
        assert Field.parse("p:2147483659").characteristic == 2147483659

    def test_small_prime_refused(self):
        with pytest.raises(ValueError):
            Field.prime(101)

    def test_composite_refused(self):
        with pytest.raises(ValueError):
            Field.prime(2**31 + 1)

    def test_unknown_spelling(self):
        with pytest.raises(ValueError):
            Field.parse("reals")


# ─── Cache Tests ──────────────────────────────────────────────


class TestCache:
    def test_save_and_load(self, b2, tmp_path):
        path = save_algebra(b2.algebra, tmp_path / "b2.json")
        A = load_algebra(path, b2.presentation, b2.field)
        assert A.dim == b2.algebra.dim
        assert A.mult_table() == b2.algebra.mult_table()

    def test_tampered_cache_refused(self, b2, tmp_path):
        path = save_algebra(b2.algebra, tmp_path / "b2.json")
        data = json.loads(path.read_text())
        data["dim"] = 11
        path.write_text(json.dumps(data))
        with pytest.raises(CacheIntegrityError):
            load_algebra(path, b2.presentation, b2.field)

    def test_other_instance_refused(self, b2, a2, tmp_path):
        path = save_algebra(b2.algebra, tmp_path / "b2.json")
        with pytest.raises(CacheIntegrityError):
            load_algebra(path, a2.presentation, a2.field)

    def test_invalid_json_refused(self, b2, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(CacheIntegrityError):
            load_algebra(path, b2.presentation, b2.field)

    def test_hash_depends_on_field(self):
        cd = validate_gcm(B2, [2, 1])
        assert instance_hash(cd, Field.rational()) != instance_hash(cd, Field.prime(2147483659))
