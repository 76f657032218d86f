"""Tests for the project file, instance files and environment overrides."""

import pytest

from preproj.config import (
    DEFAULT_INSTANCES,
    EngineSettings,
    InstanceConfig,
    PrimeFieldSpec,
    load_config,
    load_instance,
)
from preproj.errors import ConfigError, NotSymmetrizerError

B2 = [[2, -1], [-2, 2]]


# ─── Project File Tests ───────────────────────────────────────


class TestLoadConfig:
    def test_reads_file_and_merges_defaults(self, tmp_path):
        path = tmp_path / "preproj.yaml"
        path.write_text(
            "global:\n"
            "  jobs: 2\n"
            "instances:\n"
            "  mine:\n"
            "    cartan: [[2, -1], [-2, 2]]\n"
        )
        config = load_config(path, settings=EngineSettings())
        assert config.global_.jobs == 2
        assert config.instance("mine").name == "mine"
        assert set(DEFAULT_INSTANCES) <= set(config.instances)

    def test_project_entry_shadows_default(self, tmp_path):
        path = tmp_path / "preproj.yaml"
        path.write_text("instances:\n  B2:\n    cartan: [[2, -1], [-2, 2]]\n    symmetrizer: [4, 2]\n")
        config = load_config(path, settings=EngineSettings())
        assert config.instance("B2").symmetrizer == [4, 2]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "preproj.yaml"
        path.write_text("")
        config = load_config(path, settings=EngineSettings())
        assert config.global_.jobs == 4
        assert "G2" in config.instances

    def test_found_by_walking_up(self, tmp_path, monkeypatch):
        (tmp_path / "preproj.yaml").write_text("global:\n  seed: 5\n")
        nested = tmp_path / "a" / "b"
        nested.mkdir(parents=True)
        monkeypatch.chdir(nested)
        assert load_config(settings=EngineSettings()).global_.seed == 5

    def test_environment_override(self, tmp_path, monkeypatch):
        path = tmp_path / "preproj.yaml"
        path.write_text("global:\n  jobs: 2\n")
        monkeypatch.setenv("PREPROJ_JOBS", "7")
        monkeypatch.setenv("PREPROJ_CACHE_DIR", str(tmp_path / "c"))
        config = load_config(path)
        assert config.global_.jobs == 7
        assert config.global_.cache_dir == str(tmp_path / "c")

    def test_missing_explicit_path(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.yaml")

    def test_yaml_error_has_line(self, tmp_path):
        path = tmp_path / "preproj.yaml"
        path.write_text("global:\n  jobs: 2\n  seed: [1,\n")
        with pytest.raises(ConfigError) as exc:
            load_config(path, settings=EngineSettings())
        assert exc.value.details["line"] >= 3

    def test_validation_error_names_field(self, tmp_path):
        path = tmp_path / "preproj.yaml"
        path.write_text("global:\n  jobs: 0\n")
        with pytest.raises(ConfigError) as exc:
            load_config(path, settings=EngineSettings())
        assert "jobs" in exc.value.details["field"]

    def test_top_level_must_be_mapping(self, tmp_path):
        path = tmp_path / "preproj.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_config(path, settings=EngineSettings())

    def test_unknown_instance(self, tmp_path):
        path = tmp_path / "preproj.yaml"
        path.write_text("")
        config = load_config(path, settings=EngineSettings())
        with pytest.raises(ConfigError) as exc:
            config.instance("E9")
        assert "B2" in exc.value.message


# ─── Instance File Tests ──────────────────────────────────────


class TestLoadInstance:
    def test_json_file(self, tmp_path):
        path = tmp_path / "b2.json"
        path.write_text('{"cartan": [[2, -1], [-2, 2]], "symmetrizer": [2, 1], "orientation": [[1, 2]]}')
        cfg = load_instance(path)
        assert cfg.name == "b2"
        cd = cfg.resolve()
        assert cd.D == (2, 1)
        assert cd.omega == frozenset({(0, 1)})

    def test_yaml_file_with_prime(self, tmp_path):
        path = tmp_path / "g2.yaml"
        path.write_text("cartan: [[2, -1], [-3, 2]]\nfield:\n  prime: 2147483659\n")
        cfg = load_instance(path)
        assert isinstance(cfg.field, PrimeFieldSpec)
        assert cfg.ground_field().characteristic == 2147483659

    def test_missing_cartan(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"symmetrizer": [1]}')
        with pytest.raises(ConfigError) as exc:
            load_instance(path)
        assert exc.value.details["field"] == "cartan"

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("[1, 2]\n")
        with pytest.raises(ConfigError):
            load_instance(path)


class TestInstanceConfig:
    def test_minimal_symmetrizer(self):
        assert InstanceConfig(cartan=B2).symmetrizer_values() == [2, 1]

    def test_multiple_symmetrizer(self):
        cfg = InstanceConfig.model_validate({"cartan": B2, "symmetrizer": {"multiple": 2}})
        assert cfg.symmetrizer_values() == [4, 2]

    def test_wrong_symmetrizer_surfaces_on_resolve(self):
        with pytest.raises(NotSymmetrizerError):
            InstanceConfig(cartan=B2, symmetrizer=[1, 1]).resolve()

    def test_orientation_is_one_based(self):
        cfg = InstanceConfig.model_validate({
            "cartan": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
            "orientation": [[2, 1], [3, 2]],
        })
        assert cfg.resolve().omega == frozenset({(1, 0), (2, 1)})

    def test_field_override(self):
        cfg = InstanceConfig(cartan=B2).with_overrides("p:2147483659", max_degree=30)
        assert cfg.field == PrimeFieldSpec(prime=2147483659)
        assert cfg.max_degree == 30
        assert cfg.with_overrides("rational").field == "rational"

    def test_small_prime_override_refused(self):
        with pytest.raises(ConfigError):
            InstanceConfig(cartan=B2).with_overrides("p:101")

    def test_small_prime_in_file_refused(self):
        cfg = InstanceConfig.model_validate({"cartan": B2, "field": {"prime": 101}})
        with pytest.raises(ConfigError):
            cfg.ground_field()
