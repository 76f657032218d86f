"""Shared fixtures: desk instances built once per session."""

import pytest

from preproj.config import DEFAULT_INSTANCES, ProjectConfig
from preproj.engine import InstanceContext, PreprojEngine


@pytest.fixture(scope="session")
def engine(tmp_path_factory) -> PreprojEngine:
    cache_dir = tmp_path_factory.mktemp("cache")
    config = ProjectConfig.model_validate({
        "global": {"jobs": 2, "cache_dir": str(cache_dir)},
        "instances": {
            **DEFAULT_INSTANCES,
            "B2-affine": {
                "name": "B2-affine",
                "cartan": [[2, -2, 0], [-1, 2, -1], [0, -2, 2]],
                "symmetrizer": [1, 2, 1],
            },
        },
    })
    return PreprojEngine(config)


@pytest.fixture(scope="session")
def open_instance(engine):
    """Factory returning a cached, fully built context per instance name."""
    opened: dict[str, InstanceContext] = {}

    def _open(name: str) -> InstanceContext:
        if name not in opened:
            opened[name] = engine.open(engine.instance(name))
        return opened[name]

    return _open


@pytest.fixture(scope="session")
def b2(open_instance) -> InstanceContext:
    return open_instance("B2")


@pytest.fixture(scope="session")
def a2(open_instance) -> InstanceContext:
    return open_instance("A2")


@pytest.fixture(scope="session")
def a1(open_instance) -> InstanceContext:
    return open_instance("A1")
