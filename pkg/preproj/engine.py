"""Per-instance pipeline: config → Cartan data → Π → W → ideals → lattice."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from pathlib import Path
from typing import Any

from preproj.algebra.cache import instance_hash, load_algebra, save_algebra
from preproj.algebra.core import FinDimAlgebra, assemble, check_relations
from preproj.algebra.linalg import Field
from preproj.algebra.rewriting import complete
from preproj.cartan import CartanClass, CartanData, QuiverPresentation, classify, quiver_presentation
from preproj.config import GlobalConfig, InstanceConfig, ProjectConfig
from preproj.errors import NotDynkinError
from preproj.modules.constructions import regular
from preproj.tilting.ideals import IdealCalculus
from preproj.tilting.lattice import SttiltLattice, sttilt_lattice
from preproj.weyl import WeakOrderPoset, WeylGroup, generate, weak_order

logger = logging.getLogger(__name__)


@dataclass
class InstanceContext:
    """Everything derived from one instance, built lazily."""
    config: InstanceConfig
    cartan: CartanData
    kind: CartanClass
    presentation: QuiverPresentation
    field: Field
    settings: GlobalConfig = dc_field(default_factory=GlobalConfig)
    algebra: FinDimAlgebra | None = None

    @property
    def name(self) -> str:
        return self.config.name

    def require_algebra(self) -> FinDimAlgebra:
        if self.algebra is None:
            raise NotDynkinError(
                f"Π is not constructed for {self.kind.tag.value} instance {self.name}",
                tag=self.kind.tag.value,
            )
        return self.algebra

    @cached_property
    def group(self) -> WeylGroup:
        return generate(self.cartan)

    @cached_property
    def poset(self) -> WeakOrderPoset:
        return weak_order(self.group)

    @cached_property
    def calculus(self) -> IdealCalculus:
        calculus = IdealCalculus(self.require_algebra(), self.group)
        calculus.warm(self.group)
        return calculus

    @cached_property
    def lattice(self) -> SttiltLattice:
        return sttilt_lattice(self.require_algebra(), self.group, self.calculus, check=False)

    def prepare(self) -> None:
        """Fill shared caches before work fans out to threads."""
        A = self.require_algebra()
        regular(A)
        regular(A.opposite())
        for node in self.lattice.ordered():
            _ = node.module

    def descriptor(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            **self.cartan.to_external(),
            "field": self.field.descriptor(),
            "classification": self.kind.tag.value,
        }
        if self.algebra is not None:
            data["dim"] = self.algebra.dim
        return data


def default_cache_path(cfg: InstanceConfig, settings: GlobalConfig, cd: CartanData, field_: Field) -> Path:
    if cfg.cache:
        return Path(cfg.cache)
    digest = instance_hash(cd, field_)[:12]
    return Path(settings.cache_dir) / f"{cfg.name}-{digest}.json"


def build_algebra(presentation: QuiverPresentation, field_: Field, max_degree: int | None = None) -> FinDimAlgebra:
    """Complete, assemble and check Π."""
    rs = complete(presentation, max_degree=max_degree, field=field_)
    algebra = assemble(rs)
    check_relations(algebra, presentation, strict=True)
    logger.debug("Built Π: dim %d, %d rules", algebra.dim, len(rs.rules))
    return algebra


class PreprojEngine:
    """Turns configured instances into contexts, using the algebra cache."""

    def __init__(self, config: ProjectConfig):
        self.config = config

    @property
    def settings(self) -> GlobalConfig:
        return self.config.global_

    def instance(self, name: str) -> InstanceConfig:
        return self.config.instance(name)

    def open(
        self,
        cfg: InstanceConfig,
        cache: str | Path | None = None,
        construct: bool = True,
        write_cache: bool = False,
    ) -> InstanceContext:
        """Validate cfg and, for Dynkin data, load or build Π.

        Non-Dynkin data yields a context without an algebra.
        """
        cd = cfg.resolve()
        kind = classify(cd)
        presentation = quiver_presentation(cd)
        field_ = cfg.ground_field()
        ctx = InstanceContext(cfg, cd, kind, presentation, field_, self.settings)
        if not construct:
            return ctx
        if not kind.is_dynkin:
            logger.warning("%s is %s: Π is not constructed", cfg.name, kind.tag.value)
            return ctx

        path = Path(cache) if cache else default_cache_path(cfg, self.settings, cd, field_)
        if path.exists() and not write_cache:
            ctx.algebra = load_algebra(path, presentation, field_)
            return ctx

        max_degree = cfg.max_degree or self.settings.max_degree
        ctx.algebra = build_algebra(presentation, field_, max_degree)
        if write_cache:
            save_algebra(ctx.algebra, path)
        return ctx
