"""Algebra cache files.

A built algebra is persisted as sorted-key JSON: basis tokens, sparse
structure constants, generator images, field descriptor and provenance.
Loading refuses files whose instance hash or payload checksum does not
match.
"""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path as FilePath
from typing import Any

from preproj import __version__
from preproj.algebra.core import FinDimAlgebra
from preproj.algebra.linalg import Field, Vector
from preproj.algebra.paths import Path
from preproj.cartan import CartanData, PresentationMode, QuiverPresentation
from preproj.errors import CacheIntegrityError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _canonical(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def instance_hash(cd: CartanData, field: Field, mode: PresentationMode = PresentationMode.PI) -> str:
    """sha256 of (C, D, Ω, field, presentation mode)."""
    payload = {**cd.to_external(), "field": field.descriptor(), "mode": mode.value}
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


def _encode_vector(v: Vector, field: Field) -> list[list[Any]]:
    return [[k, field.to_json(c)] for k, c in sorted(v.items())]


def _decode_vector(entries: list[list[Any]], field: Field) -> Vector:
    out: Vector = {}
    for k, c in entries:
        value = field.from_json(str(c))
        if value:
            out[int(k)] = value
    return out


def encode_algebra(A: FinDimAlgebra) -> dict[str, Any]:
    if A.is_opposite:
        A = A.opposite()
    field = A.field
    mult = [
        [i, j, _encode_vector(v, field)]
        for (i, j), v in sorted(A.mult_table().items())
    ]
    payload = {
        "schema": SCHEMA_VERSION,
        "engine": __version__,
        "instance": instance_hash(A.presentation.cartan, field, A.presentation.mode),
        "cartan": A.presentation.cartan.to_external(),
        "mode": A.presentation.mode.value,
        "field": field.descriptor(),
        "dim": A.dim,
        "basis": [p.token() for p in A.basis],
        "mult": mult,
        "generators": {str(a): _encode_vector(v, field) for a, v in sorted(A.generators.items())},
        "provenance": dict(sorted(A.provenance.items())),
    }
    payload["checksum"] = hashlib.sha256(_canonical(payload).encode()).hexdigest()
    return payload


def save_algebra(A: FinDimAlgebra, path: str | FilePath) -> FilePath:
    """Write the cache file; returns its path."""
    path = FilePath(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(encode_algebra(A), sort_keys=True, indent=2) + "\n")
    logger.debug("Wrote algebra cache %s (dim %d)", path, A.dim)
    return path


def decode_algebra(data: dict[str, Any], presentation: QuiverPresentation, field: Field) -> FinDimAlgebra:
    if not isinstance(data, dict) or data.get("schema") != SCHEMA_VERSION:
        raise CacheIntegrityError("unsupported or missing cache schema", schema=data.get("schema") if isinstance(data, dict) else None)

    stored = data.get("checksum")
    body = {k: v for k, v in data.items() if k != "checksum"}
    actual = hashlib.sha256(_canonical(body).encode()).hexdigest()
    if stored != actual:
        raise CacheIntegrityError("cache checksum mismatch", expected=stored, actual=actual)

    expected = instance_hash(presentation.cartan, field, presentation.mode)
    if data.get("instance") != expected:
        raise CacheIntegrityError(
            "cache was built for a different instance",
            expected=expected,
            found=data.get("instance"),
        )

    try:
        basis = [Path.from_token(t, presentation) for t in data["basis"]]
        mult = {(int(i), int(j)): _decode_vector(v, field) for i, j, v in data["mult"]}
        generators = {int(a): _decode_vector(v, field) for a, v in data["generators"].items()}
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise CacheIntegrityError(f"malformed cache payload: {exc}") from exc

    if len(basis) != data.get("dim"):
        raise CacheIntegrityError("basis length does not match recorded dimension",
                                  dim=data.get("dim"), basis=len(basis))
    return FinDimAlgebra(
        presentation,
        field,
        basis,
        {k: v for k, v in mult.items() if v},
        generators,
        provenance=dict(data.get("provenance", {})),
    )


def load_algebra(path: str | FilePath, presentation: QuiverPresentation, field: Field) -> FinDimAlgebra:
    """Read a cache file, refusing corrupted or mismatched files."""
    path = FilePath(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CacheIntegrityError(f"cache file is not valid JSON: {exc.msg}", path=str(path), line=exc.lineno) from exc
    except OSError as exc:
        raise CacheIntegrityError(f"cannot read cache file: {exc}", path=str(path)) from exc
    algebra = decode_algebra(data, presentation, field)
    logger.debug("Loaded algebra cache %s (dim %d)", path, algebra.dim)
    return algebra
