"""Error hierarchy and classification.

Every failure the engine can report is a ``PreprojError`` subclass tagged
with an ``ErrorCategory``. The category decides the process exit code and
the one-line advice printed by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class ErrorCategory(Enum):
    """Classification of engine errors."""
    INPUT = "input"                # Bad Cartan data, bad config, refused construction
    INTEGRITY = "integrity"        # Corrupted or mismatched cache files
    ENGINE = "engine"              # Internal inconsistency (a bug, not a theorem)
    VERIFICATION = "verification"  # A checked statement failed on an instance


_EXIT_CODES = {
    ErrorCategory.INPUT: 2,
    ErrorCategory.INTEGRITY: 2,
    ErrorCategory.ENGINE: 1,
    ErrorCategory.VERIFICATION: 1,
}


class PreprojError(Exception):
    """Base class for all engine errors.

    ``details`` carries structured witness data (offending entries, block
    sizes, module dimensions) so reports can serialize it.
    """

    category: ErrorCategory = ErrorCategory.ENGINE

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: dict[str, Any] = details

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.category]


# ─── Input errors ─────────────────────────────────────────────


class InputError(PreprojError):
    category = ErrorCategory.INPUT


class ConfigError(InputError):
    """Instance or project file failed to parse or validate."""


class NotGCMError(InputError):
    """A generalized Cartan matrix axiom is violated."""


class NotSymmetrizerError(InputError):
    """D is not a positive diagonal with DC symmetric."""


class BadOrientationError(InputError):
    """Orientation has a cycle, a missing edge or a duplicate edge."""


class DisconnectedError(InputError):
    """Minimality of a symmetrizer only holds per component."""

    def __init__(self, message: str, symmetrizer: list[int], components: list[list[int]]):
        super().__init__(message, symmetrizer=symmetrizer, components=components)
        self.symmetrizer = symmetrizer
        self.components = components


class NotDynkinError(InputError):
    """Construction refused: Cartan data is not of Dynkin type."""


class NotFiniteError(InputError):
    """Weyl group is infinite (or the enumeration cap was hit)."""


class CharacteristicUnsupported(InputError):
    """Requested computation is not available in this characteristic."""


# ─── Integrity errors ─────────────────────────────────────────


class CacheIntegrityError(PreprojError):
    category = ErrorCategory.INTEGRITY


# ─── Engine errors ────────────────────────────────────────────


class NotFoundError(PreprojError):
    """A bounded search was exhausted although a hit must exist."""


class DegreeBoundExceeded(PreprojError):
    """Completion or the finiteness certificate did not finish in time."""


class RelationViolation(PreprojError):
    """A defining relation does not vanish in an algebra or on a module."""


# ─── Verification errors ──────────────────────────────────────


class VerificationError(PreprojError):
    category = ErrorCategory.VERIFICATION


class NotLocallyFreeError(VerificationError):
    """Some e_i M is not free over the truncated polynomial ring at i."""

    def __init__(self, message: str, vertex: int, block_sizes: list[int]):
        super().__init__(message, vertex=vertex, block_sizes=block_sizes)
        self.vertex = vertex
        self.block_sizes = block_sizes


class WordMismatchError(VerificationError):
    """Two reduced words of one Weyl element gave different ideals."""


class PairInvariantFailure(VerificationError):
    """A lattice node is not a support τ-tilting pair."""


class OrderMismatchError(VerificationError):
    """Weak order and Fac-inclusion order disagree on a pair."""


class FormulaMismatchError(VerificationError):
    """The mutation formula for ideals does not hold."""


class BijectionFailureError(VerificationError):
    """The meet-irreducible correspondence is not injective or not τ-rigid."""


class DualityFailureError(VerificationError):
    """A dual ideal module does not match the expected quotient."""


# ─── Classification ───────────────────────────────────────────


@dataclass
class ClassifiedError:
    """An error with routing metadata for the CLI."""
    category: ErrorCategory
    summary: str
    suggested_action: str
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.category]


_ACTIONS = {
    ErrorCategory.INPUT: "Check the instance file: Cartan matrix, symmetrizer, orientation and field.",
    ErrorCategory.INTEGRITY: "Delete the cache file and rebuild it with `preproj build`.",
    ErrorCategory.ENGINE: "Internal inconsistency; rerun with -v and keep the log.",
    ErrorCategory.VERIFICATION: "A checked statement failed; see the witness data in the report.",
}


def classify_exception(exc: BaseException) -> ClassifiedError:
    """Map any exception to a ClassifiedError."""
    if isinstance(exc, PreprojError):
        category = exc.category
        details = dict(exc.details)
        summary = f"{type(exc).__name__}: {exc.message}"
    else:
        category = ErrorCategory.ENGINE
        details = {}
        summary = f"{type(exc).__name__}: {exc}"

    return ClassifiedError(
        category=category,
        summary=summary,
        suggested_action=_ACTIONS[category],
        details=details,
    )
