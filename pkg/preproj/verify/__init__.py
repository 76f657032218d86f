"""Per-instance verification suites and their reports."""

from preproj.verify.report import CheckResult, CheckStatus, VerificationReport
from preproj.verify.suite import (
    SUITES,
    parse_sample,
    run_suites,
    verify_annihilators,
    verify_homological,
    verify_theorem_a,
    verify_theorem_b,
)

__all__ = [
    "SUITES",
    "CheckResult",
    "CheckStatus",
    "VerificationReport",
    "parse_sample",
    "run_suites",
    "verify_annihilators",
    "verify_homological",
    "verify_theorem_a",
    "verify_theorem_b",
]
