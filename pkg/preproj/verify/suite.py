"""Verification suites over one instance.

Each suite expands into named checks (one per element, pair or family
member). Checks run concurrently in worker threads and merge into a single
report sorted by name.
"""

from __future__ import annotations

import asyncio
import logging
import random
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable

from preproj.algebra.core import check_relations
from preproj.errors import (
    BijectionFailureError,
    CharacteristicUnsupported,
    ConfigError,
    DualityFailureError,
    FormulaMismatchError,
    OrderMismatchError,
    PreprojError,
    VerificationError,
)
from preproj.modules.base import ModuleRep, dual
from preproj.modules.constructions import generalized_simple, regular
from preproj.modules.homological import Presentation, ext1, in_fac, projective_presentation, tensor_over, tor1
from preproj.modules.structure import annihilator, is_isomorphic, locally_free_rank, socle
from preproj.tilting.ideals import ideal_product
from preproj.tilting.lattice import (
    check_pair,
    descent_check,
    itrigid_set,
    mutation_check,
    torsion_pair_report,
)
from preproj.verify.report import CheckResult, CheckStatus, VerificationReport
from preproj.weyl import WeylElement, join_irreducibles, longest_element, meet_irreducibles

if TYPE_CHECKING:
    from preproj.engine import InstanceContext

logger = logging.getLogger(__name__)

SUITES = ("theorem-a", "theorem-b", "homological", "annihilators")


class HomologicalMismatch(VerificationError):
    """An Ext/Tor/tensor identity failed."""


class AnnihilatorMismatch(VerificationError):
    """ann(I_w) differs from I_{w₀w⁻¹}."""


@dataclass
class Check:
    """A named statement and the callable that verifies it.

    ``run`` raises on failure and may return data kept with the result.
    """
    name: str
    statement: str
    run: Callable[[], dict[str, Any] | None]


# ─── Execution ────────────────────────────────────────────────


def _json_safe(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_json_safe(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def execute(check: Check) -> CheckResult:
    """Run one check, turning exceptions into report entries."""
    start = time.perf_counter()
    try:
        data = check.run() or {}
    except CharacteristicUnsupported as e:
        logger.warning("Skipping %s: %s", check.name, e.message)
        return CheckResult(check.name, check.statement, CheckStatus.SKIPPED,
                           wall_time=time.perf_counter() - start, reason=e.message)
    except PreprojError as e:
        witness = {"error": type(e).__name__, "message": e.message, **_json_safe(e.details)}
        return CheckResult(check.name, check.statement, CheckStatus.FAIL, witness,
                           wall_time=time.perf_counter() - start)
    except Exception as e:
        logger.exception("Check %s crashed", check.name)
        witness = {"error": type(e).__name__, "message": str(e)}
        return CheckResult(check.name, check.statement, CheckStatus.FAIL, witness,
                           wall_time=time.perf_counter() - start)
    return CheckResult(check.name, check.statement, CheckStatus.PASS, _json_safe(data),
                       wall_time=time.perf_counter() - start)


async def run_checks(
    checks: list[Check],
    jobs: int = 4,
    on_progress: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    """Run checks in worker threads, at most ``jobs`` at a time."""
    semaphore = asyncio.Semaphore(jobs)

    async def run_with_semaphore(check: Check) -> CheckResult:
        async with semaphore:
            result = await asyncio.to_thread(execute, check)
            if on_progress:
                on_progress(result)
            return result

    return list(await asyncio.gather(*(run_with_semaphore(c) for c in checks)))


# ─── Sampling ─────────────────────────────────────────────────


def parse_sample(text: str | None) -> tuple[int, int] | None:
    """'SEED:K' → (seed, k)."""
    if not text:
        return None
    try:
        seed_text, k_text = text.split(":")
        seed, k = int(seed_text), int(k_text)
    except ValueError:
        raise ConfigError(f"--sample expects SEED:K, got '{text}'", field="sample") from None
    if k < 1:
        raise ConfigError("--sample needs K ≥ 1", field="sample")
    return seed, k


def select_elements(ctx: InstanceContext, sample: tuple[int, int] | None = None) -> list[WeylElement]:
    W = ctx.group
    elements = list(W)
    if sample is None or sample[1] >= len(elements):
        return elements
    seed, k = sample
    picked = random.Random(seed).sample(elements, k)
    logger.debug("Sampled %d of %d elements (seed %d)", k, len(elements), seed)
    return sorted(picked, key=W.index)


def _w(w: WeylElement) -> str:
    return f"w={w.label}"


# ─── Local freeness ───────────────────────────────────────────


def theorem_a_checks(ctx: InstanceContext, elements: list[WeylElement]) -> list[Check]:
    calculus, W, lattice = ctx.calculus, ctx.group, ctx.lattice
    checks: list[Check] = []

    def relations() -> dict:
        report = check_relations(ctx.require_algebra(), ctx.presentation, strict=True)
        return {"relations": [c.name for c in report.checks]}

    checks.append(Check("defining-relations", "every relation of the presentation vanishes in Π", relations))

    for w in elements:
        def ideal_free(w: WeylElement = w) -> dict:
            return {"rank": list(locally_free_rank(calculus.of(w).to_module(name=f"I_{w.label}")))}

        def summands_free(w: WeylElement = w) -> dict:
            ranks = {}
            for s in lattice.node(w).summands:
                if s.nonzero:
                    ranks[s.label] = list(locally_free_rank(s.module))
            return {"ranks": ranks}

        checks.append(Check(f"ideal-locally-free[{_w(w)}]", "I_w is locally free", ideal_free))
        checks.append(Check(f"summands-locally-free[{_w(w)}]", "every nonzero I_w e_k is locally free", summands_free))

        for i in W.ascents(w):
            def quotient_free(w: WeylElement = w, i: int = i) -> dict:
                ws = W.times_simple(w, i)
                Q = calculus.of(w).quotient_by(calculus.of(ws), name=f"I_{w.label}/I_{ws.label}")
                return {"dims": list(Q.dims), "rank": list(locally_free_rank(Q))}

            checks.append(Check(
                f"hasse-quotient-locally-free[{_w(w)},i={i+1}]",
                "I_w / I_{ws_i} is locally free",
                quotient_free,
            ))

    def rigid_free() -> dict:
        members = itrigid_set(calculus)
        return {"members": {m.label: list(locally_free_rank(m.module)) for m in members}}

    checks.append(Check("rigid-locally-free", "every I_w e_k with w meet-irreducible is locally free", rigid_free))
    return checks


# ─── Lattice, mutation, duality ───────────────────────────────


def theorem_b_checks(ctx: InstanceContext, elements: list[WeylElement]) -> list[Check]:
    A = ctx.require_algebra()
    calculus, W, poset, lattice = ctx.calculus, ctx.group, ctx.poset, ctx.lattice
    trials, seed = ctx.settings.iso_trials, ctx.settings.seed
    w0 = longest_element(W)
    checks: list[Check] = []

    def distinct() -> dict:
        seen: dict[tuple, WeylElement] = {}
        for w in W:
            key = calculus.of(w).key()
            if key in seen:
                raise FormulaMismatchError(
                    f"I_{seen[key].label} = I_{w.label}", elements=[seen[key].label, w.label]
                )
            seen[key] = w
        return {"ideals": len(seen)}

    checks.append(Check("ideals-distinct", "w ↦ I_w is injective", distinct))

    for w in elements:
        def words(w: WeylElement = w) -> dict:
            ideal = calculus.of(w, check_all_words=True)
            return {"dim": ideal.dim}

        def pair(w: WeylElement = w) -> dict:
            node = lattice.node(w)
            check_pair(node)
            return {"label": node.label, "projective_part": [k + 1 for k in node.projective_vertices]}

        def fac_row(u: WeylElement = w) -> dict:
            Mu = lattice.node(u).module
            above = []
            for v in poset.elements:
                expected = poset.leq(u, v)
                if in_fac(lattice.node(v).module, Mu) != expected:
                    raise OrderMismatchError(
                        f"{u.label} ≤ {v.label} is {expected} but Fac inclusion says otherwise",
                        u=u.label, v=v.label, weak_order=expected,
                    )
                if expected:
                    above.append(v.label)
            return {"fac_members": len(above)}

        def duality(w: WeylElement = w) -> dict:
            label = lattice.node(w).label
            return torsion_pair_report(calculus, w, label, trials, seed).to_dict()

        def complement(w: WeylElement = w) -> dict:
            v = W.multiply(w0, W.inverse(w))
            total = calculus.of(w).dim + calculus.of(v).dim
            if total != A.dim:
                raise DualityFailureError(
                    f"dim I_{w.label} + dim I_{v.label} = {total} ≠ {A.dim}",
                    w=w.label, complement=v.label, total=total, dim=A.dim,
                )
            return {"complement": v.label}

        def monoid(w: WeylElement = w) -> dict:
            for i in W.descents(w):
                if not descent_check(calculus, w, i):
                    raise FormulaMismatchError(f"I_{w.label} I_{i+1} ≠ I_{w.label}", w=w.label, vertex=i + 1)
            for i in W.ascents(w):
                ws = W.times_simple(w, i)
                if ideal_product(calculus.of(w), calculus.simple(i)) != calculus.of(ws):
                    raise FormulaMismatchError(f"I_{w.label} I_{i+1} ≠ I_{ws.label}", w=w.label, vertex=i + 1)
            return {"ascents": [i + 1 for i in W.ascents(w)], "descents": [i + 1 for i in W.descents(w)]}

        checks.extend([
            Check(f"reduced-words[{_w(w)}]", "every reduced word of w gives the same ideal", words),
            Check(f"sttilt-pair[{_w(w)}]", "(I_w, ⊕_{e_kI_w=0} Πe_k) is a support τ-tilting pair", pair),
            Check(f"fac-order[u={w.label}]", "u ≤_R v ⇔ I_v ∈ Fac I_u for every v", fac_row),
            Check(f"duality[{_w(w)}]", "D I_w ≅ Π/I_{w⁻¹w₀} and D I_w ≅ Π/I_{w₀w⁻¹}", duality),
            Check(f"dimension-complement[{_w(w)}]", "dim I_w + dim I_{w₀w⁻¹} = dim Π", complement),
            Check(f"monoid-relations[{_w(w)}]", "I_w I_i = I_{ws_i} on ascents and I_w on descents", monoid),
        ])

        for i in W.ascents(w):
            def mutation(w: WeylElement = w, i: int = i) -> dict:
                report = mutation_check(calculus, w, i)
                failed = sorted(k for k, ok in report.extras.items() if not ok)
                if failed:
                    raise FormulaMismatchError(
                        f"mutation of I_{w.label} at {i+1}: {', '.join(failed)}",
                        **report.to_dict(),
                    )
                return report.to_dict()

            checks.append(Check(
                f"mutation[{_w(w)},i={i+1}]",
                "I_{ws_i} = I_wI_ie_i ⊕ I_w(1-e_i), replacing only the summand at i",
                mutation,
            ))

    def bijection() -> dict:
        members = itrigid_set(calculus)
        mirr = meet_irreducibles(poset)
        jirr = join_irreducibles(poset)
        if len(members) != len(mirr) or len(jirr) != len(mirr):
            raise BijectionFailureError(
                f"{len(members)} rigid modules, {len(mirr)} meet- and {len(jirr)} join-irreducibles",
                members=len(members), mirr=len(mirr), jirr=len(jirr),
            )
        lost = [m.label for m in members if not m.generates_node]
        if lost:
            raise BijectionFailureError("Fac(I_we_k) ≠ Fac(I_w) for some members", members=lost)
        return {"members": sorted(m.label for m in members)}

    checks.append(Check(
        "rigid-bijection",
        "meet-irreducible w ↦ I_w e_k is a bijection onto indecomposable τ-rigid modules",
        bijection,
    ))
    return checks


# ─── Ext, Tor, tensor ─────────────────────────────────────────


def homological_checks(ctx: InstanceContext, elements: list[WeylElement]) -> list[Check]:
    A = ctx.require_algebra()
    Aop = A.opposite()
    calculus, W = ctx.calculus, ctx.group
    trials, seed = ctx.settings.iso_trials, ctx.settings.seed
    E = [generalized_simple(A, i) for i in range(A.n)]
    Eop = [generalized_simple(Aop, i) for i in range(A.n)]
    checks: list[Check] = []

    for w in elements:
        Iw = calculus.of(w)

        for i in range(A.n):
            if W.simple_times(i, w).length > w.length:
                def ext_left(w: WeylElement = w, i: int = i) -> dict:
                    M = calculus.of(w).to_module(name=f"I_{w.label}")
                    there, back = ext1(M, E[i]), ext1(E[i], M)
                    if there or back:
                        raise HomologicalMismatch(
                            f"Ext¹ between I_{w.label} and E{i+1} is nonzero",
                            w=w.label, vertex=i + 1, ext_to=there, ext_from=back,
                        )
                    return {}

                def tor_left(w: WeylElement = w, i: int = i) -> dict:
                    t = tor1(Eop[i], calculus.of(w).to_module(name=f"I_{w.label}"))
                    if t:
                        raise HomologicalMismatch(
                            f"Tor₁(E'{i+1}, I_{w.label}) ≠ 0", w=w.label, vertex=i + 1, tor=t
                        )
                    return {}

                checks.append(Check(
                    f"ext-vanishing[{_w(w)},i={i+1}]",
                    "Ext¹(I_w, E_i) = 0 = Ext¹(E_i, I_w) when ℓ(s_iw) > ℓ(w)",
                    ext_left,
                ))
                checks.append(Check(
                    f"tor-vanishing[{_w(w)},i={i+1}]",
                    "Tor₁(E'_i, I_w) = 0 when ℓ(s_iw) > ℓ(w)",
                    tor_left,
                ))

        for i in W.ascents(w):
            def ext_right(w: WeylElement = w, i: int = i) -> dict:
                M = calculus.of(w).to_right_module(name=f"I_{w.label}")
                there, back = ext1(M, Eop[i]), ext1(Eop[i], M)
                if there or back:
                    raise HomologicalMismatch(
                        f"Ext¹ over Π^op between I_{w.label} and E'{i+1} is nonzero",
                        w=w.label, vertex=i + 1, ext_to=there, ext_from=back,
                    )
                return {}

            def tor_right(w: WeylElement = w, i: int = i) -> dict:
                t = tor1(calculus.of(w).to_right_module(name=f"I_{w.label}"), E[i])
                if t:
                    raise HomologicalMismatch(f"Tor₁(I_{w.label}, E{i+1}) ≠ 0", w=w.label, vertex=i + 1, tor=t)
                return {}

            checks.append(Check(
                f"ext-vanishing-right[{_w(w)},i={i+1}]",
                "Ext¹(I_w, E'_i) = 0 = Ext¹(E'_i, I_w) over Π^op when ℓ(ws_i) > ℓ(w)",
                ext_right,
            ))
            checks.append(Check(
                f"tor-vanishing-right[{_w(w)},i={i+1}]",
                "Tor₁(I_w, E_i) = 0 when ℓ(ws_i) > ℓ(w)",
                tor_right,
            ))

        def dichotomy(w: WeylElement = w, Iw=Iw) -> dict:
            left = Iw.to_module(name=f"I_{w.label}")
            right = Iw.to_right_module(name=f"I_{w.label}")
            rows = {}
            for i in range(A.n):
                t_left, tor_l = tensor_over(Eop[i], left), tor1(Eop[i], left)
                t_right, tor_r = tensor_over(right, E[i]), tor1(right, E[i])
                left_quot = Iw.dim - ideal_product(calculus.simple(i), Iw).dim
                right_quot = Iw.dim - ideal_product(Iw, calculus.simple(i)).dim
                if (t_left and tor_l) or (t_right and tor_r) or t_left != left_quot or t_right != right_quot:
                    raise HomologicalMismatch(
                        f"tensor dichotomy fails for I_{w.label} at {i+1}",
                        w=w.label, vertex=i + 1,
                        tensor=[t_left, t_right], tor=[tor_l, tor_r], expected=[left_quot, right_quot],
                    )
                rows[str(i + 1)] = [t_left, t_right]
            return {"tensor_dims": rows}

        checks.append(Check(
            f"tensor-dichotomy[{_w(w)}]",
            "E'_i ⊗ I_w = 0 or Tor₁ = 0, with E'_i ⊗ I_w = 0 ⇔ I_iI_w = I_w (and the right version)",
            dichotomy,
        ))

        for i in range(A.n):
            if W.simple_times(i, w).length > w.length:
                def concentrated(w: WeylElement = w, i: int = i) -> dict:
                    siw = W.simple_times(i, w)
                    Iw, Isiw = calculus.of(w), calculus.of(siw)
                    Ii = calculus.simple(i)
                    if ideal_product(Ii, Isiw) != ideal_product(Ii, Iw):
                        raise HomologicalMismatch(f"I_i I_(s_iw) ≠ I_i I_w at w={w.label}", w=w.label, vertex=i + 1)
                    Q = Iw.quotient_by(Isiw, name=f"I_{w.label}/I_{siw.label}")
                    stray = [k + 1 for k, d in enumerate(Q.dims) if d and k != i]
                    if stray:
                        raise HomologicalMismatch(
                            f"I_{w.label}/I_{siw.label} is not concentrated at {i+1}",
                            w=w.label, vertex=i + 1, dims=list(Q.dims),
                        )
                    rank = locally_free_rank(Q)
                    return {"copies_of_E": rank[i]}

                checks.append(Check(
                    f"quotient-concentrated[{_w(w)},i={i+1}]",
                    "I_w / I_{s_iw} ≅ E_i^n when ℓ(s_iw) > ℓ(w)",
                    concentrated,
                ))

    family = _ext_family(ctx)
    presentations: dict[str, Presentation] = {name: projective_presentation(M) for name, M in family.items()}

    for name, M in family.items():
        def symmetric(name: str = name, M: ModuleRep = M) -> dict:
            dims = {}
            for other, N in family.items():
                there = ext1(M, N, presentations[name])
                back = ext1(N, M, presentations[other])
                if there != back:
                    raise HomologicalMismatch(
                        f"dim Ext¹({name}, {other}) = {there} but dim Ext¹({other}, {name}) = {back}",
                        pair=[name, other], dims=[there, back],
                    )
                if there:
                    dims[other] = there
            return {"nonzero": dims}

        checks.append(Check(f"ext-symmetry[M={name}]", "dim Ext¹(M, N) = dim Ext¹(N, M) over the family", symmetric))

    def self_injective() -> dict:
        if not is_isomorphic(dual(regular(A)), regular(Aop), trials, seed):
            raise HomologicalMismatch("D(Π) ≇ Π", dim=A.dim)
        return {"dim": A.dim}

    def right_socle() -> dict:
        dims = socle(regular(Aop)).module.dims
        if dims != (1,) * A.n:
            raise HomologicalMismatch("socle of Π over Π^op is not one simple per vertex", dims=list(dims))
        return {"dims": list(dims)}

    checks.append(Check("self-injective", "D(Π) ≅ Π", self_injective))
    checks.append(Check("socle-right-regular", "soc(Π_Π) has one simple summand per vertex", right_socle))

    for i in range(A.n):
        def socle_e(i: int = i) -> dict:
            dims = socle(Eop[i]).module.dims
            expected = tuple(int(k == i) for k in range(A.n))
            if dims != expected:
                raise HomologicalMismatch(f"soc E'{i+1} ≠ S'{i+1}", vertex=i + 1, dims=list(dims))
            return {}

        checks.append(Check(f"socle-generalized-simple[i={i+1}]", "soc E'_i = S'_i", socle_e))
    return checks


def _ext_family(ctx: InstanceContext) -> dict[str, ModuleRep]:
    """{Π} ∪ {E_i} ∪ {I_w ≠ 0}, keyed by display name."""
    A = ctx.require_algebra()
    family: dict[str, ModuleRep] = {"Pi": regular(A)}
    for i in range(A.n):
        family[f"E{i+1}"] = generalized_simple(A, i)
    for w in ctx.group:
        ideal = ctx.calculus.of(w)
        if w.length and not ideal.is_zero():
            family[f"I_{w.label}"] = ideal.to_module(name=f"I_{w.label}")
    return family


# ─── Annihilators ─────────────────────────────────────────────


def annihilator_checks(ctx: InstanceContext, elements: list[WeylElement]) -> list[Check]:
    calculus, W, lattice = ctx.calculus, ctx.group, ctx.lattice
    w0 = longest_element(W)
    checks: list[Check] = []

    for w in elements:
        def ann(w: WeylElement = w) -> dict:
            v = W.multiply(w0, W.inverse(w))
            found = annihilator(calculus.of(w).to_module(name=f"I_{w.label}"))
            if found != calculus.of(v).space:
                raise AnnihilatorMismatch(
                    f"ann I_{w.label} ≠ I_{v.label}", w=w.label, expected=v.label, dims=[found.dim, calculus.of(v).dim]
                )
            return {"annihilator": f"I_{v.label}", "dim": found.dim}

        checks.append(Check(f"annihilator[{_w(w)}]", "ann I_w = I_{w₀w⁻¹}", ann))

    def faithful() -> dict:
        zero = [w for w in W if annihilator(calculus.of(w).to_module()).dim == 0]
        if [w.label for w in zero] != ["e"]:
            raise AnnihilatorMismatch("faithful nodes other than Π", faithful=[w.label for w in zero])
        return {"faithful": "Pi", "sincere": [n.label for n in lattice.sincere()]}

    checks.append(Check("faithful-unique", "Π is the only faithful node of the lattice", faithful))
    return checks


# ─── Entry points ─────────────────────────────────────────────


_BUILDERS: dict[str, Callable[[InstanceContext, list[WeylElement]], list[Check]]] = {
    "theorem-a": theorem_a_checks,
    "theorem-b": theorem_b_checks,
    "homological": homological_checks,
    "annihilators": annihilator_checks,
}


def expand_suites(names: list[str] | tuple[str, ...]) -> list[str]:
    out: list[str] = []
    for name in names:
        picked = SUITES if name == "all" else (name,)
        for suite in picked:
            if suite not in _BUILDERS:
                raise ConfigError(f"unknown suite '{suite}' (known: {', '.join(SUITES)}, all)", field="suite")
            if suite not in out:
                out.append(suite)
    return out


def collect_checks(
    ctx: InstanceContext,
    suites: list[str] | tuple[str, ...],
    sample: tuple[int, int] | None = None,
) -> list[Check]:
    ctx.prepare()
    elements = select_elements(ctx, sample)
    checks: list[Check] = []
    for suite in expand_suites(suites):
        built = _BUILDERS[suite](ctx, elements)
        logger.debug("Suite %s: %d checks", suite, len(built))
        checks.extend(built)
    return checks


def run_suites(
    ctx: InstanceContext,
    suites: list[str] | tuple[str, ...] = ("all",),
    jobs: int | None = None,
    sample: tuple[int, int] | None = None,
    on_progress: Callable[[CheckResult], None] | None = None,
) -> VerificationReport:
    """Build, run and merge the requested suites for one instance."""
    checks = collect_checks(ctx, suites, sample)
    results = asyncio.run(run_checks(checks, jobs or ctx.settings.jobs, on_progress))
    report = VerificationReport(ctx.descriptor(), results).sorted()
    counts = report.counts()
    logger.debug("%s: %d pass, %d fail, %d skipped", ctx.name, counts["pass"], counts["fail"], counts["skipped"])
    return report


def verify_theorem_a(ctx: InstanceContext, **kwargs: Any) -> VerificationReport:
    return run_suites(ctx, ["theorem-a"], **kwargs)


def verify_theorem_b(ctx: InstanceContext, **kwargs: Any) -> VerificationReport:
    return run_suites(ctx, ["theorem-b"], **kwargs)


def verify_homological(ctx: InstanceContext, **kwargs: Any) -> VerificationReport:
    return run_suites(ctx, ["homological"], **kwargs)


def verify_annihilators(ctx: InstanceContext, **kwargs: Any) -> VerificationReport:
    return run_suites(ctx, ["annihilators"], **kwargs)
