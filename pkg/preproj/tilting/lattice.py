"""The support τ-tilting lattice of Π, built from the ideals I_w.

Each w ∈ W gives the support τ-tilting pair (I_w, ⊕ Πe_k) with k running over
the vertices where e_k I_w = 0.
Hasse edges come from the weak order; along w → ws_i the pair is
mutated at vertex i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

from preproj.algebra.core import FinDimAlgebra
from preproj.algebra.linalg import Echelon
from preproj.errors import (
    BijectionFailureError,
    DualityFailureError,
    FormulaMismatchError,
    OrderMismatchError,
    PairInvariantFailure,
    PreprojError,
)
from preproj.modules.base import ModuleRep, direct_sum, dual
from preproj.modules.constructions import generalized_simple, ideal_module, projective, zero_module
from preproj.modules.homological import hom_dim, in_fac, is_tau_rigid
from preproj.modules.structure import DEFAULT_TRIALS, is_isomorphic, num_indec_summands
from preproj.tilting.ideals import IdealCalculus, IdealSubspace, ideal_product
from preproj.weyl import WeakOrderPoset, WeylElement, WeylGroup, longest_element, meet_irreducibles, weak_order

logger = logging.getLogger(__name__)


# ─── Nodes ────────────────────────────────────────────────────


@dataclass
class Summand:
    """I_w e_k with its display label ("" when zero)."""
    vertex: int
    module: ModuleRep
    space: Echelon
    label: str

    @property
    def nonzero(self) -> bool:
        return not self.module.is_zero()


@dataclass
class SttiltNode:
    w: WeylElement
    ideal: IdealSubspace
    summands: list[Summand]

    @property
    def label(self) -> str:
        present = [s for s in self.summands if s.nonzero]
        if not present:
            return "0"
        if all(s.label == f"Pi e{s.vertex+1}" for s in self.summands):
            return "Pi"
        return "+".join(s.label for s in present)

    @property
    def projective_vertices(self) -> list[int]:
        """Vertices k of the projective part P = ⊕ Πe_k, those outside the support of I_w."""
        dims = self.module.dims
        return [k for k in range(len(dims)) if not dims[k]]

    @cached_property
    def module(self) -> ModuleRep:
        A = self.ideal.algebra
        present = [s.module for s in self.summands if s.nonzero]
        if not present:
            return zero_module(A)
        return direct_sum(present, name=f"I_{self.w.label}").module

    def to_dict(self) -> dict:
        return {
            "w": self.w.label,
            "label": self.label,
            "dim": self.ideal.dim,
            "summands": [
                {"vertex": s.vertex + 1, "label": s.label, "dims": list(s.module.dims)}
                for s in self.summands
            ],
            "projective_part": [k + 1 for k in self.projective_vertices],
        }


class SummandLabeler:
    """Names I_w e_k as Πe_k, E_k, or I_u e_k for the shortest u giving the same subspace."""

    def __init__(self, calculus: IdealCalculus):
        self.calculus = calculus
        A = calculus.algebra
        self._projective_dims = [len(A.with_source(k)) for k in range(A.n)]
        self._simple_dims = [A.presentation.cartan.D[k] for k in range(A.n)]

    def __call__(self, k: int, space: Echelon, module: ModuleRep) -> str:
        if space.dim == 0:
            return ""
        if space.dim == self._projective_dims[k]:
            return f"Pi e{k+1}"
        A = self.calculus.algebra
        if module.dims == tuple(self._simple_dims[k] if j == k else 0 for j in range(A.n)):
            if is_isomorphic(module, generalized_simple(A, k)):
                return f"E{k+1}"
        for u in self.calculus.group:
            if self.calculus.of(u).summand_space(k) == space:
                return f"I{''.join(str(i + 1) for i in u.word)}e{k+1}"
        raise PreprojError(f"no label for summand {k+1} of dimension {space.dim}")


def build_node(w: WeylElement, calculus: IdealCalculus, labeler: SummandLabeler | None = None) -> SttiltNode:
    labeler = labeler or SummandLabeler(calculus)
    ideal = calculus.of(w)
    A = calculus.algebra
    summands = []
    for k in range(A.n):
        space = ideal.summand_space(k)
        module = ideal_module(A, space.rows, name=f"I_{w.label}e{k+1}")
        summands.append(Summand(k, module, space, labeler(k, space, module)))
    return SttiltNode(w, ideal, summands)


def check_pair(node: SttiltNode) -> None:
    """Support τ-tilting pair invariants of (M, P) at one node."""
    A = node.ideal.algebra
    present = [s for s in node.summands if s.nonzero]
    if len(present) + len(node.projective_vertices) != A.n:
        raise PairInvariantFailure(f"|M| + |P| ≠ {A.n} at {node.w.label}", w=node.w.label)
    for s in present:
        count = num_indec_summands(s.module)
        if count.total != 1:
            raise PairInvariantFailure(
                f"I_{node.w.label}e{s.vertex+1} is decomposable",
                w=node.w.label, vertex=s.vertex + 1, summands=count.total,
            )
    for a, s in enumerate(present):
        for t in present[a + 1:]:
            if is_isomorphic(s.module, t.module):
                raise PairInvariantFailure(
                    f"I_{node.w.label} is not basic", w=node.w.label, vertices=[s.vertex + 1, t.vertex + 1]
                )
    if not is_tau_rigid(node.module):
        raise PairInvariantFailure(f"I_{node.w.label} is not τ-rigid", w=node.w.label)
    for k in node.projective_vertices:
        if hom_dim(projective(A, k), node.module):
            raise PairInvariantFailure(
                f"Hom(Πe{k+1}, I_{node.w.label}) ≠ 0", w=node.w.label, vertex=k + 1,
            )


# ─── Lattice ──────────────────────────────────────────────────


@dataclass
class SttiltLattice:
    poset: WeakOrderPoset
    nodes: dict[WeylElement, SttiltNode]
    edges: list[tuple[WeylElement, WeylElement, int]] = field(default_factory=list)

    def node(self, w: WeylElement) -> SttiltNode:
        return self.nodes[w]

    def ordered(self) -> list[SttiltNode]:
        return [self.nodes[w] for w in self.poset.elements]

    def sincere(self) -> list[SttiltNode]:
        """Nodes with an empty projective part."""
        return [n for n in self.ordered() if not n.projective_vertices]


def sttilt_lattice(
    A: FinDimAlgebra,
    W: WeylGroup,
    calculus: IdealCalculus | None = None,
    check: bool = True,
) -> SttiltLattice:
    """One node per w; edges w → ws_i for ascents i, reversed in Fac order."""
    calculus = calculus or IdealCalculus(A, W)
    calculus.warm(W)
    poset = weak_order(W)
    labeler = SummandLabeler(calculus)
    nodes = {w: build_node(w, calculus, labeler) for w in W}
    edges = sorted(poset.hasse_edges, key=lambda e: (W.index(e[0]), W.index(e[1])))
    lattice = SttiltLattice(poset, nodes, edges)
    logger.debug("sttilt lattice: %d nodes, %d edges", len(nodes), len(edges))
    if check:
        for node in lattice.ordered():
            check_pair(node)
        check_order(lattice)
    return lattice


def check_order(lattice: SttiltLattice) -> None:
    """u ≤_R v ⇔ I_v ∈ Fac(I_u), for every pair."""
    poset = lattice.poset
    for u in poset.elements:
        Mu = lattice.nodes[u].module
        for v in poset.elements:
            Mv = lattice.nodes[v].module
            expected = poset.leq(u, v)
            if in_fac(Mv, Mu) != expected:
                raise OrderMismatchError(
                    f"{u.label} ≤ {v.label} is {expected} but Fac inclusion says otherwise",
                    u=u.label, v=v.label, weak_order=expected,
                )


# ─── Mutation ─────────────────────────────────────────────────


@dataclass
class MutationReport:
    w: WeylElement
    vertex: int
    product_vanishes: bool
    held_by: str
    extras: dict[str, bool]

    def to_dict(self) -> dict:
        return {
            "w": self.w.label,
            "vertex": self.vertex + 1,
            "case": "I_w I_i e_i = 0" if self.product_vanishes else "I_w I_i e_i ≠ 0",
            "held_by": self.held_by,
            "extras": dict(sorted(self.extras.items())),
        }


def mutation_check(calculus: IdealCalculus, w: WeylElement, i: int) -> MutationReport:
    """I_{ws_i} = I_w I_i e_i ⊕ I_w(1 − e_i) for an ascent i of w."""
    A, W = calculus.algebra, calculus.group
    ws = W.times_simple(w, i)
    if ws.length <= w.length:
        raise PreprojError(f"s{i+1} is not an ascent of {w.label}", w=w.label, vertex=i + 1)

    Iw = calculus.of(w)
    Iws = calculus.of(ws)
    product = ideal_product(Iw, calculus.simple(i))
    others = [k for k in range(A.n) if k != i]
    top = product.summand_space(i)

    subspace_ok = Iws.summand_space(i) == top and Iws.part(others) == Iw.part(others)
    held_by = "subspace"
    if not subspace_ok:
        target = Iws.to_module(name=f"I_{ws.label}")
        pieces = [ideal_module(A, top.rows, name="I_wI_ie_i"), Iw.part_module(others)]
        pieces = [p for p in pieces if not p.is_zero()]
        if pieces and is_isomorphic(target, direct_sum(pieces).module):
            held_by = "isomorphism"
            logger.warning("Mutation at (%s, %d) holds only up to isomorphism", w.label, i + 1)
        else:
            raise FormulaMismatchError(
                f"I_{ws.label} differs from I_wI_ie_i ⊕ I_w(1-e_i) for w={w.label}, i={i+1}",
                w=w.label, vertex=i + 1, dims=[Iws.dim, top.dim + Iw.part(others).dim],
            )

    lower = Iws.to_module()
    upper = Iw.to_module()
    extras = {
        "product-differs": product != Iw,
        "product-is-next": product == Iws,
        "other-summands-kept": Iws.part(others) == Iw.part(others),
        "fac-shrinks": in_fac(lower, upper) and not in_fac(upper, lower),
    }
    mutated = Iw.summand(i)
    rest = Iw.part_module(others)
    if not mutated.is_zero() and not rest.is_zero():
        extras["summand-outside-rest"] = not in_fac(mutated, rest)
    return MutationReport(w, i, top.dim == 0, held_by, extras)


def descent_check(calculus: IdealCalculus, w: WeylElement, i: int) -> bool:
    """I_w I_i = I_w for a descent i of w."""
    return ideal_product(calculus.of(w), calculus.simple(i)) == calculus.of(w)


# ─── τ-rigid modules from meet-irreducibles ───────────────────


@dataclass
class RigidMember:
    w: WeylElement
    vertex: int
    module: ModuleRep
    label: str
    generates_node: bool


def itrigid_set(calculus: IdealCalculus, labeler: SummandLabeler | None = None) -> list[RigidMember]:
    """w ↦ I_w e_k over meet-irreducible w with unique ascent k."""
    A, W = calculus.algebra, calculus.group
    labeler = labeler or SummandLabeler(calculus)
    members: list[RigidMember] = []
    for w in meet_irreducibles(weak_order(W)):
        (k,) = W.ascents(w)
        ideal = calculus.of(w)
        space = ideal.summand_space(k)
        module = ideal.summand(k, name=f"I_{w.label}e{k+1}")
        if module.is_zero():
            raise BijectionFailureError(f"I_{w.label}e{k+1} is zero", w=w.label, vertex=k + 1)
        if not is_tau_rigid(module):
            raise BijectionFailureError(f"I_{w.label}e{k+1} is not τ-rigid", w=w.label, vertex=k + 1)
        if num_indec_summands(module).total != 1:
            raise BijectionFailureError(f"I_{w.label}e{k+1} is decomposable", w=w.label, vertex=k + 1)
        generates = in_fac(ideal.to_module(), module)
        members.append(RigidMember(w, k, module, labeler(k, space, module), generates))

    for a, m in enumerate(members):
        for other in members[a + 1:]:
            if is_isomorphic(m.module, other.module):
                raise BijectionFailureError(
                    f"I_{m.w.label}e{m.vertex+1} ≅ I_{other.w.label}e{other.vertex+1}",
                    w=[m.w.label, other.w.label],
                )
    logger.debug("itrigid: %d members", len(members))
    return members


# ─── Torsion pairs and duality ────────────────────────────────


@dataclass
class TorsionPairReport:
    w: WeylElement
    generator: str
    cogenerator_dims: tuple[int, ...]
    left_duality: bool
    right_duality: bool

    def to_dict(self) -> dict:
        return {
            "w": self.w.label,
            "torsion_generator": self.generator,
            "torsion_free_cogenerator_dims": list(self.cogenerator_dims),
            "left_duality": self.left_duality,
            "right_duality": self.right_duality,
        }


def torsion_pair_report(
    calculus: IdealCalculus,
    w: WeylElement,
    label: str | None = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> TorsionPairReport:
    """(Fac I_w, Sub Π/I_{w⁻¹w₀}) with both dualities of the ideal modules.

    Left: D(I_w as a right module) ≅ Π/I_{w⁻¹w₀} over Π.
    Right: D(I_w as a left module) ≅ Π/I_{w₀w⁻¹} over Π^op.
    """
    W = calculus.group
    w0 = longest_element(W)
    winv = W.inverse(w)
    Iw = calculus.of(w)

    u = W.multiply(winv, w0)
    v = W.multiply(w0, winv)
    left_quotient = calculus.of(u).quotient(name=f"Π/I_{u.label}")
    right_quotient = calculus.of(v).right_quotient(name=f"Π/I_{v.label}")

    left = dual(Iw.to_right_module(name=f"I_{w.label}"))
    right = dual(Iw.to_module(name=f"I_{w.label}"))
    left_ok = is_isomorphic(left, left_quotient, trials, seed)
    right_ok = is_isomorphic(right, right_quotient, trials, seed)
    if not (left_ok and right_ok):
        raise DualityFailureError(
            f"D I_{w.label} does not match the expected quotient",
            w=w.label,
            left=left_ok,
            right=right_ok,
            dims={"left": [list(left.dims), list(left_quotient.dims)],
                  "right": [list(right.dims), list(right_quotient.dims)]},
        )
    return TorsionPairReport(w, label or f"I_{w.label}", left_quotient.dims, left_ok, right_ok)
