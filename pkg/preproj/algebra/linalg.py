"""Exact fields and sparse linear algebra helpers.

Matrices are ``sympy.polys.matrices.DomainMatrix`` objects in sparse
format. Vectors (algebra elements, module elements) are plain dicts
``{index: coefficient}`` holding only nonzero domain elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

Vector = dict[int, Any]

PRIME_FLOOR = 2**31


@dataclass(frozen=True)
class Field:
    """Ground field: exact rationals (characteristic 0) or GF(p)."""
    characteristic: int = 0

    @classmethod
    def rational(cls) -> Field:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> Field:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if p <= PRIME_FLOOR:
            raise ValueError(f"prime field characteristic must exceed 2^31, got {p}")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse the CLI spelling ``rational`` or ``p:PRIME``."""
        text = text.strip().lower()
        if text in ("rational", "qq", "q"):
            return cls.rational()
        if text.startswith("p:"):
            return cls.prime(int(text[2:]))
        raise ValueError(f"unknown field '{text}' (use 'rational' or 'p:PRIME')")

    @cached_property
    def domain(self):
        return QQ if self.characteristic == 0 else GF(self.characteristic)

    @property
    def label(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __call__(self, value: Any):
        if isinstance(value, str):
            return self.from_json(value)
        return self.domain.convert(value)

    def to_json(self, x) -> str:
        return str(self.domain.to_sympy(x))

    def from_json(self, text: str):
        return self.domain.from_sympy(Rational(text))

    def descriptor(self) -> dict[str, Any]:
        if self.characteristic == 0:
            return {"kind": "rational"}
        return {"kind": "prime", "prime": self.characteristic}


# ─── Vectors ──────────────────────────────────────────────────


def axpy(y: Vector, a, x: Mapping[int, Any]) -> Vector:
    """y += a·x in place, dropping entries that cancel."""
    if not a:
        return y
    for k, v in x.items():
        s = y.get(k)
        t = a * v if s is None else s + a * v
        if t:
            y[k] = t
        elif s is not None:
            del y[k]
    return y


# ─── Matrices ─────────────────────────────────────────────────


def zeros(rows: int, cols: int, field: Field) -> DomainMatrix:
    return DomainMatrix({}, (rows, cols), field.domain)


def eye(n: int, field: Field) -> DomainMatrix:
    return DomainMatrix({i: {i: field.one} for i in range(n)}, (n, n), field.domain)


def from_dod(dod: Mapping[int, Mapping[int, Any]], rows: int, cols: int, field: Field) -> DomainMatrix:
    clean = {i: {j: v for j, v in row.items() if v} for i, row in dod.items()}
    clean = {i: row for i, row in clean.items() if row}
    return DomainMatrix(clean, (rows, cols), field.domain)


def from_rows(rows: Iterable[Mapping[int, Any]], cols: int, field: Field) -> DomainMatrix:
    rows = list(rows)
    return from_dod(dict(enumerate(rows)), len(rows), cols, field)


def from_columns(columns: Iterable[Mapping[int, Any]], rows: int, field: Field) -> DomainMatrix:
    columns = list(columns)
    dod: dict[int, dict[int, Any]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                dod.setdefault(i, {})[j] = v
    return from_dod(dod, rows, len(columns), field)


def dod(A: DomainMatrix) -> dict[int, dict[int, Any]]:
    """Dict-of-dicts view of the nonzero entries."""
    rep = A.to_sparse().rep
    return {i: {j: v for j, v in row.items() if v} for i, row in rep.items() if row}


def rows_of(A: DomainMatrix) -> list[Vector]:
    d = dod(A)
    return [dict(d.get(i, {})) for i in range(A.shape[0])]


def columns_of(A: DomainMatrix) -> list[Vector]:
    cols: list[Vector] = [{} for _ in range(A.shape[1])]
    for i, row in dod(A).items():
        for j, v in row.items():
            cols[j][i] = v
    return cols


def apply(A: DomainMatrix, x: Mapping[int, Any]) -> Vector:
    """Matrix-vector product on sparse vectors."""
    out: Vector = {}
    for i, row in dod(A).items():
        s = None
        for j, v in row.items():
            xj = x.get(j)
            if xj:
                s = v * xj if s is None else s + v * xj
        if s:
            out[i] = s
    return out


def is_zero_matrix(A: DomainMatrix) -> bool:
    return not dod(A)


def flatten(A: DomainMatrix) -> Vector:
    cols = A.shape[1]
    return {i * cols + j: v for i, row in dod(A).items() for j, v in row.items()}


# ─── Echelon forms ────────────────────────────────────────────


def rref(A: DomainMatrix) -> tuple[list[Vector], tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form, with pivot columns."""
    if A.shape[0] == 0 or A.shape[1] == 0 or is_zero_matrix(A):
        return [], ()
    R, pivots = A.to_sparse().rref()
    pivots = tuple(pivots)
    rows = rows_of(R)[: len(pivots)]
    return rows, pivots


def rank(A: DomainMatrix) -> int:
    return len(rref(A)[1])


def kernel_basis(A: DomainMatrix, field: Field) -> tuple[list[Vector], list[int]]:
    """Basis of {x : A x = 0} with its free columns.

    Vector k is 1 at free column k and 0 at the other free columns, so
    any kernel element's coordinates are its values at the free columns.
    """
    n = A.shape[1]
    rows, pivots = rref(A)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    free: list[int] = []
    for f in range(n):
        if f in pivot_set:
            continue
        v: Vector = {f: field.one}
        for row, p in zip(rows, pivots):
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
        free.append(f)
    return basis, free


def nullspace(A: DomainMatrix, field: Field) -> list[Vector]:
    """Basis of {x : A x = 0}, one vector per free column."""
    return kernel_basis(A, field)[0]


class Echelon:
    """Reduced echelon basis of a subspace of K^ncols.

    ``rows[k]`` has a 1 at ``pivots[k]`` and zeros at every other pivot,
    so membership and coordinates are single passes.
    """

    def __init__(self, rows: list[Vector], pivots: tuple[int, ...], ncols: int, field: Field):
        self.rows = rows
        self.pivots = pivots
        self.ncols = ncols
        self.field = field
        self._pivot_index = {p: k for k, p in enumerate(pivots)}

    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, Any]], ncols: int, field: Field) -> Echelon:
        vectors = [v for v in vectors if v]
        if not vectors:
            return cls([], (), ncols, field)
        rows, pivots = rref(from_rows(vectors, ncols, field))
        return cls(rows, pivots, ncols, field)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: Mapping[int, Any]) -> Vector:
        v = dict(vector)
        for row, p in zip(self.rows, self.pivots):
            c = v.get(p)
            if c:
                axpy(v, -c, row)
        return v

    def contains(self, vector: Mapping[int, Any]) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Mapping[int, Any]) -> Vector:
        """Coordinates of a member vector in the row basis."""
        return {k: vector[p] for k, p in enumerate(self.pivots) if vector.get(p)}

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self._pivot_index]

    def key(self) -> tuple:
        """Hashable canonical form; equal keys iff equal subspaces."""
        return tuple(
            (p, tuple(sorted((j, self.field.to_json(v)) for j, v in row.items())))
            for p, row in zip(self.pivots, self.rows)
        )

    def __le__(self, other: Echelon) -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Echelon):
            return NotImplemented
        return self.pivots == other.pivots and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.key())


def quotient_basis(sub: Echelon, vectors: Iterable[Mapping[int, Any]]) -> Echelon:
    """Echelon basis of span(vectors) reduced modulo ``sub``."""
    reduced = [sub.reduce(v) for v in vectors]
    return Echelon.span(reduced, sub.ncols, sub.field)
