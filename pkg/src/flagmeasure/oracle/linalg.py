"""Exact linear algebra over the Gaussian rationals Q(i).

Scalars are sympy ``QQ_I`` elements; row reduction goes through
``DomainMatrix`` so nothing is ever rounded.  Vectors are sparse dicts keyed
by arbitrary hashable coordinates, and a :class:`Subspace` fixes an ordered
coordinate list and keeps its basis in reduced row echelon form, which makes
equality of subspaces a plain comparison.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)
I = QQ_I(0, 1)

Vector = dict  # coordinate -> QQ_I, zeros omitted


def gq(re, im=0):
    """Gaussian rational from rational parts."""
    return QQ_I(re, im)


def conj(z):
    return QQ_I(z.x, -z.y)


def clean(v: Mapping) -> Vector:
    return {k: c for k, c in v.items() if c}


def vadd(u: Mapping, v: Mapping) -> Vector:
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, ZERO) + c
    return clean(out)


def vscale(c, v: Mapping) -> Vector:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vconj(v: Mapping) -> Vector:
    return {k: conj(c) for k, c in v.items()}


class Subspace:
    """Subspace of the coordinate space spanned by ``coords``."""

    __slots__ = ("coords", "_index", "rows")

    def __init__(self, coords: Sequence[Hashable], rows: list[list] | None = None):
        self.coords = tuple(coords)
        self._index = {c: i for i, c in enumerate(self.coords)}
        self.rows = rows or []

    # construction -----------------------------------------------------------
    @classmethod
    def span(cls, coords: Sequence[Hashable], vectors: Iterable[Mapping]) -> "Subspace":
        sub = cls(coords)
        dense = [sub._dense(v) for v in vectors]
        sub.rows = _rref_rows(dense, len(sub.coords))
        return sub

    @classmethod
    def full(cls, coords: Sequence[Hashable]) -> "Subspace":
        k = len(coords)
        rows = [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]
        return cls(coords, rows)

    @classmethod
    def zero(cls, coords: Sequence[Hashable]) -> "Subspace":
        return cls(coords, [])

    @classmethod
    def kernel(cls, coords: Sequence[Hashable], equations: Iterable[Mapping]) -> "Subspace":
        """Solutions ``v`` of ``sum_k eq[k] * v[k] == 0`` for every equation."""
        sub = cls(coords)
        eqs = [sub._dense(e) for e in equations]
        eqs = [e for e in eqs if any(e)]
        k = len(sub.coords)
        if not eqs:
            return cls.full(coords)
        M = DomainMatrix(eqs, (len(eqs), k), QQ_I)
        ns = M.nullspace().to_list()
        sub.rows = _rref_rows(ns, k)
        return sub

    def _dense(self, v: Mapping) -> list:
        row = [ZERO] * len(self.coords)
        for key, c in v.items():
            try:
                row[self._index[key]] = c
            except KeyError:
                if c:
                    raise KeyError(f"coordinate {key!r} outside ambient space") from None
        return row

    # queries ------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        return len(self.coords)

    def basis(self) -> list[Vector]:
        return [clean(dict(zip(self.coords, r))) for r in self.rows]

    def contains(self, v: Mapping) -> bool:
        row = self._dense(v)
        return _rank(self.rows + [row], len(self.coords)) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.coords == other.coords and self.rows == other.rows

    def __hash__(self):
        return hash((self.coords, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.coords != other.coords:
            raise ValueError("subspaces live in different coordinate spaces")

    # operations ------------------------------------------------------------------
    def annihilator(self) -> list[list]:
        if not self.rows:
            k = len(self.coords)
            return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]
        M = DomainMatrix(self.rows, (self.dim, len(self.coords)), QQ_I)
        return M.nullspace().to_list()

    def is_full(self) -> bool:
        return len(self.rows) == len(self.coords)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.rows or self.is_full() or self.rows == other.rows:
            return self
        if not self.rows or other.is_full():
            return other
        return Subspace(self.coords, _rref_rows(self.rows + other.rows, len(self.coords)))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.rows or other.is_full() or self.rows == other.rows:
            return self
        if not other.rows or self.is_full():
            return other
        eqs = self.annihilator() + other.annihilator()
        eqs = [e for e in eqs if any(e)]
        k = len(self.coords)
        if not eqs:
            return Subspace.full(self.coords)
        M = DomainMatrix(eqs, (len(eqs), k), QQ_I)
        return Subspace(self.coords, _rref_rows(M.nullspace().to_list(), k))

    __add__ = sum
    __and__ = intersect


def _rref_rows(rows: list[list], k: int) -> list[list]:
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    M = DomainMatrix(rows, (len(rows), k), QQ_I)
    R, pivots = M.rref()
    return R.to_list()[: len(pivots)]


def _rank(rows: list[list], k: int) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return DomainMatrix(rows, (len(rows), k), QQ_I).rank()


def solve_in_basis(basis: Sequence[Mapping], v: Mapping) -> list | None:
    """Coefficients ``c`` with ``sum c_i basis_i == v``; None if ``v`` is outside the span."""
    coords = sorted({k for b in basis for k in b} | set(v), key=repr)
    idx = {c: i for i, c in enumerate(coords)}
    r = len(basis)
    cols = [[ZERO] * (r + 1) for _ in coords]
    for j, b in enumerate(basis):
        for key, c in b.items():
            cols[idx[key]][j] = c
    for key, c in v.items():
        cols[idx[key]][r] = -c
    M = DomainMatrix(cols, (len(coords), r + 1), QQ_I)
    for vec in M.nullspace().to_list():
        if vec[r]:
            lead = vec[r]
            return [x / lead for x in vec[:r]]
    return None
