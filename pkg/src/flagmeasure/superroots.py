"""Root systems of the basic classical Lie superalgebras as exact integer data.

Weights are integer vectors over the functionals ``x_1..x_n`` (even part of
the defining representation) and ``y_1..y_m`` (odd part).  For ``P(n)`` and
``Q(n)`` the Cartan subalgebra only sees one set of functionals, so their
weights carry ``x`` coefficients and an empty ``y`` vector.

Families:

* ``A``  -- sl(n|m), psl(n|n) when n == m
* ``B``  -- osp(2n+1|2m)
* ``C``  -- osp(2|2m), i.e. the orthogonal rank is fixed to 1
* ``D``  -- osp(2n|2m); ``D21`` is an alias for D(2,1) = osp(4|2)
* ``P``  -- the strange family pi(n) preserving an odd form
* ``Q``  -- the queer family q(n)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable


class InvalidParameters(ValueError):
    """Raised when (family, n, m) does not name a supported superalgebra."""


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"
    BOTH = "both"   # Q(n): every root space is 1|1-dimensional

    @property
    def superdim(self) -> tuple[int, int]:
        return {Parity.EVEN: (1, 0), Parity.ODD: (0, 1), Parity.BOTH: (1, 1)}[self]


@dataclass(frozen=True, order=True)
class Weight:
    x: tuple[int, ...]
    y: tuple[int, ...] = ()

    @classmethod
    def zero(cls, n: int, m: int = 0) -> "Weight":
        return cls((0,) * n, (0,) * m)

    @classmethod
    def unit(cls, n: int, m: int, kind: str, i: int, coeff: int = 1) -> "Weight":
        """``coeff * x_i`` or ``coeff * y_i`` with 1-based ``i``."""
        x = [0] * n
        y = [0] * m
        (x if kind == "x" else y)[i - 1] = coeff
        return cls(tuple(x), tuple(y))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.x, other.x)),
                      tuple(a + b for a, b in zip(self.y, other.y)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.x), tuple(-a for a in self.y))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def scale(self, c: int) -> "Weight":
        return Weight(tuple(c * a for a in self.x), tuple(c * a for a in self.y))

    def is_zero(self) -> bool:
        return not any(self.x) and not any(self.y)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.x + self.y

    def __str__(self) -> str:
        terms = []
        for name, vec in (("x", self.x), ("y", self.y)):
            for i, c in enumerate(vec, 1):
                if c == 0:
                    continue
                sign = "-" if c < 0 else "+"
                mag = "" if abs(c) == 1 else str(abs(c))
                terms.append(f"{sign}{mag}{name}{i}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s


@dataclass(frozen=True, order=True)
class Root:
    weight: Weight
    parity: Parity

    @property
    def space_superdim(self) -> tuple[int, int]:
        return self.parity.superdim

    @property
    def is_even(self) -> bool:
        return self.parity in (Parity.EVEN, Parity.BOTH)

    @property
    def is_odd(self) -> bool:
        return self.parity in (Parity.ODD, Parity.BOTH)

    def __str__(self) -> str:
        return str(self.weight)


FAMILIES = ("A", "B", "C", "D", "D21", "P", "Q")


def canonical_family(family: str) -> str:
    fam = family.strip().upper()
    if fam in ("D(2,1)", "D(2,1;ALPHA)", "D(2,1,ALPHA)", "D21"):
        return "D21"
    if fam not in FAMILIES:
        raise InvalidParameters(f"unknown family {family!r}")
    return fam


def normalize_params(family: str, n: int, m: int | None = None) -> tuple[str, int, int]:
    """Resolve aliases and parameter conventions; return (family, n, m).

    For ``P`` and ``Q`` only ``n`` is meaningful and ``m`` is forced to ``n``.
    ``C`` takes its symplectic rank in ``m`` (or in ``n`` when ``m`` is None)
    and fixes the orthogonal rank to 1.  ``D21`` becomes ``D`` with (2, 1).
    """
    fam = canonical_family(family)
    if fam == "D21":
        return "D", 2, 1
    if fam in ("P", "Q"):
        if m is not None and m != n:
            raise InvalidParameters(f"{fam}(n) requires m == n, got n={n}, m={m}")
        if n < 1:
            raise InvalidParameters(f"{fam}(n) requires n >= 1")
        return fam, n, n
    if fam == "C":
        rank = n if m is None else m
        if m is not None and n not in (1, m):
            raise InvalidParameters("C(m) fixes the orthogonal rank to 1")
        if rank < 1:
            raise InvalidParameters("C(m) requires m >= 1")
        return "C", 1, rank
    if m is None:
        raise InvalidParameters(f"family {fam} needs both n and m")
    if n < 0 or m < 0:
        raise InvalidParameters("ranks must be nonnegative")
    if fam == "A" and n + m < 1:
        raise InvalidParameters("sl(0|0) is not an algebra")
    return fam, n, m


@dataclass(frozen=True)
class RootSystem:
    family: str
    n: int
    m: int
    roots: frozenset[Root] = field(repr=False)

    def __post_init__(self):
        weights = [r.weight for r in self.roots]
        if len(set(weights)) != len(weights):
            raise ValueError("duplicate root weights")

    @property
    def quotient(self) -> bool:
        """True for psl(n|n): same roots as sl(n|n), center removed."""
        return self.family == "A" and self.n == self.m

    def sorted_roots(self) -> list[Root]:
        return sorted(self.roots)

    def by_weight(self) -> dict[Weight, Root]:
        return {r.weight: r for r in self.roots}

    def __contains__(self, item) -> bool:
        if isinstance(item, Root):
            return item in self.roots
        return item in self.by_weight()

    def root(self, weight: Weight) -> Root:
        try:
            return self.by_weight()[weight]
        except KeyError:
            raise KeyError(f"{weight} is not a root of {self.family}({self.n},{self.m})") from None

    def counts(self) -> tuple[int, int]:
        """Number of (even, odd) root spaces counted with superdimension."""
        e = sum(r.space_superdim[0] for r in self.roots)
        o = sum(r.space_superdim[1] for r in self.roots)
        return e, o

    def zero_weight(self) -> Weight:
        x_len = self.n
        y_len = 0 if self.family in ("P", "Q") else self.m
        return Weight.zero(x_len, y_len)

    def null_direction(self) -> Weight | None:
        """Weight that vanishes on the realized Cartan subalgebra, if any.

        sl(n|m) has supertraceless Cartan, so ``sum x - sum y`` is zero there.
        P(n) is realized with traceless even block, so ``sum x`` vanishes.
        """
        if self.family == "A":
            return Weight((1,) * self.n, (-1,) * self.m)
        if self.family == "P":
            return Weight((1,) * self.n, ())
        return None

    def is_null(self, w: Weight) -> bool:
        """Does ``w`` vanish as a functional on the Cartan subalgebra?"""
        if w.is_zero():
            return True
        d = self.null_direction()
        if d is None:
            return False
        # w must be a rational multiple of d
        ratio = None
        for a, b in zip(w.coeffs, d.coeffs):
            if b == 0:
                if a != 0:
                    return False
                continue
            if ratio is None:
                ratio = (a, b)
            elif a * ratio[1] != ratio[0] * b:
                return False
        return True


def _pm(n, m):
    return lambda kind, i, c=1: Weight.unit(n, m, kind, i, c)


def _type_a(n: int, m: int) -> set[Root]:
    u = _pm(n, m)
    roots = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                roots.add(Root(u("x", i) - u("x", j), Parity.EVEN))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i != j:
                roots.add(Root(u("y", i) - u("y", j), Parity.EVEN))
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            roots.add(Root(u("x", i) - u("y", j), Parity.ODD))
            roots.add(Root(u("y", j) - u("x", i), Parity.ODD))
    return roots


def _type_osp(n: int, m: int, odd_dim: bool) -> set[Root]:
    u = _pm(n, m)
    roots = set()
    signs = (1, -1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for a in signs:
                for b in signs:
                    roots.add(Root(u("x", i, a) + u("x", j, b), Parity.EVEN))
        if odd_dim:
            for a in signs:
                roots.add(Root(u("x", i, a), Parity.EVEN))
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for a in signs:
                for b in signs:
                    roots.add(Root(u("y", i, a) + u("y", j, b), Parity.EVEN))
        for a in signs:
            roots.add(Root(u("y", i, 2 * a), Parity.EVEN))
        if odd_dim:
            for a in signs:
                roots.add(Root(u("y", i, a), Parity.ODD))
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            for a in signs:
                for b in signs:
                    roots.add(Root(u("x", i, a) + u("y", j, b), Parity.ODD))
    return roots


def _type_p(n: int) -> set[Root]:
    u = _pm(n, 0)
    roots = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                roots.add(Root(u("x", i) - u("x", j), Parity.EVEN))
            if i <= j:
                # x_i + x_j including 2x_i; the negatives -2x_i are not roots
                roots.add(Root(u("x", i) + u("x", j), Parity.ODD))
            if i < j:
                roots.add(Root(-(u("x", i) + u("x", j)), Parity.ODD))
    return roots


def _type_q(n: int) -> set[Root]:
    u = _pm(n, 0)
    return {Root(u("x", i) - u("x", j), Parity.BOTH)
            for i in range(1, n + 1) for j in range(1, n + 1) if i != j}


def build_root_system(family: str, n: int, m: int | None = None) -> RootSystem:
    fam, n, m = normalize_params(family, n, m)
    if fam == "A":
        roots = _type_a(n, m)
    elif fam == "B":
        roots = _type_osp(n, m, odd_dim=True)
    elif fam in ("C", "D"):
        roots = _type_osp(n, m, odd_dim=False)
    elif fam == "P":
        roots = _type_p(n)
    else:
        roots = _type_q(n)
    return RootSystem(fam, n, m, frozenset(roots))


def graded_root_sum(roots: Iterable[Root], zero: Weight | None = None) -> Weight:
    """Sum of ``(even_dim - odd_dim) * weight`` over a multiset of roots.

    ``zero`` fixes the ambient shape of the result for an empty multiset.
    """
    total = zero
    for r in roots:
        e, o = r.space_superdim
        term = r.weight.scale(e - o)
        total = term if total is None else total + term
    return Weight((), ()) if total is None else total


def graded_sum_in(rs: RootSystem, roots: Iterable[Root]) -> Weight:
    return graded_root_sum(roots, zero=rs.zero_weight())
