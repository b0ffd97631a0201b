"""Dimension sequences, their symmetry predicates, and parabolic root data.

A dimension sequence ``delta`` lists the graded dimensions ``d0|d1`` of the
proper subspaces in a flag.  The sentinels ``0|0`` and ``n|m`` are implicit.
For the orthosymplectic families the stored entries are the isotropic
"lower half" of the flag (so ``n|m``, a maximal isotropic subspace, is a
legal entry); for ``P(n)`` the stored entries are the isotropic part with
``d0 + d1 <= n``; for ``Q(n)`` every entry has ``d0 == d1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Sequence

from .superroots import Root, RootSystem, Weight, normalize_params

Entry = tuple[int, int]


class InvalidSequence(ValueError):
    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


def _lt(a: Entry, b: Entry) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a != b


def comparable(a: Entry, b: Entry) -> bool:
    return a == b or _lt(a, b) or _lt(b, a)


def is_chain(entries: Sequence[Entry]) -> bool:
    return all(_lt(a, b) for a, b in zip(entries, entries[1:]))


@dataclass(frozen=True)
class DimensionSequence:
    entries: tuple[Entry, ...]
    n: int
    m: int
    family: str = "A"

    def __str__(self) -> str:
        return format_entries(self.entries)

    def __contains__(self, entry) -> bool:
        return tuple(entry) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def entry_set(self) -> frozenset[Entry]:
        return frozenset(self.entries)

    def sort_key(self):
        return self.entries

    def even_mirror(self, e: Entry) -> Entry:
        return (self.n - e[0], self.m - e[1])

    def odd_mirror(self, e: Entry) -> Entry:
        return (self.n - e[1], self.n - e[0])

    def predecessor(self, e: Entry) -> Entry:
        """Immediate predecessor of an entry, ``0|0`` if it is the first."""
        i = self.entries.index(e)
        return self.entries[i - 1] if i else (0, 0)


def format_entries(entries: Sequence[Entry]) -> str:
    return " < ".join(f"{a}|{b}" for a, b in entries)


_ENTRY = re.compile(r"^\s*(\d+)\s*\|\s*(\d+)\s*$")


def parse_entries(text: str) -> tuple[Entry, ...]:
    text = text.strip()
    if not text or text in ("-", "()", "[]", "empty"):
        return ()
    out = []
    for part in text.split("<"):
        mt = _ENTRY.match(part)
        if not mt:
            raise InvalidSequence("parse-error", f"cannot read entry {part.strip()!r}")
        out.append((int(mt.group(1)), int(mt.group(2))))
    return tuple(out)


def _entry_allowed(family: str, n: int, m: int, e: Entry) -> bool:
    d0, d1 = e
    if d0 < 0 or d1 < 0 or e == (0, 0):
        return False
    if family == "A":
        return d0 <= n and d1 <= m and e != (n, m)
    if family in ("B", "C", "D"):
        return d0 <= n and d1 <= m
    if family == "P":
        return d0 + d1 <= n
    if family == "Q":
        return d0 == d1 and d0 < n
    raise InvalidSequence("unknown-family", family)


def validate_sequence(delta: DimensionSequence) -> DimensionSequence:
    fam = delta.family
    for e in delta.entries:
        if not _entry_allowed(fam, delta.n, delta.m, e):
            raise InvalidSequence(
                "out-of-bounds", f"{e[0]}|{e[1]} not allowed for {fam}({delta.n},{delta.m})")
    if not is_chain(delta.entries):
        raise InvalidSequence("not-a-chain", f"{delta} is not strictly increasing")
    if fam == "P":
        closure = sorted(set(delta.entries) | {delta.odd_mirror(e) for e in delta.entries})
        closure = [e for e in closure if e not in ((0, 0), (delta.n, delta.n))]
        if not is_chain(closure):
            raise InvalidSequence("not-a-chain", f"{delta} together with its orthogonals is not a flag")
    return delta


def make_sequence(family: str, n: int, m: int | None, entries) -> DimensionSequence:
    fam, n, m = normalize_params(family, n, m)
    if isinstance(entries, str):
        entries = parse_entries(entries)
    delta = DimensionSequence(tuple(tuple(e) for e in entries), n, m, fam)
    return validate_sequence(delta)


def _grid_points(family: str, n: int, m: int) -> list[Entry]:
    pts = [(a, b) for a in range(n + 1) for b in range(m + 1)]
    return [p for p in pts if _entry_allowed(family, n, m, p)]


def enumerate_sequences(family: str, n: int, m: int | None = None) -> Iterator[DimensionSequence]:
    """Yield every valid sequence once, the empty one first, lexicographically."""
    fam, n, m = normalize_params(family, n, m)
    pts = _grid_points(fam, n, m)

    def extend(chain: list[Entry], start: int):
        delta = DimensionSequence(tuple(chain), n, m, fam)
        try:
            validate_sequence(delta)
        except InvalidSequence:
            return
        yield delta
        for i in range(start, len(pts)):
            p = pts[i]
            if not chain or _lt(chain[-1], p):
                chain.append(p)
                yield from extend(chain, i + 1)
                chain.pop()

    # an invalid chain has no valid extension, so pruning is safe
    yield from extend([], 0)


# symmetry predicates ---------------------------------------------------------

def _sentinels(delta: DimensionSequence) -> set[Entry]:
    return {(0, 0), (delta.n, delta.m)}


def is_even_symmetric(delta: DimensionSequence) -> bool:
    full = delta.entry_set | _sentinels(delta)
    return all(delta.even_mirror(e) in full for e in delta.entries)


def is_odd_symmetric(delta: DimensionSequence) -> bool:
    if delta.n != delta.m:
        return False
    full = delta.entry_set | _sentinels(delta)
    return all(delta.odd_mirror(e) in full for e in delta.entries)


def is_pi_symmetric(delta: DimensionSequence) -> bool:
    return delta.n == delta.m and all(a == b for a, b in delta.entries)


def _closure_is_chain(delta: DimensionSequence, mirror: Callable[[Entry], Entry]) -> bool:
    pts = set(delta.entries) | {mirror(e) for e in delta.entries}
    pts -= _sentinels(delta)
    ordered = sorted(pts)
    return is_chain(ordered)


def is_even_symmetrizable(delta: DimensionSequence) -> bool:
    return _closure_is_chain(delta, delta.even_mirror)


def is_odd_symmetrizable(delta: DimensionSequence) -> bool:
    if delta.n != delta.m:
        return False
    return _closure_is_chain(delta, delta.odd_mirror)


# basis vectors and base points ----------------------------------------------

Label = tuple[str, int]


@dataclass(frozen=True)
class BasisModel:
    """Weight basis of the defining representation.

    ``labels`` are ``('e', i)`` (even) or ``('f', j)`` (odd); negative indices
    denote the partner vectors of the orthosymplectic form, ``('e', 0)`` the
    isotropic-free middle vector of B(n,m).  ``partner`` pairs vectors that
    the invariant form couples; it is empty for A and Q.
    """
    family: str
    n: int
    m: int
    labels: tuple[Label, ...]
    weights: dict
    partner: dict

    def parity(self, label: Label) -> int:
        return 0 if label[0] == "e" else 1


def basis_model(family: str, n: int, m: int) -> BasisModel:
    fam, n, m = normalize_params(family, n, m)
    u = lambda kind, i, c=1: Weight.unit(n, m if fam not in ("P", "Q") else 0, kind, i, c)
    labels: list[Label] = []
    weights: dict = {}
    partner: dict = {}
    if fam == "A":
        for i in range(1, n + 1):
            labels.append(("e", i)); weights[("e", i)] = u("x", i)
        for j in range(1, m + 1):
            labels.append(("f", j)); weights[("f", j)] = u("y", j)
    elif fam in ("B", "C", "D"):
        zero = Weight.zero(n, m)
        for i in range(1, n + 1):
            labels.append(("e", i)); weights[("e", i)] = u("x", i)
        if fam == "B":
            labels.append(("e", 0)); weights[("e", 0)] = zero
            partner[("e", 0)] = ("e", 0)
        for i in range(n, 0, -1):
            labels.append(("e", -i)); weights[("e", -i)] = u("x", i, -1)
        for j in range(1, m + 1):
            labels.append(("f", j)); weights[("f", j)] = u("y", j)
        for j in range(m, 0, -1):
            labels.append(("f", -j)); weights[("f", -j)] = u("y", j, -1)
        for i in range(1, n + 1):
            partner[("e", i)] = ("e", -i); partner[("e", -i)] = ("e", i)
        for j in range(1, m + 1):
            partner[("f", j)] = ("f", -j); partner[("f", -j)] = ("f", j)
    elif fam == "P":
        for i in range(1, n + 1):
            labels.append(("e", i)); weights[("e", i)] = u("x", i, -1)
        for i in range(1, n + 1):
            labels.append(("f", i)); weights[("f", i)] = u("x", i)
        for i in range(1, n + 1):
            partner[("e", i)] = ("f", i); partner[("f", i)] = ("e", i)
    else:  # Q
        for i in range(1, n + 1):
            labels.append(("e", i)); weights[("e", i)] = u("x", i)
        for i in range(1, n + 1):
            labels.append(("f", i)); weights[("f", i)] = u("x", i)
    return BasisModel(fam, n, m, tuple(labels), weights, partner)


@dataclass(frozen=True)
class Basepoint:
    """Which standard flag each factor uses.

    ``e_order``/``f_order`` list the indices of the positive-weight (or, for
    A/P/Q, all) even and odd basis vectors in the order in which flag
    subspaces pick them up.
    """
    name: str
    e_order: tuple[int, ...]
    f_order: tuple[int, ...]

    @classmethod
    def ascending(cls, ne: int, nf: int, name: str = "B+xB+") -> "Basepoint":
        return cls(name, tuple(range(1, ne + 1)), tuple(range(1, nf + 1)))

    @classmethod
    def mixed(cls, ne: int, nf: int, name: str = "B+xB-") -> "Basepoint":
        return cls(name, tuple(range(1, ne + 1)), tuple(range(nf, 0, -1)))


def default_basepoint(family: str, n: int, m: int) -> Basepoint:
    fam, n, m = normalize_params(family, n, m)
    if fam == "P":
        return Basepoint.mixed(n, n)
    if fam == "Q":
        return Basepoint.ascending(n, n)
    return Basepoint.ascending(n, m)


def flag_subspaces(model: BasisModel, bp: Basepoint, delta: DimensionSequence) -> list[frozenset]:
    """Increasing list of coordinate subspaces of the full flag.

    Includes the orthogonal complements for the families with an invariant
    form, so the list is the complete flag stabilized by the parabolic.
    """
    lower = []
    for d0, d1 in delta.entries:
        vecs = {("e", i) for i in bp.e_order[:d0]} | {("f", j) for j in bp.f_order[:d1]}
        lower.append(frozenset(vecs))
    if not model.partner:
        return lower
    everything = frozenset(model.labels)
    perps = [everything - {model.partner[v] for v in V} for V in lower]
    full = list(lower)
    for W in reversed(perps):
        if full and W == full[-1]:
            continue
        full.append(W)
    return full


def levels(model: BasisModel, subspaces: list[frozenset]) -> dict:
    k = len(subspaces)
    out = {}
    for lab in model.labels:
        out[lab] = next((i for i, V in enumerate(subspaces) if lab in V), k)
    return out


# parabolic root data -----------------------------------------------------------

@dataclass(frozen=True)
class ParabolicRootData:
    rs: RootSystem
    phi: frozenset[Root]

    @cached_property
    def _weights(self) -> frozenset[Weight]:
        return frozenset(r.weight for r in self.phi)

    def contains_weight(self, w: Weight) -> bool:
        return w in self._weights

    def __contains__(self, r: Root) -> bool:
        return r in self.phi

    @cached_property
    def phi_r(self) -> frozenset[Root]:
        return frozenset(r for r in self.phi if (-r.weight) in self._weights)

    @cached_property
    def phi_n(self) -> frozenset[Root]:
        return frozenset(r for r in self.phi if (-r.weight) not in self._weights)

    @cached_property
    def phi_c(self) -> frozenset[Root]:
        return frozenset(r for r in self.rs.roots if r not in self.phi)


def unit_pairs(model: BasisModel) -> dict[Weight, list[tuple[Label, Label]]]:
    """Matrix units ``E_ab`` (mapping b to a) grouped by weight ``w_a - w_b``."""
    out: dict[Weight, list] = {}
    for a in model.labels:
        for b in model.labels:
            if a == b:
                continue
            w = model.weights[a] - model.weights[b]
            out.setdefault(w, []).append((a, b))
    return out


def phi_from_delta(rs: RootSystem, bp: Basepoint, delta: DimensionSequence) -> ParabolicRootData:
    """Roots whose root vectors stabilize the flag of type delta at ``bp``.

    The root vector of ``alpha`` is built from the matrix units of weight
    ``alpha``; each maps a basis vector ``u_b`` to ``u_a`` and stabilizes the
    flag iff every flag subspace containing ``u_b`` also contains ``u_a``.
    """
    if (delta.family, delta.n, delta.m) != (rs.family, rs.n, rs.m):
        raise InvalidSequence("incompatible", "sequence and root system disagree")
    model = basis_model(rs.family, rs.n, rs.m)
    if len(bp.e_order) != _n_even_free(model) or len(bp.f_order) != _n_odd_free(model):
        raise InvalidSequence("incompatible-basepoint", f"{bp.name} does not fit {rs.family}")
    lev = levels(model, flag_subspaces(model, bp, delta))
    pairs = unit_pairs(model)
    phi = set()
    for r in rs.roots:
        if all(lev[a] <= lev[b] for a, b in pairs[r.weight]):
            phi.add(r)
    return ParabolicRootData(rs, frozenset(phi))


def _n_even_free(model: BasisModel) -> int:
    return sum(1 for lab in model.labels if lab[0] == "e" and lab[1] > 0)


def _n_odd_free(model: BasisModel) -> int:
    return sum(1 for lab in model.labels if lab[0] == "f" and lab[1] > 0)


# simple roots ----------------------------------------------------------------

def type_a_simple_system(rs: RootSystem, ordering: Sequence[Label]) -> list[Root]:
    """Simple roots of the Borel subalgebra fixing the flag built in ``ordering``."""
    if rs.family != "A":
        raise InvalidSequence("unsupported", "ordering-based simple systems are type A only")
    model = basis_model("A", rs.n, rs.m)
    if sorted(ordering) != sorted(model.labels):
        raise InvalidSequence("bad-ordering", "ordering must list every basis vector once")
    return [rs.root(model.weights[a] - model.weights[b]) for a, b in zip(ordering, ordering[1:])]


def simple_coordinates(simple: Sequence[Root], w: Weight) -> list | None:
    """Coordinates of ``w`` in the simple roots, or None if outside their span."""
    import sympy
    M = sympy.Matrix([list(r.weight.coeffs) for r in simple]).T
    b = sympy.Matrix(list(w.coeffs))
    try:
        sol, params = M.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        raise InvalidSequence("not-simple", "simple roots are linearly dependent")
    return list(sol)


def phi_from_simple_roots(rs: RootSystem, simple: Sequence[Root], J) -> ParabolicRootData:
    """Borel roots together with the negative roots supported on ``-J``."""
    Jw = {r.weight for r in J}
    simple_w = [r.weight for r in simple]
    if not Jw <= set(simple_w):
        raise InvalidSequence("not-simple", "J must be a subset of the simple system")
    phi = set()
    for r in rs.roots:
        c = simple_coordinates(simple, r.weight)
        if c is None or not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise InvalidSequence("not-simple", f"{r} is not an integral combination of the simple roots")
        if all(x >= 0 for x in c):
            phi.add(r)
        elif all(c[i] == 0 or simple_w[i] in Jw for i in range(len(c))):
            phi.add(r)
    return ParabolicRootData(rs, frozenset(phi))


def level_ordering(bp: Basepoint, delta: DimensionSequence) -> list[Label]:
    """Total order refining the flag levels (type A), even vectors first in a level."""
    model = basis_model(delta.family, delta.n, delta.m)
    lev = levels(model, flag_subspaces(model, bp, delta))
    rank_e = {i: k for k, i in enumerate(bp.e_order)}
    rank_f = {j: k for k, j in enumerate(bp.f_order)}
    key = lambda lab: (lev[lab], lab[0], rank_e[lab[1]] if lab[0] == "e" else rank_f[lab[1]])
    return sorted(model.labels, key=key)


def simple_roots_for_delta(rs: RootSystem, bp: Basepoint, delta: DimensionSequence):
    """(simple system, J) with ``phi_from_simple_roots`` reproducing ``phi_from_delta``."""
    order = level_ordering(bp, delta)
    model = basis_model(rs.family, rs.n, rs.m)
    lev = levels(model, flag_subspaces(model, bp, delta))
    simple = type_a_simple_system(rs, order)
    J = [s for s, (a, b) in zip(simple, zip(order, order[1:])) if lev[a] == lev[b]]
    return simple, J


def weight_map_fixes(pd: ParabolicRootData, fn: Callable[[Weight], Weight]) -> bool:
    """Is Phi invariant under a root-system automorphism given on weights?"""
    return all(pd.contains_weight(fn(r.weight)) for r in pd.phi)


# extended Dynkin diagram of A(n-1, m-1) --------------------------------------------

def extended_cycle(n: int, m: int) -> list[Weight]:
    """Distinguished simple roots of sl(n|m) followed by the lowest-root node, as a cycle.

    The two odd nodes are ``x_n - y_1`` and ``y_m - x_1``.
    """
    ks = [("x", i) for i in range(1, n + 1)] + [("y", j) for j in range(1, m + 1)]
    unit = lambda k: Weight.unit(n, m, k[0], k[1])
    return [unit(a) - unit(b) for a, b in zip(ks, ks[1:] + ks[:1])]


def diagram_automorphism(name: str, n: int, m: int) -> Callable[[Weight], Weight]:
    """``r0`` (fixes even nodes), ``r1`` (fixes the odd nodes) or ``s`` (antipodal), on weights."""
    neg_rev = lambda t: tuple(-c for c in reversed(t))
    if name == "r0":
        return lambda w: Weight(neg_rev(w.x), neg_rev(w.y))
    if n != m:
        raise InvalidSequence("unsupported", f"{name} needs n == m")
    if name == "r1":
        return lambda w: Weight(neg_rev(w.y), neg_rev(w.x))
    if name == "s":
        return lambda w: Weight(w.y, w.x)
    raise InvalidSequence("unsupported", f"unknown diagram automorphism {name!r}")


def diagram_symmetric(pd: ParabolicRootData, name: str) -> bool:
    """Is the parabolic (hence its set J of negative simple roots) fixed by the automorphism?"""
    return weight_map_fixes(pd, diagram_automorphism(name, pd.rs.n, pd.rs.m))
