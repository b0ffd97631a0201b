"""Root-level verdicts for open orbits, and the closed-form predictions.

Everything here works on the parabolic root data ``Phi`` and the root action
of the involution.  ``tau`` below is always a function on weights, so the
helpers also accept perturbed actions (the CLI fault-injection mode uses this).

Conventions:

* ``alpha`` lies in ``tau Phi^c`` iff ``tau(alpha)`` lies outside ``Phi``.
* A root whose negative is not a root (``2x_i`` in P(n)) never belongs to
  the reductive part, so strong measurability requires it to stay outside
  ``Phi`` intersected with ``tau Phi``.
* ``weakly_measurable`` is "open, invariant Berezinian, not strongly
  measurable".  Whenever strong measurability coincides with "Berezinian
  and measurable body" this is the usual "Berezinian and non-measurable
  body"; :func:`definition_conflicts` lists the instances where the two
  readings differ.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

from .flags import (DimensionSequence, ParabolicRootData, is_even_symmetric, is_even_symmetrizable,
                    is_odd_symmetric, is_odd_symmetrizable, is_pi_symmetric, make_sequence,
                    phi_from_delta)
from .realforms import RealFormSpec, basepoint_for, parse_real_form, tau_weight
from .superroots import Root, RootSystem, Weight, build_root_system, graded_sum_in

TauMap = Callable[[Weight], Weight]


class FamilyNotCovered(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    open: bool
    codim: tuple[int, int]
    body_measurable: bool
    berezinian_invariant: bool
    strongly_measurable: bool
    weakly_measurable: bool

    @property
    def max_odd_dim(self) -> bool:
        return self.open

    def as_dict(self) -> dict:
        d = asdict(self)
        d["codim"] = list(self.codim)
        return d


# root-level building blocks ---------------------------------------------------------

def _in_phi(pd: ParabolicRootData, w: Weight) -> bool:
    return pd.contains_weight(w)


def _in_tau_phi(pd: ParabolicRootData, tau: TauMap, w: Weight) -> bool:
    return pd.contains_weight(tau(w))


def codimension(pd: ParabolicRootData, tau: TauMap) -> tuple[int, int]:
    """Superdimension of the sum of root spaces over Phi^c meet tau Phi^c."""
    e = o = 0
    for r in pd.rs.roots:
        if not _in_phi(pd, r.weight) and not _in_tau_phi(pd, tau, r.weight):
            de, do = r.space_superdim
            e += de
            o += do
    return e, o


def lemma_condition(pd: ParabolicRootData, tau: TauMap, roots=None) -> bool:
    """alpha in Phi iff tau(-alpha) in Phi, for every root of ``roots``.

    Roots without a negative must instead avoid Phi meet tau Phi.
    """
    rs = pd.rs
    for r in (rs.roots if roots is None else roots):
        w = r.weight
        if (-w) in rs:
            if _in_phi(pd, w) != _in_phi(pd, tau(-w)):
                return False
        elif _in_phi(pd, w) and _in_tau_phi(pd, tau, w):
            return False
    return True


def body_measurable(pd: ParabolicRootData, tau: TauMap) -> bool:
    """The classical criterion on the even roots, given an open body orbit."""
    if codimension(pd, tau)[0]:
        return False
    return lemma_condition(pd, tau, [r for r in pd.rs.roots if r.is_even])


def intersection_complement(pd: ParabolicRootData, tau: TauMap) -> list[Root]:
    """Roots whose root spaces are not in p meet tau p."""
    return [r for r in pd.rs.roots
            if not (_in_phi(pd, r.weight) and _in_tau_phi(pd, tau, r.weight))]


def berezinian_invariant(pd: ParabolicRootData, tau: TauMap) -> bool:
    """Open, and the graded sum over g / (p meet tau p) vanishes on the Cartan."""
    if codimension(pd, tau) != (0, 0):
        return False
    return pd.rs.is_null(graded_sum_in(pd.rs, intersection_complement(pd, tau)))


def strongly_measurable(pd: ParabolicRootData, tau: TauMap) -> bool:
    if codimension(pd, tau) != (0, 0):
        return False
    return lemma_condition(pd, tau)


def characterization_condition(pd: ParabolicRootData, tau: TauMap) -> bool:
    """tau Phi^r == Phi^r and tau Phi^n == Phi^c, as sets of weights."""
    img = lambda roots: {tau(r.weight) for r in roots}
    ws = lambda roots: {r.weight for r in roots}
    return img(pd.phi_r) == ws(pd.phi_r) and img(pd.phi_n) == ws(pd.phi_c)


def verdict(pd: ParabolicRootData, tau: TauMap) -> Verdict:
    cod = codimension(pd, tau)
    is_open = cod == (0, 0)
    body = body_measurable(pd, tau)
    ber = berezinian_invariant(pd, tau)
    strong = is_open and lemma_condition(pd, tau)
    weak = is_open and ber and not strong
    return Verdict(is_open, cod, body, ber, strong, weak)


def definition_conflicts(v: Verdict) -> bool:
    """Berezinian and measurable body, yet the root criterion fails."""
    return v.berezinian_invariant and v.body_measurable and not v.strongly_measurable


# instances ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    rs: RootSystem
    rf: RealFormSpec
    delta: DimensionSequence
    pd: ParabolicRootData

    def tau(self, w: Weight) -> Weight:
        return tau_weight(self.rf, w)


def instance(family: str, n: int, m: int | None, form, delta) -> Instance:
    rs = build_root_system(family, n, m)
    rf = form if isinstance(form, RealFormSpec) else parse_real_form(rs.family, rs.n, rs.m, form)
    if (rf.family, rf.n, rf.m) != (rs.family, rs.n, rs.m):
        raise ValueError("real form belongs to a different algebra")
    if not isinstance(delta, DimensionSequence):
        delta = make_sequence(rs.family, rs.n, rs.m, delta)
    pd = phi_from_delta(rs, basepoint_for(rf), delta)
    return Instance(rs, rf, delta, pd)


def classify(family: str, n: int, m: int | None, form, delta, tau: TauMap | None = None) -> Verdict:
    inst = instance(family, n, m, form, delta)
    return verdict(inst.pd, tau or inst.tau)


def classify_instance(inst: Instance, tau: TauMap | None = None) -> Verdict:
    return verdict(inst.pd, tau or inst.tau)


# closed-form predictions ----------------------------------------------------------------

@dataclass(frozen=True)
class Prediction:
    """Verdict fields the theorems determine.  ``None`` means not claimed.

    ``weak_sufficient`` records that a sufficient condition for weak
    measurability (as opposed to an equivalence) is met.
    """
    open: bool
    strong: bool
    weak: bool | None = None
    berezinian: bool | None = None
    weak_sufficient: bool = False
    body: bool | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _odd_odd_items(delta: DimensionSequence) -> tuple[bool, bool, bool]:
    n, m = delta.n, delta.m
    es = delta.entry_set
    item1 = not any((n, d) in es for d in range(m))
    item2 = (n, m) not in es or (n - 1, m) in es
    item3 = False
    if (n, m) in es:
        pred = delta.predecessor((n, m))
        item3 = any(pred == (n - d - 1, m - d) for d in range(1, min(n - 1, m) + 1))
    return item1, item2, item3


def odd_odd_items(delta: DimensionSequence) -> tuple[bool, bool, bool]:
    """The three symmetry conditions for osp(p,q|2m) with p, q odd."""
    return _odd_odd_items(delta)


def _classical_symmetric(delta: DimensionSequence) -> bool:
    """Flag type d -> n - d symmetric (the sl(n) criterion; Q entries are d|d)."""
    ds = {a for a, _ in delta.entries}
    return all(delta.n - d in ds | {0, delta.n} for d in ds)


def theorem_prediction(rf: RealFormSpec, delta: DimensionSequence) -> Prediction:
    """Closed-form verdict from the symmetry predicates alone."""
    fam, act = rf.family, rf.action
    if fam == "A":
        n, m = rf.n, rf.m
        if act == "minus":
            return Prediction(True, True, weak=False, berezinian=True, body=True)
        if act == "reverse":
            op = is_even_symmetrizable(delta)
            strong = is_even_symmetric(delta)
            suff = op and n == m and (is_pi_symmetric(delta) or delta.entries == ((1, 0),))
            return Prediction(op, strong, weak_sufficient=suff)
        if act == "swap":
            op = is_odd_symmetrizable(delta)
            suff = op and is_pi_symmetric(delta)
            return Prediction(op, is_odd_symmetric(delta), weak_sufficient=suff)
        if act == "uspi":
            pi = is_pi_symmetric(delta)
            return Prediction(pi, pi)
    if fam in ("B", "C", "D"):
        if act == "minus":
            return Prediction(True, True, weak=False, berezinian=True, body=True)
        if act == "odd-odd":
            i1, i2, i3 = _odd_odd_items(delta)
            return Prediction(i1, i1 and i2, weak=i1 and i3)
    if fam == "P":
        pi = is_pi_symmetric(delta)
        k = rf.n // 2
        return Prediction(pi, pi and rf.n % 2 == 0 and (k, k) in delta.entry_set)
    if fam == "Q":
        body = True if act == "minus" else _classical_symmetric(delta)
        return Prediction(True, body, weak=not body, berezinian=True, body=body)
    raise FamilyNotCovered(f"no closed-form prediction for {rf.label} on {fam}")


def prediction_mismatches(v: Verdict, p: Prediction) -> list[str]:
    """Fields where a verdict contradicts a prediction (sufficient conditions as implications)."""
    bad = []
    if v.open != p.open:
        bad.append("open")
    if v.strongly_measurable != p.strong:
        bad.append("strong")
    if p.weak is not None and v.weakly_measurable != p.weak:
        bad.append("weak")
    if p.berezinian is not None and v.berezinian_invariant != p.berezinian:
        bad.append("berezinian")
    if p.body is not None and v.body_measurable != p.body:
        bad.append("body")
    if p.weak_sufficient and not (v.weakly_measurable or v.strongly_measurable):
        bad.append("weak-sufficient")
    return bad
