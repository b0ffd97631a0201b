"""Sweep drivers shared by the CLI and the test-suite.

A sweep walks (family, rank, real form, flag type) in a deterministic order
and produces one :class:`SweepRecord` per instance.  Rank bounds come from a
single integer ``max_rank``:

* A: every sl(n|m) with 1 <= n + m <= K, plus sl(k|k) with k = (K + 1) // 2 when K is odd
* B, D: n <= 3, m <= 2 and n + m <= K (C: m <= 2 and 1 + m <= K)
* P: 2 <= n <= min(K, 4) (P(1) has zero even part);  Q: n <= min(K, 3)

so ``max_rank=5`` reproduces the default verification bounds and 0 selects nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .classifier import (FamilyNotCovered, Prediction, Verdict, classify_instance, instance,
                         prediction_mismatches, theorem_prediction)
from .flags import DimensionSequence, enumerate_sequences, format_entries
from .realforms import RealFormSpec, catalog, tau_weight
from .superroots import Weight, build_root_system

DEFAULT_MAX_RANK = 5
FAMILY_ORDER = ("A", "B", "C", "D", "P", "Q")


def ranks(family: str, max_rank: int = DEFAULT_MAX_RANK) -> list[tuple[int, int]]:
    K = max_rank
    out: list[tuple[int, int]] = []
    if family == "A":
        out = [(n, s - n) for s in range(1, K + 1) for n in range(s, -1, -1)]
        if K % 2 and K > 1:
            out.append(((K + 1) // 2, (K + 1) // 2))
    elif family in ("B", "D"):
        lo = 0 if family == "B" else 1
        out = [(n, m) for n in range(lo, 4) for m in range(0, 3)
               if 1 <= n + m <= K and not (family == "D" and n + m < 2)]
    elif family == "C":
        out = [(1, m) for m in (1, 2) if 1 + m <= K]
    elif family == "P":
        out = [(n, n) for n in range(2, min(K, 4) + 1)]
    elif family == "Q":
        out = [(n, n) for n in range(1, min(K, 3) + 1)]
    return out


def parse_families(text: str | None) -> tuple[str, ...]:
    """``A,B,D`` style list; None means all; ``""`` means none."""
    if text is None:
        return FAMILY_ORDER
    parts = [p.strip().upper() for p in text.replace(";", ",").split(",") if p.strip()]
    for p in parts:
        if p not in FAMILY_ORDER:
            raise ValueError(f"unknown family {p!r} (expected one of {', '.join(FAMILY_ORDER)})")
    return tuple(f for f in FAMILY_ORDER if f in parts)


@dataclass
class SweepRecord:
    family: str
    n: int
    m: int
    form: RealFormSpec
    delta: DimensionSequence
    verdict: Verdict
    prediction: Prediction | None = None
    oracle: Verdict | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.problems

    def as_dict(self) -> dict:
        d = {
            "family": self.family, "n": self.n, "m": self.m,
            "real_form": self.form.label, "delta": format_entries(self.delta.entries),
            **verdict_fields(self.verdict),
        }
        if self.oracle is not None:
            d["oracle"] = verdict_fields(self.oracle)
        d["match"] = self.match
        if self.problems:
            d["problems"] = list(self.problems)
        return d


def verdict_fields(v: Verdict) -> dict:
    return {
        "open": v.open, "codim": list(v.codim), "body_measurable": v.body_measurable,
        "berezinian_invariant": v.berezinian_invariant, "strong": v.strongly_measurable,
        "weak": v.weakly_measurable,
    }


def instances(families: Iterable[str], max_rank: int, *, include_even: bool = True,
              form_filter: Callable[[RealFormSpec], bool] | None = None):
    for fam in families:
        for n, m in ranks(fam, max_rank):
            for rf in catalog(fam, n, m, include_even=include_even):
                if form_filter is not None and not form_filter(rf):
                    continue
                for delta in enumerate_sequences(fam, n, m):
                    yield fam, n, m, rf, delta


def faulty_tau(rf: RealFormSpec) -> Callable[[Weight], Weight]:
    """The root action with the image of one root flipped (mutation testing)."""
    rs = build_root_system(rf.family, rf.n, rf.m)
    good = lambda w: tau_weight(rf, w)
    if not rs.roots:
        return good
    victim = rs.sorted_roots()[0].weight
    bad_image = -good(victim)
    if bad_image not in rs:
        bad_image = victim
    return lambda w: bad_image if w == victim else good(w)


def run_sweep(families: Iterable[str] = FAMILY_ORDER, max_rank: int = DEFAULT_MAX_RANK, *,
              with_oracle: bool = False, with_prediction: bool = True, include_even: bool = True,
              inject_fault: bool = False,
              form_filter: Callable[[RealFormSpec], bool] | None = None) -> Iterator[SweepRecord]:
    from .oracle.parabolic import OracleContext  # heavy, only when asked

    contexts: dict = {}
    for fam, n, m, rf, delta in instances(families, max_rank, include_even=include_even,
                                          form_filter=form_filter):
        inst = instance(fam, n, m, rf, delta)
        tau = faulty_tau(rf) if inject_fault else None
        v = classify_instance(inst, tau)
        rec = SweepRecord(fam, inst.rs.n, inst.rs.m, rf, delta, v)
        if with_prediction:
            try:
                rec.prediction = theorem_prediction(rf, delta)
                rec.problems += [f"theorem:{f}" for f in prediction_mismatches(v, rec.prediction)]
            except FamilyNotCovered:
                pass
        if with_oracle and not rf.quaternionic:
            ctx = contexts.get(rf)
            if ctx is None:
                ctx = contexts[rf] = OracleContext(rf)
            rec.oracle = ctx.run(delta).verdict
            rec.problems += [f"oracle:{k}" for k, val in verdict_fields(v).items()
                             if verdict_fields(rec.oracle)[k] != val]
        yield rec
