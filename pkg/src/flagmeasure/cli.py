"""Command-line front end.

Subcommands::

    flagmeasure classify FAMILY N [M] FORM [DELTA]
    flagmeasure enumerate [--family A,B] [--max-rank K] [--form NAME]
    flagmeasure table [--family A] [--max-rank K]
    flagmeasure verify [--family A] [--max-rank K]

Exit codes: 0 on success, 1 when ``verify`` finds a classifier/oracle
mismatch, 2 on usage or validation errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Iterable, Sequence

from .classifier import FamilyNotCovered, Prediction, classify_instance, instance
from .flags import format_entries
from .realforms import RealFormSpec, parse_real_form
from .superroots import InvalidParameters, normalize_params
from .sweep import DEFAULT_MAX_RANK, SweepRecord, parse_families, run_sweep, verdict_fields

RECORD_FIELDS = ("family", "n", "m", "real_form", "delta", "open", "codim", "body_measurable",
                 "berezinian_invariant", "strong", "weak")


class UsageError(ValueError):
    pass


# output --------------------------------------------------------------------------

def _cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return "|".join(str(v) for v in value)
    return str(value)


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|")


def render(records: Sequence[dict], fmt: str, fields: Sequence[str] | None = None) -> str:
    """Render flat records as JSON lines, CSV, or a markdown table."""
    fields = list(fields or (records[0].keys() if records else RECORD_FIELDS))
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in records:
            w.writerow([_cell(r.get(f)) for f in fields])
        return buf.getvalue()
    if fmt == "md":
        lines = ["| " + " | ".join(fields) + " |", "|" + "---|" * len(fields)]
        for r in records:
            lines.append("| " + " | ".join(_md_escape(_cell(r.get(f))) for f in fields) + " |")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


# classify ---------------------------------------------------------------------------

def _split_classify_args(args: argparse.Namespace) -> tuple[str, int, int | None, str, str]:
    pos = list(args.args)
    if not pos:
        raise UsageError("classify needs FAMILY N [M] FORM [DELTA]")
    family = pos.pop(0)
    nums: list[int] = []
    while pos and pos[0].isdigit() and len(nums) < 2:
        nums.append(int(pos.pop(0)))
    if not nums:
        raise UsageError("classify needs the rank N after the family")
    form = args.form
    if form is None:
        if not pos:
            raise UsageError("missing real form (positional or --form)")
        form = pos.pop(0)
    delta = args.delta
    if delta is None:
        delta = pos.pop(0) if pos else ""
    if pos:
        raise UsageError(f"unexpected arguments: {' '.join(pos)}")
    n = nums[0]
    m = nums[1] if len(nums) > 1 else None
    return family, n, m, form, delta


def classify_record(family: str, n: int, m: int | None, form: str, delta: str) -> dict:
    fam, n, m = normalize_params(family.upper(), n, m)
    rf = parse_real_form(fam, n, m, form)
    inst = instance(fam, n, m, rf, delta)
    v = classify_instance(inst)
    return {"family": fam, "n": n, "m": m, "real_form": rf.label,
            "delta": format_entries(inst.delta.entries), **verdict_fields(v)}


def cmd_classify(args: argparse.Namespace, out) -> int:
    rec = classify_record(*_split_classify_args(args))
    out.write(render([rec], args.format, RECORD_FIELDS))
    return 0


# enumerate ----------------------------------------------------------------------------

def _form_filter(text: str | None):
    if not text:
        return None
    want = text.strip().lower()
    return lambda rf: want in (rf.name.lower(), rf.label.lower())


def _flat(rec: SweepRecord) -> dict:
    d = rec.as_dict()
    d.pop("oracle", None)
    d["problems"] = ",".join(rec.problems)
    return d


def cmd_enumerate(args: argparse.Namespace, out) -> int:
    recs = [_flat(r) for r in run_sweep(parse_families(args.family), args.max_rank,
                                         with_prediction=True, form_filter=_form_filter(args.form))]
    out.write(render(recs, args.format, RECORD_FIELDS + ("match", "problems")))
    return 0


# table --------------------------------------------------------------------------------

def symbolic_conditions(rf: RealFormSpec) -> tuple[str, str, str]:
    """The table's (maximal odd dimension, weak, strong) entries for a form."""
    act = rf.action
    if rf.family == "A":
        if act == "minus":
            return "always", "-", "always"
        if act == "reverse":
            return "ev*", ("Π or P(C^{n|n})" if rf.n == rf.m else "-"), "ev"
        if act == "swap":
            return "odd*", "Π", "odd"
        if act == "uspi":
            return "Π", "-", "Π"
    if rf.family in ("B", "C", "D"):
        if act == "odd-odd":
            return ("n|d ∉ δ for d < m", "∃ d: n-d-1|m-d < n|m in δ",
                    "n|m ∉ δ or n-1|m ∈ δ")
        return "always", "-", "always"
    if rf.family == "P":
        return "Π", "-", "n = 2k and k|k ∈ δ"
    return "always", "always", "as for A_n"


def _predicted_weak(p: Prediction) -> bool | None:
    if p.weak is not None:
        return p.weak
    return True if p.weak_sufficient else None


TABLE_FIELDS = ("type", "rank", "real form", "δ", "max odd dim", "weak", "strong",
                "predicted", "agree")
SUMMARY_FIELDS = ("type", "real form", "max odd dim", "weak", "strong", "instances", "agree")


def table_rows(families: Iterable[str], max_rank: int) -> tuple[list[dict], list[dict]]:
    rows: list[dict] = []
    summary: dict = {}
    for rec in run_sweep(families, max_rank, with_prediction=True):
        v, p = rec.verdict, rec.prediction
        if p is None:
            continue
        pred = "/".join(_cell(x) for x in (p.open, _predicted_weak(p), p.strong))
        rows.append({"type": rec.family, "rank": f"{rec.n}|{rec.m}", "real form": rec.form.label,
                     "δ": format_entries(rec.delta.entries) or "∅",
                     "max odd dim": v.open, "weak": v.weakly_measurable,
                     "strong": v.strongly_measurable, "predicted": pred, "agree": rec.match})
        sym = symbolic_conditions(rec.form)
        s = summary.setdefault((rec.family, rec.form.name, sym),
                               {"type": rec.family, "real form": rec.form.name,
                                **dict(zip(("max odd dim", "weak", "strong"), sym)),
                                "instances": 0, "agree": 0})
        s["instances"] += 1
        s["agree"] += rec.match
    return list(summary.values()), rows


def render_table(families: Iterable[str], max_rank: int) -> str:
    summary, rows = table_rows(families, max_rank)
    for s in summary:
        s["agree"] = f"{s['agree']}/{s['instances']}"
    return ("## Summary\n\n" + render(summary, "md", SUMMARY_FIELDS)
            + "\n## Per flag type\n\n" + render(rows, "md", TABLE_FIELDS))


def cmd_table(args: argparse.Namespace, out) -> int:
    families = parse_families(args.family)
    if args.format == "md":
        out.write(render_table(families, args.max_rank))
    else:
        out.write(render(table_rows(families, args.max_rank)[1], args.format, TABLE_FIELDS))
    return 0


# verify -------------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace, out) -> int:
    families = parse_families(args.family)
    total = bad = 0
    for rec in run_sweep(families, args.max_rank, with_oracle=True, with_prediction=False,
                         inject_fault=args.inject_fault,
                         form_filter=lambda rf: not rf.quaternionic):
        total += 1
        bad += not rec.match
        d = rec.as_dict()
        out.write(json.dumps({"family": d["family"], "n": d["n"], "m": d["m"],
                              "real_form": d["real_form"], "delta": d["delta"],
                              "classifier": verdict_fields(rec.verdict), "oracle": d["oracle"],
                              "match": rec.match}) + "\n")
        if not rec.match:
            print(f"mismatch: {d['family']}({d['n']}|{d['m']}) {d['real_form']} "
                  f"[{d['delta']}]: {', '.join(rec.problems)}", file=sys.stderr)
    print(f"{total} instances, {bad} mismatches", file=sys.stderr)
    return 1 if bad else 0


# entry point --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flagmeasure",
                                 description="Measurability of real-form orbits in flag supermanifolds.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "csv", "md"), default=fmt)

    def sweep_opts(p):
        p.add_argument("--family", default=None, help="comma separated subset of A,B,C,D,P,Q")
        p.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)

    p = sub.add_parser("classify", help="classify one (family, form, flag type)")
    p.add_argument("args", nargs="*", metavar="FAMILY N [M] FORM [DELTA]")
    p.add_argument("--form", default=None)
    p.add_argument("--delta", default=None, help='flag type such as "1|0 < 2|1"')
    common(p)

    p = sub.add_parser("enumerate", help="classify every flag type in the sweep bounds")
    sweep_opts(p)
    p.add_argument("--form", default=None, help="restrict to one real form name or label")
    common(p)

    p = sub.add_parser("table", help="per flag type tables with the closed-form conditions")
    sweep_opts(p)
    common(p, "md")

    p = sub.add_parser("verify", help="compare the classifier with the matrix oracle")
    sweep_opts(p)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handlers = {"classify": cmd_classify, "enumerate": cmd_enumerate,
                "table": cmd_table, "verify": cmd_verify}
    try:
        if getattr(args, "max_rank", 0) < 0:
            raise UsageError("--max-rank must be nonnegative")
        return handlers[args.command](args, out)
    except (UsageError, InvalidParameters, FamilyNotCovered, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
