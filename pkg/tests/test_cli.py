from __future__ import annotations

import csv
import io
import json
from importlib import resources

import pytest

from flagmeasure.cli import RECORD_FIELDS, main, render, render_table


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def golden(name):
    return resources.files("flagmeasure").joinpath("golden", name).read_text(encoding="utf-8")


def test_classify_grassmannian():
    code, text = run("classify", "A", "4", "4", "sl-R", "1|1")
    assert code == 0
    rec = json.loads(text)
    assert rec["open"] and rec["weak"] and not rec["strong"]
    assert rec["codim"] == [0, 0]


def test_classify_with_flags_and_defaults():
    code, text = run("classify", "P", "4", "--form", "p-R", "--delta", "2|2")
    assert code == 0 and json.loads(text)["strong"]
    code, text = run("classify", "A", "2", "2", "sl-R")
    assert code == 0 and json.loads(text)["delta"] == ""


def test_classify_closed_orbit():
    code, text = run("classify", "A", "2", "2", "sl-R", "2|0", "--format", "csv")
    assert code == 0
    row = list(csv.DictReader(io.StringIO(text)))[0]
    assert row["open"] == "no"
    assert row["codim"] == "0|4"


def test_markdown_escapes_pipes():
    code, text = run("classify", "A", "3", "2", "su", "1|1", "--format", "md")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("| family")
    assert "1\\|1" in lines[2]


@pytest.mark.parametrize("argv", [
    ("classify", "A", "2", "2", "bogus"),
    ("classify", "A", "2", "2", "sl-R", "3|0"),
    ("classify", "A"),
    ("classify", "A", "2", "2", "sl-R", "1|0", "extra"),
    ("frobnicate",),
    ("enumerate", "--family", "Z"),
    ("table", "--max-rank", "-1"),
    ("classify", "A", "2", "2", "sl-R", "--format", "xml"),
])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_json_round_trip():
    code, text = run("enumerate", "--family", "A", "--max-rank", "2")
    assert code == 0
    recs = [json.loads(line) for line in text.splitlines()]
    assert recs and all(r["match"] for r in recs)
    assert render(recs, "json", list(recs[0])) == text


def test_enumerate_form_filter():
    code, text = run("enumerate", "--family", "A", "--max-rank", "3", "--form", "uspi")
    recs = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and recs
    assert {r["real_form"] for r in recs} == {"uspi"}


def test_csv_header():
    code, text = run("enumerate", "--family", "Q", "--max-rank", "2", "--format", "csv")
    assert code == 0
    assert text.splitlines()[0].split(",")[:len(RECORD_FIELDS)] == list(RECORD_FIELDS)


def test_empty_table():
    code, text = run("table", "--family", "")
    assert code == 0
    assert "## Summary" in text and "## Per flag type" in text


@pytest.mark.parametrize("name,families", [("Q.md", ["Q"]), ("P.md", ["P"])])
def test_golden_tables_regenerate(name, families):
    assert render_table(families, 5) == golden(name)


def test_verify_small_ranks(capsys):
    assert run("verify", "--max-rank", "0")[0] == 0
    code, text = run("verify", "--family", "A,B", "--max-rank", "2")
    assert code == 0
    assert all(json.loads(line)["match"] for line in text.splitlines())
    assert "0 mismatches" in capsys.readouterr().err


def test_verify_detects_injected_fault(capsys):
    code, _ = run("verify", "--family", "A", "--max-rank", "2", "--inject-fault")
    assert code == 1
    assert "mismatch:" in capsys.readouterr().err
