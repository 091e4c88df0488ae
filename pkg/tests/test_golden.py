"""Bundled reference tables: loading, auditing, and the known-errata registry."""

import copy
import json
import shutil

import pytest

from orbicensus.census import build_census
from orbicensus.golden import (
    KNOWN_ERRATA,
    ErrataEntry,
    check_higher_table,
    compare_to_golden,
    load_golden,
)


def test_load_golden_bundled_tables():
    for table, rows in [("dim1", 6), ("dim2", 14), ("dim3", 34)]:
        data = load_golden(table)
        assert data["table"] == table
        assert len(data["rows"]) == rows
    higher = load_golden("higher")
    assert [d["n"] for d in higher["dim_lists"]] == [4, 5, 6, 7]


def test_load_golden_env_override(tmp_path, monkeypatch):
    src = load_golden("dim1")
    target = tmp_path / "dim1.json"
    hacked = copy.deepcopy(src)
    hacked["rows"] = hacked["rows"][:2]
    target.write_text(json.dumps(hacked))
    monkeypatch.setenv("ORBICENSUS_GOLDEN_DIR", str(tmp_path))
    assert len(load_golden("dim1")["rows"]) == 2
    # explicit argument beats the environment
    monkeypatch.setenv("ORBICENSUS_GOLDEN_DIR", "/nonexistent")
    assert len(load_golden("dim1", golden_dir=str(tmp_path))["rows"]) == 2


def test_errata_entry_formatting():
    entry = ErrataEntry("dim2", 10, "order", "32", "16")
    assert entry.is_known
    assert entry.format() == "[known] dim2 row 10, order: table has 32, computed 16"
    rogue = ErrataEntry("dim2", 3, "order", "72", "71")
    assert not rogue.is_known
    assert rogue.format().startswith("[UNKNOWN]")


@pytest.mark.parametrize("n,table", [(1, "dim1"), (2, "dim2"), (3, "dim3")])
def test_emitted_errata_are_exactly_the_registry(n, table):
    _, report = build_census(n)
    assert not report.unknown()
    emitted = {e.key() for e in report.entries}
    registered = {k for k in KNOWN_ERRATA if k[0] == table}
    assert emitted == registered


def test_tampered_golden_produces_unknown_entry():
    rows, _ = build_census(2, golden=False)
    data = copy.deepcopy(load_golden("dim2"))
    victim = next(r for r in data["rows"] if r["order"] == 72)
    victim["order"] = 71
    report = compare_to_golden(rows, data)
    unknown = report.unknown()
    assert len(unknown) == 1
    assert unknown[0].field == "order"
    assert unknown[0].table_value == "71"
    assert unknown[0].computed_value == "72"


def test_tampered_signature_is_reported_both_ways():
    rows, _ = build_census(2, golden=False)
    data = copy.deepcopy(load_golden("dim2"))
    data["rows"][3]["signature"] = "[11,11,11]"
    report = compare_to_golden(rows, data)
    fields = {e.field for e in report.unknown()}
    assert "unmatched_row" in fields
    assert "missing_row" in fields


def test_higher_table_check():
    report, checked = check_higher_table()
    assert checked == 30
    assert not report.unknown()
    known = report.known()
    assert len(known) == 1
    assert known[0].field == "corrupt_row"


def test_higher_table_with_corruption_removed(tmp_path):
    # if the transcription were repaired in place, the corrupt-row erratum
    # would never fire and the audit would still pass containment
    import orbicensus.goldens as goldens
    import importlib.resources as res

    with res.as_file(res.files(goldens) / "higher.json") as p:
        data = json.loads(p.read_text())
    for dim_list in data["dim_lists"]:
        for row in dim_list["rows"]:
            if row.get("corrupt"):
                row["text"] = row["repair"]
                row.pop("corrupt")
                row.pop("repair")
    (tmp_path / "higher.json").write_text(json.dumps(data))
    report, checked = check_higher_table(golden_dir=str(tmp_path))
    assert checked == 30
    assert not report.entries


def test_report_format_text_mentions_every_entry():
    _, report = build_census(3)
    text = report.format_text()
    assert text.count("[known]") == len(report.entries)
    for entry in report.entries:
        assert entry.field in text
