import csv
import io
import os
from pathlib import Path

import pytest

import xbrlcore

FIXTURES = Path(os.environ.get("XBRLCORE_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "fixtures"))


def read(name):
    return (FIXTURES / name).read_bytes()


def test_parse_counts():
    inst = xbrlcore.parse(read("mini-instance.xml"))
    assert inst.fact_count == 7
    assert inst.item_count == 6
    assert inst.tuple_count == 1
    assert inst.context_ids == ["c-2008d", "c-2008i"]
    assert inst.unit_ids == ["u-usd"]
    assert inst.schema_refs == ["mini-taxonomy.xsd"]


def test_round_trip():
    inst = xbrlcore.parse(read("mini-instance.xml"))
    assert xbrlcore.parse(inst.serialize()) == inst


def test_facts_rows():
    rows = xbrlcore.parse(read("mini-instance.xml")).facts()
    assert len(rows) == 6
    assert rows[0]["period"] == "I:2008-12-31"
    assert rows[-1]["tuple_path"].endswith("}ReportingSegment")


def test_validate_without_taxonomy():
    report = xbrlcore.validate(xbrlcore.parse(read("bad-ctxref.xml")))
    assert [f["code"] for f in report["findings"]] == ["CTX-001"]
    assert "UNT-002" in report["skipped_rules"]


def test_validate_with_taxonomy():
    inst = xbrlcore.parse(read("bad-monetary-unit.xml"))
    dts = xbrlcore.discover(inst, str(FIXTURES), "file:///bad-monetary-unit.xml")
    assert dts.concept_count == 4
    report = xbrlcore.validate(inst, dts, source=read("bad-monetary-unit.xml"))
    assert [f["code"] for f in report["findings"]] == ["UNT-002"]
    assert report["input_digest"].startswith("sha256:")


def test_lenient_recovery_and_strict_error():
    with pytest.raises(xbrlcore.ParseError, match="MissingContextRef"):
        xbrlcore.parse(read("bad-missing-ctxref.xml"))
    inst = xbrlcore.parse(read("bad-missing-ctxref.xml"), mode="lenient")
    assert [f["code"] for f in inst.recovered_findings] == ["CTX-002"]


def test_xml_errors():
    with pytest.raises(xbrlcore.XmlError):
        xbrlcore.parse(read("not-xml.txt"))
    with pytest.raises(xbrlcore.XmlError):
        xbrlcore.parse(read("bad-dtd.xml"))


def test_embedded():
    found, findings = xbrlcore.find_instances(read("mini-embedded.xml"))
    assert len(found) == 2
    assert [f["code"] for f in findings] == ["EMB-001"]


def test_dts_cycle():
    inst = xbrlcore.parse(read("cycle-instance.xml"))
    d = xbrlcore.discover(inst, str(FIXTURES), "file:///cycle-instance.xml").to_dict()
    assert len(d["documents"]) == 3
    assert [u["uri"] for u in d["unresolved"]] == ["file:///missing-taxonomy.xsd"]


def test_rules_catalog():
    codes = [r["code"] for r in xbrlcore.rules()]
    assert len(codes) == len(set(codes)) == 17


def test_cli():
    code, out, err = xbrlcore.run_cli(["facts", str(FIXTURES / "mini-instance.xml")])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["concept", "value", "context_id", "entity", "period", "unit", "tuple_path"]
    assert len(rows) == 7
    assert xbrlcore.run_cli(["validate", str(FIXTURES / "not-xml.txt")])[0] == 2
