from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birclass import formats
from birclass.candidates import preliminary_classification
from birclass.classify import validate_table
from birclass.fourfolds import table2_report

scalars = st.one_of(st.none(), st.booleans(), st.integers(-10**6, 10**6), st.text(max_size=12))
values = st.one_of(scalars, st.lists(scalars, max_size=4), st.dictionaries(st.text(max_size=5), scalars, max_size=3))
keys = st.text(alphabet="abcdefghijklmnopqrstuvwxyz_", min_size=1, max_size=8)
records = st.dictionaries(keys, values, max_size=5)
docs = st.builds(
    lambda meta, secs: {"schema": formats.SCHEMA, "metadata": meta, "sections": secs},
    st.dictionaries(keys, scalars, max_size=4),
    st.dictionaries(keys.filter(lambda k: not k.startswith("#")), st.lists(records, max_size=4), max_size=3),
)


@pytest.fixture(scope="module")
def full_doc(results):
    doc = formats.new_document("classify all", ["test"])
    for res in results.values():
        formats.result_sections(doc, res)
    formats.add_section(doc, "validation", (formats.report_to_dict(r) for r in validate_table("1")))
    formats.add_section(doc, "fourfolds", (formats.fourfold_to_dict(r) for r in table2_report()))
    formats.add_section(doc, "preliminary", (formats.preliminary_to_dict(r) for r in preliminary_classification()))
    formats.add_section(doc, "empty", [])
    return doc


@pytest.mark.parametrize("fmt", formats.FORMATS)
def test_roundtrip_full(full_doc, fmt):
    text = formats.dumps(full_doc, fmt)
    back = formats.loads(text, fmt)
    assert back == full_doc
    assert formats.dumps(back, fmt) == text


@pytest.mark.parametrize("fmt", formats.FORMATS)
@given(doc=docs)
def test_roundtrip_arbitrary(doc, fmt):
    assert formats.loads(formats.dumps(doc, fmt), fmt) == doc


def test_row_roundtrip(results):
    for res in results.values():
        for row in res.rows:
            assert formats.row_from_dict(formats.row_to_dict(row)) == row


def test_report_and_fourfold_roundtrip():
    for rep in validate_table("5"):
        assert formats.report_from_dict(formats.report_to_dict(rep)) == rep
    for rec in table2_report():
        assert formats.fourfold_from_dict(formats.fourfold_to_dict(rec)) == rec


def test_rejection_roundtrip(results):
    for rj in results["quartic-p5"].rejections:
        assert formats.rejection_from_dict(formats.rejection_to_dict(rj)) == rj


def test_json_is_canonical(full_doc):
    text = formats.to_json(full_doc)
    assert text == formats.to_json(formats.from_json(text))
    assert text.index('"metadata"') < text.index('"schema"') < text.index('"sections"')


def test_row_columns_follow_table_order(results):
    rec = formats.row_to_dict(results["cubic"].rows[3])
    assert list(rec)[:9] == ["table_id", "r", "n", "a", "lambda", "g", "structure", "d1", "d"]


def test_timestamp(monkeypatch):
    assert formats.new_document("x")["metadata"]["timestamp"] is None
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    assert formats.new_document("x")["metadata"]["timestamp"] == "1970-01-01T00:00:00Z"


def test_candidate_summary(gamma4237):
    rec = formats.candidate_summary(gamma4237)
    assert rec["size"] == 4237
    assert (rec["lambda_range"], rec["g_range"], rec["nu_range"]) == ("11..18", "7..28", "0..181")


def test_markdown_escapes_pipes():
    doc = formats.new_document("x")
    formats.add_section(doc, "s", [{"k": "a|b", "m": "x\\|y"}])
    assert formats.from_markdown(formats.to_markdown(doc)) == doc


@pytest.mark.parametrize("fmt, text", [
    ("json", '{"schema": "other"}'),
    ("csv", "a,b\n"),
    ("md", "no title\n"),
])
def test_rejects_foreign_input(fmt, text):
    with pytest.raises(formats.FormatError):
        formats.loads(text, fmt)
