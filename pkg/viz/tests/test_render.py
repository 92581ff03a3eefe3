import json
import math

import pytest

from dqplan_viz import (
    PathDocument,
    RenderOptions,
    SchemaError,
    load_path_document,
    path_arrows,
    render,
    render_compare,
)

from conftest import make_path_doc


def test_reader_parses_fixture(fixture_path_file):
    doc = load_path_document(fixture_path_file)
    assert isinstance(doc, PathDocument)
    assert doc.mode == "dq"
    assert len(doc.samples) == 5
    assert doc.samples[-1].translation == (4.0, 0.0, 0.0)
    assert doc.obstacles[0].radius == 0.5
    assert doc.tree is not None and len(doc.tree) == 1


def test_reader_rejects_wrong_schema_version(tmp_path):
    file = tmp_path / "v2.path.json"
    file.write_text(json.dumps(make_path_doc(schema_version=2)), encoding="utf-8")
    with pytest.raises(SchemaError, match="schema_version"):
        load_path_document(file)


def test_reader_rejects_missing_field(tmp_path):
    doc = make_path_doc()
    del doc["scenario_hash"]
    file = tmp_path / "broken.path.json"
    file.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(SchemaError, match="scenario_hash"):
        load_path_document(file)


def test_reader_rejects_unreadable_file(tmp_path):
    with pytest.raises(SchemaError, match="cannot read"):
        load_path_document(tmp_path / "nope.path.json")


def test_render_smoke_produces_png(fixture_path_file, tmp_path):
    out = tmp_path / "fixture.png"
    result = render(fixture_path_file, RenderOptions(output=str(out), show_tree=True))
    assert result == str(out)
    assert out.exists() and out.stat().st_size > 0


def test_render_warns_once_without_tree(tmp_path):
    doc = make_path_doc(tree=None)
    file = tmp_path / "notree.path.json"
    file.write_text(json.dumps(doc), encoding="utf-8")
    out = tmp_path / "notree.png"
    with pytest.warns(UserWarning, match="no tree snapshot"):
        render(file, RenderOptions(output=str(out), show_tree=True))
    assert out.exists() and out.stat().st_size > 0


def test_render_compare_same_file_twice(fixture_path_file, tmp_path):
    out = tmp_path / "two_panel.png"
    render_compare(fixture_path_file, fixture_path_file, RenderOptions(output=str(out)))
    assert out.exists() and out.stat().st_size > 0


def test_render_compare_rejects_mismatched_scenarios(fixture_path_file, tmp_path):
    other = tmp_path / "other.path.json"
    other.write_text(json.dumps(make_path_doc(scenario_hash="0" * 64)), encoding="utf-8")
    with pytest.raises(SchemaError, match="hash mismatch"):
        render_compare(fixture_path_file, other, RenderOptions(output=str(tmp_path / "x.png")))


def test_final_arrow_tracks_sample_rotation(rotating_path_file):
    doc = load_path_document(rotating_path_file)
    arrows = path_arrows(doc, RenderOptions(arrow_stride=10, arrow_axis="x"))
    base, direction = arrows[-1]
    assert base == (4.0, 0.0, 0.0)
    # quarter turn about z maps the body x-axis onto +y
    assert direction == pytest.approx((0.0, 1.0, 0.0), abs=1e-12)
    assert math.sqrt(sum(c * c for c in direction)) == pytest.approx(1.0, abs=1e-12)


def test_render_options_validation():
    with pytest.raises(ValueError):
        RenderOptions(arrow_stride=0)
    with pytest.raises(ValueError):
        RenderOptions(arrow_axis="w")
