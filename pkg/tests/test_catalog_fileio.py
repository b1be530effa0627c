"""JSON sources and the built-in catalog."""

import json

import pytest

from coxlib import catalog, fileio
from coxlib.cartan import CartanMatrix, CoxeterDiagram
from coxlib.enumerate import ParametricMatrix
from coxlib.expressions import format_ratfunc
from coxlib.numfield import FieldSpec

# ─── fields ───────────────────────────────────────────────────────────────────


@pytest.mark.parametrize("data", [{"radicands": [5, 6]}, [5, 6], "5, 6"])
def test_parse_field_forms(data):
    assert fileio.parse_field(data) == FieldSpec.of(5, 6)


def test_parse_field_missing_is_rationals():
    assert fileio.parse_field(None) == FieldSpec()


def test_parse_field_rejects_garbage():
    with pytest.raises(ValueError, match="invalid field"):
        fileio.parse_field("five")


# ─── kind detection ───────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "data, kind",
    [
        ({"faces": ["a", "b"], "dimension": 1}, fileio.KIND_DIAGRAM),
        ({"entries": [["2", "-1"], ["-1", "2"]]}, fileio.KIND_CARTAN),
        ({"entries": [["2", "-t"], ["-1/t", "2"]]}, fileio.KIND_FAMILY),
        ({"entries": [["2", "-1"], ["-1", "2"]], "domain": {"min": "0"}}, fileio.KIND_FAMILY),
        ({"kind": "cartan", "faces": []}, fileio.KIND_CARTAN),
    ],
)
def test_kind_detection(data, kind):
    assert fileio._kind(data) == kind


def test_sqrt_is_not_the_parameter():
    data = {"field": [2], "entries": [["2", "-sqrt(2)"], ["-sqrt(2)", "2"]]}
    source = fileio.parse_source(data)
    assert source.kind == fileio.KIND_CARTAN
    assert isinstance(source.payload, CartanMatrix)


def test_unknown_kind():
    with pytest.raises(ValueError, match="unknown file kind"):
        fileio.parse_source({"kind": "polytope"})


def test_undetectable_kind():
    with pytest.raises(ValueError, match="cannot tell"):
        fileio.parse_source({"name": "x"})


def test_top_level_must_be_object():
    with pytest.raises(ValueError, match="object"):
        fileio.parse_source([1, 2])


# ─── parsing / dumping ────────────────────────────────────────────────────────


def test_diagram_roundtrip(t334):
    data = fileio.dump_diagram(t334)
    assert data["kind"] == "diagram"
    assert fileio.parse_diagram(data) == t334


def test_diagram_missing_faces():
    with pytest.raises(ValueError, match="invalid diagram"):
        fileio.parse_diagram({"dimension": 2})


def test_cartan_with_embedded_diagram(m334, t334):
    data = fileio.dump_cartan(m334, t334)
    source = fileio.parse_source(data)
    assert source.payload == m334
    assert source.diagram == t334


def test_field_override_lifts_entries(m334):
    source = fileio.parse_source(fileio.dump_cartan(m334), FieldSpec.of(2))
    assert source.payload.spec == FieldSpec.of(2)


def test_family_roundtrip_keeps_definitions_and_domain():
    family = catalog.prism_family(3)
    data = fileio.dump_family(family, catalog.prism_diagram(3))
    assert data["definitions"][0][0] == "mu"
    assert data["domain"]["min"] == "1"
    again = fileio.parse_source(json.loads(json.dumps(data)))
    assert isinstance(again.payload, ParametricMatrix)
    assert again.payload.entries == family.entries
    assert again.payload.domain.contains(again.payload.spec.rational(2))
    assert not again.payload.domain.contains(again.payload.spec.rational(1))
    assert again.diagram == catalog.prism_diagram(3)


def test_family_rejects_other_parameter_name():
    with pytest.raises(ValueError, match="parameter must be"):
        fileio.parse_family({"parameter": "s", "entries": [["2"]]})


def test_entries_must_be_rows():
    with pytest.raises(ValueError, match="list of rows"):
        fileio.parse_cartan({"entries": ["2", "-1"]})


def test_save_and_load(tmp_path, m334, t334):
    path = tmp_path / "m334.json"
    fileio.save_source(fileio.Source(fileio.KIND_CARTAN, m334, t334), path)
    source = fileio.load_source(path)
    assert source.payload == m334
    assert source.diagram == t334


def test_load_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json", encoding="utf-8")
    with pytest.raises(ValueError, match="invalid JSON"):
        fileio.load_source(path)


# ─── catalog ──────────────────────────────────────────────────────────────────


def test_catalog_keys_are_unique_and_complete():
    keys = catalog.catalog_keys()
    assert len(keys) == len(set(keys))
    for key in (
        "triangle(3,3,4)",
        "tetrahedron(d=3)",
        "simplex4",
        "cu21",
        "cu21-family",
        "cu21-integral(1)",
        "benoist-prism(4)",
        "triangle346-family",
        "triangle334-matrix(2)",
    ):
        assert key in keys


def test_entry_kinds():
    assert catalog.get_entry("cu21").kind == fileio.KIND_DIAGRAM
    assert catalog.get_entry("cu21-family").kind == fileio.KIND_FAMILY
    assert catalog.get_entry("cu21-integral(2)").kind == fileio.KIND_CARTAN


def test_expected_counts():
    assert catalog.get_entry("triangle(4,6,6)").expected_count == 5
    assert catalog.get_entry("benoist-prism(3)").expected_count == 0
    assert catalog.get_entry("triangle346-family").expected_count == 4
    assert catalog.get_entry("cu21").expected_count is None


def test_family_samples_lie_in_domain():
    for entry in catalog.list_entries():
        if isinstance(entry.payload, ParametricMatrix):
            assert entry.sample is not None
            assert entry.payload.domain.contains(entry.sample)


def test_dynamic_triangle():
    entry = catalog.get_entry("triangle( 2, 5, 5 )")
    assert isinstance(entry.payload, CoxeterDiagram)
    assert entry.payload.order(1, 2) == 5
    assert entry.expected_count is None


def test_triangle_orders_out_of_range():
    with pytest.raises(KeyError, match="not in"):
        catalog.get_entry("triangle(7,3,3)")


def test_unknown_key():
    with pytest.raises(KeyError, match="unknown catalog key"):
        catalog.get_entry("dodecahedron")


def test_to_source_carries_diagram():
    source = catalog.get_entry("triangle346-family").to_source()
    assert source.kind == fileio.KIND_FAMILY
    assert source.diagram.name == "triangle(6,4,3)"
    assert format_ratfunc(source.payload.entries[0][1]) != ""
