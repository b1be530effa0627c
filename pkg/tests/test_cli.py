"""Tests für das coxlib-CLI.

Eingaben kommen aus dem eingebauten Katalog oder werden als JSON in
tmp_path geschrieben; die Datenbank für ``sync`` ist eine SQLite-Datei.
"""

import json

import pytest

from coxlib import fileio
from coxlib.cli import _target_url, dispatch, main

# ─── helpers ──────────────────────────────────────────────────────────────────

M334 = "triangle334-matrix(1)"


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def _json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def affine_file(tmp_path, t334):
    """(3,3,4)-Diagramm mit einer Matrix, deren (2,3)-Produkt 1 statt 2 ist."""
    return _write(
        tmp_path / "affine.json",
        {
            "kind": "cartan",
            "entries": [["2", "-1", "-1"], ["-1", "2", "-1"], ["-1", "-1", "2"]],
            "diagram": t334.to_dict(),
        },
    )


# ─── catalog ──────────────────────────────────────────────────────────────────


def test_catalog_listing(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Schlüssel")
    assert "triangle(3,3,4)" in out
    assert "cu21-family" in out


def test_catalog_entry_json(capsys):
    assert main(["catalog", M334, "--json"]) == 0
    doc = _json(capsys)
    [entry] = doc["result"]["entries"]
    assert entry["kind"] == "cartan"
    assert entry["entries"][2] == ["-1", "-2", "2"]


def test_catalog_unknown_key(capsys):
    assert main(["catalog", "dodecahedron"]) == 2
    assert "unknown catalog key" in capsys.readouterr().err


# ─── validate / signature ─────────────────────────────────────────────────────


def test_validate_ok(capsys):
    assert main(["validate", "--catalog", M334]) == 0
    out = capsys.readouterr().out
    assert "OK: Bedingungen (L1) und (L2) erfüllt" in out
    assert "negative" in out


def test_validate_violation(affine_file, capsys):
    assert main(["validate", affine_file]) == 1
    assert "VERLETZT (L2(ii))" in capsys.readouterr().out


def test_validate_external_diagram(tmp_path, m334, t334, capsys):
    matrix = _write(tmp_path / "m.json", fileio.dump_cartan(m334))
    diagram = _write(tmp_path / "d.json", fileio.dump_diagram(t334))
    assert main(["validate", matrix, "--diagram", diagram, "--json"]) == 0
    assert _json(capsys)["result"]["valid"] is True


def test_validate_needs_diagram(tmp_path, m334, capsys):
    matrix = _write(tmp_path / "m.json", fileio.dump_cartan(m334))
    assert main(["validate", matrix]) == 2
    assert "kein Diagramm" in capsys.readouterr().err


def test_signature_json(capsys):
    assert main(["signature", "--catalog", M334, "--ring", "2", "--json"]) == 0
    result = _json(capsys)["result"]
    assert result["signature"]["1-2-3"] == "-1"
    assert result["determinant"] == "-3"
    assert result["over_z"] is True
    assert result["over_rings"] == {"2": True}


def test_signature_of_family_is_parametric(capsys):
    assert main(["signature", "--catalog", "triangle346-family", "--json"]) == 0
    result = _json(capsys)["result"]
    assert result["parametric"] is True
    assert result["signature"]["1-2-3"] == "-6*t"
    assert result["signature"]["1-3-2"] == "-1/(t)"


# ─── classify ─────────────────────────────────────────────────────────────────


def test_classify_334(capsys):
    assert main(["classify", "--catalog", "triangle(3,3,4)", "--json"]) == 0
    doc = _json(capsys)
    assert doc["result"]["count"] == 2
    assert doc["result"]["expected_count"] == 2
    assert doc["warnings"] == []


def test_classify_warns_on_table_mismatch(capsys):
    assert main(["classify", "--catalog", "triangle(4,6,6)"]) == 0
    captured = capsys.readouterr()
    assert "6 Klassen" in captured.out
    assert "Warnung:" in captured.err
    assert "nennt 5" in captured.err


def test_classify_mismatch_in_json(capsys):
    assert main(["classify", "--catalog", "triangle(4,6,6)", "--json", "--workers", "2"]) == 0
    doc = _json(capsys)
    assert doc["result"]["oracle_count"] == 6
    assert len(doc["warnings"]) == 1


def test_classify_non_hyperbolic_triangle(capsys):
    assert main(["classify", "--catalog", "triangle(3,3,3)", "--json"]) == 0
    doc = _json(capsys)
    assert doc["result"]["count"] == 0
    assert any("nicht hyperbolisch" in w for w in doc["warnings"])


def test_classify_non_simplex_is_usage_error(capsys):
    assert main(["classify", "--catalog", "cu21"]) == 2
    assert "parametric mode" in capsys.readouterr().err


# ─── compare / realize / relations ────────────────────────────────────────────


def test_compare_needs_automorphism(capsys):
    argv = ["compare", "--catalog", M334, "--catalog", "triangle334-matrix(2)", "--json"]
    assert main(argv) == 0
    assert _json(capsys)["result"]["equivalent"] is False
    assert main([*argv, "--automorphisms"]) == 0
    result = _json(capsys)["result"]
    assert result["equivalent"] is True
    assert result["witness"] is None


def test_compare_needs_two_inputs(capsys):
    assert main(["compare", "--catalog", M334]) == 2
    assert "genau zwei" in capsys.readouterr().err


def test_realize_export(tmp_path, capsys):
    path = tmp_path / "ball.json"
    assert main(["realize", "--catalog", M334, "--export", str(path)]) == 0
    assert "Rang 3, Cartan-Matrix rekonstruiert: ja" in capsys.readouterr().out
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["rank"] == 3
    assert doc["depth"] == 2
    assert len(doc["word_ball"]) == 10
    assert doc["word_ball"][1]["word"] == [1]


def test_relations_ok(capsys):
    assert main(["relations", "--catalog", M334, "--json"]) == 0
    result = _json(capsys)["result"]
    assert result["ok"] is True
    assert [c["order"] for c in result["checks"]] == [3, 3, 4]


def test_relations_failure(affine_file, capsys):
    assert main(["relations", affine_file]) == 1
    assert "FEHLER 2,3" in capsys.readouterr().out


# ─── orbit-svg ────────────────────────────────────────────────────────────────


def test_orbit_svg_to_file(tmp_path, capsys):
    path = tmp_path / "tiles.svg"
    assert main(["orbit-svg", "--catalog", M334, "--depth", "2", "-o", str(path)]) == 0
    assert "10 Kacheln" in capsys.readouterr().err
    assert b"<svg" in path.read_bytes()


def test_orbit_svg_family_parameter(capsys):
    assert main(["orbit-svg", "--catalog", "triangle346-family", "--t", "1/6", "--depth", "1"]) == 0
    assert "<polygon" in capsys.readouterr().out


def test_orbit_svg_rejects_diagram(capsys):
    assert main(["orbit-svg", "--catalog", "triangle(3,3,4)"]) == 2
    assert "kein Diagramm" in capsys.readouterr().err


# ─── families ─────────────────────────────────────────────────────────────────


def test_family_solve_346(capsys):
    assert main(["family-solve", "--catalog", "triangle346-family"]) == 0
    out = capsys.readouterr().out
    for t in ("1/6", "1/3", "1/2", "1"):
        assert f"  t = {t}\n" in out + "\n"


def test_family_solve_prism_has_no_solutions(capsys):
    assert main(["family-solve", "--catalog", "benoist-prism(3)", "--json"]) == 0
    assert _json(capsys)["result"]["solutions"] == []


def test_family_solve_needs_family(capsys):
    assert main(["family-solve", "--catalog", M334]) == 2
    assert "erwartet eine Familie" in capsys.readouterr().err


def test_family_verify_integral(capsys):
    argv = ["family-verify", "--catalog", "triangle346-family", "--t", "1/2", "--require-integral"]
    assert main(argv) == 0
    assert "alle Zyklenprodukte ganzzahlig: ja" in capsys.readouterr().out


def test_family_verify_require_integral_fails(capsys):
    argv = ["family-verify", "--catalog", "triangle346-family", "--t", "1/5", "--require-integral"]
    assert main(argv) == 1
    assert "ganzzahlig: nein" in capsys.readouterr().out


def test_family_verify_needs_parameter(capsys):
    assert main(["family-verify", "--catalog", "triangle346-family"]) == 2
    assert "Parameterwert fehlt" in capsys.readouterr().err


def test_family_verify_outside_domain(capsys):
    assert main(["family-verify", "--catalog", "triangle346-family", "--t", "-1"]) == 2
    assert "outside the domain" in capsys.readouterr().err


def test_units_family(capsys):
    assert main(["units-family", "--catalog", "triangle(3,3,4)", "--count", "3", "--json"]) == 0
    result = _json(capsys)["result"]
    assert result["exponents"] == [1, 2, 3]
    assert result["unit"] == "1 + sqrt(2)"
    assert result["generators_integral"] is True


# ─── usage ────────────────────────────────────────────────────────────────────


def test_no_command_is_usage_error(capsys):
    assert main([]) == 2


def test_missing_input(capsys):
    assert main(["validate"]) == 2
    assert "genau eine Eingabe" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.json")]) == 2
    assert "keine Datei" in capsys.readouterr().err


def test_invalid_json_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    assert main(["signature", str(path)]) == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_dispatch_never_raises():
    report = dispatch(["signature", "--catalog", "triangle(9,3,3)"])
    assert report.exit_code == 2
    assert "not in" in report.error


def test_output_file(tmp_path, capsys):
    path = tmp_path / "sig.json"
    assert main(["signature", "--catalog", M334, "--json", "-o", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["exit_code"] == 0


# ─── sync ─────────────────────────────────────────────────────────────────────


def test_target_url_variants():
    assert _target_url("sqlite:/tmp/x.db") == "sqlite:////tmp/x.db"
    assert _target_url("sqlite:///tmp/x.db") == "sqlite:///tmp/x.db"
    with pytest.raises(ValueError):
        _target_url("sqlite:")


@pytest.mark.parametrize(
    "target",
    ["postgres://u:p@h:5432/db", "postgres:u:p@h/db", "postgresql://u@h/db", "mysql://x", "sqlite://h/db"],
)
def test_target_url_accepts_only_local_files(target):
    with pytest.raises(ValueError):
        _target_url(target)


def test_sync_rejects_network_target(capsys):
    assert main(["sync", "--target", "postgres://u@h/db"]) == 2
    assert "Unbekanntes Target" in capsys.readouterr().err


def test_sync_to_sqlite(tmp_path, capsys):
    target = tmp_path / "classes.db"
    assert main(["sync", "--target", f"sqlite:{target}", "--catalog", "triangle(3,3,4)"]) == 0
    out = capsys.readouterr().out
    assert "triangle(3,3,4)" in out
    assert "Gesamt: 2 Klassen" in out
    assert target.exists()

    from coxlib.orm import ClassRepository, DiagramRepository, get_engine, session_scope

    engine = get_engine(f"sqlite:///{target}")
    with session_scope(engine) as session:
        record = DiagramRepository(session).get_by_key("triangle(3,3,4)")
        assert record.class_count == 2
        assert ClassRepository(session).count(record.id) == 2
    engine.dispose()


def test_sync_bad_target(capsys):
    assert main(["sync", "--target", "mysql:foo"]) == 2
    assert "Unbekanntes Target" in capsys.readouterr().err


def test_sync_without_target(monkeypatch, capsys):
    monkeypatch.delenv("COXLIB_DATABASE_URL", raising=False)
    assert main(["sync"]) == 2
    assert "kein Ziel" in capsys.readouterr().err
