"""coxlib: Kommandozeilen-Werkzeuge für Cartan-Matrizen von Spiegelungsgruppen.

    coxlib validate     matrix.json [--diagram diagramm.json]
    coxlib signature    --catalog "triangle334-matrix(1)"
    coxlib classify     --catalog "triangle(3,3,4)"
    coxlib compare      a.json b.json
    coxlib realize      matrix.json [--export ball.json --depth 2]
    coxlib relations    --catalog "triangle334-matrix(1)"
    coxlib orbit-svg    --catalog triangle346-family --t 1/6 --depth 6 -o t16.svg
    coxlib family-verify --catalog cu21-family --t "4*sqrt(5)/5" --require-integral
    coxlib family-solve --catalog triangle346-family
    coxlib units-family --catalog "triangle(3,3,4)" --ring 2 --count 5
    coxlib catalog      [KEY ...]
    coxlib sync         --target sqlite:/pfad/klassen.db [--catalog KEY ...]
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from coxlib import catalog, config, fileio
from coxlib.cartan import (
    CartanMatrix,
    CoxeterDiagram,
    cyclic_signature,
    definability_generators,
    determinant,
    diagonal_witness,
    diagram_automorphisms,
    equivalent,
    is_indecomposable,
    perron_type,
    triangle_is_hyperbolic,
    validate_vinberg,
    vertex_groups_finite,
)
from coxlib.enumerate import (
    ClassificationResult,
    ParametricMatrix,
    UnitFamilySpec,
    brute_force_class_count,
    classify_integer_classes,
    parametric_signature,
    solve_integrality,
    units_family,
    verify_at,
)
from coxlib.expressions import format_ratfunc, parse_number
from coxlib.linalg import Matrix
from coxlib.numfield import FieldSpec, QuadraticRing, fundamental_unit, is_algebraic_integer
from coxlib.realize import (
    check_relations,
    pair_traces_match,
    realize,
    reconstructed_cartan,
    word_ball,
)
from coxlib.render import ChartConfig, chart_weights, scene_to_svg, tile_scene

_log = logging.getLogger("coxlib.cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


@dataclass
class Report:
    """Ergebnis eines Unterkommandos; ``to_dict`` ist JSON-serialisierbar."""

    command: list[str]
    result: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    lines: list[str] = field(default_factory=list)
    payload: bytes | None = None
    error: str | None = None
    as_json: bool = False
    output: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": " ".join(self.command),
            "result": self.result,
            "warnings": self.warnings,
            "exit_code": self.exit_code,
        }


class UsageError(ValueError):
    """Aufruf passt nicht zum Unterkommando (Exit-Code 2)."""


# ── Eingaben ─────────────────────────────────────────────────────


@dataclass
class _Input:
    label: str
    source: fileio.Source
    entry: catalog.CatalogEntry | None = None

    @property
    def provenance(self) -> str | None:
        return self.entry.provenance if self.entry else None


def _field(args: argparse.Namespace) -> FieldSpec | None:
    return fileio.parse_field(args.field) if args.field else None


def _inputs(args: argparse.Namespace) -> list[_Input]:
    spec = _field(args)
    out = []
    for path in getattr(args, "files", []) or []:
        if not os.path.isfile(path):
            raise UsageError(f"keine Datei: {path}")
        out.append(_Input(path, fileio.load_source(path, spec)))
    for key in args.catalog or []:
        try:
            entry = catalog.get_entry(key)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        source = entry.to_source()
        if spec is not None and isinstance(source.payload, CartanMatrix):
            source = fileio.Source(source.kind, source.payload.lift(spec), source.diagram)
        out.append(_Input(entry.key, source, entry))
    return out


def _single(args: argparse.Namespace) -> _Input:
    inputs = _inputs(args)
    if len(inputs) != 1:
        raise UsageError(f"{args.command} erwartet genau eine Eingabe (Datei oder --catalog), {len(inputs)} erhalten")
    return inputs[0]


def _diagram(args: argparse.Namespace, inp: _Input) -> CoxeterDiagram | None:
    if getattr(args, "diagram", None):
        loaded = fileio.load_source(args.diagram)
        if not isinstance(loaded.payload, CoxeterDiagram):
            raise UsageError(f"{args.diagram} enthält kein Coxeter-Diagramm")
        return loaded.payload
    if isinstance(inp.source.payload, CoxeterDiagram):
        return inp.source.payload
    return inp.source.diagram


def _require_diagram(args: argparse.Namespace, inp: _Input) -> CoxeterDiagram:
    diagram = _diagram(args, inp)
    if diagram is None:
        raise UsageError(f"{inp.label}: kein Diagramm (Feld 'diagram' oder --diagram DATEI)")
    return diagram


def _parameter(args: argparse.Namespace, p: ParametricMatrix, required: bool = False):
    if args.t is not None:
        return parse_number(args.t, p.spec)
    if required or p.sample is None:
        raise UsageError(f"{p.name or 'Familie'}: Parameterwert fehlt (--t)")
    return p.sample


def _matrix(args: argparse.Namespace, inp: _Input) -> CartanMatrix:
    """Cartan-Matrix der Eingabe; Familien werden bei --t (sonst beim Beispielwert) ausgewertet."""
    payload = inp.source.payload
    if isinstance(payload, CartanMatrix):
        return payload
    if isinstance(payload, ParametricMatrix):
        t = _parameter(args, payload)
        return verify_at(payload, t).matrix
    raise UsageError(f"{inp.label}: erwartet eine Cartan-Matrix oder Familie, kein Diagramm")


def _family(inp: _Input) -> ParametricMatrix:
    if not isinstance(inp.source.payload, ParametricMatrix):
        raise UsageError(f"{inp.label}: erwartet eine Familie (Einträge mit Parameter t)")
    return inp.source.payload


# ── Formatierung ─────────────────────────────────────────────────


def _rows(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]


def _table(rows: Sequence[Sequence[str]], indent: str = "  ") -> list[str]:
    if not rows:
        return []
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return [indent + "  ".join(cell.rjust(w) for cell, w in zip(r, widths, strict=True)) for r in rows]


def _labels(diagram: CoxeterDiagram | None, size: int) -> list[str]:
    if diagram is not None and diagram.size == size:
        return list(diagram.faces)
    return [str(i + 1) for i in range(size)]


def _signature_lines(sig: dict[str, str]) -> list[str]:
    return [f"  {cycle:<24} {value}" for cycle, value in sig.items()]


def _header(report: Report, inp: _Input) -> None:
    report.result["input"] = inp.label
    if inp.provenance:
        report.result["provenance"] = inp.provenance
        report.lines.append(f"{inp.label} — {inp.provenance}")
    else:
        report.lines.append(inp.label)


# ── Unterkommandos ───────────────────────────────────────────────


def cmd_validate(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    c = _matrix(args, inp)
    diagram = _require_diagram(args, inp)
    _header(report, inp)
    vinberg = validate_vinberg(c, diagram)
    report.result.update(
        {
            "name": c.name,
            "valid": vinberg.valid,
            "violations": [v.describe(diagram) for v in vinberg.violations],
        }
    )
    if vinberg.valid and is_indecomposable(c):
        kind = perron_type(c)
        finite = vertex_groups_finite(c, diagram)
        report.result["perron_type"] = kind.value
        report.result["vertex_groups_finite"] = finite
        report.lines.append(f"  Typ: {kind.value}, Eckengruppen endlich: {'ja' if finite else 'nein'}")
    if vinberg.valid:
        report.lines.append("  OK: Bedingungen (L1) und (L2) erfüllt")
        return
    for v in vinberg.violations:
        report.lines.append(f"  VERLETZT {v.describe(diagram)}")
    report.exit_code = EXIT_INVALID


def cmd_signature(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    diagram = _diagram(args, inp)
    _header(report, inp)
    payload = inp.source.payload
    if isinstance(payload, ParametricMatrix) and args.t is None:
        labels = _labels(diagram, payload.size)
        sig = {
            "-".join(labels[i] for i in cycle): format_ratfunc(f)
            for cycle, f in parametric_signature(payload).items()
        }
        report.result.update({"name": payload.name, "parametric": True, "signature": sig})
        report.lines.append(f"  Zyklenprodukte in t (Bereich {payload.domain}):")
        report.lines.extend(_signature_lines(sig))
        return
    c = _matrix(args, inp)
    labels = _labels(diagram, c.size)
    sig = cyclic_signature(c)
    rings = [QuadraticRing(d) for d in args.ring or []]
    definability = definability_generators(c, rings)
    det = determinant(c)
    report.result.update(
        {
            "name": c.name,
            "parametric": False,
            "signature": sig.to_dict(labels),
            "determinant": str(det),
            "sign_rule": sig.sign_rule_holds(),
            "over_z": definability.over_z,
            "over_rings": {str(d): ok for d, ok in definability.over_ok.items()},
        }
    )
    report.lines.extend(_table(c.rows_as_text()))
    report.lines.append("  Einfache Zyklenprodukte:")
    report.lines.extend(_signature_lines(sig.to_dict(labels)))
    report.lines.append(f"  Determinante: {det}")
    report.lines.append(f"  über Z definierbar: {'ja' if definability.over_z else 'nein'}")
    for d, ok in definability.over_ok.items():
        report.lines.append(f"  über O(Q(sqrt({d}))) definierbar: {'ja' if ok else 'nein'}")


def _class_dicts(result: ClassificationResult) -> list[dict[str, Any]]:
    labels = list(result.diagram.faces)
    return [
        {
            "matrix": c.rows_as_text(),
            "signature": sig.to_dict(labels),
            "determinant": str(determinant(c)),
        }
        for c, sig in zip(result.representatives, result.signatures, strict=True)
    ]


def cmd_classify(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    diagram = _require_diagram(args, inp)
    _header(report, inp)
    result = classify_integer_classes(diagram, workers=args.workers)
    report.result.update(
        {
            "diagram": diagram.name,
            "count": result.count,
            "tried": result.tried,
            "rejected": result.rejected,
            "classes": _class_dicts(result),
        }
    )
    expected = inp.entry.expected_count if inp.entry else None
    if expected is not None:
        report.result["expected_count"] = expected
        if expected != result.count:
            oracle = brute_force_class_count(diagram)
            report.result["oracle_count"] = oracle
            warning = (
                f"{diagram.name}: {result.count} Klassen berechnet "
                f"(Brute-Force-Orakel: {oracle}), die veröffentlichte Tabelle nennt {expected}"
            )
            _log.warning(warning)
            report.warnings.append(warning)
    if diagram.size == 3 and len(diagram.edges) == 3:
        p, q, r = (m for _, _, m in diagram.edges)
        if not triangle_is_hyperbolic(p, q, r):
            report.warnings.append(f"{diagram.name}: Dreieck ist nicht hyperbolisch (1/p+1/q+1/r >= 1)")
    report.lines.append(
        f"  {result.count} Klassen ({result.tried} Matrizen geprüft, verworfen: {result.rejected or 'keine'})"
    )
    for k, item in enumerate(report.result["classes"], 1):
        report.lines.append(f"  Klasse {k} (Determinante {item['determinant']}):")
        report.lines.extend(_table(item["matrix"], indent="    "))
        report.lines.extend("  " + line for line in _signature_lines(item["signature"]))


def cmd_compare(args: argparse.Namespace, report: Report) -> None:
    inputs = _inputs(args)
    if len(inputs) != 2:
        raise UsageError(f"compare erwartet genau zwei Eingaben, {len(inputs)} erhalten")
    a, b = (_matrix(args, inp) for inp in inputs)
    automorphisms = None
    if args.automorphisms:
        automorphisms = diagram_automorphisms(_require_diagram(args, inputs[0]))
    same = equivalent(a, b, automorphisms)
    witness = diagonal_witness(a, b)
    report.result.update(
        {
            "inputs": [inp.label for inp in inputs],
            "equivalent": same,
            "witness": None if witness is None else [str(x) for x in witness],
        }
    )
    verdict = "äquivalent" if same else "nicht äquivalent"
    report.lines.append(f"{inputs[0].label} und {inputs[1].label}: {verdict}")
    if witness is not None:
        report.lines.append("  A = D·B·D⁻¹ mit D = diag(" + ", ".join(str(x) for x in witness) + ")")
    elif same:
        report.lines.append("  äquivalent nur bis auf Diagrammautomorphismus")


def cmd_realize(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    c = _matrix(args, inp)
    _header(report, inp)
    real = realize(c)
    consistent = reconstructed_cartan(real) == c.entries
    traces = pair_traces_match(real)
    report.result.update(
        {
            "name": c.name,
            "rank": real.rank,
            "covectors": _rows(real.covectors),
            "vectors": _rows(real.vectors),
            "reflections": [_rows(s) for s in real.reflections],
            "cartan_reconstructed": consistent,
            "pair_traces_match": traces,
        }
    )
    report.lines.append(f"  Rang {real.rank}, Cartan-Matrix rekonstruiert: {'ja' if consistent else 'nein'}")
    for k, sigma in enumerate(real.reflections, 1):
        report.lines.append(f"  sigma_{k}:")
        report.lines.extend(_table(_rows(sigma), indent="    "))
    if args.export:
        depth = args.depth if args.depth is not None else 2
        ball = word_ball(real, depth)
        document = {
            "cartan": fileio.dump_cartan(c),
            "rank": real.rank,
            "covectors": _rows(real.covectors),
            "vectors": _rows(real.vectors),
            "generators": [_rows(s) for s in real.reflections],
            "depth": depth,
            "word_ball": [{"word": [i + 1 for i in g.word], "matrix": _rows(g.matrix)} for g in ball],
        }
        with open(args.export, "w", encoding="utf-8") as fh:
            json.dump(document, fh, ensure_ascii=False, indent=2)
        report.result["export"] = {"path": args.export, "depth": depth, "elements": len(ball)}
        report.lines.append(f"  {len(ball)} Elemente (Wortlänge <= {depth}) → {args.export}")


def cmd_relations(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    c = _matrix(args, inp)
    diagram = _require_diagram(args, inp)
    _header(report, inp)
    real = realize(c)
    relations = check_relations(real, diagram, args.max_power)
    traces = pair_traces_match(real)
    report.result.update(
        {
            "name": c.name,
            "rank": real.rank,
            "ok": relations.ok and traces,
            "pair_traces_match": traces,
            "checks": [
                {
                    "faces": [diagram.label(ch.i), diagram.label(ch.j)],
                    "kind": ch.kind,
                    "order": ch.order,
                    "holds": ch.holds,
                    "detail": ch.detail,
                }
                for ch in relations.checks
            ],
        }
    )
    for ch in relations.checks:
        status = "OK     " if ch.holds else "FEHLER "
        what = f"(s t)^{ch.order} = 1" if ch.order else "unendliche Ordnung"
        extra = f"  {ch.detail}" if ch.detail else ""
        report.lines.append(f"  {status}{diagram.label(ch.i)},{diagram.label(ch.j)}: {what}{extra}")
    report.lines.append(f"  Spurformel tr(s_i s_j) = r - 4 + c_ij c_ji: {'ja' if traces else 'nein'}")
    if not report.result["ok"]:
        report.exit_code = EXIT_INVALID


def cmd_orbit_svg(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    c = _matrix(args, inp)
    depth = args.depth if args.depth is not None else 4
    weights = chart_weights(c) if args.chart_weights else None
    cfg = ChartConfig(depth=depth, weights=weights)
    scene = tile_scene(realize(c), cfg)
    report.payload = scene_to_svg(scene, cfg)
    report.result.update(
        {
            "input": inp.label,
            "name": c.name,
            "depth": depth,
            "tiles": len(scene.tiles),
            "culled": scene.culled,
            "weights": None if weights is None else [str(w) for w in weights],
        }
    )
    if scene.culled:
        report.warnings.append(f"{scene.culled} Kacheln am Kartenrand verworfen")
    report.lines.append(f"{len(scene.tiles)} Kacheln (Tiefe {depth})")


def cmd_family_verify(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    p = _family(inp)
    diagram = _diagram(args, inp)
    _header(report, inp)
    t = _parameter(args, p, required=True)
    point = verify_at(p, t)
    labels = _labels(diagram, p.size)
    report.result.update(
        {
            "name": p.name,
            "t": str(point.t),
            "over_z": point.over_z,
            "sign_rule": point.signature.sign_rule_holds(),
            "signature": point.signature.to_dict(labels),
            "matrix": point.matrix.rows_as_text(),
        }
    )
    report.lines.append(f"  t = {point.t}")
    report.lines.extend(_table(point.matrix.rows_as_text()))
    report.lines.extend(_signature_lines(point.signature.to_dict(labels)))
    report.lines.append(f"  alle Zyklenprodukte ganzzahlig: {'ja' if point.over_z else 'nein'}")
    if diagram is not None:
        vinberg = validate_vinberg(point.matrix, diagram)
        report.result["valid"] = vinberg.valid
        report.result["violations"] = [v.describe(diagram) for v in vinberg.violations]
        report.lines.append(f"  (L1)/(L2): {'erfüllt' if vinberg.valid else 'verletzt'}")
        if not vinberg.valid:
            report.exit_code = EXIT_INVALID
    if args.require_integral and not point.over_z:
        report.exit_code = EXIT_INVALID


def cmd_family_solve(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    p = _family(inp)
    diagram = _diagram(args, inp)
    _header(report, inp)
    solutions = solve_integrality(p)
    labels = _labels(diagram, p.size)
    report.result.update(
        {
            "name": p.name,
            "domain": str(p.domain),
            "solutions": [
                {
                    "t": None if s.t is None else str(s.t),
                    "signature": s.signature.to_dict(labels),
                }
                for s in solutions
            ],
        }
    )
    if not solutions:
        report.lines.append(f"  keine ganzzahligen Parameterwerte in {p.domain}")
    for s in solutions:
        report.lines.append(f"  t = {'beliebig' if s.t is None else s.t}")
        report.lines.extend("  " + line for line in _signature_lines(s.signature.to_dict(labels)))


def cmd_units_family(args: argparse.Namespace, report: Report) -> None:
    inp = _single(args)
    diagram = _require_diagram(args, inp)
    _header(report, inp)
    ring = QuadraticRing(args.ring)
    spec = FieldSpec.of(args.ring)
    unit = parse_number(args.unit, spec) if args.unit else fundamental_unit(ring, spec)
    result = units_family(UnitFamilySpec(diagram, ring, unit, args.count))
    integral = all(
        is_algebraic_integer(v, ring)
        for c in result.matrices
        for v in definability_generators(c).values
    )
    report.result.update(
        {
            "diagram": diagram.name,
            "ring": args.ring,
            "unit": str(unit),
            "exponents": result.exponents,
            "skipped": result.skipped,
            "generators_integral": integral,
            "matrices": [
                {
                    "u": f"eps^{k}",
                    "matrix": c.rows_as_text(),
                    "determinant": str(determinant(c)),
                    "signature": cyclic_signature(c).to_dict(list(diagram.faces)),
                }
                for k, c in zip(result.exponents, result.matrices, strict=True)
            ],
        }
    )
    report.lines.append(f"  eps = {unit}, {len(result.matrices)} Matrizen, übersprungen: {result.skipped or 'keine'}")
    for item in report.result["matrices"]:
        report.lines.append(f"  u = {item['u']} (Determinante {item['determinant']}):")
        report.lines.extend(_table(item["matrix"], indent="    "))
    for k in result.skipped:
        report.warnings.append(f"u = eps^{k}: Determinante 0, übersprungen")


def cmd_catalog(args: argparse.Namespace, report: Report) -> None:
    if args.keys:
        entries = []
        for key in args.keys:
            try:
                entries.append(catalog.get_entry(key))
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from None
        report.result["entries"] = [
            {"key": e.key, "provenance": e.provenance, **fileio.dump_source(e.to_source())}
            for e in entries
        ]
        for e in entries:
            report.lines.append(f"{e.key} — {e.provenance}")
            report.lines.append(json.dumps(fileio.dump_source(e.to_source()), ensure_ascii=False, indent=2))
        return
    entries = catalog.list_entries()
    report.result["entries"] = [
        {"key": e.key, "kind": e.kind, "expected_count": e.expected_count, "provenance": e.provenance}
        for e in entries
    ]
    report.lines.append(f"{'Schlüssel':<24} {'Art':<8} {'N':>3}  Herkunft")
    for e in entries:
        n = "-" if e.expected_count is None else str(e.expected_count)
        report.lines.append(f"{e.key:<24} {e.kind:<8} {n:>3}  {e.provenance}")


def _target_url(target: str) -> str:
    """``sqlite:PATH`` in eine SQLAlchemy-URL übersetzen; nur lokale Dateien."""
    scheme, _, rest = target.partition(":")
    if scheme != "sqlite":
        raise ValueError(f"Unbekanntes Target {target!r} (erwartet sqlite:PATH)")
    if rest.startswith("///"):
        return target
    if not rest or rest.startswith("//"):
        raise ValueError("sqlite-Target ohne Pfad (erwartet sqlite:PATH)")
    return "sqlite:///" + os.path.abspath(rest)


def cmd_sync(args: argparse.Namespace, report: Report) -> None:
    target = args.target or config.get_database_url()
    if not target:
        raise UsageError("kein Ziel (--target oder COXLIB_DATABASE_URL)")
    url = _target_url(target)

    from coxlib.orm import get_engine, init_db
    from coxlib.orm.sync import sync_all

    for key in args.catalog or []:
        try:
            catalog.get_entry(key)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    try:
        engine = get_engine(url)
        init_db(engine)
        stats = sync_all(engine, args.catalog or None)
    except Exception as exc:
        report.error = f"Sync fehlgeschlagen: {exc}"
        report.exit_code = EXIT_INVALID
        return

    report.result.update({"target": str(engine.url), "classes": stats})
    for key, count in stats.items():
        report.lines.append(f"{key:<20} {count:>6}")
    report.lines.append(f"\nGesamt: {sum(stats.values())} Klassen → {engine.url}")


COMMANDS = {
    "validate": cmd_validate,
    "signature": cmd_signature,
    "classify": cmd_classify,
    "compare": cmd_compare,
    "realize": cmd_realize,
    "relations": cmd_relations,
    "orbit-svg": cmd_orbit_svg,
    "family-verify": cmd_family_verify,
    "family-solve": cmd_family_solve,
    "units-family": cmd_units_family,
    "catalog": cmd_catalog,
    "sync": cmd_sync,
}


# ── Parser ───────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON-Ausgabe")
    common.add_argument("--field", metavar="a,b", help="Zahlkörper Q(sqrt(a),sqrt(b)) erzwingen")
    common.add_argument("--depth", type=int, metavar="K", help="Wortlänge für Ball/Kachelung")
    common.add_argument("-o", "--output", metavar="PATH", help="Ausgabe in Datei statt stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="Log-Level INFO")
    common.add_argument(
        "--catalog", action="append", metavar="KEY", help="Eintrag aus dem eingebauten Katalog"
    )
    common.add_argument("--t", metavar="AUSDRUCK", help="Parameterwert einer Familie, z. B. 1/6")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("files", nargs="*", metavar="DATEI", help="JSON-Datei(en)")
    inputs.add_argument("--diagram", metavar="DATEI", help="Coxeter-Diagramm als JSON")

    parser = argparse.ArgumentParser(
        prog="coxlib",
        description="Cartan-Matrizen prüfen, klassifizieren, realisieren und zeichnen.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    both = [common, inputs]

    sub.add_parser("validate", parents=both, help="Bedingungen (L1)/(L2) prüfen")

    p = sub.add_parser("signature", parents=both, help="einfache Zyklenprodukte ausgeben")
    p.add_argument("--ring", type=int, action="append", metavar="D", help="zusätzlich über O(Q(sqrt(D))) prüfen")

    p = sub.add_parser("classify", parents=both, help="ganzzahlige Klassen eines Simplex-Diagramms")
    p.add_argument("--workers", type=int, metavar="N", help="Threads (Default COXLIB_WORKERS)")

    p = sub.add_parser("compare", parents=both, help="zwei Matrizen auf Äquivalenz prüfen")
    p.add_argument("--automorphisms", action="store_true", help="bis auf Diagrammautomorphismen")

    p = sub.add_parser("realize", parents=both, help="Spiegelungen sigma_i = I - v_i alpha_i bauen")
    p.add_argument("--export", metavar="PATH", help="Erzeuger und Wortball als JSON schreiben")

    p = sub.add_parser("relations", parents=both, help="Coxeter-Relationen exakt prüfen")
    p.add_argument("--max-power", type=int, metavar="K", help="Schranke für unendliche Ordnung")

    p = sub.add_parser("orbit-svg", parents=both, help="Kachelung einer 3x3-Realisierung als SVG")
    p.add_argument("--chart-weights", action="store_true", help="Perron-Gewichte für die affine Karte")

    p = sub.add_parser("family-verify", parents=both, help="Familie bei --t exakt auswerten")
    p.add_argument("--require-integral", action="store_true", help="Exit 1, falls nicht über Z")

    sub.add_parser("family-solve", parents=both, help="alle ganzzahligen Parameterwerte")

    p = sub.add_parser("units-family", parents=both, help="unendliche Familie über O_k aus Einheiten")
    p.add_argument("--ring", type=int, default=2, metavar="D", help="O(Q(sqrt(D))), Default 2")
    p.add_argument("--unit", metavar="AUSDRUCK", help="Einheit > 1 (Default: Grundeinheit)")
    p.add_argument("--count", type=int, default=5, metavar="N", help="Anzahl Potenzen")

    p = sub.add_parser("catalog", parents=[common], help="Katalog auflisten oder Einträge ausgeben")
    p.add_argument("keys", nargs="*", metavar="KEY")

    p = sub.add_parser("sync", parents=[common], help="Klassifikationen in eine SQLite-Datei schreiben")
    p.add_argument("--target", metavar="sqlite:PATH", help="Ziel-Datei")

    return parser


def dispatch(argv: Sequence[str]) -> Report:
    """Argumente auswerten und das Unterkommando ausführen; wirft nie."""
    argv = list(argv)
    report = Report(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        report.exit_code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return report
    report.as_json = args.json
    report.output = args.output
    try:
        COMMANDS[args.command](args, report)
    except (UsageError, ValueError, KeyError, ZeroDivisionError, OSError) as exc:
        report.error = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        report.exit_code = EXIT_USAGE
    return report


def _emit(report: Report) -> int:
    if report.error:
        print(f"Fehler: {report.error}", file=sys.stderr)
        return report.exit_code
    if not report.as_json:
        for warning in report.warnings:
            print(f"Warnung: {warning}", file=sys.stderr)
    if report.payload is not None:
        if report.output:
            with open(report.output, "wb") as fh:
                fh.write(report.payload)
            print(f"{report.result.get('tiles', 0)} Kacheln → {report.output}", file=sys.stderr)
        else:
            sys.stdout.write(report.payload.decode("utf-8"))
        return report.exit_code
    text = (
        json.dumps(report.to_dict(), ensure_ascii=False, indent=2)
        if report.as_json
        else "\n".join(report.lines)
    )
    if report.output:
        with open(report.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return report.exit_code


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    verbose = "-v" in argv or "--verbose" in argv
    logging.basicConfig(
        level="INFO" if verbose else config.get_log_level(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    return _emit(dispatch(argv))


if __name__ == "__main__":
    sys.exit(main())
