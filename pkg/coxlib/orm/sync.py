"""
Classification → SQLAlchemy sync.

Runs ``classify_integer_classes`` for simplex catalog diagrams and upserts
the results. Re-running replaces a diagram's classes, so a sync is
idempotent.

Usage:
    from coxlib.orm import get_engine, init_db
    from coxlib.orm.sync import sync_all

    engine = get_engine("sqlite:///classes.sqlite")
    init_db(engine)
    stats = sync_all(engine)
"""

import logging
from collections.abc import Iterable

from sqlalchemy.orm import Session

from coxlib import catalog
from coxlib.cartan import CoxeterDiagram, determinant
from coxlib.enumerate import ClassificationResult, classify_integer_classes

from .base import session_scope
from .repository import ClassRepository, DiagramRepository

_log = logging.getLogger("coxlib.orm.sync")


def default_keys() -> list[str]:
    """Catalog keys whose payload is a simplex diagram."""
    return [
        e.key
        for e in catalog.list_entries()
        if isinstance(e.payload, CoxeterDiagram) and e.payload.is_simplex
    ]


def count_warning(result: ClassificationResult, expected: int | None) -> str | None:
    if expected is None or expected == result.count:
        return None
    return f"computed {result.count} classes, published count is {expected}"


def _class_rows(result: ClassificationResult) -> list[dict]:
    labels = list(result.diagram.faces)
    return [
        {
            "position": k,
            "matrix": c.rows_as_text(),
            "signature": sig.to_dict(labels),
            "determinant": str(determinant(c)),
        }
        for k, (c, sig) in enumerate(zip(result.representatives, result.signatures, strict=True), 1)
    ]


def sync_diagram(session: Session, key: str) -> int:
    """Classify one catalog diagram and store it; returns the class count."""
    entry = catalog.get_entry(key)
    if not isinstance(entry.payload, CoxeterDiagram):
        raise ValueError(f"catalog entry {key!r} is not a diagram")
    result = classify_integer_classes(entry.payload)
    warning = count_warning(result, entry.expected_count)
    if warning:
        _log.warning("%s: %s", key, warning)
    record = DiagramRepository(session).upsert(
        entry.key,
        name=result.diagram.name,
        dimension=result.diagram.dimension,
        faces=list(result.diagram.faces),
        class_count=result.count,
        expected_count=entry.expected_count,
        warning=warning,
    )
    ClassRepository(session).replace(record.id, _class_rows(result))
    return result.count


def sync_catalog(session: Session, keys: Iterable[str] | None = None) -> dict[str, int]:
    """Sync ``keys`` (default: every simplex diagram); returns key → class count."""
    stats = {}
    for key in keys if keys is not None else default_keys():
        stats[key] = sync_diagram(session, key)
    return stats


def sync_all(engine, keys: Iterable[str] | None = None) -> dict[str, int]:
    """Sync in one transaction; nothing is stored if any diagram fails."""
    with session_scope(engine) as session:
        stats = sync_catalog(session, keys)
    _log.info("ORM sync complete: %s", stats)
    return stats
