"""
Repositories for stored classifications.

All queries go through ``select()``.
"""

from sqlalchemy import delete, select
from sqlalchemy.orm import Session

from .models import ClassRecord, DiagramRecord


class DiagramRepository:
    """Data access for DiagramRecord entities."""

    def __init__(self, session: Session):
        self.session = session

    def get_all(self) -> list[DiagramRecord]:
        stmt = select(DiagramRecord).order_by(DiagramRecord.key)
        return list(self.session.scalars(stmt).all())

    def get_by_key(self, key: str) -> DiagramRecord | None:
        stmt = select(DiagramRecord).where(DiagramRecord.key == key)
        return self.session.scalars(stmt).first()

    def upsert(self, key: str, **kwargs) -> DiagramRecord:
        """Insert or update the record for ``key``."""
        record = self.get_by_key(key)
        if record is None:
            record = DiagramRecord(key=key)
            self.session.add(record)
        for name, value in kwargs.items():
            if hasattr(record, name):
                setattr(record, name, value)
        self.session.flush()
        return record

    def with_warnings(self) -> list[DiagramRecord]:
        """Diagrams whose computed count differs from the expected one."""
        stmt = (
            select(DiagramRecord)
            .where(DiagramRecord.warning.is_not(None))
            .order_by(DiagramRecord.key)
        )
        return list(self.session.scalars(stmt).all())

    def delete(self, key: str) -> bool:
        record = self.get_by_key(key)
        if record is None:
            return False
        self.session.delete(record)
        self.session.flush()
        return True


class ClassRepository:
    """Data access for ClassRecord entities."""

    def __init__(self, session: Session):
        self.session = session

    def for_diagram(self, diagram_id: int) -> list[ClassRecord]:
        stmt = (
            select(ClassRecord)
            .where(ClassRecord.diagram_id == diagram_id)
            .order_by(ClassRecord.position)
        )
        return list(self.session.scalars(stmt).all())

    def count(self, diagram_id: int | None = None) -> int:
        stmt = select(ClassRecord)
        if diagram_id is not None:
            stmt = stmt.where(ClassRecord.diagram_id == diagram_id)
        return len(self.session.scalars(stmt).all())

    def replace(self, diagram_id: int, rows: list[dict]) -> list[ClassRecord]:
        """Drop the diagram's classes and insert ``rows`` (position, matrix, signature, determinant)."""
        self.session.execute(delete(ClassRecord).where(ClassRecord.diagram_id == diagram_id))
        self.session.expire_all()
        records = [ClassRecord(diagram_id=diagram_id, **row) for row in rows]
        self.session.add_all(records)
        self.session.flush()
        return records
