"""
ORM models for stored classification results.

A ``DiagramRecord`` is one classified diagram (keyed by its catalog key);
its ``ClassRecord`` rows hold one representative Cartan matrix per class,
with entries and cyclic products stored as expression strings.
"""

from datetime import datetime

from sqlalchemy import (
    JSON,
    DateTime,
    ForeignKey,
    Integer,
    String,
    Text,
    UniqueConstraint,
    func,
)
from sqlalchemy.orm import Mapped, mapped_column, relationship

from .base import Base


class DiagramRecord(Base):
    __tablename__ = "diagrams"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=True)
    key: Mapped[str] = mapped_column(String(100), nullable=False, unique=True, doc="Catalog key")
    name: Mapped[str] = mapped_column(String(100), nullable=False)
    dimension: Mapped[int] = mapped_column(Integer, nullable=False)
    faces: Mapped[list] = mapped_column(JSON, nullable=False, doc="Face labels")
    class_count: Mapped[int] = mapped_column(Integer, default=0)
    expected_count: Mapped[int | None] = mapped_column(Integer, nullable=True)
    warning: Mapped[str | None] = mapped_column(Text, default=None)
    synced_at: Mapped[datetime | None] = mapped_column(
        DateTime, server_default=func.now(), onupdate=func.now()
    )

    classes: Mapped[list["ClassRecord"]] = relationship(
        back_populates="diagram",
        cascade="all, delete-orphan",
        order_by="ClassRecord.position",
    )

    def __repr__(self) -> str:
        return f"<DiagramRecord(key='{self.key}', classes={self.class_count})>"

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "name": self.name,
            "dimension": self.dimension,
            "faces": list(self.faces),
            "class_count": self.class_count,
            "expected_count": self.expected_count,
            "warning": self.warning,
        }


class ClassRecord(Base):
    __tablename__ = "cartan_classes"
    __table_args__ = (UniqueConstraint("diagram_id", "position", name="uq_class_position"),)

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=True)
    diagram_id: Mapped[int] = mapped_column(
        Integer, ForeignKey("diagrams.id", ondelete="CASCADE"), nullable=False, index=True
    )
    position: Mapped[int] = mapped_column(Integer, nullable=False, doc="1-based class index")
    matrix: Mapped[list] = mapped_column(JSON, nullable=False, doc="Rows of expression strings")
    signature: Mapped[dict] = mapped_column(JSON, nullable=False, doc="Cycle label -> product")
    determinant: Mapped[str] = mapped_column(String(200), nullable=False)

    diagram: Mapped[DiagramRecord] = relationship(back_populates="classes")

    def __repr__(self) -> str:
        return f"<ClassRecord(diagram_id={self.diagram_id}, position={self.position})>"

    def to_dict(self) -> dict:
        return {
            "position": self.position,
            "matrix": self.matrix,
            "signature": self.signature,
            "determinant": self.determinant,
        }
