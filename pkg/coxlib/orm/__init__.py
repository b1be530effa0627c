"""
SQLAlchemy mirror of classification results.

Usage:
    from coxlib.orm import get_engine, init_db, session_scope
    from coxlib.orm.sync import sync_catalog

    engine = get_engine("sqlite:///classes.sqlite")
    init_db(engine)
    with session_scope(engine) as session:
        sync_catalog(session, ["triangle(3,3,4)"])
"""

from .base import Base, get_engine, init_db, session_scope
from .models import ClassRecord, DiagramRecord
from .repository import ClassRepository, DiagramRepository

__all__ = [
    "Base",
    "get_engine",
    "init_db",
    "session_scope",
    "DiagramRecord",
    "ClassRecord",
    "DiagramRepository",
    "ClassRepository",
]
