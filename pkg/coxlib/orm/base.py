"""
Declarative base and the SQLite engine behind ``coxlib sync``.

Only local files are supported: ``sqlite:///path/to/classes.sqlite``.
"""

from collections.abc import Generator
from contextlib import contextmanager

from sqlalchemy import create_engine, event
from sqlalchemy.engine import Engine, make_url
from sqlalchemy.orm import DeclarativeBase, Session, sessionmaker


class Base(DeclarativeBase):
    """Declarative base for the classification tables."""


def get_engine(url: str, echo: bool = False) -> Engine:
    """SQLite engine for ``url`` with foreign keys and WAL enabled.

    Raises ``ValueError`` for any other backend.
    """
    backend = make_url(url).get_backend_name()
    if backend != "sqlite":
        raise ValueError(f"only SQLite files are supported, got backend {backend!r}")
    engine = create_engine(url, echo=echo, connect_args={"check_same_thread": False})

    @event.listens_for(engine, "connect")
    def _sqlite_pragmas(dbapi_conn, _record):
        cursor = dbapi_conn.cursor()
        cursor.execute("PRAGMA journal_mode=WAL")
        cursor.execute("PRAGMA foreign_keys=ON")
        cursor.close()

    return engine


@contextmanager
def session_scope(engine: Engine) -> Generator[Session, None, None]:
    """Commits on success, rolls back on exception, always closes."""
    session = sessionmaker(bind=engine)()
    try:
        yield session
        session.commit()
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def init_db(engine: Engine) -> None:
    """Create all tables; safe to call repeatedly."""
    from . import models  # noqa: F401

    Base.metadata.create_all(engine)
