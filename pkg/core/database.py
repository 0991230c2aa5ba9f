"""Database connection and initialization for the evaluation history."""

import os
from pathlib import Path
from typing import Optional

from sqlalchemy.engine import Engine
from sqlmodel import SQLModel, create_engine, Session as SQLSession

# Default database path
DEFAULT_DB_PATH = Path(__file__).parent.parent / "data" / "history.db"

_engines: dict[Path, Engine] = {}


def get_database_path(db_path: Optional[Path] = None) -> Path:
    """Resolve the database path from the argument, the environment or the default."""
    if db_path is not None:
        return Path(db_path)
    env_path = os.getenv("PECTORAL_DATABASE_PATH")
    if env_path:
        return Path(env_path)
    return DEFAULT_DB_PATH


def get_engine(db_path: Optional[Path] = None) -> Engine:
    """Get or create the SQLAlchemy engine for a database file."""
    path = get_database_path(db_path).resolve()
    engine = _engines.get(path)
    if engine is None:
        path.parent.mkdir(parents=True, exist_ok=True)
        engine = create_engine(
            f"sqlite:///{path}",
            echo=False,
            connect_args={"check_same_thread": False},
        )
        _engines[path] = engine
    return engine


def init_db(db_path: Optional[Path] = None) -> Engine:
    """Initialize the database, creating all tables."""
    from .models import EvaluationRun, MetricRecord  # noqa: F401

    engine = get_engine(db_path)
    SQLModel.metadata.create_all(engine)
    return engine


def get_session(db_path: Optional[Path] = None) -> SQLSession:
    """Get a new database session."""
    return SQLSession(get_engine(db_path))
