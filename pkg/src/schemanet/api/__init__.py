"""FastAPI application for schemanet."""

from .app import app

__all__ = ["app"]
