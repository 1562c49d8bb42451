"""HTTP service wrapping the core package; see app.create_app."""

from .app import app, create_app
from .pipeline import ServiceError

__all__ = ["app", "create_app", "ServiceError"]
