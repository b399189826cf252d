from .app import app, create_app
from .state import ServiceState

__all__ = ["app", "create_app", "ServiceState"]
