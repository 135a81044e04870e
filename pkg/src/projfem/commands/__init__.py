"""Commands module for projfem CLI."""

from .compare import app as compare_app
from .convergence import app as convergence_app
from .run import app as run_app

__all__ = ["compare_app", "convergence_app", "run_app"]
