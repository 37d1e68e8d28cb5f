"""Command-line interface."""

from . import expansion as expansion
from . import semigroup as semigroup
from .app import app as app


def main() -> None:
    """Run the ``sexpansion`` command."""
    app()
