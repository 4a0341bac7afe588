"""
Exact determinants of {±1}-matrices through oriented hypergraph contributors.
"""

import sys

__version__ = "0.1.0"


def main() -> None:
    """Console entry point."""
    from .cli import run

    sys.exit(run())
