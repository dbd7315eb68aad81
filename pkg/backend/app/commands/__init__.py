"""
CubeLab CLI command groups.

Each module exposes ``register(subparsers, parents)``; ``app.main`` includes
them in the root parser.
"""

from . import campaign, cover, cvp, gap, ip

__all__ = ["campaign", "cover", "cvp", "gap", "ip"]
