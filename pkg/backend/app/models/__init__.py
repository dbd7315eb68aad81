"""
CubeLab models package.

This package contains the immutable domain value types: exact rationals,
geometric bodies, covers, lattice instances and search results.
"""

from .rational import Rational, Vector, Matrix, to_rational, format_rational
from .geometry import AxisBox, Parallelepiped, AxisEllipsoid, unit_cube, shrunk_cube, orthant_cube
from .covering import CoverKind, CoverIndex, CoverSpec, GridSpec, Cover
from .lattice import LatticeInstance, GapResult, CvpSolution
from .search import BoostConfig, ApproxConfig, SearchState, ApproxResult
from .campaign import Campaign, CampaignKind, InstanceGen, OracleKind

__all__ = [
    "Rational",
    "Vector",
    "Matrix",
    "to_rational",
    "format_rational",
    "AxisBox",
    "Parallelepiped",
    "AxisEllipsoid",
    "unit_cube",
    "shrunk_cube",
    "orthant_cube",
    "CoverKind",
    "CoverIndex",
    "CoverSpec",
    "GridSpec",
    "Cover",
    "LatticeInstance",
    "GapResult",
    "CvpSolution",
    "BoostConfig",
    "ApproxConfig",
    "SearchState",
    "ApproxResult",
    "Campaign",
    "CampaignKind",
    "InstanceGen",
    "OracleKind",
]
