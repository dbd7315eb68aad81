"""
CubeLab schemas package.

This package contains the Pydantic schemas for every CubeLab file format.
"""

from .common import RationalStr, RationalVector, RationalMatrix, CubeLabSchema

from .geometry import (
    BoxSchema, ParallelepipedSchema, EllipsoidSchema,
    CoverIndexSchema, CoverBodySchema, CoverSpecSchema, CoverFile,
)

from .lattice import (
    InstanceFile, SlabFile, CvpAnswer, GapAnswer, ApproxAnswer, IpAnswer,
)

from .campaign import CampaignSchema, CaseResult, Report

__all__ = [
    # Common types
    "RationalStr", "RationalVector", "RationalMatrix", "CubeLabSchema",

    # Geometry and cover files
    "BoxSchema", "ParallelepipedSchema", "EllipsoidSchema",
    "CoverIndexSchema", "CoverBodySchema", "CoverSpecSchema", "CoverFile",

    # Instances and answers
    "InstanceFile", "SlabFile", "CvpAnswer", "GapAnswer", "ApproxAnswer", "IpAnswer",

    # Campaign reports
    "CampaignSchema", "CaseResult", "Report",
]
