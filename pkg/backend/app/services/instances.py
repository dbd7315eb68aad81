"""
Seeded random generation of lattice instances, slab systems and sample points.

Every generator draws from numpy's PCG64 bit generator, a named and portable
algorithm, so a (seed, parameters) pair reproduces the same stream on every
platform.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Tuple

import numpy as np

from ..exceptions import SingularMatrixError
from ..models.campaign import InstanceGen
from ..models.geometry import AxisBox
from ..models.lattice import LatticeInstance
from ..models.rational import Matrix, Vector
from .linalg import invert

SAMPLE_RESOLUTION = 1_000_000
MAX_TARGET_DENOMINATOR = 100


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _rand_int(rng: np.random.Generator, low: int, high: int) -> int:
    """Uniform integer in [low, high], returned as a Python int."""
    return int(rng.integers(low, high + 1))


def random_rational(rng: np.random.Generator, low: Fraction, high: Fraction, resolution: int = SAMPLE_RESOLUTION) -> Fraction:
    """Point of the grid low + (high - low) * k / resolution, k uniform in [0, resolution]."""
    k = _rand_int(rng, 0, resolution)
    return low + (high - low) * Fraction(k, resolution)


def sample_box(rng: np.random.Generator, box: AxisBox, resolution: int = SAMPLE_RESOLUTION) -> Vector:
    return tuple(random_rational(rng, lo, hi, resolution) for lo, hi in zip(box.lower, box.upper))


def random_basis(rng: np.random.Generator, dim: int, entry_bound: int) -> Matrix:
    """Integer matrix with entries in [-entry_bound, entry_bound], resampled until nonsingular."""
    while True:
        basis = tuple(
            tuple(Fraction(_rand_int(rng, -entry_bound, entry_bound)) for _ in range(dim))
            for _ in range(dim)
        )
        try:
            invert(basis)
        except SingularMatrixError:
            continue
        return basis


def random_target(rng: np.random.Generator, dim: int, entry_bound: int) -> Vector:
    """Target with coordinates in [-entry_bound, entry_bound] and denominators <= 100."""
    coords = []
    for _ in range(dim):
        den = _rand_int(rng, 1, MAX_TARGET_DENOMINATOR)
        coords.append(Fraction(_rand_int(rng, -entry_bound * den, entry_bound * den), den))
    return tuple(coords)


def gen_instances(g: InstanceGen) -> Iterator[LatticeInstance]:
    """Stream of ``g.count`` instances with nonsingular integer bases."""
    rng = make_rng(g.seed)
    for _ in range(g.count):
        basis = random_basis(rng, g.dim, g.entry_bound)
        yield LatticeInstance(basis, random_target(rng, g.dim, g.entry_bound))


def random_slab(rng: np.random.Generator, dim: int, entry_bound: int = 3) -> Tuple[Matrix, Vector, Vector]:
    """Nonsingular integer A with a slab l < u whose widths are rationals in (0, 3]."""
    a = random_basis(rng, dim, entry_bound)
    lower, upper = [], []
    for _ in range(dim):
        den = _rand_int(rng, 1, 4)
        lo = Fraction(_rand_int(rng, -4 * den, 4 * den), den)
        width = Fraction(_rand_int(rng, 1, 3 * den), den)
        lower.append(lo)
        upper.append(lo + width)
    return a, tuple(lower), tuple(upper)
