"""
Pytest configuration and fixtures for CubeLab tests.

This module provides shared fixtures for settings isolation, small lattice
instances and temporary input files for all test modules.
"""

import json
from fractions import Fraction

import pytest
from hypothesis import settings as hypothesis_settings

from app.config import reload_settings
from app.models.geometry import AxisBox
from app.models.lattice import LatticeInstance
from app.models.rational import identity, matrix, vector
from app.services.oracles import exact_as_gap

hypothesis_settings.register_profile("fast", max_examples=10, deadline=None)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """
    Reload settings around every test.

    Tests that change settings do so through environment variables with
    ``monkeypatch``; the reload afterwards restores the defaults.
    """
    monkeypatch.delenv("ENUMERATION_LIMIT", raising=False)
    monkeypatch.delenv("SCALE_FACTOR", raising=False)
    monkeypatch.delenv("SEARCH_DELTA_CAP", raising=False)
    reload_settings()
    yield
    monkeypatch.undo()
    reload_settings()


@pytest.fixture
def settings_env(monkeypatch):
    """Set environment variables and reload settings in one call."""

    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(key, str(value))
        return reload_settings()

    return apply


@pytest.fixture
def unit_square():
    """H = [-1, 1]^2."""
    return AxisBox.cube(2, -1, 1)


@pytest.fixture
def half_integer_instance():
    """I_2 with target (1/2, 1/2): every lattice corner is at distance exactly 1/2."""
    return LatticeInstance(identity(2), vector(["1/2", "1/2"]))


@pytest.fixture
def line_instance():
    """I_1 with target 53/10: the closest lattice point is 5 at distance 3/10."""
    return LatticeInstance(identity(1), vector(["53/10"]))


@pytest.fixture
def skew_basis():
    """Columns (2, 1) and (0, 1); the lattice is {(2a, a + b)}."""
    return matrix([[2, 0], [1, 1]])


@pytest.fixture
def exact_oracle():
    """Exact-backed 2-gap oracle."""
    return exact_as_gap(Fraction(2))


@pytest.fixture
def write_json(tmp_path):
    """Write a payload to a JSON file under tmp_path and return its path as a string."""

    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
        return str(path)

    return write
