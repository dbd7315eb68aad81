"""
Tests for toolkit settings loaded from the environment.
"""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.config import get_scale_factor, get_settings


class TestSettings:
    """Test defaults and validation of the rational settings."""

    def test_defaults(self):
        settings = get_settings()
        assert settings.scale_factor_value == 2
        assert settings.search_delta_cap_value == Fraction(1, 2)

    def test_rational_scale_factor(self, settings_env):
        settings_env(SCALE_FACTOR="5/2")
        assert get_scale_factor() == Fraction(5, 2)

    @pytest.mark.parametrize("value", ["1", "1/2", "0", "-3"])
    def test_scale_factor_must_exceed_one(self, settings_env, value):
        with pytest.raises(ValidationError):
            settings_env(SCALE_FACTOR=value)

    def test_scale_factor_not_rational(self, settings_env):
        with pytest.raises(ValidationError):
            settings_env(SCALE_FACTOR="two")

    def test_delta_cap_may_be_below_one(self, settings_env):
        settings_env(SEARCH_DELTA_CAP="1/10")
        assert get_settings().search_delta_cap_value == Fraction(1, 10)

    def test_delta_cap_must_be_positive(self, settings_env):
        with pytest.raises(ValidationError):
            settings_env(SEARCH_DELTA_CAP="0")
