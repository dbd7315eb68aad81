"""
CubeLab test suite.

This package contains tests for the CubeLab models, services, command line
and report scripts.
"""
