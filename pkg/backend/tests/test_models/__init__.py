"""
Model tests.

This package contains tests for the immutable value types: rationals,
bodies, covers, lattice instances and search results.
"""
