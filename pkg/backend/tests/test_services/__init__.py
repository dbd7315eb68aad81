"""
Service tests.

This package contains tests for exact linear algebra, the geometric
predicates, the coverings, the oracles, the reductions and campaigns.
"""
