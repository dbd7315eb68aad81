"""
Script tests.

This package contains tests for the report scripts: the oracle-call
table and the acceptance grid.
"""
