"""Exact computations around polar nets of cubic fourfolds and their discriminant sextics."""

__version__ = "0.1.0"
