"""Exact computations around Monstrous Moonshine and its generalisations."""

__version__ = "0.1.0"
