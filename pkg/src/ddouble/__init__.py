"""Exact computations with Drinfeld doubles of finite groups."""

__version__ = "0.1.0"
