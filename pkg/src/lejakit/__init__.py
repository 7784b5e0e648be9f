"""Leja sequences on the unit disc, R-Leja sequences on [-1, 1], and
machine checks of bounds on their Lebesgue constants."""

__version__ = "0.1.0"
