"""Exact scalars: quadratic extension towers, certified intervals, text grammar."""

from .expr import parse_scalar
from .interval import Interval
from .tower import QQ, TowerElem, TowerField, sqrt

__all__ = [
    "QQ",
    "Interval",
    "TowerElem",
    "TowerField",
    "parse_scalar",
    "sqrt",
]
