"""Finite left quasigroups: tables, displacement groups, congruences and commutators."""
from .errors import LeftqError
from .table import LeftQuasigroup, parse, load, to_lq, classify

__all__ = ["LeftQuasigroup", "LeftqError", "parse", "load", "to_lq", "classify"]
