"""
This package loads, validates and indexes labelled transaction databases and
provides the bitset support counting every other component builds on.
"""

from .loader import cover_of, load, load_csv_database, load_database, support_of
from .models import PatternSupport, TransactionDatabase
from .synthetic import generate_database, generate_skewed_database

__all__ = [
    "TransactionDatabase",
    "PatternSupport",
    "load",
    "load_database",
    "load_csv_database",
    "cover_of",
    "support_of",
    "generate_database",
    "generate_skewed_database",
]
