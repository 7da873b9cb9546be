"""Parallel closed itemset mining and significant pattern discovery."""

__version__ = "0.1.0"
