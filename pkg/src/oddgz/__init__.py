"""Exact odd Gel'fand-Zetlin bases for covariant gl(n|n) and gl(inf|inf) modules."""

__version__ = "0.1.0"
