"""Kähler differentials of pure extensions of valued fields, computed through
final segments of ordered value groups."""

__version__ = "0.1.0"
