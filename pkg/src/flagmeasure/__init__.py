"""Exact classification of measurable open real-form orbits in flag supermanifolds."""
__version__ = "0.1.0"
