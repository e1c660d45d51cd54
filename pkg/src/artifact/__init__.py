"""Frises, SL2-tilings, and linear recurrences for valued quivers."""

__version__ = "0.1.0"
