"""Exact-arithmetic toolkit for the spinor tenfold OGr+(5,10) and its linear sections."""

__version__ = "0.1.0"
