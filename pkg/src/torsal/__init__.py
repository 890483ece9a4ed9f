"""Integral cohomology of complexified toric arrangements via toric Salvetti complexes."""

__version__ = "0.1.0"
