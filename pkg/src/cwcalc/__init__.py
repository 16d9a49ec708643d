"""Characteristic classes of BSL_n^c: Chow, mod-2 Chow, I-cohomology and Chow-Witt groups."""

__version__ = "0.1.0"
