"""Exact certification of uniform derivation bases for ideal subarrangements
of Weyl arrangements, plus Hessenberg cohomology-ring presentations."""

__version__ = "0.1.0"
