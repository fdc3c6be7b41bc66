"""Exact computational algebra for reduced affine Artin groups, del Pezzo
Picard lattices, and tacnodal power-series degenerations."""

__version__ = "0.1.0"
