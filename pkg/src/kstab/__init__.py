"""Exact verification of delta-invariant bounds on del Pezzo surfaces of degree 5 and 6, and the
K-stability certificate for the degree 22 Fano 3-fold assembled from them."""

__version__ = "0.1.0"
