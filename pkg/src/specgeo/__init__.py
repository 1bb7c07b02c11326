"""Numerical laboratory for the geometry of kernelized spectral clustering.

Population-level diagnostics (similarity, coupling, indivisibility,
difficulty), discretized normalized-Laplacian operators, finite-sample
embeddings, orthogonal cone structure certification and spherical
K-means, plus a CLI that reproduces the reference figures as CSV + SVG.
"""

__version__ = "0.1.0"
